#pragma once

#include <pcoh/rational.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace pcoh {

using Index = std::uint32_t;

struct Triplet {
    Index row;
    Index col;
    Rational value;
};

struct SparseEntry {
    Index col;
    Rational value;
};

using SparseRow = std::vector<SparseEntry>;

/// Row-compressed sparse matrix over the rationals. Every stored entry is
/// nonzero, positions are unique and each row is sorted by column.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    /// Sums duplicate positions and drops zeros. Throws StructureError on
    /// out-of-range indices.
    static SparseMatrix from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets);
    static SparseMatrix identity(std::size_t n);
    /// Takes ownership of prepared rows; each row must already satisfy the
    /// class invariants (checked).
    static SparseMatrix from_rows(std::size_t cols, std::vector<SparseRow> rows);
    static SparseMatrix from_dense(const std::vector<Vector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const;
    bool is_zero() const { return nnz() == 0; }

    const SparseRow& row(std::size_t r) const { return rows_[r]; }
    const std::vector<SparseRow>& row_data() const { return rows_; }
    Rational at(std::size_t r, std::size_t c) const;

    SparseMatrix transpose() const;
    SparseMatrix operator*(const SparseMatrix& rhs) const;
    Vector apply(const Vector& x) const;
    std::vector<Vector> to_dense() const;
    Vector column(std::size_t c) const;

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

private:
    std::vector<SparseRow> rows_;
    std::size_t cols_ = 0;
};

struct KernelBasis {
    std::vector<Vector> vectors;
    std::size_t rank = 0;
    /// Column index of the unit coordinate carried by each basis vector.
    /// vectors[k][free_columns[k]] == 1 and vectors[k][free_columns[l]] == 0
    /// for l != k, so the coordinates of any kernel element v in this basis
    /// are simply v[free_columns[k]].
    std::vector<Index> free_columns;

    /// Coordinates of v in this basis, or nullopt if v is not in the span.
    std::optional<Vector> coordinates(const Vector& v) const;
};

/// Exact rank by fraction-free sparse elimination.
std::size_t rank(const SparseMatrix& m);

KernelBasis kernel_basis(const SparseMatrix& m);

/// Some x with m*x == b, or nullopt when b is outside the column space.
/// Throws StructureError when b.size() != m.rows().
std::optional<Vector> solve(const SparseMatrix& m, const Vector& b);

/// Indices of a maximal linearly independent prefix-greedy subset of the
/// given vectors (vector k is kept iff it is independent of the kept ones
/// before it).
std::vector<std::size_t> independent_subset(const std::vector<Vector>& vectors);

/// Basis of the span of the columns of m (greedy, left to right).
std::vector<Vector> column_space_basis(const SparseMatrix& m);

/// "rows cols nnz" header followed by one "row col p/q" line per entry,
/// in row-major order.
void write_matrix_dump(std::ostream& os, const SparseMatrix& m);
SparseMatrix read_matrix_dump(std::istream& is);

}  // namespace pcoh
