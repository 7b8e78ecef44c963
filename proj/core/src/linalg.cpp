#include <pcoh/errors.hpp>
#include <pcoh/linalg.hpp>

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace pcoh {

// ---------------------------------------------------------------------------
// SparseMatrix

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets)
{
    for (const auto& t : triplets)
        if (t.row >= rows || t.col >= cols)
            throw StructureError("matrix entry (" + std::to_string(t.row) + "," + std::to_string(t.col) +
                                 ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseMatrix m(rows, cols);
    for (std::size_t k = 0; k < triplets.size();) {
        std::size_t l = k;
        Rational sum = triplets[k].value;
        while (++l < triplets.size() && triplets[l].row == triplets[k].row && triplets[l].col == triplets[k].col)
            sum += triplets[l].value;
        if (sgn(sum) != 0) m.rows_[triplets[k].row].push_back({triplets[k].col, std::move(sum)});
        k = l;
    }
    return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n)
{
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].push_back({static_cast<Index>(i), Rational(1)});
    return m;
}

SparseMatrix SparseMatrix::from_rows(std::size_t cols, std::vector<SparseRow> rows)
{
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (row[k].col >= cols) throw StructureError("sparse row column out of range");
            if (sgn(row[k].value) == 0) throw StructureError("sparse row stores an explicit zero");
            if (k > 0 && row[k - 1].col >= row[k].col) throw StructureError("sparse row not strictly sorted");
        }
    }
    SparseMatrix m;
    m.rows_ = std::move(rows);
    m.cols_ = cols;
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<Vector>& rows, std::size_t cols)
{
    SparseMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw StructureError("dense row has wrong length");
        for (std::size_t c = 0; c < cols; ++c)
            if (sgn(rows[r][c]) != 0) m.rows_[r].push_back({static_cast<Index>(c), rows[r][c]});
    }
    return m;
}

std::size_t SparseMatrix::nnz() const
{
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const
{
    const auto& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const SparseEntry& e, std::size_t col) { return e.col < col; });
    if (it != row.end() && it->col == c) return it->value;
    return Rational(0);
}

SparseMatrix SparseMatrix::transpose() const
{
    SparseMatrix t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& e : rows_[r]) t.rows_[e.col].push_back({static_cast<Index>(r), e.value});
    return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const
{
    if (cols_ != rhs.rows()) throw StructureError("matrix product shape mismatch");
    SparseMatrix out(rows_.size(), rhs.cols());
    std::vector<Rational> acc(rhs.cols());
    std::vector<char> touched(rhs.cols(), 0);
    std::vector<Index> cols;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        cols.clear();
        for (const auto& a : rows_[r]) {
            for (const auto& b : rhs.rows_[a.col]) {
                if (!touched[b.col]) {
                    touched[b.col] = 1;
                    cols.push_back(b.col);
                    acc[b.col] = a.value * b.value;
                } else {
                    acc[b.col] += a.value * b.value;
                }
            }
        }
        std::sort(cols.begin(), cols.end());
        for (Index c : cols) {
            if (sgn(acc[c]) != 0) out.rows_[r].push_back({c, acc[c]});
            touched[c] = 0;
        }
    }
    return out;
}

Vector SparseMatrix::apply(const Vector& x) const
{
    if (x.size() != cols_) throw StructureError("matrix-vector shape mismatch");
    Vector y = zero_vector(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& e : rows_[r])
            if (sgn(x[e.col]) != 0) y[r] += e.value * x[e.col];
    return y;
}

std::vector<Vector> SparseMatrix::to_dense() const
{
    std::vector<Vector> out(rows_.size(), zero_vector(cols_));
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& e : rows_[r]) out[r][e.col] = e.value;
    return out;
}

Vector SparseMatrix::column(std::size_t c) const
{
    Vector v = zero_vector(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) v[r] = at(r, c);
    return v;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto& x = a.rows_[r];
        const auto& y = b.rows_[r];
        if (x.size() != y.size()) return false;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (x[k].col != y[k].col || x[k].value != y[k].value) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Fraction-free sparse elimination

namespace {

struct IntEntry {
    Index col;
    Integer value;
};
using IntRow = std::vector<IntEntry>;

void make_primitive(IntRow& row)
{
    if (row.empty()) return;
    Integer g = abs(row.front().value);
    for (std::size_t k = 1; k < row.size() && g != 1; ++k) g = gcd(g, row[k].value);
    if (g != 1)
        for (auto& e : row) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
}

IntRow to_integer_row(const SparseRow& row)
{
    Integer lcm_den = 1;
    for (const auto& e : row) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), e.value.get_den_mpz_t());
    IntRow out;
    out.reserve(row.size());
    for (const auto& e : row) {
        Integer v = e.value.get_num() * (lcm_den / e.value.get_den());
        out.push_back({e.col, std::move(v)});
    }
    make_primitive(out);
    return out;
}

const Integer* find_value(const IntRow& row, Index col)
{
    auto it = std::lower_bound(row.begin(), row.end(), col, [](const IntEntry& e, Index c) { return e.col < c; });
    return (it != row.end() && it->col == col) ? &it->value : nullptr;
}

/// target <- (p/g) * target - (a/g) * pivot where a = target[col], p = pivot[col].
/// Calls on_new(col) for every column present in the result but absent from
/// the old target.
template <typename OnNew>
void eliminate_into(IntRow& target, const IntRow& pivot, Index col, OnNew&& on_new)
{
    const Integer& a = *find_value(target, col);
    const Integer& p = *find_value(pivot, col);
    Integer g = gcd(a, p);
    Integer mt = p / g;
    Integer mp = a / g;

    IntRow out;
    out.reserve(target.size() + pivot.size());
    std::size_t i = 0, j = 0;
    Integer tmp;
    while (i < target.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < target.size() && target[i].col < pivot[j].col)) {
            out.push_back({target[i].col, mt * target[i].value});
            ++i;
        } else if (i == target.size() || pivot[j].col < target[i].col) {
            tmp = -mp * pivot[j].value;
            on_new(pivot[j].col);
            out.push_back({pivot[j].col, tmp});
            ++j;
        } else {
            tmp = mt * target[i].value - mp * pivot[j].value;
            if (sgn(tmp) != 0) out.push_back({target[i].col, tmp});
            ++i;
            ++j;
        }
    }
    make_primitive(out);
    target = std::move(out);
}

class Eliminator {
public:
    /// Columns >= pivot_cols are carried along but never chosen as pivots.
    Eliminator(std::vector<IntRow> rows, std::size_t pivot_cols, std::size_t total_cols)
        : rows_(std::move(rows)), pivot_cols_(pivot_cols), total_cols_(total_cols)
    {
    }

    void forward()
    {
        std::vector<std::size_t> col_count(total_cols_, 0);
        std::vector<std::vector<Index>> col_rows(total_cols_);
        active_.assign(rows_.size(), 1);
        is_pivot_col_.assign(total_cols_, 0);
        for (Index r = 0; r < rows_.size(); ++r)
            for (const auto& e : rows_[r]) {
                ++col_count[e.col];
                col_rows[e.col].push_back(r);
            }

        std::vector<Index> candidates;
        for (;;) {
            // Column with the fewest active entries; ties go to the lowest column.
            std::size_t best = std::numeric_limits<std::size_t>::max();
            Index col = 0;
            for (Index c = 0; c < pivot_cols_; ++c) {
                if (is_pivot_col_[c] || col_count[c] == 0 || col_count[c] >= best) continue;
                best = col_count[c];
                col = c;
                if (best == 1) break;
            }
            if (best == std::numeric_limits<std::size_t>::max()) break;

            candidates.clear();
            for (Index r : col_rows[col])
                if (active_[r] && find_value(rows_[r], col)) candidates.push_back(r);
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

            // Shortest row in that column; ties go to the lowest row.
            Index prow = candidates.front();
            for (Index r : candidates)
                if (rows_[r].size() < rows_[prow].size()) prow = r;

            active_[prow] = 0;
            for (const auto& e : rows_[prow]) --col_count[e.col];

            for (Index r : candidates) {
                if (r == prow) continue;
                for (const auto& e : rows_[r]) --col_count[e.col];
                eliminate_into(rows_[r], rows_[prow], col, [&](Index c) { col_rows[c].push_back(r); });
                for (const auto& e : rows_[r]) ++col_count[e.col];
            }
            col_rows[col].clear();
            col_rows[col].shrink_to_fit();
            is_pivot_col_[col] = 1;
            pivots_.push_back({prow, col});
        }
    }

    /// Clears every pivot column from every other pivot row.
    void back_substitute()
    {
        std::vector<std::size_t> pivot_index(total_cols_, std::numeric_limits<std::size_t>::max());
        for (std::size_t k = 0; k < pivots_.size(); ++k) pivot_index[pivots_[k].second] = k;
        std::vector<Index> cols;
        for (std::size_t k = pivots_.size(); k-- > 0;) {
            IntRow& row = rows_[pivots_[k].first];
            cols.clear();
            for (const auto& e : row)
                if (is_pivot_col_[e.col] && e.col != pivots_[k].second) cols.push_back(e.col);
            for (Index c : cols) eliminate_into(row, rows_[pivots_[pivot_index[c]].first], c, [](Index) {});
        }
    }

    bool has_inconsistent_row() const
    {
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (active_[r] && !rows_[r].empty()) return true;
        return false;
    }

    const std::vector<std::pair<Index, Index>>& pivots() const { return pivots_; }
    const IntRow& row(Index r) const { return rows_[r]; }
    bool is_pivot_col(Index c) const { return is_pivot_col_[c] != 0; }

private:
    std::vector<IntRow> rows_;
    std::size_t pivot_cols_;
    std::size_t total_cols_;
    std::vector<char> active_;
    std::vector<char> is_pivot_col_;
    std::vector<std::pair<Index, Index>> pivots_;  // (row, col) in elimination order
};

std::vector<IntRow> integer_rows(const SparseMatrix& m)
{
    std::vector<IntRow> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(to_integer_row(m.row(r)));
    return rows;
}

}  // namespace

std::size_t rank(const SparseMatrix& m)
{
    Eliminator el(integer_rows(m), m.cols(), m.cols());
    el.forward();
    return el.pivots().size();
}

KernelBasis kernel_basis(const SparseMatrix& m)
{
    Eliminator el(integer_rows(m), m.cols(), m.cols());
    el.forward();
    el.back_substitute();

    KernelBasis kb;
    kb.rank = el.pivots().size();
    std::vector<std::size_t> slot(m.cols(), std::numeric_limits<std::size_t>::max());
    for (Index c = 0; c < m.cols(); ++c) {
        if (el.is_pivot_col(c)) continue;
        slot[c] = kb.free_columns.size();
        kb.free_columns.push_back(c);
        Vector v = zero_vector(m.cols());
        v[c] = 1;
        kb.vectors.push_back(std::move(v));
    }
    for (const auto& [r, pc] : el.pivots()) {
        const IntRow& row = el.row(r);
        const Integer& p = *find_value(row, pc);
        for (const auto& e : row) {
            if (e.col == pc) continue;
            kb.vectors[slot[e.col]][pc] = Rational(-e.value, p);
        }
    }
    for (auto& v : kb.vectors)
        for (auto& x : v) x.canonicalize();

    for (const auto& v : kb.vectors)
        if (!is_zero(m.apply(v))) throw InternalError("kernel vector not annihilated by matrix");
    return kb;
}

std::optional<Vector> KernelBasis::coordinates(const Vector& v) const
{
    Vector coords;
    coords.reserve(vectors.size());
    Vector rebuilt = zero_vector(v.size());
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        coords.push_back(v.at(free_columns[k]));
        axpy(rebuilt, coords.back(), vectors[k]);
    }
    if (rebuilt != v) return std::nullopt;
    return coords;
}

std::optional<Vector> solve(const SparseMatrix& m, const Vector& b)
{
    if (b.size() != m.rows()) throw StructureError("right-hand side length does not match matrix rows");
    const Index bcol = static_cast<Index>(m.cols());
    std::vector<IntRow> rows;
    rows.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseRow row = m.row(r);
        if (sgn(b[r]) != 0) row.push_back({bcol, b[r]});
        rows.push_back(to_integer_row(row));
    }
    Eliminator el(std::move(rows), m.cols(), m.cols() + 1);
    el.forward();
    if (el.has_inconsistent_row()) return std::nullopt;
    el.back_substitute();

    Vector x = zero_vector(m.cols());
    for (const auto& [r, pc] : el.pivots()) {
        const IntRow& row = el.row(r);
        if (const Integer* rhs = find_value(row, bcol)) {
            x[pc] = Rational(*rhs, *find_value(row, pc));
            x[pc].canonicalize();
        }
    }
    if (m.apply(x) != b) throw InternalError("solve produced a non-solution");
    return x;
}

std::vector<std::size_t> independent_subset(const std::vector<Vector>& vectors)
{
    std::vector<Vector> basis;
    std::vector<std::size_t> pivot_pos;
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < vectors.size(); ++k) {
        Vector v = vectors[k];
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Rational& c = v[pivot_pos[b]];
            if (sgn(c) != 0) axpy(v, -c, basis[b]);
        }
        auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; });
        if (it == v.end()) continue;
        Rational lead = *it;
        for (auto& x : v) x /= lead;
        pivot_pos.push_back(static_cast<std::size_t>(it - v.begin()));
        basis.push_back(std::move(v));
        kept.push_back(k);
    }
    return kept;
}

std::vector<Vector> column_space_basis(const SparseMatrix& m)
{
    std::vector<Vector> cols = m.transpose().to_dense();
    std::vector<Vector> out;
    for (std::size_t k : independent_subset(cols)) out.push_back(std::move(cols[k]));
    return out;
}

void write_matrix_dump(std::ostream& os, const SparseMatrix& m)
{
    os << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& e : m.row(r)) os << r << ' ' << e.col << ' ' << to_string(e.value) << '\n';
}

SparseMatrix read_matrix_dump(std::istream& is)
{
    std::size_t rows = 0, cols = 0, nnz = 0;
    if (!(is >> rows >> cols >> nnz)) throw StructureError("matrix dump: malformed header");
    std::vector<Triplet> triplets;
    triplets.reserve(nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
        std::size_t r = 0, c = 0;
        std::string value;
        if (!(is >> r >> c >> value)) throw StructureError("matrix dump: truncated entry list");
        if (r >= rows || c >= cols) throw StructureError("matrix dump: entry out of range");
        triplets.push_back({static_cast<Index>(r), static_cast<Index>(c), parse_rational(value)});
    }
    return SparseMatrix::from_triplets(rows, cols, std::move(triplets));
}

}  // namespace pcoh
