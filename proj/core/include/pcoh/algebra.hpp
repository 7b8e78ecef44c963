#pragma once

#include <pcoh/linalg.hpp>
#include <pcoh/rational.hpp>

#include <string>
#include <utility>
#include <vector>

namespace pcoh {

/// c * v_k contribution of v_i (op) v_j.
struct StructureConstant {
    Index i;
    Index j;
    Index k;
    Rational value;
};

using StructureConstants = std::vector<StructureConstant>;

/// Finite-dimensional Poisson algebra given by structure constants in the
/// basis v_0..v_{d-1}. The basis order is the order of basis_names and every
/// downstream index refers to it.
struct AlgebraSpec {
    std::string name;
    std::size_t dim = 0;
    std::vector<std::string> basis_names;
    Vector unit;
    StructureConstants mult;     // v_i v_j = sum c v_k
    StructureConstants bracket;  // {v_i, v_j} = sum b v_k
};

enum class ModuleFlavor { quasi_poisson, poisson };

/// Quasi-Poisson or Poisson module of dimension m over an algebra of
/// dimension d. Constants are (algebra index i, module index u, module index
/// o, value):
///   left:  v_i . u_u   = sum value u_o
///   right: u_u . v_i   = sum value u_o
///   lie:   {v_i, u_u}_* = sum value u_o
struct ModuleSpec {
    std::string name;
    std::size_t dim = 0;
    std::vector<std::string> basis_names;
    StructureConstants left;
    StructureConstants right;
    StructureConstants lie;
    ModuleFlavor flavor = ModuleFlavor::poisson;
};

struct Violation {
    std::string axiom;
    std::vector<Index> indices;
    Vector residual;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool violates(const std::string& axiom) const;
};

/// Sparse linear combination of basis vectors.
using Combination = std::vector<std::pair<Index, Rational>>;

/// Dense evaluation table of a bilinear operation on basis pairs.
class BilinearTable {
public:
    BilinearTable() = default;
    BilinearTable(std::size_t left_dim, std::size_t right_dim, std::size_t out_dim, const StructureConstants& constants);

    const Combination& operator()(Index a, Index b) const { return table_[a * right_dim_ + b]; }
    /// Bilinear extension to arbitrary vectors.
    Vector apply(const Vector& x, const Vector& y) const;
    std::size_t out_dim() const { return out_dim_; }
    bool is_zero() const;

private:
    std::size_t right_dim_ = 0;
    std::size_t out_dim_ = 0;
    std::vector<Combination> table_;
};

/// Structure-constant tables of an algebra, built once and shared by the
/// validators and coboundary builders.
struct AlgebraTables {
    explicit AlgebraTables(const AlgebraSpec& spec);
    std::size_t dim;
    Vector unit;
    BilinearTable mult;
    BilinearTable bracket;
};

struct ModuleTables {
    ModuleTables(const AlgebraSpec& alg, const ModuleSpec& mod);
    std::size_t dim;
    BilinearTable left;   // (a, u) -> a.u
    BilinearTable right;  // (a, u) -> u.a
    BilinearTable lie;    // (a, u) -> {a,u}_*
};

/// Throws StructureError if indices or vector lengths are inconsistent.
void check_structure(const AlgebraSpec& spec);
void check_structure(const AlgebraSpec& alg, const ModuleSpec& mod);

/// Exhaustive check of unit, associativity, skew-symmetry, Jacobi and
/// Leibniz over all basis tuples.
ValidationReport validate_algebra(const AlgebraSpec& spec);

/// Bimodule, Lie-module and quasi-Poisson axioms; the Poisson axiom
/// {ab,m}_* = a{b,m}_* + {a,m}_* b as well when flavor is poisson.
ValidationReport validate_module(const AlgebraSpec& alg, const ModuleSpec& mod);

/// Associative unital product with the commutator bracket.
/// Throws DomainError when mult is not associative or unit is not a unit.
AlgebraSpec standard_poisson(std::string name, std::vector<std::string> basis_names, Vector unit,
                             StructureConstants mult);

/// Associative unital product with the zero bracket.
AlgebraSpec trivial_bracket(std::string name, std::vector<std::string> basis_names, Vector unit,
                            StructureConstants mult);

/// Structure constants of the span of the given square matrices, which must
/// be linearly independent and closed under multiplication.
StructureConstants matrix_structure_constants(const std::vector<std::vector<Vector>>& matrices);

ModuleSpec regular_module(const AlgebraSpec& spec);

bool is_commutative(const AlgebraSpec& spec);
bool has_zero_bracket(const AlgebraSpec& spec);

struct BuiltinInfo {
    std::string name;
    std::size_t dim;
    std::string note;
};

/// Registry of named algebras. Throws DomainError for unknown names.
AlgebraSpec builtin(const std::string& name);
std::vector<BuiltinInfo> builtin_registry();

}  // namespace pcoh
