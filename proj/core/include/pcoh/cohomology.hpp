#pragma once

#include <pcoh/algebra.hpp>
#include <pcoh/complexes.hpp>
#include <pcoh/linalg.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pcoh {

struct CohomologyReport {
    std::string theory;  // hp, quasi, omega, hh, ce, lp, type1, type2
    std::string algebra;
    std::string module;
    std::string convention;
    int first_degree = 0;
    int max_degree = 0;
    std::vector<std::size_t> dims;        // dims[k] is degree first_degree + k
    std::vector<std::size_t> ranks;       // rank of the map leaving that degree
    std::vector<std::size_t> space_dims;  // cochain space dimension per degree
    bool boundary_exact = true;           // the map out of max_degree was built
    /// Per degree, cocycles whose classes form a basis of the cohomology
    /// (filled only when requested).
    std::vector<std::vector<Vector>> representatives;
};

struct CohomologyOptions {
    bool representatives = false;
    bool validate = true;  // run validate_algebra / validate_module first
};

/// dims[n] = dim C^n - rank d^n - rank d^{n-1} for n = 0..maxN; d^maxN is
/// always built so the last entry is exact. For the poisson theory the
/// degree-0 and degree-1 values are cross-checked against center_of_lie and
/// poisson_derivations (InternalError on mismatch).
CohomologyReport cohomology_dims(Theory theory, const AlgebraSpec& alg, const ModuleSpec& mod, int maxN,
                                 const CohomologyOptions& options = {});

/// Cohomology of an explicit complex of subspaces.
CohomologyReport complex_cohomology(const CochainComplex& complex, const AlgebraSpec& alg);

/// H_LP^n for n = 0..maxN (commutative algebras only).
CohomologyReport lp_cohomology(const AlgebraSpec& alg, int maxN);

/// Type I (degrees 0..maxN) or type II (degrees 1..maxN) cohomology.
CohomologyReport type_cohomology(const AlgebraSpec& alg, DeformationType which, int maxN);

/// {a : {x,a} = 0 for all x}.
std::vector<Vector> center_of_lie(const AlgebraSpec& alg);

struct DerivationReport {
    std::vector<Vector> all;    // kernel of d^1, degree-1 Poisson cochains
    std::vector<Vector> inner;  // basis of the image of d^0
    std::size_t outer_dim() const { return all.size() - inner.size(); }
};

DerivationReport poisson_derivations(const AlgebraSpec& alg, const ModuleSpec& mod);

/// True when mod is the regular module of alg (same constants).
bool is_regular_module(const AlgebraSpec& alg, const ModuleSpec& mod);

// ---------------------------------------------------------------------------
// Lie-equivariant maps.

/// Finite-dimensional representation of a Lie algebra given by the action
/// matrices of a list of generators: action[g][r][c] is the (r,c) entry.
struct LieRepresentation {
    std::size_t dim = 0;
    std::vector<std::vector<Vector>> action;
};

/// Action of the generators (algebra vectors) on the invariant subspace
/// spanned by basis, via x . a = {x, a}. Throws DomainError if the span is
/// not invariant.
LieRepresentation adjoint_representation(const AlgebraSpec& alg, const std::vector<Vector>& generators,
                                         const std::vector<Vector>& basis);

/// rho(x) = rho_V(x) (x) 1 + 1 (x) rho_W(x); basis index v * W.dim + w.
LieRepresentation tensor_product(const LieRepresentation& v, const LieRepresentation& w);

/// Basis of {F : W.dim x V.dim | rho_W(x) F = F rho_V(x) for every
/// generator x}; each F is flattened row-major (F[r * V.dim + c]).
std::vector<Vector> equivariant_hom(const LieRepresentation& source, const LieRepresentation& target);

// ---------------------------------------------------------------------------
// Long exact sequence feasibility.

struct LesTerm {
    std::string label;  // HP^n, HL^n or E^n
    std::size_t dim = 0;
    std::size_t rank = 0;  // forced rank of the outgoing map
};

struct LesReport {
    bool feasible = false;
    std::vector<LesTerm> terms;
    std::optional<std::size_t> failing_position;  // index into terms
    std::string message;
};

/// Scans 0 -> HP^0 -> HL^0 -> E^{-1} -> HP^1 -> HL^1 -> E^0 -> HP^2 -> ...
/// (E^{-1} = 0) for ranks compatible with exactness. window is the number
/// of sequence terms to use (0 means all the data supports); fewer than
/// three terms is a DomainError.
LesReport les_feasibility(const std::vector<std::size_t>& hp, const std::vector<std::size_t>& hl,
                          const std::vector<std::size_t>& ext_omega, std::size_t window = 0);

// ---------------------------------------------------------------------------
// Zero-bracket decomposition.

struct DecompositionRow {
    int degree = 0;
    std::size_t hp = 0;             // from the total complex
    std::size_t chi = 0;            // dim chi^n
    std::size_t stated = 0;         // chi^n + sum_{i=2}^n HH^i C(d, n-i)
    std::size_t corrected = 0;      // see trivial_bracket_decomposition
    bool stated_matches = false;
    bool corrected_matches = false;
};

struct DecompositionReport {
    std::vector<DecompositionRow> rows;
    std::vector<std::size_t> hochschild;  // HH^0..HH^maxN
    std::size_t z2 = 0;                   // dim of Hochschild 2-cocycles
    bool stated_holds() const;
    bool corrected_holds() const;
};

/// Compares HP^n of a zero-bracket commutative algebra (M = A) with
///   stated:    chi^n + sum_{i=2}^n dim HH^i * C(d, n-i)
///   corrected: chi^n + dim Z^2 * C(d, n-2) - (d C(d, n-1) - chi^{n-1})
///              + sum_{i>=3} dim HH^i * C(d, n-i)      (n >= 2)
/// The corrected form accounts for delta_v landing in the (2, n-2)
/// component, where no i = 1 row is present to absorb it.
DecompositionReport trivial_bracket_decomposition(const AlgebraSpec& alg, int maxN);

}  // namespace pcoh
