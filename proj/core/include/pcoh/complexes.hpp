#pragma once

#include <pcoh/algebra.hpp>
#include <pcoh/cochain.hpp>
#include <pcoh/linalg.hpp>

#include <string>
#include <vector>

namespace pcoh {

/// How the horizontal (delta_H) blocks are signed when the total
/// differential is assembled. verbatim uses every block as written;
/// horizontal_twist multiplies the delta_H block leaving (i,j) by (-1)^i.
enum class SignConvention { verbatim, horizontal_twist };

std::string to_string(SignConvention convention);

// ---------------------------------------------------------------------------
// Single blocks. Each maps one component Hom(A^i (x) L^j, M) to another and
// uses the coordinate order of that single component.

/// Hom(L^j, M) -> Hom(L^{j+1}, M), the Chevalley-Eilenberg coboundary for
/// the Lie action {-,-}_*. Written independently of delta_H.
SparseMatrix ce_coboundary(const AlgebraSpec& alg, const ModuleSpec& mod, int j);

/// Hom(A^i (x) L^j, M) -> Hom(A^{i+1} (x) L^j, M); the wedge part is a
/// spectator.
SparseMatrix hochschild_coboundary(const AlgebraSpec& alg, const ModuleSpec& mod, int i, int j);

/// Hom(A^i (x) L^j, M) -> Hom(A^i (x) L^{j+1}, M).
SparseMatrix delta_H(const AlgebraSpec& alg, const ModuleSpec& mod, int i, int j);

/// Hom(L^j, M) -> Hom(A^2 (x) L^{j-1}, M), j >= 1:
///   (delta_v f)(a, b; w) = a f(b^w) - f(ab^w) + f(a^w) b
SparseMatrix delta_v(const AlgebraSpec& alg, const ModuleSpec& mod, int j);

// ---------------------------------------------------------------------------
// Total complexes.

struct ComplexSlice {
    Theory theory = Theory::poisson;
    int degree = 0;
    CochainSpace source;
    CochainSpace target;
    SparseMatrix matrix;  // target.total x source.total
    SignConvention convention = SignConvention::verbatim;
};

/// Degree-n differential of the given theory assembled under a fixed
/// convention. No d^2 check.
ComplexSlice assemble_slice(Theory theory, const AlgebraSpec& alg, const ModuleSpec& mod, int n,
                            SignConvention convention);

/// True when next * prev is the zero matrix.
bool composes_to_zero(const ComplexSlice& next, const ComplexSlice& prev);

/// Picks the convention for (theory, alg, mod): verbatim if a probe
/// composition vanishes under it, the twist otherwise.
SignConvention resolve_convention(Theory theory, const AlgebraSpec& alg, const ModuleSpec& mod);

struct ComplexBuild {
    Theory theory = Theory::poisson;
    SignConvention convention = SignConvention::verbatim;
    std::vector<ComplexSlice> slices;  // slices[n] is d^n, n = 0..maxN
};

/// Builds d^0..d^maxN and asserts d^{n+1} d^n = 0 for every consecutive
/// pair. Falls back to the other convention if the first one fails and
/// throws InternalError if neither works. The poisson theory requires a
/// Poisson module (DomainError otherwise).
ComplexBuild build_complex(Theory theory, const AlgebraSpec& alg, const ModuleSpec& mod, int maxN);

/// d^n of the total Poisson complex; builds d^{n+1} as well and asserts the
/// composition vanishes.
ComplexSlice total_poisson_differential(const AlgebraSpec& alg, const ModuleSpec& mod, int n);

/// d^n of the quasi or omega complex, with the same assertion.
ComplexSlice quasi_or_omega_differential(const AlgebraSpec& alg, const ModuleSpec& mod, int n, Theory theory);

// ---------------------------------------------------------------------------
// Complexes of subspaces.

/// Cochain complex given by explicit spaces and maps in subspace
/// coordinates: differentials[k] maps degree first_degree+k to the next.
struct CochainComplex {
    std::string label;
    int first_degree = 0;
    std::vector<std::size_t> space_dims;
    std::vector<SparseMatrix> differentials;
    SignConvention convention = SignConvention::verbatim;
};

/// Matrix of the map induced by an ambient map on the given kernel bases.
/// Throws InternalError if the image of a source vector leaves the target
/// subspace.
SparseMatrix induced_differential(const SparseMatrix& ambient, const KernelBasis& source, const KernelBasis& target);

/// Constraints cutting out the skew multiderivations inside Hom(L^n, A):
///   f(ab ^ w) - a f(b ^ w) - f(a ^ w) b = 0
/// (derivation in the first slot suffices by skew-symmetry). Zero rows for
/// n = 0.
SparseMatrix lp_constraints(const AlgebraSpec& alg, int n);

/// Basis of chi^n(A) inside Hom(L^n, A), in ce-layout coordinates.
/// Requires a commutative algebra (DomainError).
KernelBasis lp_space_basis(const AlgebraSpec& alg, int n);

/// delta_LP on Hom(L^n, A), from the displayed two-sum formula.
SparseMatrix lp_ambient_coboundary(const AlgebraSpec& alg, int n);

/// delta_LP: chi^n -> chi^{n+1} in the coordinates of lp_space_basis.
SparseMatrix lp_coboundary(const AlgebraSpec& alg, int n);

/// sigma^n: places f (given in Hom(L^n, A) coordinates) in the (0,n)
/// component of the degree-n Poisson cochain space with M = A.
Cochain sigma_embed(const AlgebraSpec& alg, int n, const Vector& f);

/// LP complex chi^0 -> ... -> chi^{maxN+1}.
CochainComplex lp_complex(const AlgebraSpec& alg, int maxN);

enum class DeformationType { I, II };

/// Type I: spaces ker delta_v in Hom(L^q, A) (q = 0 gives A) with the CE
/// differential, degrees 0..maxN.
/// Type II: spaces ker(delta_H: Hom(A^{p+1}, A) -> Hom(A^{p+1} (x) L^1, A))
/// with the Hochschild differential, degrees p = 1..maxN.
CochainComplex type_complex(const AlgebraSpec& alg, DeformationType which, int maxN);

}  // namespace pcoh
