#pragma once

#include <pcoh/algebra.hpp>
#include <pcoh/cochain.hpp>
#include <pcoh/complexes.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pcoh {

/// Truncated formal deformation m_t = m_0 + t m_1 + ..., l_t = l_0 + t l_1
/// + ... of alg, with m_0 and l_0 the structure maps of alg. Terms beyond
/// the stored lists count as zero.
struct DeformationSeries {
    AlgebraSpec alg;
    int order = 0;
    std::vector<BilinearMap> m_terms;  // m_1, m_2, ...
    std::vector<BilinearMap> l_terms;  // l_1, l_2, ... (each skew)

    /// m_k / l_k for any k >= 0 (k = 0 gives the algebra's maps).
    BilinearMap m(int k) const;
    BilinearMap l(int k) const;
};

/// Throws StructureError on shape errors and DomainError on a non-skew l_k.
void check_series(const DeformationSeries& series);

/// Polynomial in t with coefficients in a fixed vector space, truncated
/// after degree `order`.
class TruncatedSeries {
public:
    TruncatedSeries(std::size_t dim, int order);
    static TruncatedSeries constant(const Vector& v, int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Vector& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    Vector& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }
    TruncatedSeries& operator+=(const TruncatedSeries& other);
    TruncatedSeries& operator-=(const TruncatedSeries& other);

private:
    std::vector<Vector> coeffs_;
};

/// F_t(X, Y) for a bilinear series F_t = sum t^p F_p; coefficient n is
/// sum_{p+q+r=n} F_p(X_q, Y_r).
TruncatedSeries apply_series(const std::vector<BilinearMap>& terms, const TruncatedSeries& x,
                             const TruncatedSeries& y);

struct AxiomResidual {
    std::string axiom;  // associativity, leibniz, jacobi
    int order = 0;
    bool zero = true;
    std::vector<Index> witness;  // first basis triple with a nonzero residual
    Vector residual;             // value at the witness
};

struct DeformationCheckReport {
    int upto = 0;
    std::vector<AxiomResidual> entries;  // ordered by (order, axiom)
    bool ok() const;
    bool ok_through(int order) const;
    /// Lowest order with a nonzero residual, if any.
    std::optional<int> first_failure() const;
};

/// Expands associativity, Leibniz and Jacobi of (m_t, l_t) on all basis
/// triples and reports each t-coefficient for orders 0..upto.
DeformationCheckReport verify_deformation(const DeformationSeries& series, int upto);

struct CocycleCheck {
    bool cocycle = false;
    Cochain image;  // d^2 (m1, l1), a degree-3 Poisson cochain
};

/// Encodes (m1, l1) as a degree-2 Poisson cochain and applies d^2. The
/// short form uses M = A.
CocycleCheck is_poisson_2cocycle(const AlgebraSpec& alg, const BilinearMap& m1, const BilinearMap& l1);
CocycleCheck is_poisson_2cocycle(const AlgebraSpec& alg, const ModuleSpec& mod, const BilinearMap& m1,
                                 const BilinearMap& l1);

struct Obstruction {
    int order = 0;
    Cochain cochain;  // degree 3: F3 at (0,3), F2 at (2,1), F1 at (3,0)
};

/// (F1, F2, F3) for order n from m_p, l_p with 0 < p < n. Requires the
/// series to satisfy the deformation equations through order n-1
/// (DomainError naming the failing order otherwise) and asserts d^3 F = 0.
Obstruction obstruction(const DeformationSeries& partial, int n);

/// Solves d^2 (m_n, l_n) = F. Returns nullopt when F is not a coboundary.
/// The returned pair makes the extended series valid through order n
/// (asserted).
std::optional<std::pair<BilinearMap, BilinearMap>> lift_step(const DeformationSeries& partial, int n);

struct LiftResult {
    DeformationSeries series;          // extended as far as possible
    std::optional<int> obstructed_at;  // first order whose obstruction is not a coboundary
};

/// Applies lift_step for orders start.order + 1 .. target_order.
LiftResult lift_to(const DeformationSeries& start, int target_order);

/// Checks that g_t = id + t g_1 + ... (g_terms = g_1, g_2, ...) satisfies
/// g_t(m'_t(a,b)) = m_t(g_t a, g_t b) and the same for l, through the given
/// order. Each g_k is a d x d matrix (rows = output coordinates).
bool verify_equivalence(const DeformationSeries& target, const DeformationSeries& source,
                        const std::vector<std::vector<Vector>>& g_terms, int upto);

// ---------------------------------------------------------------------------
// Extensions by a module.

/// A (x) M with (a,x)(a',x') = (aa', ax' + xa' + f1(a,a')) and
/// {(a,x),(a',x')} = ({a,a'}, {a,x'}_* - {a',x}_* + f0(a,a')). The unit is
/// (1_A, -f1(1_A, 1_A)). Basis: the algebra basis followed by the module
/// basis.
AlgebraSpec extension_algebra(const AlgebraSpec& alg, const ModuleSpec& mod, const BilinearMap& f1,
                              const BilinearMap& f0);

/// Matrix of (a,x) -> (a, x - h(a)) on A (x) M, where h: A -> M is given as
/// an m x d matrix. It maps the extension by f to the extension by
/// f + d^1 h.
std::vector<Vector> extension_isomorphism(const AlgebraSpec& alg, const ModuleSpec& mod,
                                          const std::vector<Vector>& h);

/// d^1 h as a pair (product part, bracket part).
std::pair<BilinearMap, BilinearMap> coboundary_of(const AlgebraSpec& alg, const ModuleSpec& mod,
                                                  const std::vector<Vector>& h);

/// True when phi (rows = output coordinates) is invertible and preserves
/// unit, product and bracket.
bool is_poisson_isomorphism(const AlgebraSpec& source, const AlgebraSpec& target, const std::vector<Vector>& phi);

// ---------------------------------------------------------------------------
// Quantization.

struct ClassicalLimit {
    BilinearMap bracket;  // m_1(a,b) - m_1(b,a)
    AlgebraSpec poisson;  // (A, m_0, bracket)
    ValidationReport validation;
};

/// Requires a commutative m_0 (DomainError).
ClassicalLimit classical_limit(const DeformationSeries& product_series);

enum class QuantizationVerdict { no_quantization, inconclusive };

struct QuantizationReport {
    QuantizationVerdict verdict = QuantizationVerdict::inconclusive;
    std::size_t hp2 = 0;
    bool bracket_nonzero = false;
    std::string reason;
};

/// For a commutative Poisson algebra: HP^2 = 0 with a nonzero bracket rules
/// out any deformation quantization.
QuantizationReport quantization_obstruction_check(const AlgebraSpec& alg);

/// The decision rule on its own.
QuantizationReport quantization_verdict(std::size_t hp2, bool bracket_nonzero);

std::string to_string(QuantizationVerdict verdict);

// ---------------------------------------------------------------------------
// 2x2 matrices, basis (1, e, f, h).

/// Phi_{nu,lambda}: unit row and column scaled by nu, the sl2 block given by
/// lambda. Throws DomainError unless alg is the builtin m2.
BilinearMap phi_family(const AlgebraSpec& alg, const Rational& nu, const Rational& lambda);

/// The sl2 x sl2 block parametrised by (lambda, mu); zero on pairs that
/// involve the unit.
BilinearMap sl2_pair_map(const Rational& lambda, const Rational& mu);

/// Product on span(1, e, f, h) with 1 as unit and sl2_pair_map(lambda, mu)
/// on sl2 x sl2.
BilinearMap unital_sl2_product(const Rational& lambda, const Rational& mu);

/// First basis triple where the product fails associativity, if any.
std::optional<std::vector<Index>> associativity_failure(const BilinearMap& product);

/// Coefficients m_0, m_1, m_2 of the printed product table as polynomials
/// in t, read entry by entry.
std::vector<BilinearMap> m2_table3_coefficients(const Rational& s);

/// m_t from the printed product table depending on s, with l_0 the
/// commutator bracket and l_k = 0 for k >= 1; order 2 (m_t is quadratic
/// in t).
DeformationSeries m2_table3_series(const Rational& s);

}  // namespace pcoh
