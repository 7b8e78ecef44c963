#include <pcoh/cohomology.hpp>
#include <pcoh/deformation.hpp>
#include <pcoh/errors.hpp>

#include <array>

namespace pcoh {

BilinearMap DeformationSeries::m(int k) const
{
    if (k == 0) return BilinearMap::from_constants(alg.dim, alg.dim, alg.mult);
    if (k > 0 && static_cast<std::size_t>(k) <= m_terms.size()) return m_terms[k - 1];
    return BilinearMap::zero(alg.dim, alg.dim);
}

BilinearMap DeformationSeries::l(int k) const
{
    if (k == 0) return BilinearMap::from_constants(alg.dim, alg.dim, alg.bracket);
    if (k > 0 && static_cast<std::size_t>(k) <= l_terms.size()) return l_terms[k - 1];
    return BilinearMap::zero(alg.dim, alg.dim);
}

void check_series(const DeformationSeries& series)
{
    check_structure(series.alg);
    const std::size_t d = series.alg.dim;
    if (series.order < 0) throw StructureError("negative series order");
    for (const auto* list : {&series.m_terms, &series.l_terms})
        for (const auto& b : *list)
            if (b.in_dim != d || b.out_dim != d || b.values.size() != d * d)
                throw StructureError("series term has the wrong shape");
    for (std::size_t k = 0; k < series.l_terms.size(); ++k)
        if (!series.l_terms[k].is_skew())
            throw DomainError("bracket term l_" + std::to_string(k + 1) + " is not skew-symmetric");
}

// ---------------------------------------------------------------------------

TruncatedSeries::TruncatedSeries(std::size_t dim, int order)
    : coeffs_(static_cast<std::size_t>(order + 1), zero_vector(dim))
{
}

TruncatedSeries TruncatedSeries::constant(const Vector& v, int order)
{
    TruncatedSeries s(v.size(), order);
    s[0] = v;
    return s;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other)
{
    for (std::size_t k = 0; k < coeffs_.size(); ++k) axpy(coeffs_[k], Rational(1), other.coeffs_[k]);
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other)
{
    for (std::size_t k = 0; k < coeffs_.size(); ++k) axpy(coeffs_[k], Rational(-1), other.coeffs_[k]);
    return *this;
}

TruncatedSeries apply_series(const std::vector<BilinearMap>& terms, const TruncatedSeries& x,
                             const TruncatedSeries& y)
{
    const int order = std::min(x.order(), y.order());
    const std::size_t out_dim = terms.empty() ? x[0].size() : terms[0].out_dim;
    TruncatedSeries out(out_dim, order);
    for (int p = 0; p <= order && p < static_cast<int>(terms.size()); ++p) {
        if (terms[p].is_zero()) continue;
        for (int q = 0; p + q <= order; ++q) {
            if (is_zero(x[q])) continue;
            for (int r = 0; p + q + r <= order; ++r) {
                if (is_zero(y[r])) continue;
                axpy(out[p + q + r], Rational(1), terms[p].apply(x[q], y[r]));
            }
        }
    }
    return out;
}

bool DeformationCheckReport::ok() const
{
    for (const auto& e : entries)
        if (!e.zero) return false;
    return true;
}

bool DeformationCheckReport::ok_through(int order) const
{
    for (const auto& e : entries)
        if (e.order <= order && !e.zero) return false;
    return true;
}

std::optional<int> DeformationCheckReport::first_failure() const
{
    std::optional<int> out;
    for (const auto& e : entries)
        if (!e.zero && (!out || e.order < *out)) out = e.order;
    return out;
}

namespace {

Vector basis_vector(std::size_t d, Index i)
{
    Vector v = zero_vector(d);
    v[i] = 1;
    return v;
}

std::vector<BilinearMap> m_list(const DeformationSeries& s, int upto)
{
    std::vector<BilinearMap> out;
    for (int k = 0; k <= upto; ++k) out.push_back(s.m(k));
    return out;
}

std::vector<BilinearMap> l_list(const DeformationSeries& s, int upto)
{
    std::vector<BilinearMap> out;
    for (int k = 0; k <= upto; ++k) out.push_back(s.l(k));
    return out;
}

}  // namespace

DeformationCheckReport verify_deformation(const DeformationSeries& series, int upto)
{
    if (upto < 0) throw DomainError("check order must be nonnegative");
    check_series(series);
    const std::size_t d = series.alg.dim;
    const auto M = m_list(series, upto);
    const auto L = l_list(series, upto);
    static const std::array<const char*, 3> names{"associativity", "leibniz", "jacobi"};

    DeformationCheckReport report;
    report.upto = upto;
    for (int k = 0; k <= upto; ++k)
        for (const char* name : names) report.entries.push_back({name, k, true, {}, {}});
    auto record = [&](std::size_t axiom, const TruncatedSeries& value, Index a, Index b, Index c) {
        for (int k = 0; k <= upto; ++k) {
            auto& e = report.entries[static_cast<std::size_t>(k) * names.size() + axiom];
            if (e.zero && !is_zero(value[k])) {
                e.zero = false;
                e.witness = {a, b, c};
                e.residual = value[k];
            }
        }
    };

    std::vector<TruncatedSeries> basis;
    for (Index i = 0; i < d; ++i) basis.push_back(TruncatedSeries::constant(basis_vector(d, i), upto));
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) {
            const auto ab = apply_series(M, basis[a], basis[b]);
            const auto lab = apply_series(L, basis[a], basis[b]);
            for (Index c = 0; c < d; ++c) {
                auto assoc = apply_series(M, ab, basis[c]);
                assoc -= apply_series(M, basis[a], apply_series(M, basis[b], basis[c]));
                record(0, assoc, a, b, c);

                auto leibniz = apply_series(L, ab, basis[c]);
                leibniz -= apply_series(M, basis[a], apply_series(L, basis[b], basis[c]));
                leibniz -= apply_series(M, apply_series(L, basis[a], basis[c]), basis[b]);
                record(1, leibniz, a, b, c);

                auto jacobi = apply_series(L, lab, basis[c]);
                jacobi += apply_series(L, apply_series(L, basis[b], basis[c]), basis[a]);
                jacobi += apply_series(L, apply_series(L, basis[c], basis[a]), basis[b]);
                record(2, jacobi, a, b, c);
            }
        }
    return report;
}

// ---------------------------------------------------------------------------

CocycleCheck is_poisson_2cocycle(const AlgebraSpec& alg, const BilinearMap& m1, const BilinearMap& l1)
{
    return is_poisson_2cocycle(alg, regular_module(alg), m1, l1);
}

CocycleCheck is_poisson_2cocycle(const AlgebraSpec& alg, const ModuleSpec& mod, const BilinearMap& m1,
                                 const BilinearMap& l1)
{
    Cochain x = encode_degree2(alg.dim, mod.dim, m1, l1);
    ComplexSlice d2 = total_poisson_differential(alg, mod, 2);
    CocycleCheck out;
    out.image = Cochain{d2.target, d2.matrix.apply(x.coords)};
    out.cocycle = is_zero(out.image.coords);
    return out;
}

Obstruction obstruction(const DeformationSeries& partial, int n)
{
    if (n < 1) throw DomainError("obstruction order must be at least 1");
    check_series(partial);
    if (auto bad = verify_deformation(partial, n - 1).first_failure())
        throw DomainError("series fails the deformation equations at order " + std::to_string(*bad));
    const std::size_t d = partial.alg.dim;
    const auto M = m_list(partial, n - 1);
    const auto L = l_list(partial, n - 1);

    auto F = [&](const Component& comp, std::span<const Index> t, std::span<const Index> w) {
        Vector out = zero_vector(d);
        for (int p = 1; p < n; ++p) {
            const int q = n - p;
            if (comp.i == 3) {
                axpy(out, 1, M[p].apply(M[q](t[0], t[1]), basis_vector(d, t[2])));
                axpy(out, -1, M[p].apply(basis_vector(d, t[0]), M[q](t[1], t[2])));
            } else if (comp.i == 2) {
                const Index a = t[0], b = t[1], c = w[0];
                axpy(out, 1, L[q].apply(M[p](a, b), basis_vector(d, c)));
                axpy(out, -1, M[p].apply(basis_vector(d, a), L[q](b, c)));
                axpy(out, -1, M[p].apply(L[q](a, c), basis_vector(d, b)));
            } else {
                const Index a = w[0], b = w[1], c = w[2];
                axpy(out, 1, L[q].apply(L[p](a, b), basis_vector(d, c)));
                axpy(out, 1, L[q].apply(L[p](b, c), basis_vector(d, a)));
                axpy(out, 1, L[q].apply(L[p](c, a), basis_vector(d, b)));
            }
        }
        return out;
    };
    Obstruction out;
    out.order = n;
    out.cochain = encode(space_layout(Theory::poisson, 3, d, d), F);
    ComplexSlice d3 = total_poisson_differential(partial.alg, regular_module(partial.alg), 3);
    if (!is_zero(d3.matrix.apply(out.cochain.coords)))
        throw InternalError("obstruction at order " + std::to_string(n) + " is not a 3-cocycle");
    return out;
}

std::optional<std::pair<BilinearMap, BilinearMap>> lift_step(const DeformationSeries& partial, int n)
{
    Obstruction F = obstruction(partial, n);
    ComplexSlice d2 = total_poisson_differential(partial.alg, regular_module(partial.alg), 2);
    auto x = solve(d2.matrix, F.cochain.coords);
    if (!x) return std::nullopt;
    auto lifted = decode_degree2(Cochain{d2.source, *x});

    DeformationSeries extended = partial;
    extended.order = n;
    extended.m_terms.resize(static_cast<std::size_t>(n), BilinearMap::zero(partial.alg.dim, partial.alg.dim));
    extended.l_terms.resize(static_cast<std::size_t>(n), BilinearMap::zero(partial.alg.dim, partial.alg.dim));
    extended.m_terms[n - 1] = lifted.first;
    extended.l_terms[n - 1] = lifted.second;
    if (!verify_deformation(extended, n).ok())
        throw InternalError("lifted terms do not satisfy the order-" + std::to_string(n) + " equations");
    return lifted;
}

LiftResult lift_to(const DeformationSeries& start, int target_order)
{
    LiftResult out{start, std::nullopt};
    for (int n = start.order + 1; n <= target_order; ++n) {
        auto step = lift_step(out.series, n);
        if (!step) {
            out.obstructed_at = n;
            break;
        }
        const auto zero = BilinearMap::zero(start.alg.dim, start.alg.dim);
        out.series.m_terms.resize(static_cast<std::size_t>(n), zero);
        out.series.l_terms.resize(static_cast<std::size_t>(n), zero);
        out.series.m_terms[n - 1] = step->first;
        out.series.l_terms[n - 1] = step->second;
        out.series.order = n;
    }
    return out;
}

bool verify_equivalence(const DeformationSeries& target, const DeformationSeries& source,
                        const std::vector<std::vector<Vector>>& g_terms, int upto)
{
    check_series(target);
    check_series(source);
    const std::size_t d = target.alg.dim;
    if (source.alg.dim != d) throw StructureError("series over algebras of different dimension");
    for (const auto& g : g_terms) {
        if (g.size() != d) throw StructureError("gauge term has the wrong shape");
        for (const auto& row : g)
            if (row.size() != d) throw StructureError("gauge term has the wrong shape");
    }
    auto gauge = [&](const TruncatedSeries& x) {
        TruncatedSeries out = x;
        for (int n = 0; n <= upto; ++n)
            for (int k = 1; k <= n && k <= static_cast<int>(g_terms.size()); ++k)
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t c = 0; c < d; ++c) out[n][r] += g_terms[k - 1][r][c] * x[n - k][c];
        return out;
    };
    const auto Mt = m_list(target, upto), Ms = m_list(source, upto);
    const auto Lt = l_list(target, upto), Ls = l_list(source, upto);
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) {
            auto ea = TruncatedSeries::constant(basis_vector(d, a), upto);
            auto eb = TruncatedSeries::constant(basis_vector(d, b), upto);
            auto ga = gauge(ea), gb = gauge(eb);
            auto lhs_m = gauge(apply_series(Ms, ea, eb));
            auto rhs_m = apply_series(Mt, ga, gb);
            auto lhs_l = gauge(apply_series(Ls, ea, eb));
            auto rhs_l = apply_series(Lt, ga, gb);
            for (int k = 0; k <= upto; ++k)
                if (lhs_m[k] != rhs_m[k] || lhs_l[k] != rhs_l[k]) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------

AlgebraSpec extension_algebra(const AlgebraSpec& alg, const ModuleSpec& mod, const BilinearMap& f1,
                              const BilinearMap& f0)
{
    check_structure(alg, mod);
    if (mod.flavor != ModuleFlavor::poisson) throw DomainError("extensions need a Poisson module");
    const std::size_t d = alg.dim, m = mod.dim;
    if (f1.in_dim != d || f0.in_dim != d || f1.out_dim != m || f0.out_dim != m)
        throw StructureError("extension cochain has the wrong shape");
    if (!f0.is_skew()) throw DomainError("bracket part of the extension cochain is not skew-symmetric");

    AlgebraSpec out;
    out.name = alg.name + "-ext-" + mod.name;
    out.dim = d + m;
    out.basis_names = alg.basis_names;
    for (std::size_t u = 0; u < m; ++u)
        out.basis_names.push_back("m:" + (u < mod.basis_names.size() ? mod.basis_names[u] : std::to_string(u)));
    out.unit = alg.unit;
    Vector shift = f1.apply(alg.unit, alg.unit);
    for (std::size_t u = 0; u < m; ++u) out.unit.push_back(-shift[u]);

    const Index D = static_cast<Index>(d);
    out.mult = alg.mult;
    for (const auto& c : f1.to_constants()) out.mult.push_back({c.i, c.j, D + c.k, c.value});
    for (const auto& c : mod.left) out.mult.push_back({c.i, D + c.j, D + c.k, c.value});
    for (const auto& c : mod.right) out.mult.push_back({D + c.j, c.i, D + c.k, c.value});

    out.bracket = alg.bracket;
    for (const auto& c : f0.to_constants()) out.bracket.push_back({c.i, c.j, D + c.k, c.value});
    for (const auto& c : mod.lie) {
        out.bracket.push_back({c.i, D + c.j, D + c.k, c.value});
        out.bracket.push_back({D + c.j, c.i, D + c.k, -c.value});
    }
    return out;
}

std::vector<Vector> extension_isomorphism(const AlgebraSpec& alg, const ModuleSpec& mod,
                                          const std::vector<Vector>& h)
{
    const std::size_t d = alg.dim, m = mod.dim;
    if (h.size() != m) throw StructureError("h must be an m x d matrix");
    std::vector<Vector> phi(d + m, zero_vector(d + m));
    for (std::size_t k = 0; k < d + m; ++k) phi[k][k] = 1;
    for (std::size_t o = 0; o < m; ++o) {
        if (h[o].size() != d) throw StructureError("h must be an m x d matrix");
        for (std::size_t a = 0; a < d; ++a) phi[d + o][a] = -h[o][a];
    }
    return phi;
}

std::pair<BilinearMap, BilinearMap> coboundary_of(const AlgebraSpec& alg, const ModuleSpec& mod,
                                                  const std::vector<Vector>& h)
{
    const std::size_t d = alg.dim, m = mod.dim;
    if (h.size() != m) throw StructureError("h must be an m x d matrix");
    CochainSpace s1 = space_layout(Theory::poisson, 1, d, m);
    Cochain x = encode(s1, [&](const Component&, std::span<const Index>, std::span<const Index> w) {
        Vector v(m);
        for (std::size_t o = 0; o < m; ++o) v[o] = h[o].at(w[0]);
        return v;
    });
    ComplexSlice d1 = total_poisson_differential(alg, mod, 1);
    Cochain image{d1.target, d1.matrix.apply(x.coords)};
    return decode_degree2(image);
}

bool is_poisson_isomorphism(const AlgebraSpec& source, const AlgebraSpec& target, const std::vector<Vector>& phi)
{
    check_structure(source);
    check_structure(target);
    const std::size_t n = source.dim;
    if (target.dim != n || phi.size() != n) return false;
    for (const auto& row : phi)
        if (row.size() != n) return false;
    SparseMatrix P = SparseMatrix::from_dense(phi, n);
    if (rank(P) != n) return false;
    if (P.apply(source.unit) != target.unit) return false;
    auto sm = BilinearMap::from_constants(n, n, source.mult), tm = BilinearMap::from_constants(n, n, target.mult);
    auto sb = BilinearMap::from_constants(n, n, source.bracket),
         tb = BilinearMap::from_constants(n, n, target.bracket);
    std::vector<Vector> images;
    for (std::size_t k = 0; k < n; ++k) images.push_back(P.column(k));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            if (P.apply(sm(i, j)) != tm.apply(images[i], images[j])) return false;
            if (P.apply(sb(i, j)) != tb.apply(images[i], images[j])) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------

ClassicalLimit classical_limit(const DeformationSeries& product_series)
{
    check_series(product_series);
    const AlgebraSpec& alg = product_series.alg;
    if (!is_commutative(alg)) throw DomainError("the classical limit needs a commutative product m_0");
    const std::size_t d = alg.dim;
    BilinearMap m1 = product_series.m(1);
    ClassicalLimit out;
    out.bracket = BilinearMap::zero(d, d);
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) {
            Vector v = m1(a, b);
            axpy(v, -1, m1(b, a));
            out.bracket.at(a, b) = v;
        }
    out.poisson = alg;
    out.poisson.name = alg.name + "-classical-limit";
    out.poisson.bracket = out.bracket.to_constants();
    out.validation = validate_algebra(out.poisson);
    return out;
}

std::string to_string(QuantizationVerdict verdict)
{
    return verdict == QuantizationVerdict::no_quantization ? "no-quantization" : "inconclusive";
}

QuantizationReport quantization_verdict(std::size_t hp2, bool bracket_nonzero)
{
    QuantizationReport out;
    out.hp2 = hp2;
    out.bracket_nonzero = bracket_nonzero;
    if (!bracket_nonzero) {
        out.reason = "the bracket is zero";
    } else if (hp2 != 0) {
        out.reason = "HP^2 is nonzero";
    } else {
        out.verdict = QuantizationVerdict::no_quantization;
        out.reason = "HP^2 = 0 and the bracket is nonzero, so every formal deformation is trivial";
    }
    return out;
}

QuantizationReport quantization_obstruction_check(const AlgebraSpec& alg)
{
    check_structure(alg);
    if (!is_commutative(alg)) throw DomainError("deformation quantization concerns commutative Poisson algebras");
    std::size_t hp2 = cohomology_dims(Theory::poisson, alg, regular_module(alg), 2).dims[2];
    return quantization_verdict(hp2, !has_zero_bracket(alg));
}

// ---------------------------------------------------------------------------

namespace {

constexpr Index ONE = 0, E = 1, F = 2, H = 3;

void require_m2(const AlgebraSpec& alg)
{
    AlgebraSpec ref = builtin("m2");
    if (alg.dim != 4 || alg.unit != ref.unit ||
        !(BilinearMap::from_constants(4, 4, alg.mult) == BilinearMap::from_constants(4, 4, ref.mult)) ||
        !(BilinearMap::from_constants(4, 4, alg.bracket) == BilinearMap::from_constants(4, 4, ref.bracket)))
        throw DomainError("this construction is defined only for the builtin m2");
}

void put(BilinearMap& b, Index x, Index y, std::initializer_list<std::pair<Index, Rational>> value)
{
    for (const auto& [k, v] : value) b.at(x, y)[k] += v;
}

}  // namespace

BilinearMap phi_family(const AlgebraSpec& alg, const Rational& nu, const Rational& lambda)
{
    require_m2(alg);
    BilinearMap p = BilinearMap::zero(4, 4);
    for (Index x : {ONE, E, F, H}) {
        put(p, ONE, x, {{x, nu}});
        if (x != ONE) put(p, x, ONE, {{x, nu}});
    }
    const Rational half = lambda / 2, quarter = lambda / 4;
    put(p, E, F, {{ONE, half}, {H, quarter}});
    put(p, E, H, {{E, -half}});
    put(p, F, E, {{ONE, half}, {H, -quarter}});
    put(p, F, H, {{F, half}});
    put(p, H, E, {{E, half}});
    put(p, H, F, {{F, -half}});
    put(p, H, H, {{ONE, lambda}});
    return p;
}

BilinearMap sl2_pair_map(const Rational& lambda, const Rational& mu)
{
    BilinearMap p = BilinearMap::zero(4, 4);
    put(p, E, F, {{ONE, mu / 6}, {H, lambda / 4}});
    put(p, E, H, {{E, -lambda / 2}});
    put(p, F, E, {{ONE, mu / 6}, {H, -lambda / 4}});
    put(p, F, H, {{F, lambda / 2}});
    put(p, H, E, {{E, lambda / 2}});
    put(p, H, F, {{F, -lambda / 2}});
    put(p, H, H, {{ONE, mu / 3}});
    return p;
}

BilinearMap unital_sl2_product(const Rational& lambda, const Rational& mu)
{
    BilinearMap p = sl2_pair_map(lambda, mu);
    for (Index x : {ONE, E, F, H}) {
        put(p, ONE, x, {{x, 1}});
        if (x != ONE) put(p, x, ONE, {{x, 1}});
    }
    return p;
}

std::optional<std::vector<Index>> associativity_failure(const BilinearMap& product)
{
    const std::size_t d = product.in_dim;
    if (product.out_dim != d) throw StructureError("a product must map A x A to A");
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b)
            for (Index c = 0; c < d; ++c) {
                Vector lhs = product.apply(product(a, b), basis_vector(d, c));
                Vector rhs = product.apply(basis_vector(d, a), product(b, c));
                if (lhs != rhs) return std::vector<Index>{a, b, c};
            }
    return std::nullopt;
}

std::vector<BilinearMap> m2_table3_coefficients(const Rational& s)
{
    std::vector<BilinearMap> c(3, BilinearMap::zero(4, 4));
    const Rational half(1, 2);
    // unit row and column: t-independent
    for (Index x : {ONE, E, F, H}) {
        put(c[0], ONE, x, {{x, 1}});
        if (x != ONE) put(c[0], x, ONE, {{x, 1}});
    }
    // (1 - ts)^2 = 1 - 2s t + s^2 t^2
    const std::array<Rational, 3> sq{Rational(1), Rational(-2 * s), Rational(s * s)};
    // e.f = 1/2 (1 - t) h + 1/2 (1 - ts)^2 1
    put(c[0], E, F, {{H, half}});
    put(c[1], E, F, {{H, -half}});
    // f.e = -1/2 (1 - t) h + 1/2 (1 - ts)^2 1
    put(c[0], F, E, {{H, -half}});
    put(c[1], F, E, {{H, half}});
    for (int k = 0; k < 3; ++k) {
        put(c[k], E, F, {{ONE, half * sq[k]}});
        put(c[k], F, E, {{ONE, half * sq[k]}});
        put(c[k], H, H, {{ONE, sq[k]}});
    }
    // e.h = -e - tse, f.h = f + tsf, h.e = e - tse, h.f = -f - tsf
    put(c[0], E, H, {{E, -1}});
    put(c[1], E, H, {{E, -s}});
    put(c[0], F, H, {{F, 1}});
    put(c[1], F, H, {{F, s}});
    put(c[0], H, E, {{E, 1}});
    put(c[1], H, E, {{E, -s}});
    put(c[0], H, F, {{F, -1}});
    put(c[1], H, F, {{F, -s}});
    return c;
}

DeformationSeries m2_table3_series(const Rational& s)
{
    auto c = m2_table3_coefficients(s);
    DeformationSeries series;
    series.alg = builtin("m2");
    if (!(c[0] == BilinearMap::from_constants(4, 4, series.alg.mult)))
        throw InternalError("t = 0 row of the product table differs from the matrix product");
    series.order = 2;
    series.m_terms = {c[1], c[2]};
    series.l_terms = {BilinearMap::zero(4, 4), BilinearMap::zero(4, 4)};
    return series;
}

}  // namespace pcoh
