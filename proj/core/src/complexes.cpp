#include <pcoh/complexes.hpp>
#include <pcoh/errors.hpp>
#include <pcoh/parallel.hpp>

#include <algorithm>
#include <map>

namespace pcoh {

std::string to_string(SignConvention convention)
{
    return convention == SignConvention::verbatim ? "verbatim" : "horizontal-twist";
}

namespace {

enum class Op { id, left, right, lie };

/// Accumulates one block of output rows (the m outputs of a single target
/// tuple) from terms "coef * Op(a) f(tensor; wedge)".
class RowBuilder {
public:
    RowBuilder(const AlgebraTables& at, const ModuleTables& mt)
        : at_(at), mt_(mt), m_(mt.dim), codec_(at.dim), acc_(mt.dim)
    {
    }

    const AlgebraTables& algebra() const { return at_; }

    void add(const Rational& coef, Op op, Index a, const Component& src, std::span<const Index> tensor,
             std::span<const Index> wedge)
    {
        if (sgn(coef) == 0) return;
        WedgeSign ws = wedge_normalize(wedge);
        if (ws.sign == 0) return;
        Rational c = ws.sign < 0 ? Rational(-coef) : coef;
        std::size_t base = src.index(codec_.tensor_rank(tensor), codec_.wedge_rank(ws.sorted), m_, 0);
        const BilinearTable* table = nullptr;
        switch (op) {
        case Op::id:
            for (std::size_t u = 0; u < m_; ++u) acc_[u][static_cast<Index>(base + u)] += c;
            return;
        case Op::left: table = &mt_.left; break;
        case Op::right: table = &mt_.right; break;
        case Op::lie: table = &mt_.lie; break;
        }
        for (std::size_t u = 0; u < m_; ++u)
            for (const auto& [o, v] : (*table)(a, static_cast<Index>(u)))
                acc_[o][static_cast<Index>(base + u)] += c * v;
    }

    /// Moves the accumulated m rows to out and resets.
    void flush(std::vector<SparseRow>& out)
    {
        for (auto& row_map : acc_) {
            SparseRow row;
            row.reserve(row_map.size());
            for (auto& [col, v] : row_map)
                if (sgn(v) != 0) row.push_back({col, std::move(v)});
            out.push_back(std::move(row));
            row_map.clear();
        }
    }

private:
    const AlgebraTables& at_;
    const ModuleTables& mt_;
    std::size_t m_;
    IndexCodec codec_;
    std::vector<std::map<Index, Rational>> acc_;
};

using Tuple = std::vector<Index>;

// Hochschild terms for target (a_0..a_i; w), source component (i, j).
void hochschild_terms(RowBuilder& rb, const Rational& sign, const Component& src, const Tuple& t, const Tuple& w)
{
    const std::size_t i = t.size() - 1;
    Tuple s(t.begin() + 1, t.end());
    rb.add(sign, Op::left, t[0], src, s, w);
    for (std::size_t k = 0; k < i; ++k) {
        Tuple merged;
        merged.reserve(i);
        merged.insert(merged.end(), t.begin(), t.begin() + k);
        merged.push_back(0);
        merged.insert(merged.end(), t.begin() + k + 2, t.end());
        Rational c = (k % 2 == 0) ? Rational(-sign) : sign;  // (-1)^{k+1}
        for (const auto& [r, v] : rb.algebra().mult(t[k], t[k + 1])) {
            merged[k] = r;
            rb.add(c * v, Op::id, 0, src, merged, w);
        }
    }
    Tuple head(t.begin(), t.end() - 1);
    rb.add((i % 2 == 0) ? Rational(-sign) : sign, Op::right, t[i], src, head, w);
}

// delta_H terms for target (a_1..a_i; x_1..x_{j+1}), source component (i, j).
void delta_H_terms(RowBuilder& rb, const Rational& sign, const Component& src, const Tuple& t, const Tuple& x)
{
    const std::size_t jj = x.size();
    Tuple rest;
    for (std::size_t l = 0; l < jj; ++l) {
        rest.clear();
        for (std::size_t q = 0; q < jj; ++q)
            if (q != l) rest.push_back(x[q]);
        Rational c = (l % 2 == 0) ? sign : Rational(-sign);  // (-1)^{l+1} with l 1-based
        rb.add(c, Op::lie, x[l], src, t, rest);
        Tuple moved = t;
        for (std::size_t p = 0; p < t.size(); ++p) {
            for (const auto& [r, v] : rb.algebra().bracket(x[l], t[p])) {
                moved[p] = r;
                rb.add(-c * v, Op::id, 0, src, moved, rest);
            }
            moved[p] = t[p];
        }
    }
    Tuple wedge;
    for (std::size_t p = 0; p < jj; ++p)
        for (std::size_t q = p + 1; q < jj; ++q) {
            wedge.assign(1, 0);
            for (std::size_t k = 0; k < jj; ++k)
                if (k != p && k != q) wedge.push_back(x[k]);
            Rational c = ((p + q) % 2 == 0) ? sign : Rational(-sign);  // (-1)^{p+q}, parity unchanged by 0-basing
            for (const auto& [r, v] : rb.algebra().bracket(x[p], x[q])) {
                wedge[0] = r;
                rb.add(c * v, Op::id, 0, src, t, wedge);
            }
        }
}

// delta_v terms for target (a, b; w), source component (0, j).
void delta_v_terms(RowBuilder& rb, const Rational& sign, const Component& src, const Tuple& t, const Tuple& w)
{
    Tuple x;
    x.reserve(w.size() + 1);
    x.push_back(t[1]);
    x.insert(x.end(), w.begin(), w.end());
    rb.add(sign, Op::left, t[0], src, {}, x);
    x[0] = t[0];
    rb.add(sign, Op::right, t[1], src, {}, x);
    for (const auto& [r, v] : rb.algebra().mult(t[0], t[1])) {
        x[0] = r;
        rb.add(-sign * v, Op::id, 0, src, {}, x);
    }
}

Component lone_component(int i, int j, std::size_t d, std::size_t m)
{
    Component c;
    c.i = i;
    c.j = j;
    c.tensor_count = 1;
    for (int k = 0; k < i; ++k) c.tensor_count *= d;
    c.wedge_count = binomial(d, static_cast<std::size_t>(j));
    c.dim = m * c.tensor_count * c.wedge_count;
    return c;
}

template <class Terms>
SparseMatrix build_block(const AlgebraSpec& alg, const ModuleSpec& mod, const Component& src, const Component& tgt,
                         Terms terms)
{
    check_structure(alg, mod);
    AlgebraTables at(alg);
    ModuleTables mt(alg, mod);
    RowBuilder rb(at, mt);
    std::vector<SparseRow> rows;
    rows.reserve(tgt.dim);
    auto tensors = all_tensor_tuples(alg.dim, tgt.i);
    auto wedges = all_wedge_tuples(alg.dim, tgt.j);
    for (const auto& t : tensors)
        for (const auto& w : wedges) {
            terms(rb, src, t, w);
            rb.flush(rows);
        }
    return SparseMatrix::from_rows(src.dim, std::move(rows));
}

void require_nonnegative(int value, const char* what)
{
    if (value < 0) throw DomainError(std::string(what) + " must be nonnegative");
}

}  // namespace

SparseMatrix ce_coboundary(const AlgebraSpec& alg, const ModuleSpec& mod, int j)
{
    require_nonnegative(j, "exterior degree");
    check_structure(alg, mod);
    const std::size_t d = alg.dim, m = mod.dim;
    AlgebraTables at(alg);
    ModuleTables mt(alg, mod);
    IndexCodec codec(d);
    auto sources = all_wedge_tuples(d, j);
    auto targets = all_wedge_tuples(d, j + 1);
    std::vector<Triplet> trip;
    auto column = [&](const Tuple& sorted, std::size_t u) { return codec.wedge_rank(sorted) * m + u; };
    for (std::size_t tr = 0; tr < targets.size(); ++tr) {
        const Tuple& x = targets[tr];
        for (std::size_t l = 0; l <= static_cast<std::size_t>(j); ++l) {
            Tuple hat;
            for (std::size_t q = 0; q <= static_cast<std::size_t>(j); ++q)
                if (q != l) hat.push_back(x[q]);
            Rational sign = (l % 2 == 0) ? 1 : -1;
            for (std::size_t u = 0; u < m; ++u)
                for (const auto& [o, v] : mt.lie(x[l], static_cast<Index>(u)))
                    trip.push_back({static_cast<Index>(tr * m + o), static_cast<Index>(column(hat, u)), sign * v});
        }
        for (std::size_t p = 0; p <= static_cast<std::size_t>(j); ++p)
            for (std::size_t q = p + 1; q <= static_cast<std::size_t>(j); ++q) {
                Rational sign = ((p + q) % 2 == 0) ? 1 : -1;
                for (const auto& [r, v] : at.bracket(x[p], x[q])) {
                    Tuple arg{r};
                    for (std::size_t k = 0; k <= static_cast<std::size_t>(j); ++k)
                        if (k != p && k != q) arg.push_back(x[k]);
                    WedgeSign ws = wedge_normalize(arg);
                    if (ws.sign == 0) continue;
                    for (std::size_t u = 0; u < m; ++u)
                        trip.push_back({static_cast<Index>(tr * m + u), static_cast<Index>(column(ws.sorted, u)),
                                        sign * v * ws.sign});
                }
            }
    }
    return SparseMatrix::from_triplets(targets.size() * m, sources.size() * m, std::move(trip));
}

SparseMatrix hochschild_coboundary(const AlgebraSpec& alg, const ModuleSpec& mod, int i, int j)
{
    require_nonnegative(i, "tensor degree");
    require_nonnegative(j, "exterior degree");
    return build_block(alg, mod, lone_component(i, j, alg.dim, mod.dim), lone_component(i + 1, j, alg.dim, mod.dim),
                       [](RowBuilder& rb, const Component& src, const Tuple& t, const Tuple& w) {
                           hochschild_terms(rb, Rational(1), src, t, w);
                       });
}

SparseMatrix delta_H(const AlgebraSpec& alg, const ModuleSpec& mod, int i, int j)
{
    require_nonnegative(i, "tensor degree");
    require_nonnegative(j, "exterior degree");
    return build_block(alg, mod, lone_component(i, j, alg.dim, mod.dim), lone_component(i, j + 1, alg.dim, mod.dim),
                       [](RowBuilder& rb, const Component& src, const Tuple& t, const Tuple& w) {
                           delta_H_terms(rb, Rational(1), src, t, w);
                       });
}

SparseMatrix delta_v(const AlgebraSpec& alg, const ModuleSpec& mod, int j)
{
    if (j < 1) throw DomainError("delta_v needs exterior degree >= 1");
    return build_block(alg, mod, lone_component(0, j, alg.dim, mod.dim), lone_component(2, j - 1, alg.dim, mod.dim),
                       [](RowBuilder& rb, const Component& src, const Tuple& t, const Tuple& w) {
                           delta_v_terms(rb, Rational(1), src, t, w);
                       });
}

// ---------------------------------------------------------------------------

ComplexSlice assemble_slice(Theory theory, const AlgebraSpec& alg, const ModuleSpec& mod, int n,
                            SignConvention convention)
{
    require_nonnegative(n, "degree");
    check_structure(alg, mod);
    if (theory == Theory::poisson && mod.flavor != ModuleFlavor::poisson)
        throw DomainError("the Poisson complex needs a Poisson module");

    ComplexSlice slice;
    slice.theory = theory;
    slice.degree = n;
    slice.convention = convention;
    slice.source = space_layout(theory, n, alg.dim, mod.dim);
    slice.target = space_layout(theory, n + 1, alg.dim, mod.dim);

    AlgebraTables at(alg);
    ModuleTables mt(alg, mod);
    RowBuilder rb(at, mt);
    std::vector<SparseRow> rows;
    rows.reserve(slice.target.total);

    for (const auto& tc : slice.target.components) {
        const Component* from_h = tc.j >= 1 ? slice.source.find(tc.i, tc.j - 1) : nullptr;
        const Component* from_v = tc.i >= 1 ? slice.source.find(tc.i - 1, tc.j) : nullptr;
        const Component* from_dv =
            (theory == Theory::poisson && tc.i == 2) ? slice.source.find(0, tc.j + 1) : nullptr;
        Rational h_sign = (convention == SignConvention::horizontal_twist && tc.i % 2 == 1) ? -1 : 1;

        auto tensors = all_tensor_tuples(alg.dim, tc.i);
        auto wedges = all_wedge_tuples(alg.dim, tc.j);
        for (const auto& t : tensors)
            for (const auto& w : wedges) {
                if (from_h && from_h->dim > 0) delta_H_terms(rb, h_sign, *from_h, t, w);
                if (from_v && from_v->dim > 0) hochschild_terms(rb, Rational(1), *from_v, t, w);
                if (from_dv && from_dv->dim > 0) delta_v_terms(rb, Rational(1), *from_dv, t, w);
                rb.flush(rows);
            }
    }
    slice.matrix = SparseMatrix::from_rows(slice.source.total, std::move(rows));
    return slice;
}

bool composes_to_zero(const ComplexSlice& next, const ComplexSlice& prev)
{
    if (next.matrix.cols() != prev.matrix.rows()) throw InternalError("consecutive slices have mismatched shapes");
    return (next.matrix * prev.matrix).is_zero();
}

namespace {

bool convention_matters(Theory theory)
{
    return theory == Theory::poisson || theory == Theory::quasi || theory == Theory::omega;
}

SignConvention other(SignConvention c)
{
    return c == SignConvention::verbatim ? SignConvention::horizontal_twist : SignConvention::verbatim;
}

}  // namespace

SignConvention resolve_convention(Theory theory, const AlgebraSpec& alg, const ModuleSpec& mod)
{
    if (!convention_matters(theory)) return SignConvention::verbatim;
    // Smallest composition in which a horizontal block with odd i meets a
    // vertical block.
    int probe = theory == Theory::poisson ? 2 : 0;
    auto first = assemble_slice(theory, alg, mod, probe, SignConvention::verbatim);
    auto second = assemble_slice(theory, alg, mod, probe + 1, SignConvention::verbatim);
    return composes_to_zero(second, first) ? SignConvention::verbatim : SignConvention::horizontal_twist;
}

namespace {

std::vector<ComplexSlice> assemble_range(Theory theory, const AlgebraSpec& alg, const ModuleSpec& mod, int lo, int hi,
                                         SignConvention convention)
{
    return parallel_map(static_cast<std::size_t>(hi - lo + 1), [&](std::size_t k) {
        return assemble_slice(theory, alg, mod, lo + static_cast<int>(k), convention);
    });
}

bool all_compose(const std::vector<ComplexSlice>& slices)
{
    for (std::size_t k = 1; k < slices.size(); ++k)
        if (!composes_to_zero(slices[k], slices[k - 1])) return false;
    return true;
}

}  // namespace

ComplexBuild build_complex(Theory theory, const AlgebraSpec& alg, const ModuleSpec& mod, int maxN)
{
    require_nonnegative(maxN, "maximum degree");
    ComplexBuild out;
    out.theory = theory;
    out.convention = resolve_convention(theory, alg, mod);
    out.slices = assemble_range(theory, alg, mod, 0, maxN, out.convention);
    if (all_compose(out.slices)) return out;
    if (convention_matters(theory)) {
        out.convention = other(out.convention);
        out.slices = assemble_range(theory, alg, mod, 0, maxN, out.convention);
        if (all_compose(out.slices)) return out;
    }
    throw InternalError("no sign convention makes the " + to_string(theory) + " differential square to zero");
}

namespace {

ComplexSlice checked_slice(Theory theory, const AlgebraSpec& alg, const ModuleSpec& mod, int n)
{
    require_nonnegative(n, "degree");
    SignConvention c = resolve_convention(theory, alg, mod);
    for (int attempt = 0; attempt < (convention_matters(theory) ? 2 : 1); ++attempt, c = other(c)) {
        auto slices = assemble_range(theory, alg, mod, n, n + 1, c);
        if (composes_to_zero(slices[1], slices[0])) return std::move(slices[0]);
    }
    throw InternalError("no sign convention makes the " + to_string(theory) + " differential square to zero");
}

}  // namespace

ComplexSlice total_poisson_differential(const AlgebraSpec& alg, const ModuleSpec& mod, int n)
{
    return checked_slice(Theory::poisson, alg, mod, n);
}

ComplexSlice quasi_or_omega_differential(const AlgebraSpec& alg, const ModuleSpec& mod, int n, Theory theory)
{
    if (theory != Theory::quasi && theory != Theory::omega) throw DomainError("theory must be quasi or omega");
    return checked_slice(theory, alg, mod, n);
}

// ---------------------------------------------------------------------------

SparseMatrix induced_differential(const SparseMatrix& ambient, const KernelBasis& source, const KernelBasis& target)
{
    std::vector<Triplet> trip;
    for (std::size_t k = 0; k < source.vectors.size(); ++k) {
        Vector image = ambient.apply(source.vectors[k]);
        auto coords = target.coordinates(image);
        if (!coords) throw InternalError("induced map leaves the target subspace");
        for (std::size_t r = 0; r < coords->size(); ++r)
            if (sgn((*coords)[r]) != 0)
                trip.push_back({static_cast<Index>(r), static_cast<Index>(k), std::move((*coords)[r])});
    }
    return SparseMatrix::from_triplets(target.vectors.size(), source.vectors.size(), std::move(trip));
}

namespace {

void require_commutative(const AlgebraSpec& alg)
{
    check_structure(alg);
    if (!is_commutative(alg)) throw DomainError("the Lichnerowicz-Poisson complex needs a commutative algebra");
}

KernelBasis whole_space(std::size_t n)
{
    return kernel_basis(SparseMatrix(0, n));
}

}  // namespace

SparseMatrix lp_constraints(const AlgebraSpec& alg, int n)
{
    require_nonnegative(n, "degree");
    check_structure(alg);
    const std::size_t d = alg.dim;
    const std::size_t cols = binomial(d, n) * d;
    if (n == 0) return SparseMatrix(0, cols);
    AlgebraTables at(alg);
    IndexCodec codec(d);
    auto rests = all_wedge_tuples(d, n - 1);
    std::vector<Triplet> trip;
    std::size_t row = 0;
    for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b)
            for (const auto& w : rests) {
                // f(ab ^ w)_o
                for (const auto& [r, v] : at.mult(a, b)) {
                    Tuple args{r};
                    args.insert(args.end(), w.begin(), w.end());
                    WedgeSign ws = wedge_normalize(args);
                    if (ws.sign == 0) continue;
                    std::size_t base = codec.wedge_rank(ws.sorted) * d;
                    for (std::size_t o = 0; o < d; ++o)
                        trip.push_back({static_cast<Index>(row + o), static_cast<Index>(base + o), v * ws.sign});
                }
                // - a f(b ^ w) - f(a ^ w) b
                for (int side = 0; side < 2; ++side) {
                    Tuple args{side == 0 ? b : a};
                    args.insert(args.end(), w.begin(), w.end());
                    WedgeSign ws = wedge_normalize(args);
                    if (ws.sign == 0) continue;
                    std::size_t base = codec.wedge_rank(ws.sorted) * d;
                    for (Index u = 0; u < d; ++u) {
                        const Combination& prod = side == 0 ? at.mult(a, u) : at.mult(u, b);
                        for (const auto& [o, v] : prod)
                            trip.push_back({static_cast<Index>(row + o), static_cast<Index>(base + u), -v * ws.sign});
                    }
                }
                row += d;
            }
    return SparseMatrix::from_triplets(row, cols, std::move(trip));
}

KernelBasis lp_space_basis(const AlgebraSpec& alg, int n)
{
    require_commutative(alg);
    return kernel_basis(lp_constraints(alg, n));
}

SparseMatrix lp_ambient_coboundary(const AlgebraSpec& alg, int n)
{
    require_nonnegative(n, "degree");
    require_commutative(alg);
    const std::size_t d = alg.dim;
    AlgebraTables at(alg);
    IndexCodec codec(d);
    auto sources = all_wedge_tuples(d, n);
    auto targets = all_wedge_tuples(d, n + 1);
    std::vector<Triplet> trip;
    for (std::size_t tr = 0; tr < targets.size(); ++tr) {
        const Tuple& a = targets[tr];
        const Index row0 = static_cast<Index>(tr * d);
        // sum_i (-1)^i {a_i, f(... hat a_i ...)}
        for (std::size_t i = 0; i < a.size(); ++i) {
            Tuple hat;
            for (std::size_t q = 0; q < a.size(); ++q)
                if (q != i) hat.push_back(a[q]);
            std::size_t base = codec.wedge_rank(hat) * d;
            Rational s = (i % 2 == 0) ? 1 : -1;
            for (Index u = 0; u < d; ++u)
                for (const auto& [o, v] : at.bracket(a[i], u))
                    trip.push_back({row0 + o, static_cast<Index>(base + u), s * v});
        }
        // sum_{p<q} (-1)^{p+q} f({a_p,a_q} ^ rest)
        for (std::size_t p = 0; p < a.size(); ++p)
            for (std::size_t q = p + 1; q < a.size(); ++q) {
                Rational s = ((p + q) % 2 == 0) ? 1 : -1;
                for (const auto& [r, v] : at.bracket(a[p], a[q])) {
                    Tuple args{r};
                    for (std::size_t k = 0; k < a.size(); ++k)
                        if (k != p && k != q) args.push_back(a[k]);
                    WedgeSign ws = wedge_normalize(args);
                    if (ws.sign == 0) continue;
                    std::size_t base = codec.wedge_rank(ws.sorted) * d;
                    for (Index o = 0; o < d; ++o)
                        trip.push_back({row0 + o, static_cast<Index>(base + o), s * v * ws.sign});
                }
            }
    }
    return SparseMatrix::from_triplets(targets.size() * d, sources.size() * d, std::move(trip));
}

SparseMatrix lp_coboundary(const AlgebraSpec& alg, int n)
{
    return induced_differential(lp_ambient_coboundary(alg, n), lp_space_basis(alg, n), lp_space_basis(alg, n + 1));
}

Cochain sigma_embed(const AlgebraSpec& alg, int n, const Vector& f)
{
    require_nonnegative(n, "degree");
    CochainSpace space = space_layout(Theory::poisson, n, alg.dim, alg.dim);
    const Component* top = space.find(0, n);
    if (f.size() != top->dim) throw StructureError("sigma_embed: argument has the wrong length");
    Cochain out{space, zero_vector(space.total)};
    std::copy(f.begin(), f.end(), out.coords.begin() + static_cast<std::ptrdiff_t>(top->offset));
    return out;
}

CochainComplex lp_complex(const AlgebraSpec& alg, int maxN)
{
    require_nonnegative(maxN, "maximum degree");
    require_commutative(alg);
    auto bases = parallel_map(static_cast<std::size_t>(maxN + 2),
                              [&](std::size_t k) { return lp_space_basis(alg, static_cast<int>(k)); });
    CochainComplex out;
    out.label = "lp";
    for (const auto& b : bases) out.space_dims.push_back(b.vectors.size());
    out.differentials = parallel_map(static_cast<std::size_t>(maxN + 1), [&](std::size_t k) {
        return induced_differential(lp_ambient_coboundary(alg, static_cast<int>(k)), bases[k], bases[k + 1]);
    });
    return out;
}

CochainComplex type_complex(const AlgebraSpec& alg, DeformationType which, int maxN)
{
    require_nonnegative(maxN, "maximum degree");
    check_structure(alg);
    ModuleSpec reg = regular_module(alg);
    CochainComplex out;
    const std::size_t d = alg.dim;
    if (which == DeformationType::I) {
        out.label = "type1";
        out.first_degree = 0;
        auto bases = parallel_map(static_cast<std::size_t>(maxN + 2), [&](std::size_t q) {
            return q == 0 ? whole_space(d) : kernel_basis(delta_v(alg, reg, static_cast<int>(q)));
        });
        for (const auto& b : bases) out.space_dims.push_back(b.vectors.size());
        out.differentials = parallel_map(static_cast<std::size_t>(maxN + 1), [&](std::size_t q) {
            return induced_differential(delta_H(alg, reg, 0, static_cast<int>(q)), bases[q], bases[q + 1]);
        });
    } else {
        if (maxN < 1) throw DomainError("the type II complex starts in degree 1");
        out.label = "type2";
        out.first_degree = 1;
        const std::size_t count = static_cast<std::size_t>(maxN);  // degrees 1..maxN
        auto bases = parallel_map(count + 1, [&](std::size_t k) {
            return kernel_basis(delta_H(alg, reg, static_cast<int>(k) + 2, 0));
        });
        for (const auto& b : bases) out.space_dims.push_back(b.vectors.size());
        out.differentials = parallel_map(count, [&](std::size_t k) {
            return induced_differential(hochschild_coboundary(alg, reg, static_cast<int>(k) + 2, 0), bases[k],
                                        bases[k + 1]);
        });
    }
    return out;
}

}  // namespace pcoh
