#include <pcoh/cohomology.hpp>
#include <pcoh/errors.hpp>
#include <pcoh/parallel.hpp>

#include <algorithm>

namespace pcoh {

namespace {

void require_valid(const AlgebraSpec& alg, const ModuleSpec& mod)
{
    auto ra = validate_algebra(alg);
    if (!ra.ok()) throw DomainError("not a Poisson algebra: " + ra.violations.front().axiom + " fails");
    auto rm = validate_module(alg, mod);
    if (!rm.ok()) throw DomainError("invalid module: " + rm.violations.front().axiom + " fails");
}

std::vector<std::size_t> dims_from_ranks(const std::vector<std::size_t>& space_dims,
                                         const std::vector<std::size_t>& ranks)
{
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < ranks.size(); ++k) {
        std::size_t incoming = k == 0 ? 0 : ranks[k - 1];
        if (ranks[k] + incoming > space_dims[k])
            throw InternalError("image exceeds kernel in degree " + std::to_string(k));
        dims.push_back(space_dims[k] - ranks[k] - incoming);
    }
    return dims;
}

std::vector<Vector> representatives_for(const SparseMatrix& outgoing, const SparseMatrix* incoming)
{
    std::vector<Vector> pool;
    if (incoming) pool = column_space_basis(*incoming);
    const std::size_t boundaries = pool.size();
    for (auto& v : kernel_basis(outgoing).vectors) pool.push_back(std::move(v));
    std::vector<Vector> out;
    for (std::size_t k : independent_subset(pool))
        if (k >= boundaries) out.push_back(pool[k]);
    return out;
}

}  // namespace

bool is_regular_module(const AlgebraSpec& alg, const ModuleSpec& mod)
{
    if (mod.dim != alg.dim) return false;
    const std::size_t d = alg.dim;
    auto mult = BilinearMap::from_constants(d, d, alg.mult);
    auto bracket = BilinearMap::from_constants(d, d, alg.bracket);
    auto left = BilinearMap::from_constants(d, d, mod.left);
    auto right = BilinearMap::from_constants(d, d, mod.right);
    auto lie = BilinearMap::from_constants(d, d, mod.lie);
    for (Index a = 0; a < d; ++a)
        for (Index u = 0; u < d; ++u)
            if (left(a, u) != mult(a, u) || right(a, u) != mult(u, a) || lie(a, u) != bracket(a, u)) return false;
    return true;
}

CohomologyReport cohomology_dims(Theory theory, const AlgebraSpec& alg, const ModuleSpec& mod, int maxN,
                                 const CohomologyOptions& options)
{
    if (maxN < 0) throw DomainError("maximum degree must be nonnegative");
    check_structure(alg, mod);
    if (theory == Theory::poisson && mod.flavor != ModuleFlavor::poisson)
        throw DomainError("the Poisson theory needs a Poisson module");
    if (options.validate) require_valid(alg, mod);

    ComplexBuild build = build_complex(theory, alg, mod, maxN);
    CohomologyReport report;
    report.theory = to_string(theory);
    report.algebra = alg.name;
    report.module = mod.name;
    report.convention = to_string(build.convention);
    report.max_degree = maxN;
    for (const auto& s : build.slices) report.space_dims.push_back(s.source.total);
    report.ranks = parallel_map(build.slices.size(), [&](std::size_t k) { return rank(build.slices[k].matrix); });
    report.dims = dims_from_ranks(report.space_dims, report.ranks);

    if (options.representatives)
        for (std::size_t k = 0; k < build.slices.size(); ++k)
            report.representatives.push_back(
                representatives_for(build.slices[k].matrix, k == 0 ? nullptr : &build.slices[k - 1].matrix));

    if (theory == Theory::poisson) {
        if (is_regular_module(alg, mod) && report.dims[0] != center_of_lie(alg).size())
            throw InternalError("HP^0 differs from the dimension of the Lie center");
        if (maxN >= 1 && report.dims[1] != poisson_derivations(alg, mod).outer_dim())
            throw InternalError("HP^1 differs from the outer Poisson derivations");
    }
    return report;
}

CohomologyReport complex_cohomology(const CochainComplex& complex, const AlgebraSpec& alg)
{
    CohomologyReport report;
    report.theory = complex.label;
    report.algebra = alg.name;
    report.module = alg.name;
    report.convention = to_string(complex.convention);
    report.first_degree = complex.first_degree;
    report.max_degree = complex.first_degree + static_cast<int>(complex.differentials.size()) - 1;
    report.space_dims.assign(complex.space_dims.begin(), complex.space_dims.begin() + complex.differentials.size());
    for (std::size_t k = 1; k < complex.differentials.size(); ++k)
        if (!(complex.differentials[k] * complex.differentials[k - 1]).is_zero())
            throw InternalError(complex.label + " differential does not square to zero");
    report.ranks = parallel_map(complex.differentials.size(),
                                [&](std::size_t k) { return rank(complex.differentials[k]); });
    report.dims = dims_from_ranks(report.space_dims, report.ranks);
    return report;
}

CohomologyReport lp_cohomology(const AlgebraSpec& alg, int maxN)
{
    return complex_cohomology(lp_complex(alg, maxN), alg);
}

CohomologyReport type_cohomology(const AlgebraSpec& alg, DeformationType which, int maxN)
{
    return complex_cohomology(type_complex(alg, which, maxN), alg);
}

std::vector<Vector> center_of_lie(const AlgebraSpec& alg)
{
    check_structure(alg);
    const std::size_t d = alg.dim;
    std::vector<Triplet> trip;
    for (const auto& c : alg.bracket) trip.push_back({static_cast<Index>(c.i * d + c.k), c.j, c.value});
    return kernel_basis(SparseMatrix::from_triplets(d * d, d, std::move(trip))).vectors;
}

DerivationReport poisson_derivations(const AlgebraSpec& alg, const ModuleSpec& mod)
{
    if (mod.flavor != ModuleFlavor::poisson) throw DomainError("Poisson derivations need a Poisson module");
    ComplexBuild build = build_complex(Theory::poisson, alg, mod, 1);
    DerivationReport out;
    out.all = kernel_basis(build.slices[1].matrix).vectors;
    out.inner = column_space_basis(build.slices[0].matrix);
    return out;
}

// ---------------------------------------------------------------------------

LieRepresentation adjoint_representation(const AlgebraSpec& alg, const std::vector<Vector>& generators,
                                         const std::vector<Vector>& basis)
{
    check_structure(alg);
    AlgebraTables at(alg);
    const std::size_t n = basis.size();
    std::vector<Vector> columns;
    for (const auto& b : basis) {
        if (b.size() != alg.dim) throw StructureError("basis vector has the wrong length");
        columns.push_back(b);
    }
    // matrix whose columns are the basis vectors, for coordinate solves
    std::vector<Triplet> trip;
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < alg.dim; ++r)
            if (sgn(basis[c][r]) != 0) trip.push_back({static_cast<Index>(r), static_cast<Index>(c), basis[c][r]});
    SparseMatrix b = SparseMatrix::from_triplets(alg.dim, n, std::move(trip));
    if (rank(b) != n) throw DomainError("subspace basis is linearly dependent");

    LieRepresentation rep;
    rep.dim = n;
    for (const auto& x : generators) {
        std::vector<Vector> mat(n, zero_vector(n));
        for (std::size_t c = 0; c < n; ++c) {
            auto coords = solve(b, at.bracket.apply(x, basis[c]));
            if (!coords) throw DomainError("subspace is not invariant under the adjoint action");
            for (std::size_t r = 0; r < n; ++r) mat[r][c] = (*coords)[r];
        }
        rep.action.push_back(std::move(mat));
    }
    return rep;
}

LieRepresentation tensor_product(const LieRepresentation& v, const LieRepresentation& w)
{
    if (v.action.size() != w.action.size()) throw StructureError("representations use different generator lists");
    LieRepresentation out;
    out.dim = v.dim * w.dim;
    for (std::size_t g = 0; g < v.action.size(); ++g) {
        std::vector<Vector> mat(out.dim, zero_vector(out.dim));
        for (std::size_t a = 0; a < v.dim; ++a)
            for (std::size_t b = 0; b < w.dim; ++b) {
                const std::size_t row = a * w.dim + b;
                for (std::size_t a2 = 0; a2 < v.dim; ++a2) mat[row][a2 * w.dim + b] += v.action[g][a][a2];
                for (std::size_t b2 = 0; b2 < w.dim; ++b2) mat[row][a * w.dim + b2] += w.action[g][b][b2];
            }
        out.action.push_back(std::move(mat));
    }
    return out;
}

std::vector<Vector> equivariant_hom(const LieRepresentation& source, const LieRepresentation& target)
{
    if (source.action.size() != target.action.size())
        throw StructureError("representations use different generator lists");
    const std::size_t n = source.dim, m = target.dim;
    // unknown F[r][c] at column r * n + c; equation rows (g, r, c)
    std::vector<Triplet> trip;
    std::size_t row = 0;
    for (std::size_t g = 0; g < source.action.size(); ++g) {
        const auto& rw = target.action[g];
        const auto& rv = source.action[g];
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < n; ++c, ++row) {
                // (rho_W F)[r][c] = sum_k rw[r][k] F[k][c]
                for (std::size_t k = 0; k < m; ++k)
                    if (sgn(rw[r][k]) != 0)
                        trip.push_back({static_cast<Index>(row), static_cast<Index>(k * n + c), rw[r][k]});
                // (F rho_V)[r][c] = sum_k F[r][k] rv[k][c]
                for (std::size_t k = 0; k < n; ++k)
                    if (sgn(rv[k][c]) != 0)
                        trip.push_back({static_cast<Index>(row), static_cast<Index>(r * n + k), -rv[k][c]});
            }
    }
    return kernel_basis(SparseMatrix::from_triplets(row, m * n, std::move(trip))).vectors;
}

// ---------------------------------------------------------------------------

LesReport les_feasibility(const std::vector<std::size_t>& hp, const std::vector<std::size_t>& hl,
                          const std::vector<std::size_t>& ext_omega, std::size_t window)
{
    LesReport report;
    // HP^n, HL^n, E^{n-1}; E^{-1} = 0.
    std::vector<LesTerm> all;
    for (std::size_t n = 0;; ++n) {
        if (n >= hp.size()) break;
        all.push_back({"HP^" + std::to_string(n), hp[n], 0});
        if (n >= hl.size()) break;
        all.push_back({"HL^" + std::to_string(n), hl[n], 0});
        if (n == 0) {
            all.push_back({"E^-1", 0, 0});
        } else {
            if (n - 1 >= ext_omega.size()) break;
            all.push_back({"E^" + std::to_string(n - 1), ext_omega[n - 1], 0});
        }
    }
    if (window == 0) window = all.size();
    if (window > all.size()) throw DomainError("the dimension data does not cover the requested window");
    if (window < 3) throw DomainError("the exactness window needs at least three terms");
    all.resize(window);

    std::size_t incoming = 0;  // the sequence starts with 0 -> HP^0
    report.feasible = true;
    for (std::size_t k = 0; k < all.size(); ++k) {
        auto& term = all[k];
        if (incoming > term.dim) {
            report.feasible = false;
            report.failing_position = k;
            report.message = "image of the incoming map (" + std::to_string(incoming) + ") exceeds dim " +
                             term.label + " = " + std::to_string(term.dim);
            break;
        }
        term.rank = term.dim - incoming;
        incoming = term.rank;
    }
    report.terms = std::move(all);
    if (report.feasible) report.message = "exact ranks exist";
    return report;
}

// ---------------------------------------------------------------------------

bool DecompositionReport::stated_holds() const
{
    return std::all_of(rows.begin(), rows.end(), [](const DecompositionRow& r) { return r.stated_matches; });
}

bool DecompositionReport::corrected_holds() const
{
    return std::all_of(rows.begin(), rows.end(), [](const DecompositionRow& r) { return r.corrected_matches; });
}

DecompositionReport trivial_bracket_decomposition(const AlgebraSpec& alg, int maxN)
{
    if (maxN < 0) throw DomainError("maximum degree must be nonnegative");
    check_structure(alg);
    if (!has_zero_bracket(alg)) throw DomainError("the decomposition needs a zero bracket");
    if (!is_commutative(alg)) throw DomainError("the decomposition needs a commutative algebra");
    const ModuleSpec reg = regular_module(alg);
    const long d = static_cast<long>(alg.dim);

    CohomologyReport hp = cohomology_dims(Theory::poisson, alg, reg, maxN);

    // Right-hand side from the Hochschild complex and the multiderivation
    // spaces only.
    ComplexBuild hh = build_complex(Theory::hochschild, alg, reg, std::max(maxN, 2));
    std::vector<std::size_t> hh_ranks;
    for (const auto& s : hh.slices) hh_ranks.push_back(rank(s.matrix));
    DecompositionReport out;
    for (int n = 0; n <= maxN; ++n) {
        std::size_t incoming = n == 0 ? 0 : hh_ranks[n - 1];
        out.hochschild.push_back(hh.slices[n].source.total - hh_ranks[n] - incoming);
    }
    out.z2 = hh.slices[2].source.total - hh_ranks[2];
    std::vector<std::size_t> chi;
    for (int n = 0; n <= maxN; ++n) chi.push_back(lp_space_basis(alg, n).vectors.size());

    auto C = [&](long n, long k) -> long {
        return (n < 0 || k < 0) ? 0 : static_cast<long>(binomial(static_cast<std::size_t>(n), static_cast<std::size_t>(k)));
    };
    for (int n = 0; n <= maxN; ++n) {
        DecompositionRow row;
        row.degree = n;
        row.hp = hp.dims[n];
        row.chi = chi[n];
        long stated = static_cast<long>(chi[n]);
        for (int i = 2; i <= n; ++i) stated += static_cast<long>(out.hochschild[i]) * C(d, n - i);
        long corrected = static_cast<long>(chi[n]);
        if (n >= 2) {
            corrected += static_cast<long>(out.z2) * C(d, n - 2) - (d * C(d, n - 1) - static_cast<long>(chi[n - 1]));
            for (int i = 3; i <= n; ++i) corrected += static_cast<long>(out.hochschild[i]) * C(d, n - i);
        }
        row.stated = static_cast<std::size_t>(stated);
        row.corrected = static_cast<std::size_t>(corrected);
        row.stated_matches = row.stated == row.hp;
        row.corrected_matches = row.corrected == row.hp;
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace pcoh
