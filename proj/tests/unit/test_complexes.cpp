#include "oracles.hpp"

#include <pcoh/complexes.hpp>
#include <pcoh/errors.hpp>

#include <gtest/gtest.h>

using namespace pcoh;

namespace {

Cochain random_cochain(oracle::Random& rng, const CochainSpace& s)
{
    return Cochain{s, rng.vector(s.total)};
}

}  // namespace

// Matrix builders against the formula-level evaluation of the same
// differential, on random cochains.
TEST(Differential, MatrixMatchesFormulaEvaluation)
{
    oracle::Random rng(31);
    struct Case {
        const char* alg;
        int max_n;
    };
    for (Case c : {Case{"ut2", 3}, Case{"trivial2", 4}, Case{"kxy", 3}, Case{"m2", 2}}) {
        AlgebraSpec a = builtin(c.alg);
        ModuleSpec m = regular_module(a);
        oracle::Differential ref(a, m);
        for (Theory th : {Theory::poisson, Theory::quasi, Theory::omega, Theory::hochschild, Theory::ce}) {
            ComplexBuild b = build_complex(th, a, m, th == Theory::omega ? c.max_n - 1 : c.max_n);
            for (const auto& slice : b.slices) {
                for (int trial = 0; trial < 2; ++trial) {
                    Cochain f = random_cochain(rng, slice.source);
                    Cochain expect = ref.apply(slice, f);
                    EXPECT_EQ(slice.matrix.apply(f.coords), expect.coords)
                        << c.alg << " " << to_string(th) << " degree " << slice.degree;
                }
            }
        }
    }
}

TEST(Differential, SquaresToZeroOnSmallBuiltins)
{
    for (const char* name : {"ut2", "trivial2", "kxy", "kk", "dual3", "k"}) {
        AlgebraSpec a = builtin(name);
        ModuleSpec m = regular_module(a);
        for (Theory th : {Theory::poisson, Theory::quasi, Theory::omega, Theory::hochschild, Theory::ce}) {
            ComplexBuild b = build_complex(th, a, m, 4);
            for (std::size_t n = 0; n + 1 < b.slices.size(); ++n)
                EXPECT_TRUE((b.slices[n + 1].matrix * b.slices[n].matrix).is_zero()) << name << to_string(th) << n;
        }
    }
}

TEST(Differential, ConventionIsRecordedAndConsistent)
{
    AlgebraSpec a = builtin("ut2");
    ModuleSpec m = regular_module(a);
    for (Theory th : {Theory::poisson, Theory::quasi, Theory::omega, Theory::hochschild, Theory::ce}) {
        ComplexBuild b = build_complex(th, a, m, 3);
        EXPECT_EQ(b.convention, resolve_convention(th, a, m));
        for (const auto& s : b.slices) EXPECT_EQ(s.convention, b.convention);
    }
    // the pure rows and columns have no horizontal/vertical interplay
    EXPECT_EQ(build_complex(Theory::hochschild, a, m, 2).convention, SignConvention::verbatim);
    EXPECT_EQ(build_complex(Theory::ce, a, m, 2).convention, SignConvention::verbatim);
}

TEST(Differential, DegreeTwoMapIsConventionIndependent)
{
    AlgebraSpec a = builtin("m2");
    ModuleSpec m = regular_module(a);
    auto v = assemble_slice(Theory::poisson, a, m, 2, SignConvention::verbatim);
    auto t = assemble_slice(Theory::poisson, a, m, 2, SignConvention::horizontal_twist);
    EXPECT_EQ(v.matrix, t.matrix);
}

TEST(Blocks, HorizontalAtTensorDegreeZeroIsChevalleyEilenberg)
{
    for (const auto& info : builtin_registry()) {
        AlgebraSpec a = builtin(info.name);
        ModuleSpec m = regular_module(a);
        for (int j = 0; j <= 3; ++j) EXPECT_EQ(delta_H(a, m, 0, j), ce_coboundary(a, m, j)) << info.name << j;
    }
}

TEST(Blocks, ShapesFollowLayouts)
{
    AlgebraSpec a = builtin("ut2");
    ModuleSpec m = regular_module(a);
    auto h = hochschild_coboundary(a, m, 2, 1);
    EXPECT_EQ(h.rows(), 3u * 27 * 3);
    EXPECT_EQ(h.cols(), 3u * 9 * 3);
    auto v = delta_v(a, m, 2);
    EXPECT_EQ(v.rows(), 3u * 9 * 3);
    EXPECT_EQ(v.cols(), 3u * 3);
    EXPECT_THROW(delta_v(a, m, 0), DomainError);
}

TEST(Complexes, PoissonTheoryNeedsPoissonModule)
{
    AlgebraSpec a = builtin("ut2");
    ModuleSpec m = regular_module(a);
    m.flavor = ModuleFlavor::quasi_poisson;
    EXPECT_THROW(build_complex(Theory::poisson, a, m, 2), DomainError);
    EXPECT_NO_THROW(build_complex(Theory::quasi, a, m, 2));
}

TEST(Complexes, CeMatchesOmegaBaseRowShape)
{
    // omega degree n has components (i, n+2-i), i >= 2; the quasi complex
    // contains the ce column as its (0, n) component
    AlgebraSpec a = builtin("trivial2");
    for (int n = 0; n <= 3; ++n) {
        auto q = space_layout(Theory::quasi, n, 2, 2);
        auto c = space_layout(Theory::ce, n, 2, 2);
        EXPECT_EQ(q.find(0, n)->dim, c.total);
        auto o = space_layout(Theory::omega, n, 2, 2);
        std::size_t rest = 0;
        for (const auto& comp : space_layout(Theory::quasi, n + 2, 2, 2).components)
            if (comp.i >= 2) rest += comp.dim;
        EXPECT_EQ(o.total, rest);
    }
}

// sigma^n is a chain map from the LP complex into the Poisson complex.
TEST(Lichnerowicz, SigmaIsAChainMap)
{
    for (const auto& info : builtin_registry()) {
        AlgebraSpec a = builtin(info.name);
        if (!is_commutative(a)) continue;
        ModuleSpec m = regular_module(a);
        for (int n = 0; n <= 2; ++n) {
            KernelBasis chi = lp_space_basis(a, n);
            ComplexSlice d = total_poisson_differential(a, m, n);
            SparseMatrix lp = lp_ambient_coboundary(a, n);
            for (const auto& f : chi.vectors) {
                Cochain lhs{d.target, d.matrix.apply(sigma_embed(a, n, f).coords)};
                Cochain rhs = sigma_embed(a, n + 1, lp.apply(f));
                EXPECT_EQ(lhs.coords, rhs.coords) << info.name << " n=" << n;
            }
        }
    }
}

TEST(Lichnerowicz, SpacesAreMultiderivations)
{
    AlgebraSpec a = builtin("dual3");
    // chi^0 = A, chi^1 = Der(A): for K[x]/(x^3) derivations are x -> c1 x + c2 x^2
    EXPECT_EQ(lp_space_basis(a, 0).vectors.size(), 3u);
    EXPECT_EQ(lp_space_basis(a, 1).vectors.size(), 2u);
    EXPECT_THROW(lp_space_basis(builtin("m2"), 1), DomainError);
    auto cx = lp_complex(a, 2);
    for (std::size_t k = 0; k + 1 < cx.differentials.size(); ++k)
        EXPECT_TRUE((cx.differentials[k + 1] * cx.differentials[k]).is_zero());
}

TEST(Lichnerowicz, AmbientCoboundaryPreservesMultiderivations)
{
    AlgebraSpec a = builtin("kxy");
    for (int n = 0; n <= 2; ++n) {
        KernelBasis src = lp_space_basis(a, n), tgt = lp_space_basis(a, n + 1);
        SparseMatrix amb = lp_ambient_coboundary(a, n);
        for (const auto& f : src.vectors) EXPECT_TRUE(tgt.coordinates(amb.apply(f)).has_value());
    }
}

TEST(TypeComplexes, SquareToZero)
{
    for (const char* name : {"m2", "ut2", "kxy"}) {
        AlgebraSpec a = builtin(name);
        for (auto which : {DeformationType::I, DeformationType::II}) {
            auto cx = type_complex(a, which, 2);
            for (std::size_t k = 0; k + 1 < cx.differentials.size(); ++k)
                EXPECT_TRUE((cx.differentials[k + 1] * cx.differentials[k]).is_zero());
        }
    }
}
