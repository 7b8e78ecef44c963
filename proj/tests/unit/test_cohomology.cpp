#include "oracles.hpp"

#include <pcoh/cohomology.hpp>
#include <pcoh/errors.hpp>

#include <gtest/gtest.h>

using namespace pcoh;

TEST(Cohomology, DimsFollowRanks)
{
    for (const char* name : {"ut2", "trivial2", "kxy"}) {
        AlgebraSpec a = builtin(name);
        for (Theory th : {Theory::poisson, Theory::quasi, Theory::omega, Theory::hochschild, Theory::ce}) {
            auto r = cohomology_dims(th, a, regular_module(a), 3);
            ASSERT_EQ(r.dims.size(), 4u);
            EXPECT_TRUE(r.boundary_exact);
            for (std::size_t n = 0; n < r.dims.size(); ++n) {
                const std::size_t prev = n ? r.ranks[n - 1] : 0;
                EXPECT_EQ(r.dims[n] + r.ranks[n] + prev, r.space_dims[n]);
            }
        }
    }
}

TEST(Cohomology, RanksMatchDenseOracle)
{
    AlgebraSpec a = builtin("ut2");
    ModuleSpec m = regular_module(a);
    auto b = build_complex(Theory::poisson, a, m, 3);
    auto r = cohomology_dims(Theory::poisson, a, m, 3);
    for (std::size_t n = 0; n < b.slices.size(); ++n)
        EXPECT_EQ(r.ranks[n], oracle::dense_rank(b.slices[n].matrix.to_dense()));
}

TEST(Cohomology, DegreeZeroAndOneCrossChecks)
{
    for (const auto& info : builtin_registry()) {
        AlgebraSpec a = builtin(info.name);
        ModuleSpec m = regular_module(a);
        auto r = cohomology_dims(Theory::poisson, a, m, 1);
        EXPECT_EQ(r.dims[0], center_of_lie(a).size()) << info.name;
        EXPECT_EQ(r.dims[1], poisson_derivations(a, m).outer_dim()) << info.name;
    }
}

TEST(Cohomology, ZeroBracketDerivationsAreAllOuter)
{
    AlgebraSpec a = builtin("dual3");
    auto d = poisson_derivations(a, regular_module(a));
    EXPECT_TRUE(d.inner.empty());
    EXPECT_EQ(d.all.size(), 2u);  // Der(K[x]/(x^3))
}

TEST(Cohomology, RepresentativesAreIndependentCocycles)
{
    AlgebraSpec a = builtin("ut2");
    ModuleSpec m = regular_module(a);
    CohomologyOptions opt;
    opt.representatives = true;
    auto r = cohomology_dims(Theory::poisson, a, m, 4, opt);
    auto b = build_complex(Theory::poisson, a, m, 4);
    for (std::size_t n = 0; n <= 4; ++n) {
        ASSERT_EQ(r.representatives[n].size(), r.dims[n]);
        for (const auto& v : r.representatives[n]) EXPECT_TRUE(is_zero(b.slices[n].matrix.apply(v)));
        // independent modulo the image of the previous map
        std::vector<Vector> all = r.representatives[n];
        std::size_t image = 0;
        if (n > 0) {
            auto cols = column_space_basis(b.slices[n - 1].matrix);
            image = cols.size();
            all.insert(all.end(), cols.begin(), cols.end());
        }
        EXPECT_EQ(oracle::dense_rank(all), r.dims[n] + image);
    }
}

TEST(Cohomology, ValidationRunsFirst)
{
    AlgebraSpec a = builtin("ut2");
    a.mult.push_back({1, 1, 1, 1});
    EXPECT_THROW(cohomology_dims(Theory::poisson, a, regular_module(a), 1), DomainError);
}

TEST(Cohomology, FieldHasOnlyDegreeZeroHochschild)
{
    AlgebraSpec k = builtin("k");
    auto r = cohomology_dims(Theory::hochschild, k, regular_module(k), 3);
    EXPECT_EQ(r.dims, (std::vector<std::size_t>{1, 0, 0, 0}));
    auto c = cohomology_dims(Theory::ce, k, regular_module(k), 3);
    EXPECT_EQ(c.dims, (std::vector<std::size_t>{1, 1, 0, 0}));
}

TEST(Equivariant, AbelianActionGivesEveryMap)
{
    AlgebraSpec a = builtin("kk");
    std::vector<Vector> gens{oracle::e(2, 0), oracle::e(2, 1)};
    auto v = adjoint_representation(a, gens, {oracle::e(2, 0), oracle::e(2, 1)});
    auto homs = equivariant_hom(v, v);
    EXPECT_EQ(homs.size(), 4u);
}

TEST(Equivariant, AdjointOfSl2IsIrreducible)
{
    AlgebraSpec a = builtin("m2");
    std::vector<Vector> sl2{oracle::e(4, 1), oracle::e(4, 2), oracle::e(4, 3)};
    auto v = adjoint_representation(a, sl2, sl2);
    EXPECT_EQ(equivariant_hom(v, v).size(), 1u);  // Schur
    auto w = adjoint_representation(a, sl2, {oracle::e(4, 0), oracle::e(4, 1), oracle::e(4, 2), oracle::e(4, 3)});
    EXPECT_EQ(equivariant_hom(v, w).size(), 1u);
    EXPECT_THROW(adjoint_representation(builtin("ut2"), {oracle::e(3, 1)}, {oracle::e(3, 0)}), DomainError);
}

TEST(Les, KnownFeasibleAndInfeasibleData)
{
    auto ok = les_feasibility({1, 0, 1, 5, 3, 0}, {1, 2, 1, 0, 0, 0}, {3, 6, 3, 0, 0, 0});
    EXPECT_TRUE(ok.feasible) << ok.message;
    auto bad = les_feasibility({1, 0, 0, 5, 3, 0}, {1, 2, 1, 0, 0, 0}, {3, 6, 3, 0, 0, 0});
    EXPECT_FALSE(bad.feasible);
    ASSERT_TRUE(bad.failing_position.has_value());
    EXPECT_EQ(bad.terms[*bad.failing_position].label, "HP^2");
    EXPECT_TRUE(les_feasibility({1, 0, 1}, {1, 1, 0}, {2, 2, 0}).feasible);
    EXPECT_THROW(les_feasibility({1}, {1}, {1}, 2), DomainError);
}

TEST(Les, ForcedRanksAreExact)
{
    // 0 -> 2 -> 2 -> 0 forces both maps to be isomorphisms
    auto r = les_feasibility({2}, {2}, {0}, 3);
    EXPECT_TRUE(r.feasible);
    EXPECT_EQ(r.terms[0].rank, 2u);
    EXPECT_EQ(r.terms[1].rank, 0u);
    EXPECT_FALSE(les_feasibility({2}, {1}, {0}, 3).feasible);
}

TEST(Decomposition, SemisimpleCaseReducesToMultiderivations)
{
    auto r = trivial_bracket_decomposition(builtin("kk"), 3);
    for (std::size_t i = 1; i < r.hochschild.size(); ++i) EXPECT_EQ(r.hochschild[i], 0u);
    for (const auto& row : r.rows)
        if (row.degree <= 2) EXPECT_EQ(row.hp, row.chi);
}

TEST(Decomposition, LowDegreesDegenerateToChi)
{
    for (const char* name : {"trivial2", "kk", "dual3", "k"}) {
        auto r = trivial_bracket_decomposition(builtin(name), 3);
        for (const auto& row : r.rows) {
            if (row.degree <= 1) {
                EXPECT_EQ(row.stated, row.chi);
                EXPECT_EQ(row.hp, row.chi);
            }
            EXPECT_TRUE(row.corrected_matches) << name << " degree " << row.degree;
        }
        EXPECT_THROW(trivial_bracket_decomposition(builtin("kxy"), 2), DomainError);
    }
}

TEST(TypeCohomology, MatrixAlgebra)
{
    AlgebraSpec a = builtin("m2");
    auto t1 = type_cohomology(a, DeformationType::I, 2);
    EXPECT_EQ(t1.first_degree, 0);
    EXPECT_EQ(t1.dims.size(), 3u);
    auto t2 = type_cohomology(a, DeformationType::II, 2);
    EXPECT_EQ(t2.first_degree, 1);
    // degree 1 of type II is the part of ker(delta_H) on Hom(A^2, A) killed
    // by the Hochschild map, which is the omega degree-0 kernel
    EXPECT_EQ(t2.dims[0], cohomology_dims(Theory::omega, a, regular_module(a), 0).dims[0]);
}

TEST(Omega, DegreeZeroKernelContainsTheProduct)
{
    // an associative product satisfying Leibniz is a Lie-equivariant
    // Hochschild 2-cocycle, so it lies in Hom(Omega^2 A, A)
    for (const char* name : {"m2", "ut2", "kxy"}) {
        AlgebraSpec a = builtin(name);
        auto b = build_complex(Theory::omega, a, regular_module(a), 0);
        Vector flat;
        for (const auto& v : BilinearMap::from_constants(a.dim, a.dim, a.mult).values) flat.insert(flat.end(), v.begin(), v.end());
        EXPECT_TRUE(is_zero(b.slices[0].matrix.apply(flat))) << name;
    }
}
