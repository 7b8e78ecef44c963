#include "oracles.hpp"

#include <pcoh/errors.hpp>
#include <pcoh/io.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace pcoh;

namespace {

const std::string data_dir = PCOH_TEST_DATA_DIR;

}  // namespace

TEST(Json, RationalsAreReducedStrings)
{
    EXPECT_EQ(rational_to_json(Rational(-3, 4)), Json("-3/4"));
    EXPECT_EQ(rational_from_json(Json("7/2")), Rational(7, 2));
    EXPECT_EQ(rational_from_json(Json(5)), Rational(5));
    EXPECT_THROW(rational_from_json(Json("4/6")), StructureError);
    EXPECT_THROW(rational_from_json(Json(0.5)), StructureError);
    EXPECT_THROW(rational_from_json(Json::array()), StructureError);
}

TEST(Json, AlgebraRoundTrip)
{
    for (const auto& info : builtin_registry()) {
        AlgebraSpec a = builtin(info.name);
        AlgebraSpec b = algebra_from_json(algebra_to_json(a));
        EXPECT_EQ(b.dim, a.dim);
        EXPECT_EQ(b.unit, a.unit);
        EXPECT_EQ(b.basis_names, a.basis_names);
        EXPECT_EQ(BilinearMap::from_constants(a.dim, a.dim, b.mult), BilinearMap::from_constants(a.dim, a.dim, a.mult));
        EXPECT_EQ(BilinearMap::from_constants(a.dim, a.dim, b.bracket),
                  BilinearMap::from_constants(a.dim, a.dim, a.bracket));
    }
}

TEST(Json, ModuleRoundTrip)
{
    AlgebraSpec a = builtin("m2");
    ModuleSpec m = regular_module(a);
    ModuleSpec back = module_from_json(module_to_json(m));
    EXPECT_EQ(back.dim, m.dim);
    EXPECT_EQ(back.flavor, m.flavor);
    EXPECT_TRUE(validate_module(a, back).ok());
    Json j = module_to_json(m);
    j["flavor"] = "quasi-poisson";
    EXPECT_EQ(module_from_json(j).flavor, ModuleFlavor::quasi_poisson);
    j["flavor"] = "lie";
    EXPECT_THROW(module_from_json(j), StructureError);
}

TEST(Json, CochainRoundTrip)
{
    oracle::Random rng(61);
    auto s = space_layout(Theory::poisson, 3, 2, 2);
    Cochain c{s, rng.vector(s.total)};
    Json j = cochain_to_json(c);
    EXPECT_EQ(j["theory"], "hp");
    EXPECT_EQ(j["degree"], 3);
    Cochain back = cochain_from_json(j, 2, 2);
    EXPECT_EQ(back.coords, c.coords);
}

TEST(Json, SeriesRoundTrip)
{
    DeformationSeries s = m2_table3_series(1);
    DeformationSeries back = series_from_json(series_to_json(s));
    EXPECT_EQ(back.order, s.order);
    EXPECT_EQ(back.m_terms, s.m_terms);
    EXPECT_EQ(back.l_terms, s.l_terms);
    Json ref = series_to_json(s, "builtin:m2");
    EXPECT_EQ(ref["algebra"], "builtin:m2");
    EXPECT_EQ(series_from_json(ref).alg.dim, 4u);
}

TEST(Json, StructuralErrors)
{
    Json j = algebra_to_json(builtin("ut2"));
    j.erase("unit");
    EXPECT_THROW(algebra_from_json(j), StructureError);
    Json k = algebra_to_json(builtin("ut2"));
    k["mult"].push_back({0, 9, 0, "1"});
    EXPECT_THROW(algebra_from_json(k), StructureError);
    EXPECT_THROW(constants_from_json(Json::parse(R"([[0, 0, "1"]])")), StructureError);
}

TEST(Files, LoadersResolveSources)
{
    EXPECT_EQ(load_algebra("builtin:ut2").dim, 3u);
    EXPECT_THROW(load_algebra("builtin:none"), DomainError);
    AlgebraSpec bad = load_algebra(data_dir + "/bad_unit.json");
    EXPECT_EQ(bad.name, "bad_unit");
    EXPECT_FALSE(validate_algebra(bad).ok());
    EXPECT_THROW(load_algebra("file:" + data_dir + "/nonreduced.json"), StructureError);
    EXPECT_THROW(load_algebra(data_dir + "/missing.json"), DomainError);
    DeformationSeries s = load_series("trivial2_order1.json", data_dir);
    EXPECT_EQ(s.order, 1);
    EXPECT_EQ(s.alg.dim, 2u);
    EXPECT_EQ(load_series("builtin:table3").alg.dim, 4u);
}

TEST(Files, SidecarDescribesBlocks)
{
    AlgebraSpec a = builtin("ut2");
    ComplexSlice s = assemble_slice(Theory::poisson, a, regular_module(a), 2, SignConvention::horizontal_twist);
    Json j = slice_sidecar(s);
    EXPECT_EQ(j["rows"], s.matrix.rows());
    EXPECT_EQ(j["cols"], s.matrix.cols());
    EXPECT_EQ(j["nnz"], s.matrix.nnz());
    EXPECT_EQ(j["source_components"].size(), s.source.components.size());
    EXPECT_EQ(j["target_components"].size(), s.target.components.size());
}

TEST(Reports, CohomologyReportFields)
{
    AlgebraSpec a = builtin("ut2");
    Json j = report_to_json(cohomology_dims(Theory::poisson, a, regular_module(a), 3));
    EXPECT_EQ(j["dims"], Json::parse("[1,0,1,5]"));
    EXPECT_TRUE(j.contains("ranks"));
    EXPECT_TRUE(j["boundary_exact"].get<bool>());
    Json q = quantization_to_json(quantization_verdict(0, true));
    EXPECT_EQ(q["verdict"], "no-quantization");
}
