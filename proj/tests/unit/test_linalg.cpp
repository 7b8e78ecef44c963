#include "oracles.hpp"

#include <pcoh/errors.hpp>
#include <pcoh/linalg.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace pcoh;

namespace {

SparseMatrix random_matrix(oracle::Random& rng, std::size_t rows, std::size_t cols, int density)
{
    std::vector<Triplet> t;
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c)
            if (rng.integer(0, 99) < density) t.push_back({r, c, rng.value()});
    return SparseMatrix::from_triplets(rows, cols, t);
}

// rank-deficient by construction: product of thin factors
SparseMatrix low_rank(oracle::Random& rng, std::size_t rows, std::size_t cols, std::size_t k)
{
    return random_matrix(rng, rows, k, 60) * random_matrix(rng, k, cols, 60);
}

}  // namespace

TEST(Rational, ParsesReducedForms)
{
    EXPECT_EQ(parse_rational("-3/4"), Rational(-3, 4));
    EXPECT_EQ(parse_rational("5"), Rational(5));
    EXPECT_EQ(parse_rational("0"), Rational(0));
    EXPECT_EQ(to_string(Rational(-3, 4)), "-3/4");
    EXPECT_EQ(to_string(Rational(6)), "6");
}

TEST(Rational, RejectsMalformedText)
{
    for (const char* bad : {"2/4", "1/0", "abc", "", "1/-2", "1.5", " 1", "0/5"})
        EXPECT_THROW(parse_rational(bad), StructureError) << bad;
}

TEST(SparseMatrix, TripletsSumDuplicatesAndDropZeros)
{
    auto m = SparseMatrix::from_triplets(2, 2, {{0, 0, 1}, {0, 0, -1}, {1, 1, 2}, {1, 1, 1}});
    EXPECT_EQ(m.nnz(), 1u);
    EXPECT_EQ(m.at(1, 1), 3);
    EXPECT_EQ(m.at(0, 0), 0);
}

TEST(SparseMatrix, ProductAndTranspose)
{
    oracle::Random rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_matrix(rng, 4, 5, 50), b = random_matrix(rng, 5, 3, 50);
        auto ab = (a * b).to_dense();
        auto ad = a.to_dense(), bd = b.to_dense();
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 3; ++c) {
                Rational s = 0;
                for (int k = 0; k < 5; ++k) s += ad[r][k] * bd[k][c];
                EXPECT_EQ(ab[r][c], s);
            }
        EXPECT_EQ(a.transpose().transpose(), a);
    }
}

TEST(Rank, MatchesDenseEliminationOracle)
{
    oracle::Random rng(2);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = rng.integer(1, 9), cols = rng.integer(1, 9);
        SparseMatrix m = trial % 2 ? random_matrix(rng, rows, cols, rng.integer(10, 80))
                                   : low_rank(rng, rows, cols, rng.integer(1, 3));
        EXPECT_EQ(rank(m), oracle::dense_rank(m.to_dense()));
    }
}

TEST(Rank, InvariantUnderTranspose)
{
    oracle::Random rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = low_rank(rng, rng.integer(1, 12), rng.integer(1, 12), rng.integer(1, 4));
        EXPECT_EQ(rank(m), rank(m.transpose()));
    }
}

TEST(Rank, EdgeCases)
{
    EXPECT_EQ(rank(SparseMatrix(0, 0)), 0u);
    EXPECT_EQ(rank(SparseMatrix(3, 0)), 0u);
    EXPECT_EQ(rank(SparseMatrix(0, 4)), 0u);
    EXPECT_EQ(rank(SparseMatrix::identity(7)), 7u);
}

TEST(Kernel, VectorsAreAnnihilatedAndIndependent)
{
    oracle::Random rng(4);
    for (int trial = 0; trial < 40; ++trial) {
        auto m = low_rank(rng, rng.integer(1, 10), rng.integer(1, 10), rng.integer(1, 4));
        KernelBasis k = kernel_basis(m);
        EXPECT_EQ(k.rank, rank(m));
        EXPECT_EQ(k.vectors.size(), m.cols() - k.rank);
        for (const auto& v : k.vectors) EXPECT_TRUE(is_zero(m.apply(v)));
        EXPECT_EQ(oracle::dense_rank(k.vectors), k.vectors.size());
    }
}

TEST(Kernel, CoordinatesRecoverCombinations)
{
    oracle::Random rng(5);
    auto m = low_rank(rng, 5, 8, 2);
    KernelBasis k = kernel_basis(m);
    Vector v = rng.combination(k.vectors, m.cols());
    auto c = k.coordinates(v);
    ASSERT_TRUE(c.has_value());
    Vector back = zero_vector(m.cols());
    for (std::size_t i = 0; i < c->size(); ++i) axpy(back, (*c)[i], k.vectors[i]);
    EXPECT_EQ(back, v);
    Vector outside = zero_vector(m.cols());
    bool found = false;
    for (std::size_t j = 0; j < m.cols() && !found; ++j) {
        outside = zero_vector(m.cols());
        outside[j] = 1;
        found = !is_zero(m.apply(outside));
    }
    if (found) EXPECT_FALSE(k.coordinates(outside).has_value());
}

TEST(Solve, ConsistentAndInconsistentSystems)
{
    oracle::Random rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        auto m = low_rank(rng, rng.integer(2, 8), rng.integer(2, 8), rng.integer(1, 2));
        Vector x = rng.vector(m.cols());
        Vector b = m.apply(x);
        auto sol = solve(m, b);
        ASSERT_TRUE(sol.has_value());
        EXPECT_EQ(m.apply(*sol), b);
        if (rank(m) < m.rows()) {
            // some unit vector lies outside the column space
            bool tested = false;
            for (std::size_t r = 0; r < m.rows() && !tested; ++r) {
                Vector u = zero_vector(m.rows());
                u[r] = 1;
                auto extended = m.to_dense();
                for (std::size_t i = 0; i < extended.size(); ++i) extended[i].push_back(u[i]);
                if (oracle::dense_rank(extended) > rank(m)) {
                    EXPECT_FALSE(solve(m, u).has_value());
                    tested = true;
                }
            }
            EXPECT_TRUE(tested);
        }
    }
}

TEST(IndependentSubset, PicksAMaximalIndependentFamily)
{
    std::vector<Vector> v{{1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}};
    auto idx = independent_subset(v);
    EXPECT_EQ(idx, (std::vector<std::size_t>{0, 2, 4}));
}

TEST(ColumnSpace, HasRankManyIndependentImageVectors)
{
    oracle::Random rng(7);
    auto m = low_rank(rng, 6, 7, 3);
    auto cols = column_space_basis(m);
    EXPECT_EQ(cols.size(), rank(m));
    EXPECT_EQ(oracle::dense_rank(cols), cols.size());
    for (const auto& c : cols) EXPECT_TRUE(solve(m, c).has_value());
}

TEST(MatrixDump, RoundTrips)
{
    oracle::Random rng(8);
    auto m = random_matrix(rng, 5, 6, 40);
    std::stringstream ss;
    write_matrix_dump(ss, m);
    std::string header;
    std::getline(ss, header);
    EXPECT_EQ(header, "5 6 " + std::to_string(m.nnz()));
    ss.seekg(0);
    EXPECT_EQ(read_matrix_dump(ss), m);
}

TEST(MatrixDump, RejectsBadInput)
{
    std::stringstream ss("2 2 1\n0 5 1\n");
    EXPECT_THROW(read_matrix_dump(ss), StructureError);
    std::stringstream nonreduced("2 2 1\n0 0 2/4\n");
    EXPECT_THROW(read_matrix_dump(nonreduced), StructureError);
}
