#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "coxhom/snf.hpp"
#include "oracles.hpp"

using namespace coxhom;

namespace {

std::vector<std::vector<long long>> random_dense(std::mt19937& rng, std::size_t r, std::size_t c, int range,
                                                 int zero_bias) {
    std::vector<std::vector<long long>> m(r, std::vector<long long>(c));
    std::uniform_int_distribution<int> v(-range, range), z(0, 9);
    for (auto& row : m)
        for (auto& x : row) x = z(rng) < zero_bias ? 0 : v(rng);
    return m;
}

std::vector<Integer> nonzero_factors(const SNFResult& r) { return r.diagonal; }

}  // namespace

TEST(SNF, KnownSmallExamples) {
    const auto a = smith_normal_form(IntMatrix::from_dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
    EXPECT_EQ(a.diagonal, (std::vector<Integer>{2, 6, 12}));
    EXPECT_EQ(a.rank, 3u);
    EXPECT_EQ(a.torsion(), (std::vector<Integer>{2, 6, 12}));

    const auto b = smith_normal_form(IntMatrix::from_dense({{1, 1}, {1, -1}}));
    EXPECT_EQ(b.diagonal, (std::vector<Integer>{1, 2}));
    EXPECT_EQ(b.torsion(), (std::vector<Integer>{2}));

    const auto zero = smith_normal_form(IntMatrix(3, 4));
    EXPECT_EQ(zero.rank, 0u);
    EXPECT_TRUE(zero.diagonal.empty());
}

TEST(SNF, MatchesDeterminantalDivisors) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        const auto dense = random_dense(rng, r, c, 6, 4);
        const auto got = smith_normal_form(IntMatrix::from_dense(dense));
        const auto want = oracle::invariant_factors(dense);
        EXPECT_EQ(nonzero_factors(got), want) << "trial " << trial;
        EXPECT_EQ(got.rank, want.size());
    }
}

TEST(SNF, DivisibilityChain) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto dense = random_dense(rng, 8, 9, 20, 5);
        const auto d = smith_normal_form(IntMatrix::from_dense(dense)).diagonal;
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            EXPECT_GT(d[i], 0);
            EXPECT_EQ(d[i + 1] % d[i], 0);
        }
    }
}

// Property: row and column permutations, transposition and sign flips leave
// the invariant factors unchanged.
TEST(SNF, InvariantUnderPermutationAndTranspose) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = 3 + rng() % 6, c = 3 + rng() % 6;
        auto dense = random_dense(rng, r, c, 9, 6);
        const auto base = smith_normal_form(IntMatrix::from_dense(dense)).diagonal;

        std::vector<std::size_t> rp(r), cp(c);
        std::iota(rp.begin(), rp.end(), 0);
        std::iota(cp.begin(), cp.end(), 0);
        std::shuffle(rp.begin(), rp.end(), rng);
        std::shuffle(cp.begin(), cp.end(), rng);
        std::vector<long long> sign(r);
        for (auto& x : sign) x = rng() % 2 ? -1 : 1;
        std::vector<std::vector<long long>> perm(r, std::vector<long long>(c));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) perm[i][j] = sign[i] * dense[rp[i]][cp[j]];
        EXPECT_EQ(smith_normal_form(IntMatrix::from_dense(perm)).diagonal, base);
        EXPECT_EQ(smith_normal_form(IntMatrix::from_dense(dense).transpose()).diagonal, base);
    }
}

// Large sparse incidence-like matrices: mostly unit pivots plus a hidden torsion block.
TEST(SNF, SparseWithTorsionBlock) {
    const std::size_t n = 400;
    IntMatrix m(n, n);
    for (std::size_t i = 0; i + 2 < n; ++i) {
        m.set(i, i, 1);
        m.set(i, i + 1, -1);
    }
    m.set(n - 2, n - 2, 3);
    m.set(n - 1, n - 1, 9);
    m.set(n - 2, n - 1, 3);
    const auto s = smith_normal_form(m);
    EXPECT_EQ(s.rank, n);
    EXPECT_EQ(s.torsion(), (std::vector<Integer>{3, 9}));
}

TEST(IntMatrix, DenseRoundTripAndProduct) {
    const auto a = IntMatrix::from_dense({{1, 2}, {0, -3}});
    const auto b = IntMatrix::from_dense({{4}, {5}});
    const auto p = a * b;
    EXPECT_EQ(p.get(0, 0), 14);
    EXPECT_EQ(p.get(1, 0), -15);
    EXPECT_EQ(a.transpose().transpose(), a);
    EXPECT_EQ(a.nonzeros(), 3u);
    auto c = a;
    c.add(0, 0, -1);
    EXPECT_EQ(c.nonzeros(), 2u);
}

TEST(ChainComplexValidate, RejectsNonComplex) {
    ChainComplex c;
    c.ranks = {1, 1, 1};
    c.boundaries = {IntMatrix::from_dense({{1}}), IntMatrix::from_dense({{1}})};
    EXPECT_THROW(c.validate(), std::exception);
    c.boundaries = {IntMatrix::from_dense({{1, 1}})};
    EXPECT_THROW(c.validate(), std::exception);
}
