#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "coxhom/complex.hpp"
#include "coxhom/error.hpp"
#include "coxhom/homology.hpp"
#include "oracles.hpp"

using namespace coxhom;

namespace {

// f_k = sum over T with |T| = n-k-1 of |W|/|W_T|, from orders alone.
std::vector<std::size_t> f_vector_from_orders(const CoxeterMatrix& m) {
    const std::size_t n = m.rank();
    const auto W = order(m).value;
    std::vector<std::size_t> f(n, 0);
    for (std::uint32_t bits = 0; bits + 1 < (1u << n); ++bits) {
        const ParabolicSubset T(bits);
        const auto idx = W / order(restrict(m, T).matrix).value;
        f[n - T.size() - 1] += static_cast<std::size_t>(idx);
    }
    return f;
}

}  // namespace

TEST(CoxeterComplex, A3IsTheBarycentricTetrahedron) {
    const auto X = build_complex(catalog("A3"));
    EXPECT_EQ(X.f_vector(), (std::vector<std::size_t>{14, 36, 24}));
    EXPECT_EQ(X.euler_characteristic(), 2);
    EXPECT_EQ(chain_homology(boundary_matrices(X)).to_string(), "(Z,0,Z)");
}

TEST(CoxeterComplex, DihedralIsAPolygon) {
    for (unsigned q : {3u, 5u, 6u, 9u}) {
        const auto X = build_complex(catalog("I2(" + std::to_string(q) + ")"));
        EXPECT_EQ(X.f_vector(), (std::vector<std::size_t>{2 * q, 2 * q}));
        EXPECT_EQ(chain_homology(boundary_matrices(X)), sphere_homology(1));
    }
}

TEST(CoxeterComplex, RankOneIsTwoPoints) {
    const auto X = build_complex(catalog("A1"));
    EXPECT_EQ(X.f_vector(), (std::vector<std::size_t>{2}));
    EXPECT_EQ(chain_homology(boundary_matrices(X)).to_string(), "(Z^2)");
    EXPECT_EQ(generator_action_on_top(X, 0), -1);
}

TEST(CoxeterComplex, FVectorFromGroupOrders) {
    for (const auto& name : {"B3", "H3", "D4", "F4", "A2xA1", "I2(5)xA1"}) {
        const auto m = catalog(name);
        const auto X = build_complex(m);
        const auto f = X.f_vector();
        EXPECT_EQ(f, f_vector_from_orders(m)) << name;
        EXPECT_EQ(Integer(std::accumulate(f.begin(), f.end(), std::size_t{0})), simplex_count(m));
    }
}

// Sphere check with an independent F_p rank computation.
TEST(CoxeterComplex, BettiNumbersModPAreThoseOfASphere) {
    for (const auto& name : {"A3", "B3", "H3", "A2xA1", "D4"}) {
        const auto m = catalog(name);
        const auto c = boundary_matrices(build_complex(m));
        for (std::uint64_t p : {2u, 3u, 5u, 1000003u}) {
            const auto b = oracle::betti_mod(c, p);
            std::vector<std::size_t> want(m.rank(), 0);
            want.front() += 1;
            want.back() += 1;
            EXPECT_EQ(b, want) << name << " p=" << p;
        }
    }
}

// The projection wW_T -> wW_{T+s} commutes with the action of W.
TEST(CoxeterComplex, FaceMapsAreEquivariant) {
    const auto m = catalog("H3");
    const auto X = build_complex(m);
    for (std::uint32_t bits = 0; bits < 7; ++bits) {
        const ParabolicSubset T(bits);
        for (std::size_t s = 0; s < 3; ++s) {
            if (T.contains(s) || T.with(s) == ParabolicSubset::full(3)) continue;
            const auto& f = X.face_map(T, s);
            const auto& src = X.table(T);
            const auto& dst = X.table(T.with(s));
            EXPECT_EQ(f[0], 0u);
            for (std::size_t r = 0; r < src.rows(); ++r)
                for (std::size_t g = 0; g < 3; ++g) ASSERT_EQ(f[src.act(r, g)], dst.act(f[r], g));
        }
    }
}

TEST(CoxeterComplex, OrbitComplexIsTheFundamentalSimplex) {
    for (const auto& name : {"A2", "A3", "B3", "H3", "D4", "A1xA1xA1"}) {
        const auto X = build_complex(catalog(name));
        const auto orbit = orbit_chain_complex(X);
        const auto delta = fundamental_domain_chain(catalog(name));
        EXPECT_EQ(orbit.ranks, delta.ranks) << name;
        for (std::size_t k = 0; k < orbit.boundaries.size(); ++k) EXPECT_EQ(orbit.boundaries[k], delta.boundaries[k]);
        EXPECT_EQ(chain_homology(orbit), point_homology(X.dimension())) << name;
        EXPECT_TRUE(base_row_check(catalog(name)));
        // ranks binom(n, k+1)
        const auto n = catalog(name).rank();
        for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(orbit.ranks[k], oracle::binom(n, k + 1));
    }
}

TEST(CoxeterComplex, GeneratorsActByMinusOne) {
    for (const auto& name : {"A2", "A3", "B3", "H3", "F4", "A2xA1"}) {
        const auto X = build_complex(catalog(name));
        for (std::size_t s = 0; s < X.generators(); ++s) EXPECT_EQ(generator_action_on_top(X, s), -1) << name;
        for (long long p : {3, 5, 7}) EXPECT_TRUE(top_coinvariants(X, p).is_trivial());
    }
}

TEST(CoxeterComplex, BudgetsAndDomain) {
    EXPECT_THROW(build_complex(catalog("E6"), 1000), BudgetExceeded);
    EXPECT_THROW(build_complex(parse_coxeter("2\n0 1 inf\n")), DomainError);
    EXPECT_EQ(simplex_count(catalog("A3")), 74);
}

TEST(CoxeterComplex, TripletExport) {
    const auto X = build_complex(catalog("A2"));
    const auto c = boundary_matrices(X);
    std::ostringstream out;
    write_triplets(out, X, c);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# f-vector 6 6");
    std::getline(in, line);
    std::size_t entries = 0;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        int k, row, col, v;
        ASSERT_TRUE(fields >> k >> row >> col >> v) << line;
        EXPECT_EQ(k, 1);
        EXPECT_TRUE(v == 1 || v == -1);
        ++entries;
    }
    EXPECT_EQ(entries, 12u);
}
