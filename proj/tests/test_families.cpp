#include <gtest/gtest.h>

#include <random>

#include "plyp/error.hpp"
#include "plyp/families.hpp"
#include "support.hpp"

using namespace plyp;
using namespace plyp::testing;

namespace {

const std::vector<std::pair<int, int>> kParams = {{2, 2}, {2, 3}, {3, 2}};

std::set<MdrElement> mdr_points_of(int d, int r, const PLPolytope& p) {
    std::set<MdrElement> out;
    for (const auto& e : pl_lattice_points(p)) out.insert(mdr_coords(d, r, e));
    return out;
}

}  // namespace

TEST(Families, ConstructorsAreMemoized) {
    EXPECT_EQ(a1_lattice(), a1_lattice());
    EXPECT_EQ(mdr_lattice(2, 3), mdr_lattice(2, 3));
    EXPECT_EQ(mdr_dual_pair(2, 3), mdr_dual_pair(2, 3));
    EXPECT_NE(mdr_dual_pair(2, 3, 2), mdr_dual_pair(2, 3, 3));
}

TEST(Families, MdrCharts) {
    // phi_1((1,0),(0,1)) = ((2,1), w_2 = 1); phi_2 drops w_2 instead.
    MdrElement x{{1, 0}, {0, 1}};
    EXPECT_EQ(mdr_phi(2, 2, 0, x), (ZVec{2, 1, 1}));
    EXPECT_EQ(mdr_phi(2, 2, 1, x), (ZVec{2, 1, 0}));
    EXPECT_EQ(mdr_phi_inv(2, 2, 0, ZVec{2, 1, 1}), x);
    EXPECT_EQ(mdr_phi_inv(2, 2, 1, ZVec{2, 1, 0}), x);
}

TEST(Families, MdrMutation) {
    auto lat = mdr_lattice(2, 2);
    EXPECT_EQ(lat->mu(0, 1).apply(ZVec{2, 1, 1}), (ZVec{2, 1, 0}));
    EXPECT_EQ(lat->mu(1, 0).apply(ZVec{2, 1, 0}), (ZVec{2, 1, 1}));
}

TEST(Families, MdrNormalForm) {
    // (u + c1, w) and (u, w) are the same element.
    Element a = mdr_element(2, 3, {{0, 2}, {1, -1, 0}});
    EXPECT_EQ(mdr_coords(2, 3, a), (MdrElement{{0, 2}, {1, -1, 0}}));
}

TEST(Families, MdrPointExamples) {
    Point p = mdr_point(2, 2, {1, 1}, {2, 5});
    EXPECT_TRUE(verify_point(p).ok);
    EXPECT_TRUE(is_linear_on_chart(p, 0));
    EXPECT_FALSE(is_linear_on_chart(p, 1));
    try {
        mdr_point(2, 2, {1, 1}, {0, 5});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotAPoint);
    }
    try {
        mdr_point(2, 2, {1}, {1, 5});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(Families, GfGenerators) {
    auto s = mdr_gf_generators(2, 3);
    EXPECT_EQ(s.size(), 3u + 2 * 2u);
    std::set<MdrElement> got(s.begin(), s.end());
    EXPECT_TRUE(got.count(MdrElement{{1, 0, 0}, {0, 0}}));
    EXPECT_TRUE(got.count(MdrElement{{0, 0, 0}, {0, -1}}));
}

TEST(Families, GfPolytopeCountsMatchOracle) {
    // Frozen after agreeing with the box-scan oracle.
    std::map<std::pair<int, int>, std::size_t> frozen = {{{2, 2}, 23}, {{2, 3}, 75}, {{3, 2}, 63}};
    for (auto [d, r] : kParams) {
        const auto& p = mdr_gf_polytope(d, r);
        auto got = mdr_points_of(d, r, p);
        EXPECT_EQ(got, mdr_level_oracle(d, r, 1)) << d << "," << r;
        EXPECT_EQ(got.size(), frozen[std::make_pair(d, r)]);
        EXPECT_TRUE(is_integral(p));
        EXPECT_TRUE(is_chart_gorenstein_fano(p));
        EXPECT_TRUE(charts_consistent(p));
    }
}

TEST(Families, TuMatrices) {
    for (auto [d, r] : kParams)
        for (int k = 0; k < d; ++k) {
            ZMat a = mdr_tu_matrix(d, r, k);
            EXPECT_EQ(a[0].size(), static_cast<std::size_t>(d + r));
            EXPECT_TRUE(tu_oracle(a)) << d << "," << r << "," << k;
            EXPECT_TRUE(is_totally_unimodular(a));
        }
}

TEST(Families, BadParams) {
    try {
        mdr_lattice(2, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BadParams);
    }
}

// Property: v(m) is linear on chart k of M_{r,d} iff u_k = 0.
TEST(FamiliesProperty, ChartsOfDualPoints) {
    std::mt19937 g(21);
    for (auto [d, r] : kParams) {
        auto pair = mdr_dual_pair(d, r);
        for (int t = 0; t < 40; ++t) {
            MdrElement m = random_mdr(g, d, r, 3);
            Point p = pair->v(mdr_element(d, r, m));
            EXPECT_TRUE(verify_point(p).ok);
            for (int k = 0; k < d; ++k) EXPECT_EQ(is_linear_on_chart(p, k), m.u[k] == 0);
        }
    }
}

// Property: phi_i and its inverse round-trip, and agree with the lattice's charts.
TEST(FamiliesProperty, PhiRoundTrip) {
    std::mt19937 g(22);
    for (auto [d, r] : kParams) {
        auto lat = mdr_lattice(d, r);
        for (int t = 0; t < 60; ++t) {
            MdrElement m = random_mdr(g, d, r, 4);
            Element e = mdr_element(d, r, m);
            for (int i = 0; i < r; ++i) {
                EXPECT_EQ(mdr_phi_inv(d, r, i, mdr_phi(d, r, i, m)), m);
                EXPECT_EQ(e.chart(i), mdr_phi(d, r, i, m));
            }
        }
    }
}

// Property: mdr_point evaluates by the closed formula <a,u> + <b,w>.
TEST(FamiliesProperty, MdrPointFormula) {
    std::mt19937 g(23);
    for (auto [d, r] : kParams) {
        for (int t = 0; t < 30; ++t) {
            auto [a, b] = random_tdr(g, d, r, 3);
            Point p = mdr_point(d, r, a, b);
            for (int s = 0; s < 10; ++s) {
                MdrElement m = random_mdr(g, d, r, 4);
                Int want = 0;
                for (int i = 0; i < d; ++i) want += a[i] * m.u[i];
                for (int j = 0; j < r; ++j) want += b[j] * m.w[j];
                EXPECT_EQ(p.eval(mdr_element(d, r, m).base), want);
            }
        }
    }
}
