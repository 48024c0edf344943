#include <gtest/gtest.h>

#include <random>

#include "plyp/error.hpp"
#include "plyp/families.hpp"
#include "support.hpp"

using namespace plyp;
using namespace plyp::testing;

namespace {

std::array<Int, 3> random_a1_params(std::mt19937& g, Int radius) {
    Int a = uniform(g, -radius, radius), b = uniform(g, -radius, radius);
    return {a, b, std::min<Int>(0, a) - b};
}

SElem random_selem(std::mt19937& g, const LatticePtr& lat, int max_members, Int radius) {
    std::vector<ZVec> s;
    int n = static_cast<int>(uniform(g, 1, max_members));
    for (int i = 0; i < n; ++i) s.push_back(random_zvec(g, lat->rank(), -radius, radius));
    return SElem::from_set(lat, s);
}

}  // namespace

TEST(Points, RunningExampleParametrization) {
    Point p = a1_point(-1, 0, -1);
    EXPECT_TRUE(verify_point(p).ok);
    // p_1(x, y) = -x + min(0, y)
    EXPECT_EQ(p.eval(ZVec{2, 3}), -2);
    EXPECT_EQ(p.eval(ZVec{2, -3}), -5);
    // p_2(u, v) = u: linear on chart 2 only.
    EXPECT_FALSE(is_linear_on_chart(p, 0));
    EXPECT_TRUE(is_linear_on_chart(p, 1));
    EXPECT_EQ(p.minimal_chart_expr(1).members, (std::vector<RVec>{{1, 0}}));
    auto q = a1_point_params(p);
    EXPECT_EQ(q, (std::array<Int, 3>{-1, 0, -1}));
}

TEST(Points, ConstraintViolationIsNotAPoint) {
    try {
        a1_point(1, 1, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotAPoint);
    }
}

TEST(Points, ConvexFunctionFailsVerification) {
    // max(0, y) in chart 1: continuous, linear per cone, but not a point.
    Point bad = point_from_function(a1_lattice(), [](const ZVec& x) { return std::max<Int>(0, x[1]); });
    EXPECT_FALSE(verify_point(bad).ok);
}

TEST(Points, IsPointFromChartExpressions) {
    auto lat = a1_lattice();
    Point out;
    // -x + min(0, y) in chart 1, u in chart 2.
    std::vector<TropExpr> good = {TropExpr{{{-1, 0}, {-1, 1}}}, TropExpr{{{1, 0}}}};
    EXPECT_TRUE(is_point(lat, good, &out).ok);
    EXPECT_EQ(out, a1_point(-1, 0, -1));
    std::vector<TropExpr> mismatch = {TropExpr{{{-1, 0}, {-1, 1}}}, TropExpr{{{0, 1}}}};
    EXPECT_FALSE(is_point(lat, mismatch).ok);
}

TEST(Points, RestrictToConeBounds) {
    try {
        restrict_to_cone(a1_point(0, 0, 0), 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotACone);
    }
}

TEST(Points, MdrPointValues) {
    // f_{a,b}(e_j, 0) = a_j and f_{a,b}(0, e_i) = b_i.
    ZVec a{1, -2}, b{-1, 0, 3};
    Point p = mdr_point(2, 3, a, b);
    EXPECT_TRUE(verify_point(p).ok);
    auto [a2, b2] = mdr_point_params(2, 3, p);
    EXPECT_EQ(a2, a);
    EXPECT_EQ(b2, b);
    try {
        mdr_point(2, 2, {1, 1}, {0, 5});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotAPoint);
    }
}

TEST(Semialgebra, NormalizationDropsHullMembers) {
    a1_dual();
    auto lat = a1_lattice();
    SElem s = SElem::from_set(lat, {{0, 0}, {2, 0}, {1, 0}});
    EXPECT_EQ(s.members.size(), 2u);
    EXPECT_TRUE(selem_equal(s, SElem::from_set(lat, {{0, 0}, {2, 0}})));
    EXPECT_TRUE(SElem::infinity(lat).inf);
}

TEST(Semialgebra, NeedsRegisteredDual) {
    auto lat = product_lattice(trivial_lattice(1), trivial_lattice(1));
    SElem a = SElem::from_set(lat, {{0, 0}});
    try {
        selem_equal(a, a);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoDualRegistered);
    }
}

// Property: every sampled parameter triple is a point; the point is linear on some chart.
TEST(PointsProperty, RunningExampleIsFull) {
    std::mt19937 g(1);
    for (int t = 0; t < 100; ++t) {
        auto q = random_a1_params(g, 5);
        Point p = a1_point(q[0], q[1], q[2]);
        ASSERT_TRUE(verify_point(p).ok);
        EXPECT_TRUE(is_linear_on_chart(p, 0) || is_linear_on_chart(p, 1));
        // Linear on chart 1 exactly when b + b' = 0.
        EXPECT_EQ(is_linear_on_chart(p, 0), q[1] + q[2] == 0);
    }
}

// Property: a point is recovered from its restriction to any cone.
TEST(PointsProperty, ExtendFromCone) {
    std::mt19937 g(2);
    for (auto [d, r] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        for (int t = 0; t < 15; ++t) {
            auto [a, b] = random_tdr(g, d, r, 3);
            Point p = mdr_point(d, r, a, b);
            int c = static_cast<int>(uniform(g, 0, p.lattice()->num_cones() - 1));
            auto q = extend_from_cone(p.lattice(), c, p.cone_functionals()[c]);
            ASSERT_TRUE(q.has_value());
            EXPECT_EQ(*q, p);
        }
    }
}

// Property: mdr points are linear on chart i iff sum(a) = b_i.
TEST(PointsProperty, MdrLinearityCharts) {
    std::mt19937 g(3);
    for (auto [d, r] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        for (int t = 0; t < 30; ++t) {
            auto [a, b] = random_tdr(g, d, r, 3);
            Point p = mdr_point(d, r, a, b);
            Int s = std::accumulate(a.begin(), a.end(), Int(0));
            for (int i = 0; i < r; ++i) EXPECT_EQ(is_linear_on_chart(p, i), b[i] == s);
        }
    }
}

// Property: nonnegative combinations of points linear on a common chart stay points.
TEST(PointsProperty, CombinePoints) {
    std::mt19937 g(4);
    for (int t = 0; t < 50; ++t) {
        auto q1 = random_a1_params(g, 4), q2 = random_a1_params(g, 4);
        Point p1 = a1_point(q1[0], q1[1], q1[2]), p2 = a1_point(q2[0], q2[1], q2[2]);
        Int l = uniform(g, 0, 3), m = uniform(g, 0, 3);
        for (int a = 0; a < 2; ++a) {
            if (!is_linear_on_chart(p1, a) || !is_linear_on_chart(p2, a)) continue;
            auto c = combine_points(p1, p2, l, m, a);
            ASSERT_TRUE(c.has_value());
            EXPECT_TRUE(verify_point(*c).ok);
        }
    }
}

// Property: semialgebra laws on the running example.
TEST(SemialgebraProperty, Laws) {
    a1_dual();
    auto lat = a1_lattice();
    std::mt19937 g(5);
    SElem zero = SElem::of(Element::zero(lat));
    for (int t = 0; t < 40; ++t) {
        SElem a = random_selem(g, lat, 2, 3), b = random_selem(g, lat, 2, 3), c = random_selem(g, lat, 2, 3);
        EXPECT_TRUE(selem_equal(semialg_star(a, b), semialg_star(b, a)));
        EXPECT_TRUE(selem_equal(semialg_star(semialg_star(a, b), c), semialg_star(a, semialg_star(b, c))));
        EXPECT_TRUE(selem_equal(semialg_star(a, zero), a));
        EXPECT_TRUE(selem_equal(semialg_oplus(a, a), a));
        EXPECT_TRUE(selem_equal(semialg_oplus(a, SElem::infinity(lat)), a));
        EXPECT_TRUE(semialg_star(a, SElem::infinity(lat)).inf);
        EXPECT_TRUE(selem_geq(a, semialg_oplus(a, b)));
    }
}

// Property: evaluation at a point is a semialgebra morphism.
TEST(SemialgebraProperty, PointEvaluationIsHomomorphism) {
    a1_dual();
    auto lat = a1_lattice();
    std::mt19937 g(6);
    for (int t = 0; t < 60; ++t) {
        auto q = random_a1_params(g, 4);
        Point p = a1_point(q[0], q[1], q[2]);
        SElem a = random_selem(g, lat, 3, 3), b = random_selem(g, lat, 3, 3);
        EXPECT_EQ(*point_eval_hom(p, semialg_oplus(a, b)), std::min(*point_eval_hom(p, a), *point_eval_hom(p, b)));
        EXPECT_EQ(*point_eval_hom(p, semialg_star(a, b)), *point_eval_hom(p, a) + *point_eval_hom(p, b));
        EXPECT_FALSE(point_eval_hom(p, SElem::infinity(lat)).has_value());
    }
}

TEST(Semialgebra, StarOfOppositeRays) {
    a1_dual();
    auto lat = a1_lattice();
    SElem s = semialg_star(SElem::of(Element{lat, {0, 1}}), SElem::of(Element{lat, {0, -1}}));
    EXPECT_EQ(s.members, (std::vector<ZVec>{{0, 0}, {1, 0}}));
}
