#include <gtest/gtest.h>

#include <random>

#include "plyp/error.hpp"
#include "plyp/families.hpp"
#include "support.hpp"

using namespace plyp;
using namespace plyp::testing;

namespace {

RationalCone half(RVec n) {
    HPolyhedron h(static_cast<int>(n.size()));
    h.ineqs.push_back({n, 0});
    return RationalCone(h);
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no exception";
    return ErrorCode::Parse;
}

}  // namespace

TEST(Lattice, RunningExampleFan) {
    auto lat = a1_lattice();
    ASSERT_EQ(lat->num_cones(), 2);
    int up = lat->locate(ZVec{0, 1}), down = lat->locate(ZVec{0, -1});
    EXPECT_NE(up, down);
    EXPECT_TRUE(cone_equal(lat->sigma().cones[up], half({0, 1})));
    EXPECT_TRUE(cone_equal(lat->sigma().cones[down], half({0, -1})));
    EXPECT_TRUE(validate_lattice(*lat).ok);
}

TEST(Lattice, RunningExampleMutation) {
    auto lat = a1_lattice();
    // mu(x, y) = (min(0, y) - x, y)
    EXPECT_EQ(lat->to_chart(ZVec{1, -1}, 1), (ZVec{-2, -1}));
    EXPECT_EQ(lat->to_chart(ZVec{1, 2}, 1), (ZVec{-1, 2}));
    EXPECT_EQ(lat->from_chart(ZVec{-2, -1}, 1), (ZVec{1, -1}));
}

TEST(Lattice, TrivialLattice) {
    auto lat = trivial_lattice(3);
    EXPECT_EQ(lat->num_charts(), 1);
    EXPECT_EQ(lat->num_cones(), 1);
    EXPECT_TRUE(validate_lattice(*lat).ok);
    EXPECT_EQ(lat->to_chart(ZVec{1, 2, 3}, 0), (ZVec{1, 2, 3}));
}

TEST(Lattice, MissingMutationIsRejected) {
    ClassicalFan fan{1, {half({1}), half({-1})}};
    PLMap m(fan, {{{1}}, {{1}}});
    EXPECT_EQ(code_of([&] { PolyptychLattice::make(1, {"a", "b"}, {{"a", "b", m}}); }), ErrorCode::BadParams);
}

TEST(Lattice, BrokenInverseIsReported) {
    // a -> b folds the negative ray onto the positive one; b -> a is the identity.
    ClassicalFan fan{1, {half({1}), half({-1})}};
    PLMap ab(fan, {{{1}}, {{-1}}});
    PLMap ba = PLMap::identity(1);
    auto lat = PolyptychLattice::make(1, {"a", "b"}, {{"a", "b", ab}, {"b", "a", ba}});
    auto rep = validate_lattice(*lat);
    EXPECT_FALSE(rep.ok);
    EXPECT_FALSE(rep.failures.empty());
}

TEST(Lattice, UnknownChart) {
    auto lat = a1_lattice();
    EXPECT_EQ(code_of([&] { lat->chart_index("7"); }), ErrorCode::UnknownChart);
}

TEST(Lattice, UpsilonOfRunningExample) {
    auto lat = a1_lattice();
    Element a{lat, {0, 1}}, b{lat, {0, -1}};
    // Chart 1 sum is 0; chart 2 sum is pi_2^{-1}((0,1) + (-1,-1)) = pi_2^{-1}(-1, 0).
    auto u = upsilon(a, b);
    ASSERT_EQ(u.size(), 2u);
    std::set<ZVec> got{u[0].base, u[1].base};
    EXPECT_TRUE(got.count(ZVec{0, 0}));
    EXPECT_TRUE(got.count(lat->from_chart(ZVec{-1, 0}, 1)));
}

TEST(Lattice, NegativeScaleThrows) {
    auto lat = a1_lattice();
    EXPECT_EQ(code_of([&] { scale(Element{lat, {1, 1}}, -1); }), ErrorCode::NegativeScalar);
    EXPECT_EQ(scale(Element{lat, {1, -1}}, 3).base, (ZVec{3, -3}));
}

TEST(Lattice, MdrFan) {
    auto lat = mdr_lattice(2, 2);
    ASSERT_EQ(lat->num_cones(), 2);
    // Sigma(M_{2,2}) = {u1 <= u2}, {u2 <= u1} in chart-1 coordinates (u1, u2, w2).
    HPolyhedron a(3), b(3);
    a.ineqs.push_back({{-1, 1, 0}, 0});
    b.ineqs.push_back({{1, -1, 0}, 0});
    int ca = lat->locate(ZVec{0, 1, 0}), cb = lat->locate(ZVec{1, 0, 0});
    EXPECT_TRUE(cone_equal(lat->sigma().cones[ca], RationalCone(a)));
    EXPECT_TRUE(cone_equal(lat->sigma().cones[cb], RationalCone(b)));
}

TEST(Lattice, MdrAxioms) {
    for (auto [d, r] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        auto rep = validate_lattice(*mdr_lattice(d, r));
        EXPECT_TRUE(rep.ok) << d << "," << r << ": " << (rep.failures.empty() ? "" : rep.failures[0]);
    }
    EXPECT_EQ(code_of([] { mdr_lattice(1, 2); }), ErrorCode::BadParams);
}

TEST(Lattice, ProductAndRebase) {
    auto p = product_lattice(a1_lattice(), trivial_lattice(1));
    EXPECT_EQ(p->rank(), 3);
    EXPECT_EQ(p->num_charts(), 2);
    EXPECT_TRUE(validate_lattice(*p).ok);
    auto rb = rebase(a1_lattice(), 1);
    EXPECT_EQ(rb->base(), 1);
    EXPECT_TRUE(validate_lattice(*rb).ok);
    EXPECT_EQ(rb->num_cones(), 2);
}

TEST(Lattice, PlFanImages) {
    auto fan = pl_fan(a1_lattice());
    ASSERT_EQ(fan.cones.size(), 2u);
    for (const auto& c : fan.cones) EXPECT_EQ(c.images.size(), 2u);
}

// Property: chart coordinates round-trip and mutations compose along charts.
TEST(LatticeProperty, ChartRoundTrip) {
    std::mt19937 g(3);
    for (auto [d, r] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        auto lat = mdr_lattice(d, r);
        for (int t = 0; t < 200; ++t) {
            ZVec x = random_zvec(g, lat->rank(), -5, 5);
            for (int a = 0; a < lat->num_charts(); ++a) {
                EXPECT_EQ(lat->from_chart(lat->to_chart(x, a), a), x);
                for (int b = 0; b < lat->num_charts(); ++b)
                    EXPECT_EQ(lat->mu(a, b).apply(lat->to_chart(x, a)), lat->to_chart(x, b));
            }
        }
    }
}

// Property: nonnegative scaling commutes with every chart.
TEST(LatticeProperty, ScalingIsChartIndependent) {
    std::mt19937 g(4);
    auto lat = a1_lattice();
    for (int t = 0; t < 200; ++t) {
        Element e{lat, random_zvec(g, 2, -6, 6)};
        Int k = uniform(g, 0, 4);
        for (int a = 0; a < 2; ++a) {
            ZVec c = e.chart(a);
            for (auto& x : c) x *= k;
            EXPECT_EQ(scale(e, k).chart(a), c);
        }
    }
}
