#include <gtest/gtest.h>

#include <random>

#include "plyp/error.hpp"
#include "plyp/families.hpp"
#include "support.hpp"

using namespace plyp;
using namespace plyp::testing;

namespace {

std::set<RVec> chart_vertices(const PLPolytope& p, int alpha) {
    std::set<RVec> out;
    for (const auto& v : p.chart_image(alpha).vertices) out.insert(v);
    return out;
}

std::set<ZVec> bases(const std::vector<Element>& es) {
    std::set<ZVec> out;
    for (const auto& e : es) out.insert(e.base);
    return out;
}

}  // namespace

TEST(Polytopes, RunningExampleVertices) {
    const auto& p = a1_polytope();
    EXPECT_EQ(chart_vertices(p, 0), (std::set<RVec>{{-2, -1}, {0, -1}, {1, 0}, {1, 2}}));
    EXPECT_EQ(chart_vertices(p, 1), (std::set<RVec>{{-1, -1}, {-1, 2}, {1, -1}, {1, 0}}));
    EXPECT_EQ(p.vertex_coords().size(), 5u);
    EXPECT_TRUE(is_integral(p));
    EXPECT_TRUE(is_chart_gorenstein_fano(p));
    EXPECT_TRUE(charts_consistent(p));
}

TEST(Polytopes, SingleHalfSpaceIsNotCompact) {
    try {
        PLPolytope::build({{a1_point(-1, 0, -1), -1}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotCompact);
    }
    try {
        PLPolytope::build({});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotCompact);
    }
}

TEST(Polytopes, RunningExampleDual) {
    auto dual = dual_polytope(a1_polytope(), *a1_dual());
    EXPECT_EQ(chart_vertices(dual, 0), (std::set<RVec>{{-1, 1}, {0, -1}, {1, 0}}));
    EXPECT_EQ(chart_vertices(dual, 1), (std::set<RVec>{{-1, -1}, {-1, 0}, {Rat(1, 2), 0}, {1, 1}}));
    EXPECT_FALSE(is_integral(dual));
    EXPECT_TRUE(charts_consistent(dual));
}

TEST(Polytopes, DualNeedsInteriorOrigin) {
    const auto& p = a1_polytope();
    auto shifted = p.half_spaces();
    shifted[0].threshold = 0;
    try {
        dual_polytope(PLPolytope::build(shifted), *a1_dual());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OriginNotInterior);
    }
}

TEST(Polytopes, SupportFunction) {
    auto pair = a1_dual();
    auto psi = support_function(a1_polytope(), *pair);
    EXPECT_EQ(psi.eval(ZVec{0, 1}), Rat(-2));
    auto psi3 = support_function(scale_polytope(a1_polytope(), 3), *pair);
    std::mt19937 g(12);
    for (int t = 0; t < 50; ++t) {
        ZVec n = random_zvec(g, 2, -5, 5);
        EXPECT_EQ(psi3.eval(n), 3 * psi.eval(n));
    }
}

TEST(Polytopes, PConvOfSingleton) {
    auto pair = a1_dual();
    auto lat = a1_lattice();
    auto h = p_conv({Element{lat, {1, 2}}}, pair);
    EXPECT_EQ(h.lattice_points(), (std::vector<ZVec>{{1, 2}}));
}

TEST(Polytopes, PConvOfVerticesRecoversPolytope) {
    const auto& p = a1_polytope();
    auto h = p_conv(p.vertices(), a1_dual());
    auto pts = h.lattice_points();
    EXPECT_EQ(std::set<ZVec>(pts.begin(), pts.end()), bases(pl_lattice_points(p)));
}

TEST(Polytopes, NegativeScaleThrows) {
    try {
        scale_polytope(a1_polytope(), -1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NegativeScalar);
    }
}

TEST(Polytopes, ScaledLatticePointsMatchOracle) {
    for (Int k = 1; k <= 4; ++k) {
        auto pts = pl_lattice_points(scale_polytope(a1_polytope(), k));
        EXPECT_EQ(bases(pts), a1_polytope_oracle(k)) << "k=" << k;
    }
}

TEST(Polytopes, TrivialCube) {
    std::vector<PLHalfSpace> hs;
    auto lat = trivial_lattice(2);
    for (int i = 0; i < 2; ++i)
        for (Int s : {1, -1}) {
            ZVec f(2, 0);
            f[i] = s;
            hs.push_back({Point(lat, {f}), -1});
        }
    auto cube = PLPolytope::build(hs);
    EXPECT_EQ(pl_lattice_points(cube).size(), 9u);
    EXPECT_TRUE(is_chart_gorenstein_fano(cube));
    auto dual = dual_polytope(cube, *trivial_dual(2));
    EXPECT_EQ(chart_vertices(dual, 0), (std::set<RVec>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}));
}

// Property: random a1 polytopes agree across charts and with p-conv of their vertices.
TEST(PolytopesProperty, RandomRunningExamplePolytopes) {
    std::mt19937 g(13);
    auto pair = a1_dual();
    int checked = 0;
    while (checked < 20) {
        std::vector<PLHalfSpace> hs = a1_polytope().half_spaces();
        for (int i = 0; i < 2; ++i) {
            Int a = uniform(g, -2, 2), b = uniform(g, -2, 2);
            hs.push_back({a1_point(a, b, std::min<Int>(0, a) - b), -uniform(g, 1, 3)});
        }
        auto p = PLPolytope::build(hs);
        if (!is_integral(p)) continue;
        ++checked;
        EXPECT_TRUE(charts_consistent(p));
        auto pts = pl_lattice_points(p);
        auto h = p_conv(p.vertices(), pair).lattice_points();
        EXPECT_EQ(std::set<ZVec>(h.begin(), h.end()), bases(pts));
        for (const auto& v : p.vertices()) EXPECT_TRUE(p.contains(v));
    }
}
