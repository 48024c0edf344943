#include <gtest/gtest.h>

#include <random>

#include "plyp/detrop.hpp"
#include "plyp/error.hpp"
#include "support.hpp"

using namespace plyp;
using namespace plyp::testing;

namespace {

const std::vector<std::pair<int, int>> kParams = {{2, 2}, {2, 3}, {3, 2}};

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

TEST(Detrop, RelationProducts) {
    auto x1 = AlgebraElement::x(2, 2, 1), x2 = AlgebraElement::x(2, 2, 2), t1 = AlgebraElement::t(2, 2, 1);
    EXPECT_EQ(to_string(alg_mul(x1, x2)), "t1 + t2");
    EXPECT_EQ(to_string(alg_mul(alg_mul(x1, t1), x2)), "t1^2 + t1*t2");
    auto f = parse_algebra("3*x1^2*t2 - t1", 2, 2);
    EXPECT_EQ(alg_mul(f, AlgebraElement::one(2, 2)), f);
    EXPECT_TRUE(alg_mul(f, AlgebraElement::zero(2, 2)).is_zero());
    EXPECT_EQ(alg_pow(x1, 0), AlgebraElement::one(2, 2));
}

TEST(Detrop, ParseAndPrint) {
    EXPECT_EQ(parse_algebra("x1*x2", 2, 2), parse_algebra("t1 + t2", 2, 2));
    EXPECT_EQ(parse_algebra("(x1 + 1)^2", 2, 2), parse_algebra("x1^2 + 2*x1 + 1", 2, 2));
    EXPECT_EQ(to_string(parse_algebra("t1^-1*t1", 2, 2)), "1");
    EXPECT_EQ(to_string(AlgebraElement::zero(2, 2)), "0");
    auto f = parse_algebra("2*x1*t2^3 - x2 + 5", 2, 3);
    EXPECT_EQ(parse_algebra(to_string(f), 2, 3), f);
}

TEST(Detrop, ParseErrors) {
    try {
        parse_algebra("x1 + * x2", 2, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
        EXPECT_NE(std::string(e.what()).find("column 6"), std::string::npos) << e.what();
    }
    EXPECT_EQ(code_of([] { parse_algebra("x3", 2, 2); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([] { parse_algebra("x1^-1", 2, 2); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([] { parse_algebra("(x1", 2, 2); }), ErrorCode::Parse);
}

TEST(Detrop, ParamMismatch) {
    EXPECT_EQ(code_of([] { alg_mul(AlgebraElement::x(2, 2, 1), AlgebraElement::x(2, 3, 1)); }),
              ErrorCode::ParamMismatch);
}

TEST(Detrop, ValuationOfGenerators) {
    auto pair = mdr_dual_pair(2, 2);
    auto v = valuate(AlgebraElement::t(2, 2, 1));
    ASSERT_EQ(v.members.size(), 1u);
    MdrElement m = mdr_coords(2, 2, v.elements()[0]);
    EXPECT_EQ(m, (MdrElement{{0, 0}, {1, 0}}));
    // As a point of M_{2,2}: a = (1, 0), b = (1, 1).
    auto [a, b] = mdr_point_params(2, 2, pair->v(v.elements()[0]));
    EXPECT_EQ(a, (ZVec{1, 0}));
    EXPECT_EQ(b, (ZVec{1, 1}));
    EXPECT_TRUE(valuate(AlgebraElement::zero(2, 2)).inf);
}

TEST(Detrop, FullRankValuationOfBasis) {
    std::mt19937 g(31);
    for (auto [d, r] : kParams)
        for (int t = 0; t < 30; ++t) {
            MdrElement m = random_mdr(g, d, r, 3);
            for (int a = 0; a < r; ++a)
                EXPECT_EQ(full_rank_valuation(AlgebraElement::basis(d, r, m), a), mdr_phi(d, r, a, m));
        }
}

TEST(Detrop, BadBasis) {
    auto f = AlgebraElement::x(2, 2, 1);
    auto rho = default_rho(2, 2, 0);
    EXPECT_EQ(code_of([&] { full_rank_valuation(f, 0, {rho[0], rho[1]}); }), ErrorCode::BadBasis);
    EXPECT_EQ(code_of([&] { full_rank_valuation(f, 0, {rho[0], rho[0], rho[2]}); }), ErrorCode::BadBasis);
    // (e_1, 0) pairs to u_1 and is not in the cone of chart 1.
    EXPECT_EQ(code_of([&] { full_rank_valuation(f, 0, {rho[0], rho[1], MdrElement{{1, 0}, {0, 0}}}); }),
              ErrorCode::BadBasis);
    EXPECT_EQ(code_of([&] { full_rank_valuation(f, 5); }), ErrorCode::UnknownChart);
}

TEST(Detrop, RankOneValuations) {
    auto ns = mdr_gf_generators(2, 2);
    std::mt19937 g(32);
    for (int t = 0; t < 30; ++t) {
        MdrElement m = random_mdr(g, 2, 2, 3);
        auto f = AlgebraElement::basis(2, 2, m);
        ZVec tup = circledast(f, ns);
        ASSERT_EQ(tup.size(), ns.size());
        Int s = 0;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            EXPECT_EQ(tup[i], mdr_pairing_formula(m, ns[i]));
            s += tup[i];
        }
        EXPECT_EQ(boxplus(f, ns), s);
    }
}

TEST(Detrop, GradedDimensions) {
    auto ns = mdr_gf_generators(2, 2);
    auto basis = level_space(mdr_gf_polytope(2, 2), 2, 2, 2);
    std::map<Int, Int> oracle;
    for (const auto& m : basis) {
        Int s = 0;
        for (const auto& n : ns) s += mdr_pairing_formula(m, n);
        ++oracle[s];
    }
    EXPECT_EQ(graded_dims_boxplus(2, 2, basis, ns), oracle);
    EXPECT_EQ(graded_dims_circledast(2, 2, basis, ns), oracle);
}

TEST(Detrop, SupportAndHull) {
    auto f = parse_algebra("x1 + x2", 2, 2);
    auto s = support(f);
    EXPECT_EQ(s.size(), 2u);
    auto hull = support_hull(f);
    for (const auto& m : s) EXPECT_TRUE(hull.contains(mdr_phi(2, 2, 0, m)));
    EXPECT_FALSE(hull.contains(mdr_phi(2, 2, 0, MdrElement{{0, 0}, {0, 0}})));
}

TEST(Detrop, LevelDimensions) {
    // Frozen after agreeing with the box-scan oracle.
    const std::vector<std::size_t> frozen = {1, 23, 105, 287};
    const auto& p = mdr_gf_polytope(2, 2);
    for (Int k = 0; k <= 3; ++k) {
        auto lv = level_space(p, 2, 2, k);
        std::set<MdrElement> got(lv.begin(), lv.end());
        EXPECT_EQ(got, mdr_level_oracle(2, 2, k)) << "k=" << k;
        EXPECT_EQ(lv.size(), frozen[k]);
    }
    for (auto [d, r] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}}) {
        auto lv = level_space(mdr_gf_polytope(d, r), d, r, 2);
        EXPECT_EQ(std::set<MdrElement>(lv.begin(), lv.end()), mdr_level_oracle(d, r, 2));
    }
}

TEST(Detrop, NoBody) {
    for (auto [d, r] : kParams)
        for (int a = 0; a < r; ++a) {
            auto rep = no_body_check(mdr_gf_polytope(d, r), d, r, a, 2);
            EXPECT_TRUE(rep.ok) << d << "," << r << " chart " << a + 1;
            for (const auto& lv : rep.levels) EXPECT_EQ(lv.values, lv.lattice_points);
        }
}

// Property: valuation turns products into star and sums into an upper bound of oplus.
TEST(DetropProperty, ValuationLaws) {
    std::mt19937 g(33);
    for (int t = 0; t < 60; ++t) {
        auto f = random_algebra(g, 2, 2, 2, 3), h = random_algebra(g, 2, 2, 2, 3);
        EXPECT_TRUE(selem_equal(valuate(alg_mul(f, h)), semialg_star(valuate(f), valuate(h))));
        auto s = alg_add(f, h);
        if (!s.is_zero()) EXPECT_TRUE(selem_geq(valuate(s), semialg_oplus(valuate(f), valuate(h))));
    }
}

// Property: full-rank valuations are additive on products and lex-superadditive on sums.
TEST(DetropProperty, FullRankValuationLaws) {
    std::mt19937 g(34);
    for (auto [d, r] : kParams)
        for (int t = 0; t < 20; ++t) {
            auto f = random_algebra(g, d, r, 2, 3), h = random_algebra(g, d, r, 2, 3);
            for (int a = 0; a < r; ++a) {
                ZVec vf = full_rank_valuation(f, a), vh = full_rank_valuation(h, a);
                ZVec sum = vf;
                for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += vh[i];
                EXPECT_EQ(full_rank_valuation(alg_mul(f, h), a), sum);
                auto s = alg_add(f, h);
                if (!s.is_zero()) EXPECT_GE(full_rank_valuation(s, a), std::min(vf, vh));
            }
        }
}

// Property: ring axioms on random elements.
TEST(DetropProperty, RingAxioms) {
    std::mt19937 g(35);
    for (int t = 0; t < 40; ++t) {
        auto a = random_algebra(g, 2, 3, 2, 3), b = random_algebra(g, 2, 3, 2, 3), c = random_algebra(g, 2, 3, 2, 3);
        EXPECT_EQ(alg_mul(a, b), alg_mul(b, a));
        EXPECT_EQ(alg_mul(alg_mul(a, b), c), alg_mul(a, alg_mul(b, c)));
        EXPECT_EQ(alg_mul(a, alg_add(b, c)), alg_add(alg_mul(a, b), alg_mul(a, c)));
    }
}

// Property: the level spaces grow with k.
TEST(DetropProperty, LevelsAreNested) {
    const auto& p = mdr_gf_polytope(2, 3);
    auto prev = level_space(p, 2, 3, 0);
    for (Int k = 1; k <= 2; ++k) {
        auto cur = level_space(p, 2, 3, k);
        EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
        prev = cur;
    }
}
