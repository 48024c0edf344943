#pragma once

#include <map>
#include <string>
#include <vector>

#include "plyp/families.hpp"

namespace plyp {

/// Element of A_{d,r} = Q[x_1..x_d, t_1..t_r]/(x_1...x_d - t_1 - ... - t_r)
/// in the basis x^u t^w with min(u) = 0.
struct AlgebraElement {
    int d = 2, r = 2;
    std::map<MdrElement, Rat> terms;  // no zero coefficients

    static AlgebraElement zero(int d, int r);
    static AlgebraElement one(int d, int r);
    static AlgebraElement basis(int d, int r, const MdrElement& m);
    /// Generators x_i (i in [d]) and t_j (j in [r]), 1-based.
    static AlgebraElement x(int d, int r, int i);
    static AlgebraElement t(int d, int r, int j);

    bool is_zero() const { return terms.empty(); }
    bool operator==(const AlgebraElement& o) const { return d == o.d && r == o.r && terms == o.terms; }
};

AlgebraElement alg_add(const AlgebraElement& f, const AlgebraElement& g);
AlgebraElement alg_scale(const AlgebraElement& f, const Rat& c);
AlgebraElement alg_mul(const AlgebraElement& f, const AlgebraElement& g);
AlgebraElement alg_pow(const AlgebraElement& f, int k);

/// Parses sums of products of x<i>, t<j>, integers and parentheses, with ^ for powers.
/// Throws Parse with the column of the offending character.
AlgebraElement parse_algebra(const std::string& expr, int d, int r);
/// Terms in descending lex order of (u, w), e.g. "t1 + t2".
std::string to_string(const AlgebraElement& f);

/// Oplus of the basis values, as an element of the semialgebra of M_{d,r}
/// (the point v(m) of M_{r,d} is identified with m). Zero maps to infinity.
SElem valuate(const AlgebraElement& f);

/// Default basis of C_alpha in M_{r,d}: (0, e_j) for j in [d], then (e_l, 0) for l != alpha.
std::vector<MdrElement> default_rho(int d, int r, int alpha);
/// Lex-min over the support of (v(m)(rho_1), ..., v(m)(rho_n)); throws BadBasis for a bad rho.
ZVec full_rank_valuation(const AlgebraElement& f, int alpha, const std::vector<MdrElement>& rho);
ZVec full_rank_valuation(const AlgebraElement& f, int alpha);

/// Rank-one valuations given by pairing with one element n of M_{r,d}.
ZVec circledast(const AlgebraElement& f, const std::vector<MdrElement>& ns);
Int boxplus(const AlgebraElement& f, const std::vector<MdrElement>& ns);
/// Number of basis elements per total degree under boxplus, and the same count
/// aggregated from the circledast tuples.
std::map<Int, Int> graded_dims_boxplus(int d, int r, const std::vector<MdrElement>& basis,
                                       const std::vector<MdrElement>& ns);
std::map<Int, Int> graded_dims_circledast(int d, int r, const std::vector<MdrElement>& basis,
                                          const std::vector<MdrElement>& ns);

std::vector<MdrElement> support(const AlgebraElement& f);
/// Point-convex hull of the support.
PConv support_hull(const AlgebraElement& f);

/// Basis of the level-k subspace: keys lying in kP, for P a polytope in M_{d,r}.
std::vector<MdrElement> level_space(const PLPolytope& p, int d, int r, Int k);

struct NoBodyLevel {
    Int k = 0;
    std::size_t values = 0;
    std::size_t lattice_points = 0;
    bool ok = true;
};

struct NoBodyReport {
    bool ok = true;
    std::vector<NoBodyLevel> levels;
};

/// Compares full-rank valuation values on level k with the lattice points of k pi_alpha(P).
NoBodyReport no_body_check(const PLPolytope& p, int d, int r, int alpha, Int k_max);

}  // namespace plyp
