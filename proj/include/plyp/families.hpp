#pragma once

#include <array>
#include <utility>

#include "plyp/duality.hpp"
#include "plyp/polytopes.hpp"

namespace plyp {

// Constructors are memoized: repeated calls return the same lattice and pair objects,
// and every dual pair built here is registered.

/// One chart, rank r.
LatticePtr trivial_lattice(int r);
/// Classical pairing by the standard inner product (M = N).
DualPtr trivial_dual(int r, int box_radius = 3);

/// Rank-2 lattice with charts "1", "2" and mu(x, y) = (min(0, y) - x, y) both ways.
LatticePtr a1_lattice();
/// Point with p_1 = min(ax + by, ax - b'y); needs b + b' = min(0, a).
Point a1_point(Int a, Int b, Int bp);
std::array<Int, 3> a1_point_params(const Point& p);
/// Self pairing v(m) = (y, x, min(0, y) - x) for pi_1(m) = (x, y).
DualPtr a1_dual(int box_radius = 3);
/// Intersection of H_{p,-1} for p = (-1,0,-1), (0,1,-1), (1,-1,1).
const PLPolytope& a1_polytope();

/// Normal-form element (u, w) with min(u) = 0.
struct MdrElement {
    ZVec u, w;
    bool operator==(const MdrElement& o) const { return u == o.u && w == o.w; }
    bool operator<(const MdrElement& o) const { return u != o.u ? u < o.u : w < o.w; }
};

/// Charts "1".."r"; chart i stores (u_1..u_d, w_j for j != i). Base chart is "1".
LatticePtr mdr_lattice(int d, int r);
/// Chart i (0-based) coordinates of x, and back.
ZVec mdr_phi(int d, int r, int i, const MdrElement& x);
MdrElement mdr_phi_inv(int d, int r, int i, const ZVec& v);
Element mdr_element(int d, int r, const MdrElement& x);
MdrElement mdr_coords(int d, int r, const Element& e);
/// f(u, w) = <a, u> + <b, w>; throws NotAPoint unless sum(a) = min(b).
Point mdr_point(int d, int r, const ZVec& a, const ZVec& b);
std::pair<ZVec, ZVec> mdr_point_params(int d, int r, const Point& p);
/// v_{d,r}(u, w) = (w, u + <1,w>1) as a point of M_{r,d}; M = M_{d,r}, N = M_{r,d}.
DualPtr mdr_dual_pair(int d, int r, int box_radius = 3);
/// Generators S in M_{r,d}: (e_j, 0) for j in [r] and (0, +-e_j) for j in [d].
std::vector<MdrElement> mdr_gf_generators(int d, int r);
/// Intersection of H_{v_{r,d}(n), -1} over the generators, a polytope in M_{d,r}.
const PLPolytope& mdr_gf_polytope(int d, int r);
/// Constraint matrix of pi_1(P) on the cone C_k (k 0-based), columns (u, w_1, w_2..w_r).
ZMat mdr_tu_matrix(int d, int r, int k);

}  // namespace plyp
