#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "plyp/duality.hpp"
#include "plyp/points.hpp"

namespace plyp {

/// {m : p(m) >= threshold}.
struct PLHalfSpace {
    Point point;
    Int threshold = 0;
};

/// Per-chart inequalities of one half-space (one row per piece of p_alpha).
HPolyhedron chart_halfspace(const PLHalfSpace& h, int alpha);

class PLPolytope {
public:
    /// Throws NotCompact if some chart image is unbounded; empty polytopes are flagged.
    static PLPolytope build(std::vector<PLHalfSpace> hs);

    const LatticePtr& lattice() const { return lat_; }
    const std::vector<PLHalfSpace>& half_spaces() const { return hs_; }
    const ClassicalPolytope& chart_image(int alpha) const { return images_[alpha]; }
    bool empty() const { return images_[0].empty(); }

    bool contains(const ZVec& base) const;
    bool contains(const RVec& base) const;
    bool contains(const Element& e) const { return contains(e.base); }

    /// V(P) in base coordinates, lex-sorted; rational in general.
    const std::vector<RVec>& vertex_coords() const { return verts_; }
    /// V(P) as lattice elements; throws VerificationFailure if a vertex is not integral.
    std::vector<Element> vertices() const;

private:
    LatticePtr lat_;
    std::vector<PLHalfSpace> hs_;
    std::vector<ClassicalPolytope> images_;
    std::vector<RVec> verts_;
};

struct SupportFunction {
    SElem value;  // oplus of the vertices, as an element of the semialgebra of M
    std::function<Rat(const ZVec&)> eval;
};

SupportFunction support_function(const PLPolytope& p, const DualPair& pair);
/// Intersection of H_{v(m),-1} over the vertices m; needs 0 in the interior.
PLPolytope dual_polytope(const PLPolytope& p, const DualPair& pair);

/// Point-convex hull of a finite set of elements.
class PConv {
public:
    PConv(DualPtr pair, std::vector<ZVec> s);
    bool contains(const ZVec& base) const;
    bool contains(const RVec& base) const;
    /// Lattice points, lex-sorted by base coordinates.
    std::vector<ZVec> lattice_points() const;

private:
    DualPtr pair_;
    std::vector<ZVec> s_;
};

PConv p_conv(const std::vector<Element>& s, const DualPtr& pair);

PLPolytope scale_polytope(const PLPolytope& p, Int k);
bool is_integral(const PLPolytope& p);
bool is_chart_gorenstein_fano(const PLPolytope& p);
/// Lattice points of the base chart image, checked against every other chart.
std::vector<Element> pl_lattice_points(const PLPolytope& p);
/// mu_{ab}(pi_a(P)) = pi_b(P), compared through vertex images and lattice points.
bool charts_consistent(const PLPolytope& p);

}  // namespace plyp
