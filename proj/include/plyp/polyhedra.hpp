#pragma once

#include <optional>
#include <vector>

#include "plyp/lp.hpp"
#include "plyp/rational.hpp"

namespace plyp {

/// Half-space data <normal, x> >= threshold.
struct Ineq {
    RVec normal;
    Rat threshold;
};

/// Intersection of half-spaces and hyperplanes in R^dim.
struct HPolyhedron {
    int dim = 0;
    std::vector<Ineq> ineqs;
    std::vector<Ineq> eqs;

    HPolyhedron() = default;
    explicit HPolyhedron(int d) : dim(d) {}

    bool contains(const RVec& x) const;
    bool contains(const ZVec& x) const;
    std::vector<Constraint> constraints() const;
    HPolyhedron intersect(const HPolyhedron& other) const;
    void check() const;
};

bool is_bounded(const HPolyhedron& p);
bool is_empty(const HPolyhedron& p);
std::optional<RVec> interior_point(const HPolyhedron& p);
/// Drop duplicate and redundant inequalities; order of survivors preserved.
HPolyhedron remove_redundant(const HPolyhedron& p);
/// Exact extreme points by brute force over constraint subsets; lex-sorted.
std::vector<RVec> solve_vertices(const HPolyhedron& p);

/// A bounded polyhedron with both representations.
struct ClassicalPolytope {
    HPolyhedron h;
    std::vector<RVec> vertices;

    static ClassicalPolytope from_h(const HPolyhedron& h);
    bool empty() const { return vertices.empty(); }
    bool is_integral() const;
    ClassicalPolytope dilate(const Rat& k) const;
};

/// All integer points, lexicographic order.
std::vector<ZVec> lattice_points(const ClassicalPolytope& p);

/// Cone {x : <n_i, x> >= 0}; thresholds are always zero.
struct RationalCone {
    HPolyhedron h;

    RationalCone() = default;
    explicit RationalCone(HPolyhedron hp);
    static RationalCone whole(int dim);
    int dim() const { return h.dim; }
    bool contains(const RVec& x) const { return h.contains(x); }
    bool contains(const ZVec& x) const { return h.contains(x); }
    bool full_dimensional() const;
    /// Primitive integer vectors whose nonnegative span is the cone
    /// (extreme rays of the pointed part plus +- a lineality basis).
    const std::vector<ZVec>& generators() const;
    /// An integer point in the interior (sum of generators, made strict).
    ZVec interior_lattice_point() const;

private:
    mutable std::optional<std::vector<ZVec>> gens_;
};

/// dim() linearly independent generators of a full-dimensional cone.
ZMat independent_generators(const RationalCone& c);

bool cone_subset(const RationalCone& a, const RationalCone& b);
bool cone_equal(const RationalCone& a, const RationalCone& b);

struct ClassicalFan {
    int dim = 0;
    std::vector<RationalCone> cones;

    /// Index of the first maximal cone containing x, or -1.
    int locate(const RVec& x) const;
    int locate(const ZVec& x) const;
    /// Ray-shooting completeness test across every facet.
    bool is_complete() const;
};

ClassicalFan common_refinement(const std::vector<ClassicalFan>& fans);

using LinFunctional = RVec;

/// Pointwise minimum of finitely many linear functionals.
struct TropExpr {
    std::vector<LinFunctional> members;

    Rat eval(const RVec& x) const;
    Rat eval(const ZVec& x) const;
};

enum class Strictness { Strict, Weak };

struct StrictConstraint {
    LinFunctional f;
    Strictness kind = Strictness::Strict;
};

/// Witness x in the domain cone with f(x) > 0 (strict) / f(x) >= 0 (weak).
std::optional<RVec> strict_feasible(const std::vector<StrictConstraint>& cons, const RationalCone& domain);

TropExpr minimal_min_representation(const TropExpr& e, const RationalCone& domain);
LinFunctional lex_min_member(const TropExpr& e, const std::vector<RVec>& basis);

bool is_totally_unimodular(const ZMat& a);

}  // namespace plyp
