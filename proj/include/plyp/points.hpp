#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plyp/lattice.hpp"

namespace plyp {

/// A point of M stored by its restriction to each maximal cone of Sigma(M),
/// as integer functionals in base coordinates.
class Point {
public:
    Point() = default;
    Point(LatticePtr lat, std::vector<ZVec> cone_fns);

    const LatticePtr& lattice() const { return lat_; }
    const std::vector<ZVec>& cone_functionals() const { return fns_; }

    Int eval(const ZVec& base) const;
    Rat eval(const RVec& base) const;
    Int operator()(const Element& e) const;

    /// All cone pieces transported to chart alpha; their minimum is p_alpha.
    TropExpr chart_expr(int alpha) const;
    TropExpr minimal_chart_expr(int alpha) const;

    bool operator==(const Point& o) const { return lat_ == o.lat_ && fns_ == o.fns_; }
    bool operator!=(const Point& o) const { return !(*this == o); }

private:
    LatticePtr lat_;
    std::vector<ZVec> fns_;
};

/// Samples a function that is linear on every Sigma cone; no validation.
Point point_from_function(const LatticePtr& lat, const std::function<Int(const ZVec&)>& f);

struct PointCheck {
    bool ok = true;
    std::string witness;
};

/// Continuity, chart concavity, and the min identity on the certificate set.
PointCheck verify_point(const Point& p);
/// Candidate given as one tropical expression per chart.
PointCheck is_point(const LatticePtr& lat, const std::vector<TropExpr>& per_chart, Point* out = nullptr);

bool is_linear_on_chart(const Point& p, int alpha);
LinFunctional restrict_to_cone(const Point& p, int cone);
/// With verify=false the candidate is returned without checking the point axioms.
std::optional<Point> extend_from_cone(const LatticePtr& lat, int cone, const ZVec& f, bool verify = true);
std::optional<Point> combine_points(const Point& p, const Point& q, Int lambda, Int mu, int alpha);

/// Element of the canonical semialgebra: infinity, or a finite set of elements
/// (base coordinates, sorted).
struct SElem {
    LatticePtr lat;
    bool inf = true;
    std::vector<ZVec> members;

    static SElem infinity(const LatticePtr& lat);
    static SElem of(const Element& e);
    /// Normalizes when a dual pair is registered; otherwise keeps the raw set.
    static SElem from_set(const LatticePtr& lat, std::vector<ZVec> elems);
    std::vector<Element> elements() const;
};

/// Removes members lying in the point-convex hull of the rest (lex order).
SElem normalize(const SElem& a);
bool selem_equal(const SElem& a, const SElem& b);
/// a >= b in the semialgebra order, i.e. a (+) b = b.
bool selem_geq(const SElem& a, const SElem& b);
SElem semialg_oplus(const SElem& a, const SElem& b);
SElem semialg_star(const SElem& a, const SElem& b);
/// Empty optional stands for infinity.
std::optional<Int> point_eval_hom(const Point& p, const SElem& a);

}  // namespace plyp
