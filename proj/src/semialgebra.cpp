#include <algorithm>
#include <set>

#include "plyp/duality.hpp"
#include "plyp/error.hpp"
#include "plyp/points.hpp"

namespace plyp {

SElem SElem::infinity(const LatticePtr& lat) { return SElem{lat, true, {}}; }

SElem SElem::of(const Element& e) { return SElem{e.lat, false, {e.base}}; }

SElem SElem::from_set(const LatticePtr& lat, std::vector<ZVec> elems) {
    if (elems.empty()) return infinity(lat);
    std::set<ZVec> uniq(elems.begin(), elems.end());
    SElem s{lat, false, {uniq.begin(), uniq.end()}};
    if (find_dual(lat.get())) return normalize(s);
    return s;
}

std::vector<Element> SElem::elements() const {
    std::vector<Element> out;
    for (const auto& m : members) out.push_back({lat, m});
    return out;
}

SElem normalize(const SElem& a) {
    if (a.inf) return a;
    DualPtr pair = require_dual(a.lat);
    std::set<ZVec> uniq(a.members.begin(), a.members.end());
    std::vector<ZVec> cur(uniq.begin(), uniq.end());
    for (std::size_t i = 0; i < cur.size() && cur.size() > 1;) {
        std::vector<ZVec> rest;
        for (std::size_t j = 0; j < cur.size(); ++j)
            if (j != i) rest.push_back(cur[j]);
        if (in_pconv(*pair, to_rvec(cur[i]), rest))
            cur = std::move(rest);
        else
            ++i;
    }
    return SElem{a.lat, false, cur};
}

static void same(const SElem& a, const SElem& b) {
    if (a.lat != b.lat) fail(ErrorCode::DimensionMismatch, "semialgebra elements over different lattices");
}

bool selem_equal(const SElem& a, const SElem& b) {
    same(a, b);
    if (a.inf || b.inf) return a.inf == b.inf;
    require_dual(a.lat);
    return normalize(a).members == normalize(b).members;
}

bool selem_geq(const SElem& a, const SElem& b) {
    same(a, b);
    if (a.inf) return true;
    if (b.inf) return false;
    DualPtr pair = require_dual(a.lat);
    for (const auto& m : a.members)
        if (!in_pconv(*pair, to_rvec(m), b.members)) return false;
    return true;
}

SElem semialg_oplus(const SElem& a, const SElem& b) {
    same(a, b);
    if (a.inf) return b;
    if (b.inf) return a;
    std::vector<ZVec> u = a.members;
    u.insert(u.end(), b.members.begin(), b.members.end());
    require_dual(a.lat);
    return SElem::from_set(a.lat, u);
}

SElem semialg_star(const SElem& a, const SElem& b) {
    same(a, b);
    if (a.inf || b.inf) return SElem::infinity(a.lat);
    require_dual(a.lat);
    std::vector<ZVec> u;
    for (const auto& x : a.members)
        for (const auto& y : b.members)
            for (const auto& e : upsilon(Element{a.lat, x}, Element{a.lat, y})) u.push_back(e.base);
    return SElem::from_set(a.lat, u);
}

std::optional<Int> point_eval_hom(const Point& p, const SElem& a) {
    if (a.inf) return std::nullopt;
    if (p.lattice() != a.lat) fail(ErrorCode::DimensionMismatch, "point and semialgebra element on different lattices");
    Int best = p.eval(a.members[0]);
    for (const auto& m : a.members) best = std::min(best, p.eval(m));
    return best;
}

}  // namespace plyp
