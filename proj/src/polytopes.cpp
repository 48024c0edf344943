#include "plyp/polytopes.hpp"

#include <algorithm>
#include <set>

#include "plyp/error.hpp"

namespace plyp {

HPolyhedron chart_halfspace(const PLHalfSpace& h, int alpha) {
    HPolyhedron out(h.point.lattice()->rank());
    for (const auto& f : h.point.chart_expr(alpha).members) out.ineqs.push_back({f, Rat(static_cast<long>(h.threshold))});
    return out;
}

PLPolytope PLPolytope::build(std::vector<PLHalfSpace> hs) {
    if (hs.empty()) fail(ErrorCode::NotCompact, "no half-spaces");
    PLPolytope p;
    p.lat_ = hs[0].point.lattice();
    for (const auto& h : hs)
        if (h.point.lattice() != p.lat_) fail(ErrorCode::DimensionMismatch, "half-spaces over different lattices");
    p.hs_ = std::move(hs);
    int r = p.lat_->rank();
    std::set<RVec, RVecLess> verts;
    for (int a = 0; a < p.lat_->num_charts(); ++a) {
        HPolyhedron hp(r);
        for (const auto& h : p.hs_) {
            auto part = chart_halfspace(h, a);
            hp.ineqs.insert(hp.ineqs.end(), part.ineqs.begin(), part.ineqs.end());
        }
        if (!is_empty(hp) && !is_bounded(hp))
            fail(ErrorCode::NotCompact, "chart image " + p.lat_->charts()[a] + " is unbounded");
        p.images_.push_back(ClassicalPolytope::from_h(remove_redundant(hp)));
        for (const auto& v : p.images_.back().vertices) verts.insert(p.lat_->from_chart(v, a));
    }
    p.verts_.assign(verts.begin(), verts.end());
    return p;
}

bool PLPolytope::contains(const ZVec& base) const {
    for (const auto& h : hs_)
        if (h.point.eval(base) < h.threshold) return false;
    return true;
}

bool PLPolytope::contains(const RVec& base) const {
    for (const auto& h : hs_)
        if (h.point.eval(base) < Rat(static_cast<long>(h.threshold))) return false;
    return true;
}

std::vector<Element> PLPolytope::vertices() const {
    std::vector<Element> out;
    for (const auto& v : verts_) {
        if (!is_integral(v)) fail(ErrorCode::VerificationFailure, "vertex " + to_string(v) + " is not a lattice element");
        out.push_back({lat_, to_zvec(v)});
    }
    return out;
}

namespace {

// Smallest q > 0 with q*v integral.
Int denominator_of(const RVec& v) {
    mpz_class q = 1;
    for (const auto& x : v) q = lcm(q, mpz_class(x.get_den()));
    return q.get_si();
}

ZVec scaled(const RVec& v, Int q) { return to_zvec(scale(v, Rat(static_cast<long>(q)))); }

}  // namespace

SupportFunction support_function(const PLPolytope& p, const DualPair& pair) {
    if (pair.M() != p.lattice()) fail(ErrorCode::NoDualRegistered, "dual pair does not belong to the polytope lattice");
    SupportFunction sf;
    std::vector<ZVec> vs;
    bool integral = true;
    for (const auto& v : p.vertex_coords()) {
        if (is_integral(v))
            vs.push_back(to_zvec(v));
        else
            integral = false;
    }
    sf.value = integral ? SElem::from_set(p.lattice(), vs) : SElem::infinity(p.lattice());
    auto verts = p.vertex_coords();
    const DualPair* pp = &pair;
    sf.eval = [verts, pp](const ZVec& n) {
        Rat best = pp->pair(verts[0], n);
        for (const auto& v : verts) best = std::min(best, pp->pair(v, n));
        return best;
    };
    return sf;
}

PLPolytope dual_polytope(const PLPolytope& p, const DualPair& pair) {
    if (pair.M() != p.lattice()) fail(ErrorCode::NoDualRegistered, "dual pair does not belong to the polytope lattice");
    for (const auto& h : p.half_spaces())
        if (h.threshold >= 0) fail(ErrorCode::OriginNotInterior, "origin is not interior: threshold >= 0");
    std::vector<PLHalfSpace> hs;
    for (const auto& v : p.vertex_coords()) {
        Int q = denominator_of(v);
        // v(m) >= -1 is q*v(m) = v(q m) >= -q.
        hs.push_back({pair.v(Element{p.lattice(), scaled(v, q)}), -q});
    }
    return PLPolytope::build(std::move(hs));
}

PConv::PConv(DualPtr pair, std::vector<ZVec> s) : pair_(std::move(pair)), s_(std::move(s)) {
    if (!pair_) fail(ErrorCode::NoDualRegistered, "no dual pair");
}

bool PConv::contains(const ZVec& base) const {
    if (s_.empty()) return false;
    return in_pconv(*pair_, to_rvec(base), s_);
}

bool PConv::contains(const RVec& base) const {
    if (s_.empty()) return false;
    return in_pconv(*pair_, base, s_);
}

std::vector<ZVec> PConv::lattice_points() const {
    if (s_.empty()) return {};
    // Bounding polytope: H_{w(n), min_s w(n)(s)} over the certificate vectors n of N.
    const auto& N = pair_->N();
    std::vector<PLHalfSpace> hs;
    for (const auto& n : N->certificate_vectors()) {
        Int lo = pair_->pair(s_[0], n);
        for (const auto& s : s_) lo = std::min(lo, pair_->pair(s, n));
        hs.push_back({pair_->w(Element{N, n}), lo});
    }
    PLPolytope bound = PLPolytope::build(std::move(hs));
    std::vector<ZVec> out;
    for (const auto& e : pl_lattice_points(bound))
        if (contains(e.base)) out.push_back(e.base);
    std::sort(out.begin(), out.end());
    return out;
}

PConv p_conv(const std::vector<Element>& s, const DualPtr& pair) {
    if (!pair) fail(ErrorCode::NoDualRegistered, "no dual pair");
    std::vector<ZVec> b;
    for (const auto& e : s) {
        if (e.lat != pair->M()) fail(ErrorCode::DimensionMismatch, "element outside the pair's lattice");
        b.push_back(e.base);
    }
    return PConv(pair, b);
}

PLPolytope scale_polytope(const PLPolytope& p, Int k) {
    if (k < 0) fail(ErrorCode::NegativeScalar, "scale factor must be nonnegative");
    std::vector<PLHalfSpace> hs = p.half_spaces();
    for (auto& h : hs) h.threshold *= k;
    return PLPolytope::build(std::move(hs));
}

bool is_integral(const PLPolytope& p) {
    for (int a = 0; a < p.lattice()->num_charts(); ++a)
        if (!p.chart_image(a).is_integral()) return false;
    return true;
}

bool is_chart_gorenstein_fano(const PLPolytope& p) {
    if (p.empty() || !is_integral(p)) return false;
    for (const auto& h : p.half_spaces()) {
        if (h.threshold == -1) continue;
        if (h.threshold >= 0) return false;
        // p/|a| must itself be a point.
        std::vector<ZVec> fns = h.point.cone_functionals();
        for (auto& f : fns)
            for (auto& x : f) {
                if (x % h.threshold != 0) return false;
                x /= -h.threshold;
            }
        if (!verify_point(Point(p.lattice(), fns)).ok) return false;
    }
    return true;
}

std::vector<Element> pl_lattice_points(const PLPolytope& p) {
    const auto& lat = p.lattice();
    if (p.empty()) return {};
    std::vector<ZVec> base;
    for (const auto& v : lattice_points(p.chart_image(0))) base.push_back(lat->from_chart(v, 0));
    std::sort(base.begin(), base.end());
    for (int a = 1; a < lat->num_charts(); ++a) {
        std::vector<ZVec> other;
        for (const auto& v : lattice_points(p.chart_image(a))) other.push_back(lat->from_chart(v, a));
        std::sort(other.begin(), other.end());
        if (other != base)
            fail(ErrorCode::VerificationFailure, "lattice points of chart images " + lat->charts()[0] + " and " +
                                                     lat->charts()[a] + " differ");
    }
    std::vector<Element> out;
    for (auto& b : base) out.push_back({lat, b});
    return out;
}

bool charts_consistent(const PLPolytope& p) {
    const auto& lat = p.lattice();
    for (int a = 0; a < lat->num_charts(); ++a)
        for (int b = 0; b < lat->num_charts(); ++b) {
            if (a == b) continue;
            for (const auto& v : p.chart_image(a).vertices)
                if (!p.chart_image(b).h.contains(lat->mu(a, b).apply(v))) return false;
        }
    try {
        pl_lattice_points(p);
    } catch (const Error&) {
        return false;
    }
    return true;
}

}  // namespace plyp
