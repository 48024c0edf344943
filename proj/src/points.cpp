#include "plyp/points.hpp"

#include <set>

#include "plyp/error.hpp"

namespace plyp {

namespace {

Int zdot(const ZVec& a, const ZVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Integer functional f with f.g_i = vals_i.
std::optional<ZVec> solve_functional(const ZMat& gens, const std::vector<Rat>& vals) {
    auto x = solve_unique(to_rmat(gens), vals);
    if (!x || !is_integral(*x)) return std::nullopt;
    return to_zvec(*x);
}

}  // namespace

Point::Point(LatticePtr lat, std::vector<ZVec> cone_fns) : lat_(std::move(lat)), fns_(std::move(cone_fns)) {
    if (static_cast<int>(fns_.size()) != lat_->num_cones())
        fail(ErrorCode::DimensionMismatch, "point needs one functional per Sigma cone");
    for (const auto& f : fns_)
        if (static_cast<int>(f.size()) != lat_->rank()) fail(ErrorCode::DimensionMismatch, "functional dimension");
}

Int Point::eval(const ZVec& base) const { return zdot(fns_[lat_->locate(base)], base); }

Rat Point::eval(const RVec& base) const { return dot(to_rvec(fns_[lat_->locate(base)]), base); }

Int Point::operator()(const Element& e) const {
    if (e.lat != lat_) fail(ErrorCode::DimensionMismatch, "element and point belong to different lattices");
    return eval(e.base);
}

TropExpr Point::chart_expr(int alpha) const {
    lat_->check_chart(alpha);
    std::set<RVec, RVecLess> uniq;
    for (int c = 0; c < lat_->num_cones(); ++c) uniq.insert(vecmat(to_rvec(fns_[c]), lat_->chart_matrix_inv(alpha, c)));
    return TropExpr{{uniq.begin(), uniq.end()}};
}

TropExpr Point::minimal_chart_expr(int alpha) const {
    return minimal_min_representation(chart_expr(alpha), RationalCone::whole(lat_->rank()));
}

Point point_from_function(const LatticePtr& lat, const std::function<Int(const ZVec&)>& f) {
    std::vector<ZVec> fns;
    for (const auto& c : lat->sigma().cones) {
        ZMat gens = independent_generators(c);
        std::vector<Rat> vals;
        for (const auto& g : gens) vals.emplace_back(static_cast<long>(f(g)));
        auto fn = solve_functional(gens, vals);
        if (!fn) fail(ErrorCode::NotAPoint, "function is not integral-linear on a Sigma cone");
        fns.push_back(*fn);
    }
    return Point(lat, fns);
}

PointCheck verify_point(const Point& p) {
    const auto& lat = p.lattice();
    const auto& fns = p.cone_functionals();
    int nc = lat->num_cones();
    const auto& cones = lat->sigma().cones;
    for (int i = 0; i < nc; ++i)
        for (int j = i + 1; j < nc; ++j) {
            RationalCone face(cones[i].h.intersect(cones[j].h));
            for (const auto& g : face.generators())
                if (zdot(fns[i], g) != zdot(fns[j], g))
                    return {false, "discontinuous at " + to_string(g)};
        }
    // Each chart expression must be the minimum of its pieces.
    for (int a = 0; a < lat->num_charts(); ++a)
        for (int i = 0; i < nc; ++i) {
            RMat ai = to_rmat(lat->chart_matrix(a, i));
            for (int j = 0; j < nc; ++j) {
                if (i == j) continue;
                RVec other = vecmat(vecmat(to_rvec(fns[j]), lat->chart_matrix_inv(a, j)), ai);
                for (const auto& g : cones[i].generators())
                    if (dot(other, g) < zdot(fns[i], g))
                        return {false, "chart " + lat->charts()[a] + " expression is not concave near " + to_string(g)};
            }
        }
    const auto& cert = lat->certificate_vectors();
    for (const auto& x : cert) {
        Int px = p.eval(x);
        for (const auto& y : cert) {
            Int lhs = px + p.eval(y);
            Int best = 0;
            bool first = true;
            for (int a = 0; a < lat->num_charts(); ++a) {
                ZVec s = lat->to_chart(x, a), t = lat->to_chart(y, a);
                for (std::size_t k = 0; k < s.size(); ++k) s[k] += t[k];
                Int v = p.eval(lat->from_chart(s, a));
                if (first || v < best) best = v;
                first = false;
            }
            if (lhs != best)
                return {false, "min identity fails for " + to_string(x) + ", " + to_string(y) + ": " +
                                   std::to_string(lhs) + " != " + std::to_string(best)};
        }
    }
    return {};
}

PointCheck is_point(const LatticePtr& lat, const std::vector<TropExpr>& per_chart, Point* out) {
    if (static_cast<int>(per_chart.size()) != lat->num_charts()) return {false, "need one expression per chart"};
    for (const auto& e : per_chart) {
        if (e.members.empty()) return {false, "empty chart expression"};
        for (const auto& f : e.members) {
            if (static_cast<int>(f.size()) != lat->rank()) return {false, "functional of wrong dimension"};
            if (!is_integral(f)) return {false, "non-integral functional " + to_string(f)};
        }
    }
    std::vector<ZVec> fns(lat->num_cones());
    for (int c = 0; c < lat->num_cones(); ++c) {
        const auto& cone = lat->sigma().cones[c];
        ZVec x = cone.interior_lattice_point();
        for (int a = 0; a < lat->num_charts(); ++a) {
            RMat A = to_rmat(lat->chart_matrix(a, c));
            const auto& expr = per_chart[a];
            RVec y = matvec(A, to_rvec(x));
            const RVec* best = &expr.members[0];
            for (const auto& f : expr.members)
                if (dot(f, y) < dot(*best, y)) best = &f;
            for (const auto& g : cone.generators()) {
                RVec ag = matvec(A, to_rvec(g));
                if (expr.eval(ag) != dot(*best, ag))
                    return {false, "chart " + lat->charts()[a] + " expression is not linear on Sigma cone " +
                                       std::to_string(c)};
            }
            ZVec fn = to_zvec(vecmat(*best, A));
            if (a == 0)
                fns[c] = fn;
            else if (fn != fns[c])
                return {false, "charts " + lat->charts()[0] + " and " + lat->charts()[a] + " disagree on Sigma cone " +
                                   std::to_string(c)};
        }
    }
    Point p(lat, fns);
    // Extra members that never attain the minimum must not undercut the pieces.
    for (int a = 0; a < lat->num_charts(); ++a)
        for (const auto& f : per_chart[a].members)
            for (int c = 0; c < lat->num_cones(); ++c) {
                RMat A = to_rmat(lat->chart_matrix(a, c));
                for (const auto& g : lat->sigma().cones[c].generators())
                    if (dot(f, matvec(A, to_rvec(g))) < zdot(fns[c], g))
                        return {false, "chart " + lat->charts()[a] + " expression dips below its pieces"};
            }
    PointCheck pc = verify_point(p);
    if (pc.ok && out) *out = p;
    return pc;
}

bool is_linear_on_chart(const Point& p, int alpha) { return p.chart_expr(alpha).members.size() == 1; }

LinFunctional restrict_to_cone(const Point& p, int cone) {
    if (cone < 0 || cone >= p.lattice()->num_cones()) fail(ErrorCode::NotACone, "no such maximal cone");
    return to_rvec(p.cone_functionals()[cone]);
}

std::optional<Point> extend_from_cone(const LatticePtr& lat, int cone, const ZVec& f, bool verify) {
    if (cone < 0 || cone >= lat->num_cones()) fail(ErrorCode::NotACone, "no such maximal cone");
    if (static_cast<int>(f.size()) != lat->rank()) fail(ErrorCode::DimensionMismatch, "functional dimension");
    const auto& C = lat->sigma().cones[cone];
    ZMat cn = integer_normals(C);
    ZVec w0 = C.interior_lattice_point();
    // p(v) = min_a f(v +_a w) - f(w) for w deep enough in C.
    auto value = [&](const ZVec& v) -> std::optional<Int> {
        for (Int t = 1; t <= (Int(1) << 20); t *= 2) {
            ZVec w = w0;
            for (auto& x : w) x *= t;
            bool inside = true;
            Int best = 0;
            for (int a = 0; a < lat->num_charts() && inside; ++a) {
                ZVec s = lat->to_chart(v, a), u = lat->to_chart(w, a);
                for (std::size_t k = 0; k < s.size(); ++k) s[k] += u[k];
                ZVec b = lat->from_chart(s, a);
                if (!in_cone(cn, b)) inside = false;
                Int val = zdot(f, b);
                if (a == 0 || val < best) best = val;
            }
            if (inside) return best - zdot(f, w);
        }
        return std::nullopt;
    };
    std::vector<ZVec> fns;
    for (int d = 0; d < lat->num_cones(); ++d) {
        if (d == cone) {
            fns.push_back(f);
            continue;
        }
        ZMat gens = independent_generators(lat->sigma().cones[d]);
        std::vector<Rat> vals;
        for (const auto& g : gens) {
            auto v = value(g);
            if (!v) return std::nullopt;
            vals.emplace_back(static_cast<long>(*v));
        }
        auto fn = solve_functional(gens, vals);
        if (!fn) return std::nullopt;
        fns.push_back(*fn);
    }
    Point p(lat, fns);
    if (verify && !verify_point(p).ok) return std::nullopt;
    return p;
}

std::optional<Point> combine_points(const Point& p, const Point& q, Int lambda, Int mu, int alpha) {
    if (p.lattice() != q.lattice()) fail(ErrorCode::DimensionMismatch, "points on different lattices");
    if (lambda < 0 || mu < 0) fail(ErrorCode::NegativeScalar, "coefficients must be nonnegative");
    std::vector<ZVec> fns = p.cone_functionals();
    for (std::size_t c = 0; c < fns.size(); ++c)
        for (std::size_t k = 0; k < fns[c].size(); ++k)
            fns[c][k] = lambda * fns[c][k] + mu * q.cone_functionals()[c][k];
    Point r(p.lattice(), fns);
    if (is_linear_on_chart(p, alpha) && is_linear_on_chart(q, alpha)) return r;
    if (!verify_point(r).ok) return std::nullopt;
    return r;
}

}  // namespace plyp
