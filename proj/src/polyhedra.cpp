#include "plyp/polyhedra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "plyp/error.hpp"

namespace plyp {

namespace {

// Calls f on every k-subset of {0..n-1}, in lexicographic order; stops when f returns false.
bool for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& f) {
    if (k < 0 || k > n) return true;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        if (!f(idx)) return false;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

void HPolyhedron::check() const {
    for (const auto& q : ineqs)
        if (static_cast<int>(q.normal.size()) != dim) fail(ErrorCode::DimensionMismatch, "inequality normal has wrong dimension");
    for (const auto& q : eqs)
        if (static_cast<int>(q.normal.size()) != dim) fail(ErrorCode::DimensionMismatch, "equation normal has wrong dimension");
}

bool HPolyhedron::contains(const RVec& x) const {
    for (const auto& q : ineqs)
        if (dot(q.normal, x) < q.threshold) return false;
    for (const auto& q : eqs)
        if (dot(q.normal, x) != q.threshold) return false;
    return true;
}

bool HPolyhedron::contains(const ZVec& x) const {
    for (const auto& q : ineqs)
        if (dot(q.normal, x) < q.threshold) return false;
    for (const auto& q : eqs)
        if (dot(q.normal, x) != q.threshold) return false;
    return true;
}

std::vector<Constraint> HPolyhedron::constraints() const {
    std::vector<Constraint> out;
    for (const auto& q : ineqs) out.push_back({q.normal, q.threshold, Rel::Ge});
    for (const auto& q : eqs) out.push_back({q.normal, q.threshold, Rel::Eq});
    return out;
}

HPolyhedron HPolyhedron::intersect(const HPolyhedron& other) const {
    if (other.dim != dim) fail(ErrorCode::DimensionMismatch, "intersecting polyhedra of different dimension");
    HPolyhedron r = *this;
    r.ineqs.insert(r.ineqs.end(), other.ineqs.begin(), other.ineqs.end());
    r.eqs.insert(r.eqs.end(), other.eqs.begin(), other.eqs.end());
    return r;
}

bool is_bounded(const HPolyhedron& p) {
    p.check();
    int n = p.dim;
    std::vector<Constraint> rec;
    for (const auto& q : p.ineqs) rec.push_back({q.normal, Rat(0), Rel::Ge});
    for (const auto& q : p.eqs) rec.push_back({q.normal, Rat(0), Rel::Eq});
    for (int j = 0; j < n; ++j) {
        rec.push_back({unit(n, j), Rat(-1), Rel::Ge});
        rec.push_back({neg(unit(n, j)), Rat(-1), Rel::Ge});
    }
    for (int j = 0; j < n; ++j)
        for (int s : {1, -1}) {
            LPSolution sol = lp_maximize(n, rec, scale(unit(n, j), Rat(s)));
            if (sol.status == LPStatus::Optimal && sgn(sol.value) > 0) return false;
        }
    return true;
}

bool is_empty(const HPolyhedron& p) { return !lp_feasible_point(p.dim, p.constraints()).has_value(); }

std::optional<RVec> interior_point(const HPolyhedron& p) {
    int n = p.dim;
    std::vector<Constraint> cons;
    for (const auto& q : p.ineqs) {
        RVec a = q.normal;
        a.push_back(Rat(-1));
        cons.push_back({a, q.threshold, Rel::Ge});
    }
    for (const auto& q : p.eqs) {
        RVec a = q.normal;
        a.push_back(Rat(0));
        cons.push_back({a, q.threshold, Rel::Eq});
    }
    RVec tcap = zeros(n + 1);
    tcap[n] = -1;
    cons.push_back({tcap, Rat(-1), Rel::Ge});
    LPSolution s = lp_maximize(n + 1, cons, unit(n + 1, n));
    if (s.status != LPStatus::Optimal || sgn(s.value) <= 0) return std::nullopt;
    s.x.pop_back();
    return s.x;
}

HPolyhedron remove_redundant(const HPolyhedron& p) {
    p.check();
    HPolyhedron out(p.dim);
    out.eqs = p.eqs;
    // Deduplicate parallel inequalities, keeping the tightest.
    std::map<RVec, std::size_t, RVecLess> seen;
    std::vector<Ineq> cand;
    for (const auto& q : p.ineqs) {
        if (is_zero(q.normal)) {
            if (sgn(q.threshold) > 0) cand.push_back(q);  // infeasible row, keep as witness
            continue;
        }
        Rat s = 0;
        for (const Rat& x : q.normal)
            if (sgn(x) != 0) { s = abs(x); break; }
        Ineq nq{scale(q.normal, 1 / s), q.threshold / s};
        auto it = seen.find(nq.normal);
        if (it == seen.end()) {
            seen[nq.normal] = cand.size();
            cand.push_back(q);
        } else {
            Ineq& old = cand[it->second];
            Rat s_old = 0;
            for (const Rat& x : old.normal)
                if (sgn(x) != 0) { s_old = abs(x); break; }
            if (nq.threshold > old.threshold / s_old) old = q;
        }
    }
    std::vector<bool> keep(cand.size(), true);
    for (std::size_t i = 0; i < cand.size(); ++i) {
        if (is_zero(cand[i].normal)) continue;
        std::vector<Constraint> cons;
        for (std::size_t j = 0; j < cand.size(); ++j)
            if (j != i && keep[j]) cons.push_back({cand[j].normal, cand[j].threshold, Rel::Ge});
        for (const auto& q : p.eqs) cons.push_back({q.normal, q.threshold, Rel::Eq});
        LPSolution s = lp_maximize(p.dim, cons, neg(cand[i].normal));
        if (s.status == LPStatus::Infeasible) return p;  // empty: leave untouched
        if (s.status == LPStatus::Optimal && -s.value >= cand[i].threshold) keep[i] = false;
    }
    for (std::size_t i = 0; i < cand.size(); ++i)
        if (keep[i]) out.ineqs.push_back(cand[i]);
    return out;
}

std::vector<RVec> solve_vertices(const HPolyhedron& p0) {
    p0.check();
    if (!is_bounded(p0)) fail(ErrorCode::Unbounded, "polyhedron is unbounded");
    if (is_empty(p0)) return {};
    HPolyhedron p = remove_redundant(p0);
    int n = p.dim;
    RMat eq_rows;
    for (const auto& q : p.eqs) eq_rows.push_back(q.normal);
    int re = rank(eq_rows);
    int k = n - re;
    std::set<RVec, RVecLess> verts;
    int m = static_cast<int>(p.ineqs.size());
    for_each_subset(m, k, [&](const std::vector<int>& idx) {
        RMat a;
        RVec b;
        for (const auto& q : p.eqs) { a.push_back(q.normal); b.push_back(q.threshold); }
        for (int i : idx) { a.push_back(p.ineqs[i].normal); b.push_back(p.ineqs[i].threshold); }
        if (a.empty()) {
            if (n == 0) verts.insert(RVec{});
            return true;
        }
        auto x = solve_unique(a, b);
        if (x && p.contains(*x)) verts.insert(*x);
        return true;
    });
    return {verts.begin(), verts.end()};
}

ClassicalPolytope ClassicalPolytope::from_h(const HPolyhedron& h) {
    ClassicalPolytope cp;
    cp.vertices = solve_vertices(h);
    cp.h = cp.vertices.empty() ? h : remove_redundant(h);
    for (const auto& v : cp.vertices)
        if (!cp.h.contains(v)) fail(ErrorCode::VerificationFailure, "vertex violates H-representation");
    return cp;
}

bool ClassicalPolytope::is_integral() const {
    return std::all_of(vertices.begin(), vertices.end(), [](const RVec& v) { return plyp::is_integral(v); });
}

ClassicalPolytope ClassicalPolytope::dilate(const Rat& k) const {
    ClassicalPolytope r = *this;
    for (auto& q : r.h.ineqs) q.threshold *= k;
    for (auto& q : r.h.eqs) q.threshold *= k;
    if (sgn(k) == 0) {
        r.h = HPolyhedron(h.dim);
        for (int j = 0; j < h.dim; ++j) r.h.eqs.push_back({unit(h.dim, j), Rat(0)});
        r.vertices = vertices.empty() ? std::vector<RVec>{} : std::vector<RVec>{zeros(h.dim)};
        return r;
    }
    std::set<RVec, RVecLess> vs;
    for (const auto& v : vertices) vs.insert(scale(v, k));
    r.vertices.assign(vs.begin(), vs.end());
    return r;
}

std::vector<ZVec> lattice_points(const ClassicalPolytope& p) {
    if (!is_bounded(p.h)) fail(ErrorCode::Unbounded, "lattice_points needs a bounded polytope");
    std::vector<ZVec> out;
    if (p.vertices.empty()) return out;
    int n = p.h.dim;
    ZVec lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
        Rat mn = p.vertices[0][j], mx = p.vertices[0][j];
        for (const auto& v : p.vertices) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        lo[j] = ceil_int(mn);
        hi[j] = floor_int(mx);
        if (lo[j] > hi[j]) return out;
    }
    ZVec x = lo;
    for (;;) {
        if (p.h.contains(x)) out.push_back(x);
        int j = n - 1;
        while (j >= 0 && x[j] == hi[j]) { x[j] = lo[j]; --j; }
        if (j < 0) break;
        ++x[j];
    }
    return out;
}

RationalCone::RationalCone(HPolyhedron hp) : h(std::move(hp)) {
    for (const auto& q : h.ineqs)
        if (sgn(q.threshold) != 0) fail(ErrorCode::NotACone, "cone inequality with nonzero threshold");
    for (const auto& q : h.eqs)
        if (sgn(q.threshold) != 0) fail(ErrorCode::NotACone, "cone equation with nonzero threshold");
}

RationalCone RationalCone::whole(int dim) { return RationalCone(HPolyhedron(dim)); }

bool RationalCone::full_dimensional() const {
    if (!h.eqs.empty()) {
        RMat e;
        for (const auto& q : h.eqs) e.push_back(q.normal);
        if (rank(e) > 0) return false;
    }
    return interior_point(h).has_value();
}

const std::vector<ZVec>& RationalCone::generators() const {
    if (gens_) return *gens_;
    int n = h.dim;
    RMat a, all;
    for (const auto& q : h.ineqs) { a.push_back(q.normal); all.push_back(q.normal); }
    for (const auto& q : h.eqs) all.push_back(q.normal);
    RMat lin = nullspace(all, n);
    std::set<ZVec> out;
    for (const auto& l : lin) {
        out.insert(primitive(l));
        out.insert(primitive(neg(l)));
    }
    RMat base;
    for (const auto& q : h.eqs) base.push_back(q.normal);
    for (const auto& l : lin) base.push_back(l);
    int rb = rank(base);
    int k = n - 1 - rb;
    auto ok = [&](const RVec& v) {
        for (const auto& row : a)
            if (sgn(dot(row, v)) < 0) return false;
        return true;
    };
    if (k >= 0) {
        for_each_subset(static_cast<int>(a.size()), k, [&](const std::vector<int>& idx) {
            RMat m = base;
            for (int i : idx) m.push_back(a[i]);
            RMat ns = nullspace(m, n);
            if (ns.size() != 1) return true;
            if (ok(ns[0])) out.insert(primitive(ns[0]));
            else if (ok(neg(ns[0]))) out.insert(primitive(neg(ns[0])));
            return true;
        });
    }
    gens_ = std::vector<ZVec>(out.begin(), out.end());
    return *gens_;
}

ZVec RationalCone::interior_lattice_point() const {
    ZVec s(h.dim, 0);
    for (const auto& g : generators())
        for (int j = 0; j < h.dim; ++j) s[j] += g[j];
    return s;
}

ZMat independent_generators(const RationalCone& c) {
    ZMat out;
    RMat acc;
    for (const auto& g : c.generators()) {
        acc.push_back(to_rvec(g));
        if (rank(acc) == static_cast<int>(acc.size()))
            out.push_back(g);
        else
            acc.pop_back();
        if (static_cast<int>(out.size()) == c.dim()) break;
    }
    if (static_cast<int>(out.size()) != c.dim()) fail(ErrorCode::NotACone, "cone is not full-dimensional");
    return out;
}

bool cone_subset(const RationalCone& a, const RationalCone& b) {
    for (const auto& g : a.generators())
        if (!b.contains(g)) return false;
    return true;
}

bool cone_equal(const RationalCone& a, const RationalCone& b) { return cone_subset(a, b) && cone_subset(b, a); }

int ClassicalFan::locate(const RVec& x) const {
    for (std::size_t i = 0; i < cones.size(); ++i)
        if (cones[i].contains(x)) return static_cast<int>(i);
    return -1;
}

int ClassicalFan::locate(const ZVec& x) const {
    for (std::size_t i = 0; i < cones.size(); ++i)
        if (cones[i].contains(x)) return static_cast<int>(i);
    return -1;
}

bool ClassicalFan::is_complete() const {
    for (int j = 0; j < dim; ++j)
        for (int s : {1, -1})
            if (locate(scale(unit(dim, j), Rat(s))) < 0) return false;
    for (const auto& c : cones) {
        HPolyhedron h = remove_redundant(c.h);
        for (std::size_t i = 0; i < h.ineqs.size(); ++i) {
            HPolyhedron facet(dim);
            facet.eqs = h.eqs;
            facet.eqs.push_back({h.ineqs[i].normal, Rat(0)});
            for (std::size_t k = 0; k < h.ineqs.size(); ++k)
                if (k != i) facet.ineqs.push_back(h.ineqs[k]);
            auto x = interior_point(facet);
            if (!x) continue;
            bool hit = false;
            for (Rat eps : {Rat(1, 10), Rat(1, 1000), Rat(1, 1000000)}) {
                RVec y = sub(*x, scale(h.ineqs[i].normal, eps));
                if (locate(y) >= 0) { hit = true; break; }
            }
            if (!hit) return false;
        }
    }
    return true;
}

ClassicalFan common_refinement(const std::vector<ClassicalFan>& fans) {
    if (fans.empty()) fail(ErrorCode::IncompatibleFans, "no fans to refine");
    int n = fans[0].dim;
    for (const auto& f : fans)
        if (f.dim != n) fail(ErrorCode::IncompatibleFans, "fans live in different dimensions");
    std::vector<RationalCone> cur = fans[0].cones;
    for (std::size_t k = 1; k < fans.size(); ++k) {
        std::vector<RationalCone> next;
        for (const auto& c : cur)
            for (const auto& d : fans[k].cones) {
                RationalCone x(remove_redundant(c.h.intersect(d.h)));
                if (!x.full_dimensional()) continue;
                bool dup = false;
                for (const auto& y : next)
                    if (cone_equal(x, y)) { dup = true; break; }
                if (!dup) next.push_back(x);
            }
        cur = std::move(next);
    }
    ClassicalFan out;
    out.dim = n;
    out.cones = std::move(cur);
    return out;
}

Rat TropExpr::eval(const RVec& x) const {
    if (members.empty()) fail(ErrorCode::DimensionMismatch, "empty tropical expression");
    Rat best = dot(members[0], x);
    for (std::size_t i = 1; i < members.size(); ++i) best = std::min(best, dot(members[i], x));
    return best;
}

Rat TropExpr::eval(const ZVec& x) const {
    if (members.empty()) fail(ErrorCode::DimensionMismatch, "empty tropical expression");
    Rat best = dot(members[0], x);
    for (std::size_t i = 1; i < members.size(); ++i) best = std::min(best, dot(members[i], x));
    return best;
}

std::optional<RVec> strict_feasible(const std::vector<StrictConstraint>& cons, const RationalCone& domain) {
    int n = domain.dim();
    std::vector<Constraint> lp;
    bool any_strict = false;
    for (const auto& c : cons) {
        if (static_cast<int>(c.f.size()) != n) fail(ErrorCode::DimensionMismatch, "functional dimension");
        RVec a = c.f;
        a.push_back(c.kind == Strictness::Strict ? Rat(-1) : Rat(0));
        any_strict = any_strict || c.kind == Strictness::Strict;
        lp.push_back({a, Rat(0), Rel::Ge});
    }
    for (const auto& q : domain.h.ineqs) {
        RVec a = q.normal;
        a.push_back(Rat(0));
        lp.push_back({a, Rat(0), Rel::Ge});
    }
    for (const auto& q : domain.h.eqs) {
        RVec a = q.normal;
        a.push_back(Rat(0));
        lp.push_back({a, Rat(0), Rel::Eq});
    }
    for (int j = 0; j <= n; ++j) {
        lp.push_back({unit(n + 1, j), Rat(-1), Rel::Ge});
        lp.push_back({neg(unit(n + 1, j)), Rat(-1), Rel::Ge});
    }
    LPSolution s = lp_maximize(n + 1, lp, unit(n + 1, n));
    if (s.status != LPStatus::Optimal) return std::nullopt;
    if (any_strict && sgn(s.value) <= 0) return std::nullopt;
    s.x.pop_back();
    return s.x;
}

TropExpr minimal_min_representation(const TropExpr& e, const RationalCone& domain) {
    std::set<RVec, RVecLess> uniq(e.members.begin(), e.members.end());
    std::vector<RVec> mem(uniq.begin(), uniq.end());
    TropExpr out;
    for (std::size_t i = 0; i < mem.size(); ++i) {
        std::vector<StrictConstraint> cons;
        for (std::size_t j = 0; j < mem.size(); ++j)
            if (j != i) cons.push_back({sub(mem[j], mem[i]), Strictness::Strict});
        if (cons.empty() || strict_feasible(cons, domain)) out.members.push_back(mem[i]);
    }
    return out;
}

LinFunctional lex_min_member(const TropExpr& e, const std::vector<RVec>& basis) {
    std::set<RVec, RVecLess> uniq(e.members.begin(), e.members.end());
    if (uniq.empty()) fail(ErrorCode::DimensionMismatch, "empty tropical expression");
    const RVec* best = nullptr;
    RVec best_t;
    bool tie = false;
    for (const auto& f : uniq) {
        RVec t;
        for (const auto& b : basis) t.push_back(dot(f, b));
        if (!best || RVecLess{}(t, best_t)) {
            best = &f;
            best_t = t;
            tie = false;
        } else if (t == best_t) {
            tie = true;
        }
    }
    if (tie) fail(ErrorCode::Tie, "two distinct functionals share the lex-min tuple");
    return *best;
}

bool is_totally_unimodular(const ZMat& a) {
    for (const auto& row : a)
        for (Int x : row)
            if (x < -1 || x > 1) return false;
    int m = static_cast<int>(a.size());
    int n = m ? static_cast<int>(a[0].size()) : 0;
    for (int k = 2; k <= std::min(m, n); ++k) {
        bool ok = for_each_subset(m, k, [&](const std::vector<int>& rows) {
            return for_each_subset(n, k, [&](const std::vector<int>& cols) {
                RMat sub(k, RVec(k));
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub[i][j] = static_cast<long>(a[rows[i]][cols[j]]);
                Rat d = det(sub);
                return d == 0 || d == 1 || d == -1;
            });
        });
        if (!ok) return false;
    }
    return true;
}

}  // namespace plyp
