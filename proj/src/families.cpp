#include "plyp/families.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <tuple>

#include "plyp/error.hpp"

namespace plyp {

namespace {

std::recursive_mutex g_mutex;

RationalCone cone_of(int dim, const std::vector<RVec>& normals) {
    HPolyhedron h(dim);
    for (const auto& n : normals) h.ineqs.push_back({n, 0});
    return RationalCone(h);
}

Int zsum(const ZVec& v) { return std::accumulate(v.begin(), v.end(), Int(0)); }
Int zmin(const ZVec& v) { return *std::min_element(v.begin(), v.end()); }

void check_mdr(int d, int r) {
    if (d < 2 || r < 2) fail(ErrorCode::BadParams, "M_{d,r} needs d >= 2 and r >= 2");
}

}  // namespace

LatticePtr trivial_lattice(int r) {
    if (r < 1) fail(ErrorCode::BadParams, "rank must be positive");
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    static std::map<int, LatticePtr> cache;
    auto& slot = cache[r];
    if (!slot) slot = PolyptychLattice::make(r, {"1"}, {});
    return slot;
}

DualPtr trivial_dual(int r, int box_radius) {
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    static std::map<std::pair<int, int>, DualPtr> cache;
    auto& slot = cache[{r, box_radius}];
    if (slot) return slot;
    LatticePtr lat = trivial_lattice(r);
    auto v = [lat](const Element& m) { return Point(lat, {m.base}); };
    auto vinv = [lat](const Point& p) { return Element{lat, p.cone_functionals()[0]}; };
    slot = DualPair::make(lat, lat, v, v, vinv, vinv, box_radius);
    register_dual(slot);
    return slot;
}

LatticePtr a1_lattice() {
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    static LatticePtr lat;
    if (lat) return lat;
    ClassicalFan fan{2, {cone_of(2, {{0, 1}}), cone_of(2, {{0, -1}})}};
    PLMap mu(fan, {{{-1, 0}, {0, 1}}, {{-1, 1}, {0, 1}}});
    lat = PolyptychLattice::make(2, {"1", "2"}, {{"1", "2", mu}, {"2", "1", mu}});
    return lat;
}

Point a1_point(Int a, Int b, Int bp) {
    if (b + bp != std::min<Int>(0, a))
        fail(ErrorCode::NotAPoint, "a1 point parameters need b + b' = min(0, a)");
    return point_from_function(a1_lattice(), [=](const ZVec& x) { return x[1] >= 0 ? a * x[0] + b * x[1] : a * x[0] - bp * x[1]; });
}

std::array<Int, 3> a1_point_params(const Point& p) {
    Int a = p.eval(ZVec{1, 0}), b = p.eval(ZVec{0, 1});
    return {a, b, p.eval(ZVec{0, -1})};
}

DualPtr a1_dual(int box_radius) {
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    static std::map<int, DualPtr> cache;
    auto& pair = cache[box_radius];
    if (pair) return pair;
    LatticePtr lat = a1_lattice();
    auto v = [](const Element& m) {
        Int x = m.base[0], y = m.base[1];
        return a1_point(y, x, std::min<Int>(0, y) - x);
    };
    auto vinv = [lat](const Point& p) {
        auto q = a1_point_params(p);
        return Element{lat, {q[1], q[0]}};
    };
    pair = DualPair::make(lat, lat, v, v, vinv, vinv, box_radius);
    register_dual(pair);
    return pair;
}

const PLPolytope& a1_polytope() {
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    static std::optional<PLPolytope> p;
    if (!p) p = PLPolytope::build({{a1_point(-1, 0, -1), -1}, {a1_point(0, 1, -1), -1}, {a1_point(1, -1, 1), -1}});
    return *p;
}

LatticePtr mdr_lattice(int d, int r) {
    check_mdr(d, r);
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    static std::map<std::pair<int, int>, LatticePtr> cache;
    auto& slot = cache[{d, r}];
    if (slot) return slot;
    int n = d + r - 1;
    // Index of w_l in chart i coordinates.
    auto widx = [d](int i, int l) { return d + (l < i ? l : l - 1); };
    ClassicalFan fan{n, {}};
    for (int k = 0; k < d; ++k) {
        std::vector<RVec> normals;
        for (int l = 0; l < d; ++l) {
            if (l == k) continue;
            RVec f = zeros(n);
            f[l] = 1;
            f[k] = -1;
            normals.push_back(f);
        }
        fan.cones.push_back(cone_of(n, normals));
    }
    std::vector<std::string> labels;
    for (int i = 0; i < r; ++i) labels.push_back(std::to_string(i + 1));
    std::vector<MutationSpec> muts;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            std::vector<ZMat> mats;
            for (int k = 0; k < d; ++k) {
                ZMat m(n, ZVec(n, 0));
                for (int t = 0; t < d; ++t) m[t][t] = 1;
                for (int l = 0; l < r; ++l) {
                    if (l == j) continue;
                    ZVec& row = m[widx(j, l)];
                    if (l == i) {
                        // w_i = u_k - sum of the other w.
                        row[k] = 1;
                        for (int q = 0; q < r; ++q)
                            if (q != i) row[widx(i, q)] -= 1;
                    } else {
                        row[widx(i, l)] = 1;
                    }
                }
                mats.push_back(m);
            }
            muts.push_back({labels[i], labels[j], PLMap(fan, mats)});
        }
    slot = PolyptychLattice::make(n, labels, muts);
    return slot;
}

ZVec mdr_phi(int d, int r, int i, const MdrElement& x) {
    check_mdr(d, r);
    if (static_cast<int>(x.u.size()) != d || static_cast<int>(x.w.size()) != r)
        fail(ErrorCode::DimensionMismatch, "M_{d,r} element has wrong shape");
    if (zmin(x.u) != 0) fail(ErrorCode::BadParams, "M_{d,r} element needs min(u) = 0");
    if (i < 0 || i >= r) fail(ErrorCode::UnknownChart, "chart index out of range");
    Int s = zsum(x.w);
    ZVec v;
    for (Int u : x.u) v.push_back(u + s);
    for (int l = 0; l < r; ++l)
        if (l != i) v.push_back(x.w[l]);
    return v;
}

MdrElement mdr_phi_inv(int d, int r, int i, const ZVec& v) {
    check_mdr(d, r);
    if (static_cast<int>(v.size()) != d + r - 1) fail(ErrorCode::DimensionMismatch, "chart vector has wrong length");
    if (i < 0 || i >= r) fail(ErrorCode::UnknownChart, "chart index out of range");
    ZVec U(v.begin(), v.begin() + d);
    Int m = zmin(U);
    MdrElement x;
    for (Int u : U) x.u.push_back(u - m);
    x.w.assign(r, 0);
    int t = d;
    for (int l = 0; l < r; ++l)
        if (l != i) x.w[l] = v[t++];
    x.w[i] = m - zsum(x.w);
    return x;
}

Element mdr_element(int d, int r, const MdrElement& x) { return Element{mdr_lattice(d, r), mdr_phi(d, r, 0, x)}; }

MdrElement mdr_coords(int d, int r, const Element& e) { return mdr_phi_inv(d, r, 0, e.base); }

Point mdr_point(int d, int r, const ZVec& a, const ZVec& b) {
    check_mdr(d, r);
    if (static_cast<int>(a.size()) != d || static_cast<int>(b.size()) != r)
        fail(ErrorCode::DimensionMismatch, "T_{d,r} tuple has wrong shape");
    if (zsum(a) != zmin(b)) fail(ErrorCode::NotAPoint, "T_{d,r} tuple needs sum(a) = min(b)");
    return point_from_function(mdr_lattice(d, r), [=](const ZVec& base) {
        MdrElement x = mdr_phi_inv(d, r, 0, base);
        Int s = 0;
        for (int j = 0; j < d; ++j) s += a[j] * x.u[j];
        for (int j = 0; j < r; ++j) s += b[j] * x.w[j];
        return s;
    });
}

std::pair<ZVec, ZVec> mdr_point_params(int d, int r, const Point& p) {
    ZVec a, b;
    for (int j = 0; j < d; ++j) {
        MdrElement x{ZVec(d, 0), ZVec(r, 0)};
        x.u[j] = 1;
        a.push_back(p.eval(mdr_phi(d, r, 0, x)));
    }
    for (int j = 0; j < r; ++j) {
        MdrElement x{ZVec(d, 0), ZVec(r, 0)};
        x.w[j] = 1;
        b.push_back(p.eval(mdr_phi(d, r, 0, x)));
    }
    return {a, b};
}

namespace {

// v_{d,r}: M_{d,r} -> points of M_{r,d}.
Point mdr_v(int d, int r, const Element& m) {
    MdrElement x = mdr_coords(d, r, m);
    Int s = zsum(x.w);
    ZVec b = x.u;
    for (auto& y : b) y += s;
    return mdr_point(r, d, x.w, b);
}

// Inverse: a point (a, b) of M_{r,d} comes from (b - min(b), a) in M_{d,r}.
Element mdr_v_inv(int d, int r, const Point& p) {
    auto [a, b] = mdr_point_params(r, d, p);
    Int m = zmin(b);
    MdrElement x{b, a};
    for (auto& y : x.u) y -= m;
    return mdr_element(d, r, x);
}

}  // namespace

DualPtr mdr_dual_pair(int d, int r, int box_radius) {
    check_mdr(d, r);
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    static std::map<std::tuple<int, int, int>, DualPtr> cache;
    auto& slot = cache[{d, r, box_radius}];
    if (slot) return slot;
    slot = DualPair::make(
        mdr_lattice(d, r), mdr_lattice(r, d), [d, r](const Element& m) { return mdr_v(d, r, m); },
        [d, r](const Element& n) { return mdr_v(r, d, n); }, [d, r](const Point& p) { return mdr_v_inv(d, r, p); },
        [d, r](const Point& p) { return mdr_v_inv(r, d, p); }, box_radius);
    register_dual(slot);
    return slot;
}

std::vector<MdrElement> mdr_gf_generators(int d, int r) {
    check_mdr(d, r);
    std::vector<MdrElement> s;
    for (int j = 0; j < r; ++j) {
        MdrElement x{ZVec(r, 0), ZVec(d, 0)};
        x.u[j] = 1;
        s.push_back(x);
    }
    for (int j = 0; j < d; ++j)
        for (int sign : {1, -1}) {
            MdrElement x{ZVec(r, 0), ZVec(d, 0)};
            x.w[j] = sign;
            s.push_back(x);
        }
    return s;
}

const PLPolytope& mdr_gf_polytope(int d, int r) {
    check_mdr(d, r);
    std::lock_guard<std::recursive_mutex> lock(g_mutex);
    static std::map<std::pair<int, int>, PLPolytope> cache;
    auto it = cache.find({d, r});
    if (it != cache.end()) return it->second;
    std::vector<PLHalfSpace> hs;
    for (const auto& n : mdr_gf_generators(d, r)) hs.push_back({mdr_v(r, d, mdr_element(r, d, n)), -1});
    return cache.emplace(std::make_pair(d, r), PLPolytope::build(std::move(hs))).first->second;
}

ZMat mdr_tu_matrix(int d, int r, int k) {
    check_mdr(d, r);
    if (k < 0 || k >= d) fail(ErrorCode::BadParams, "cone index out of range");
    int cols = d + r;
    ZMat a;
    auto row = [&]() { return ZVec(cols, 0); };
    for (int j = 0; j < d; ++j) {
        ZVec x = row();
        x[j] = 1;
        a.push_back(x);
    }
    for (int j = 0; j < d; ++j) {
        ZVec x = row();
        x[j] = -1;
        a.push_back(x);
    }
    {
        ZVec x = row();
        x[k] = 1;
        for (int j = d + 1; j < cols; ++j) x[j] = -1;
        a.push_back(x);
    }
    for (int j = d + 1; j < cols; ++j) {
        ZVec x = row();
        x[j] = 1;
        a.push_back(x);
    }
    for (int j = 0; j < d; ++j) {
        ZVec x = row();
        x[j] += 1;
        x[k] -= 1;
        a.push_back(x);
    }
    for (int s : {1, -1}) {
        ZVec x = row();
        x[d] = s;
        a.push_back(x);
    }
    return a;
}

}  // namespace plyp
