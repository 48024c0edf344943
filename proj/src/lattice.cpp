#include "plyp/lattice.hpp"

#include <algorithm>
#include <set>

#include "plyp/error.hpp"

namespace plyp {

namespace {

ZMat zmatmul(const ZMat& a, const ZMat& b) {
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    ZMat c(n, ZVec(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

ZMat zidentity(int n) {
    ZMat m(n, ZVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

}  // namespace

bool in_cone(const ZMat& normals, const ZVec& x) {
    for (const auto& n : normals) {
        Int s = 0;
        for (std::size_t j = 0; j < x.size(); ++j) s += n[j] * x[j];
        if (s < 0) return false;
    }
    return true;
}

ZMat integer_normals(const RationalCone& c) {
    ZMat out;
    for (const auto& q : c.h.ineqs) out.push_back(primitive(q.normal));
    for (const auto& q : c.h.eqs) {
        out.push_back(primitive(q.normal));
        out.push_back(primitive(neg(q.normal)));
    }
    return out;
}

RationalCone image_cone(const RationalCone& c, const RMat& inv) {
    HPolyhedron h(c.dim());
    for (const auto& q : c.h.ineqs) h.ineqs.push_back({vecmat(q.normal, inv), Rat(0)});
    for (const auto& q : c.h.eqs) h.eqs.push_back({vecmat(q.normal, inv), Rat(0)});
    return RationalCone(h);
}

PLMap::PLMap(ClassicalFan fan, std::vector<ZMat> mats) : fan_(std::move(fan)), mats_(std::move(mats)) {
    if (fan_.cones.size() != mats_.size()) fail(ErrorCode::DimensionMismatch, "one matrix per cone required");
    for (const auto& m : mats_) {
        if (static_cast<int>(m.size()) != fan_.dim) fail(ErrorCode::DimensionMismatch, "matrix row count");
        for (const auto& row : m)
            if (static_cast<int>(row.size()) != fan_.dim) fail(ErrorCode::DimensionMismatch, "matrix column count");
    }
    for (const auto& c : fan_.cones) {
        if (c.dim() != fan_.dim) fail(ErrorCode::DimensionMismatch, "cone dimension");
        znormals_.push_back(integer_normals(c));
    }
}

PLMap PLMap::identity(int dim) {
    ClassicalFan f;
    f.dim = dim;
    f.cones.push_back(RationalCone::whole(dim));
    return PLMap(f, {zidentity(dim)});
}

int PLMap::locate(const ZVec& x) const {
    if (static_cast<int>(x.size()) != dim()) fail(ErrorCode::DimensionMismatch, "vector dimension");
    for (std::size_t i = 0; i < znormals_.size(); ++i)
        if (in_cone(znormals_[i], x)) return static_cast<int>(i);
    fail(ErrorCode::IncompatibleFans, "vector " + to_string(x) + " lies in no cone");
}

ZVec PLMap::apply(const ZVec& x) const { return matvec(mats_[locate(x)], x); }

RVec PLMap::apply(const RVec& x) const {
    if (static_cast<int>(x.size()) != dim()) fail(ErrorCode::DimensionMismatch, "vector dimension");
    int i = fan_.locate(x);
    if (i < 0) fail(ErrorCode::IncompatibleFans, "vector " + to_string(x) + " lies in no cone");
    return matvec(to_rmat(mats_[i]), x);
}

std::vector<std::string> PLMap::check() const {
    std::vector<std::string> out;
    if (!fan_.is_complete()) out.push_back("fan is not complete");
    for (std::size_t i = 0; i < mats_.size(); ++i) {
        if (!fan_.cones[i].full_dimensional()) out.push_back("cone " + std::to_string(i) + " is not full-dimensional");
        if (det(to_rmat(mats_[i])) == 0) out.push_back("matrix on cone " + std::to_string(i) + " is singular");
    }
    for (std::size_t i = 0; i < mats_.size(); ++i)
        for (std::size_t j = i + 1; j < mats_.size(); ++j) {
            RationalCone face(fan_.cones[i].h.intersect(fan_.cones[j].h));
            for (const auto& g : face.generators())
                if (matvec(mats_[i], g) != matvec(mats_[j], g)) {
                    out.push_back("discontinuous across cones " + std::to_string(i) + "," + std::to_string(j) +
                                  " at " + to_string(g));
                    break;
                }
        }
    return out;
}

PLMap compose(const PLMap& g, const PLMap& f) {
    if (g.dim() != f.dim()) fail(ErrorCode::DimensionMismatch, "composing maps of different rank");
    ClassicalFan fan;
    fan.dim = f.dim();
    std::vector<ZMat> mats;
    for (std::size_t i = 0; i < f.fan().cones.size(); ++i) {
        RMat a = to_rmat(f.matrices()[i]);
        for (std::size_t j = 0; j < g.fan().cones.size(); ++j) {
            HPolyhedron h = f.fan().cones[i].h;
            for (const auto& q : g.fan().cones[j].h.ineqs) h.ineqs.push_back({vecmat(q.normal, a), Rat(0)});
            for (const auto& q : g.fan().cones[j].h.eqs) h.eqs.push_back({vecmat(q.normal, a), Rat(0)});
            RationalCone c(remove_redundant(h));
            if (!c.full_dimensional()) continue;
            fan.cones.push_back(c);
            mats.push_back(zmatmul(g.matrices()[j], f.matrices()[i]));
        }
    }
    return PLMap(fan, mats);
}

std::optional<std::string> pl_difference(const PLMap& f, const PLMap& g) {
    for (std::size_t i = 0; i < f.fan().cones.size(); ++i)
        for (std::size_t j = 0; j < g.fan().cones.size(); ++j) {
            if (f.matrices()[i] == g.matrices()[j]) continue;
            RationalCone c(f.fan().cones[i].h.intersect(g.fan().cones[j].h));
            if (c.full_dimensional()) {
                ZVec x = c.interior_lattice_point();
                return "maps differ near " + to_string(x) + ": " + to_string(f.apply(x)) + " vs " +
                       to_string(g.apply(x));
            }
        }
    return std::nullopt;
}

LatticePtr PolyptychLattice::make(int rank, std::vector<std::string> charts, const std::vector<MutationSpec>& muts,
                                  int base) {
    if (rank < 1) fail(ErrorCode::BadParams, "rank must be positive");
    if (charts.empty()) fail(ErrorCode::BadParams, "at least one chart is required");
    if (base < 0 || base >= static_cast<int>(charts.size())) fail(ErrorCode::UnknownChart, "base chart out of range");
    {
        std::set<std::string> uniq(charts.begin(), charts.end());
        if (uniq.size() != charts.size()) fail(ErrorCode::BadParams, "duplicate chart label");
    }
    auto lat = std::make_shared<PolyptychLattice>();
    lat->rank_ = rank;
    lat->base_ = base;
    lat->charts_ = std::move(charts);
    for (const auto& m : muts) {
        int a = lat->chart_index(m.from), b = lat->chart_index(m.to);
        if (m.map.dim() != rank) fail(ErrorCode::DimensionMismatch, "mutation " + m.from + "->" + m.to + " has wrong rank");
        lat->mut_[{a, b}] = m.map;
    }
    int n = lat->num_charts();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (lat->mut_.count({a, b})) continue;
            if (a == b)
                lat->mut_[{a, b}] = PLMap::identity(rank);
            else
                fail(ErrorCode::BadParams, "missing mutation " + lat->charts_[a] + "->" + lat->charts_[b]);
        }
    std::vector<ClassicalFan> fans;
    for (int b = 0; b < n; ++b) fans.push_back(lat->mu(base, b).fan());
    lat->sigma_ = common_refinement(fans);
    for (const auto& c : lat->sigma_.cones) lat->sigma_normals_.push_back(integer_normals(c));
    lat->cmat_.resize(n);
    lat->cinv_.resize(n);
    std::set<ZVec> cert;
    for (const auto& c : lat->sigma_.cones) {
        ZVec x = c.interior_lattice_point();
        for (int a = 0; a < n; ++a) {
            const PLMap& m = lat->mu(base, a);
            const ZMat& z = m.matrices()[m.locate(x)];
            lat->cmat_[a].push_back(z);
            auto inv = inverse(to_rmat(z));
            if (!inv) fail(ErrorCode::VerificationFailure, "mutation matrix is singular");
            lat->cinv_[a].push_back(*inv);
        }
        for (const auto& g : c.generators()) cert.insert(g);
    }
    ZVec x(rank, -1);
    for (;;) {
        cert.insert(x);
        int j = rank - 1;
        while (j >= 0 && x[j] == 1) { x[j] = -1; --j; }
        if (j < 0) break;
        ++x[j];
    }
    lat->cert_.assign(cert.begin(), cert.end());
    return lat;
}

int PolyptychLattice::chart_index(const std::string& label) const {
    for (int i = 0; i < num_charts(); ++i)
        if (charts_[i] == label) return i;
    fail(ErrorCode::UnknownChart, "unknown chart '" + label + "'");
}

void PolyptychLattice::check_chart(int alpha) const {
    if (alpha < 0 || alpha >= num_charts()) fail(ErrorCode::UnknownChart, "chart index " + std::to_string(alpha));
}

const PLMap& PolyptychLattice::mu(int a, int b) const {
    check_chart(a);
    check_chart(b);
    return mut_.at({a, b});
}

int PolyptychLattice::locate(const ZVec& x) const {
    if (static_cast<int>(x.size()) != rank_) fail(ErrorCode::DimensionMismatch, "element dimension");
    for (std::size_t i = 0; i < sigma_normals_.size(); ++i)
        if (in_cone(sigma_normals_[i], x)) return static_cast<int>(i);
    fail(ErrorCode::IncompatibleFans, "element outside Sigma");
}

int PolyptychLattice::locate(const RVec& x) const {
    if (static_cast<int>(x.size()) != rank_) fail(ErrorCode::DimensionMismatch, "element dimension");
    int i = sigma_.locate(x);
    if (i < 0) fail(ErrorCode::IncompatibleFans, "element outside Sigma");
    return i;
}

ZVec PolyptychLattice::to_chart(const ZVec& base, int alpha) const { return mu(base_, alpha).apply(base); }
RVec PolyptychLattice::to_chart(const RVec& base, int alpha) const { return mu(base_, alpha).apply(base); }
ZVec PolyptychLattice::from_chart(const ZVec& v, int alpha) const { return mu(alpha, base_).apply(v); }
RVec PolyptychLattice::from_chart(const RVec& v, int alpha) const { return mu(alpha, base_).apply(v); }

Element Element::zero(const LatticePtr& lat) { return {lat, ZVec(lat->rank(), 0)}; }

Element Element::from_chart(const LatticePtr& lat, int alpha, const ZVec& v) {
    if (static_cast<int>(v.size()) != lat->rank()) fail(ErrorCode::DimensionMismatch, "chart vector dimension");
    return {lat, lat->from_chart(v, alpha)};
}

static void same_lattice(const Element& a, const Element& b) {
    if (a.lat != b.lat) fail(ErrorCode::DimensionMismatch, "elements belong to different lattices");
}

Element add_in_chart(const Element& a, const Element& b, int alpha) {
    same_lattice(a, b);
    ZVec x = a.chart(alpha), y = b.chart(alpha);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return Element::from_chart(a.lat, alpha, x);
}

std::vector<Element> upsilon(const Element& a, const Element& b) {
    same_lattice(a, b);
    std::set<ZVec> seen;
    for (int al = 0; al < a.lat->num_charts(); ++al) seen.insert(add_in_chart(a, b, al).base);
    std::vector<Element> out;
    for (const auto& z : seen) out.push_back({a.lat, z});
    return out;
}

Element scale(const Element& e, Int lambda) {
    if (lambda < 0) fail(ErrorCode::NegativeScalar, "negative scalar " + std::to_string(lambda));
    Element r = e;
    for (auto& x : r.base) x *= lambda;
    return r;
}

LatticeReport validate_lattice(const PolyptychLattice& lat) {
    LatticeReport rep;
    int n = lat.num_charts();
    auto name = [&](int a, int b) { return "(" + lat.charts()[a] + "," + lat.charts()[b] + ")"; };
    auto failure = [&](const std::string& s) {
        rep.ok = false;
        rep.failures.push_back(s);
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (const auto& s : lat.mu(a, b).check()) failure("map " + name(a, b) + ": " + s);
    if (!rep.ok) return rep;
    PLMap id = PLMap::identity(lat.rank());
    for (int a = 0; a < n; ++a)
        if (auto d = pl_difference(lat.mu(a, a), id)) failure("identity axiom " + name(a, a) + ": " + *d);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            if (auto d = pl_difference(compose(lat.mu(b, a), lat.mu(a, b)), id))
                failure("inverse axiom " + name(a, b) + ": " + *d);
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (a == b || b == c || a == c) continue;
                if (auto d = pl_difference(compose(lat.mu(b, c), lat.mu(a, b)), lat.mu(a, c)))
                    failure("cocycle axiom (" + lat.charts()[a] + "," + lat.charts()[b] + "," + lat.charts()[c] +
                            "): " + *d);
            }
    return rep;
}

PLFan pl_fan(const LatticePtr& lat) {
    PLFan f;
    for (int c = 0; c < lat->num_cones(); ++c) {
        PLCone pc;
        pc.base = lat->sigma().cones[c];
        for (int a = 0; a < lat->num_charts(); ++a) pc.images.push_back(image_cone(pc.base, lat->chart_matrix_inv(a, c)));
        f.cones.push_back(pc);
    }
    return f;
}

static PLMap product_map(const PLMap& f, const PLMap& g) {
    int r1 = f.dim(), r2 = g.dim(), r = r1 + r2;
    ClassicalFan fan;
    fan.dim = r;
    std::vector<ZMat> mats;
    for (std::size_t i = 0; i < f.fan().cones.size(); ++i)
        for (std::size_t j = 0; j < g.fan().cones.size(); ++j) {
            HPolyhedron h(r);
            auto pad = [&](const RVec& v, int off) {
                RVec out = zeros(r);
                for (std::size_t k = 0; k < v.size(); ++k) out[off + k] = v[k];
                return out;
            };
            for (const auto& q : f.fan().cones[i].h.ineqs) h.ineqs.push_back({pad(q.normal, 0), Rat(0)});
            for (const auto& q : f.fan().cones[i].h.eqs) h.eqs.push_back({pad(q.normal, 0), Rat(0)});
            for (const auto& q : g.fan().cones[j].h.ineqs) h.ineqs.push_back({pad(q.normal, r1), Rat(0)});
            for (const auto& q : g.fan().cones[j].h.eqs) h.eqs.push_back({pad(q.normal, r1), Rat(0)});
            fan.cones.push_back(RationalCone(h));
            ZMat m(r, ZVec(r, 0));
            for (int a = 0; a < r1; ++a)
                for (int b = 0; b < r1; ++b) m[a][b] = f.matrices()[i][a][b];
            for (int a = 0; a < r2; ++a)
                for (int b = 0; b < r2; ++b) m[r1 + a][r1 + b] = g.matrices()[j][a][b];
            mats.push_back(m);
        }
    return PLMap(fan, mats);
}

LatticePtr product_lattice(const LatticePtr& a, const LatticePtr& b) {
    std::vector<std::string> labels;
    int n1 = a->num_charts(), n2 = b->num_charts();
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) labels.push_back("(" + a->charts()[i] + "," + b->charts()[j] + ")");
    std::vector<MutationSpec> muts;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            for (int k = 0; k < n1; ++k)
                for (int l = 0; l < n2; ++l)
                    muts.push_back({labels[i * n2 + j], labels[k * n2 + l], product_map(a->mu(i, k), b->mu(j, l))});
    return PolyptychLattice::make(a->rank() + b->rank(), labels, muts, a->base() * n2 + b->base());
}

LatticePtr rebase(const LatticePtr& lat, int new_base) {
    lat->check_chart(new_base);
    std::vector<MutationSpec> muts;
    for (int a = 0; a < lat->num_charts(); ++a)
        for (int b = 0; b < lat->num_charts(); ++b) muts.push_back({lat->charts()[a], lat->charts()[b], lat->mu(a, b)});
    return PolyptychLattice::make(lat->rank(), lat->charts(), muts, new_base);
}

}  // namespace plyp
