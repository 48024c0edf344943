#include "plyp/duality.hpp"

#include <map>
#include <mutex>
#include <set>

#include "plyp/error.hpp"

namespace plyp {

namespace {

std::mutex g_registry_mutex;
std::map<const PolyptychLattice*, DualPtr>& registry() {
    static std::map<const PolyptychLattice*, DualPtr> r;
    return r;
}

// All integer vectors with entries in [-r, r].
std::vector<ZVec> box(int dim, int r) {
    std::vector<ZVec> out;
    ZVec x(dim, -r);
    for (;;) {
        out.push_back(x);
        int j = dim - 1;
        while (j >= 0 && x[j] == r) { x[j] = -r; --j; }
        if (j < 0) break;
        ++x[j];
    }
    return out;
}

Int zdot(const ZVec& a, const ZVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::shared_ptr<const DualPair> DualPair::make(LatticePtr m, LatticePtr n, ToPoint v, ToPoint w, FromPoint v_inv,
                                               FromPoint w_inv, int box_radius) {
    if (m->rank() != n->rank()) fail(ErrorCode::DimensionMismatch, "dual lattices must have equal rank");
    auto p = std::make_shared<DualPair>();
    p->m_ = std::move(m);
    p->n_ = std::move(n);
    p->v_ = std::move(v);
    p->w_ = std::move(w);
    p->v_inv_ = std::move(v_inv);
    p->w_inv_ = std::move(w_inv);
    p->radius_ = box_radius;
    p->build_blocks();
    return p;
}

void DualPair::build_blocks() {
    blocks_.clear();
    for (const auto& c : m_->sigma().cones) {
        ZMat gens = independent_generators(c);
        auto xinv = inverse(to_rmat(gens));
        std::vector<ZMat> row;
        std::vector<Point> pts;
        for (const auto& g : gens) {
            Point p = v_(Element{m_, g});
            if (p.lattice() != n_) fail(ErrorCode::DimensionMismatch, "v does not land in points of N");
            pts.push_back(p);
        }
        for (int d = 0; d < n_->num_cones(); ++d) {
            RMat h;
            for (const auto& p : pts) h.push_back(to_rvec(p.cone_functionals()[d]));
            RMat b = matmul(*xinv, h);
            ZMat zb;
            for (const auto& r : b) {
                if (!is_integral(r)) fail(ErrorCode::VerificationFailure, "pairing is not integral on a cone pair");
                zb.push_back(to_zvec(r));
            }
            row.push_back(zb);
        }
        blocks_.push_back(row);
    }
}

Int DualPair::pair(const ZVec& mb, const ZVec& nb) const {
    const ZMat& b = blocks_[m_->locate(mb)][n_->locate(nb)];
    Int s = 0;
    for (std::size_t i = 0; i < mb.size(); ++i)
        if (mb[i] != 0) s += mb[i] * zdot(b[i], nb);
    return s;
}

Rat DualPair::pair(const RVec& mb, const ZVec& nb) const { return dot(functional_on(mb, n_->locate(nb)), nb); }

RVec DualPair::functional_on(const RVec& mb, int d) const {
    return vecmat(mb, to_rmat(blocks_[m_->locate(mb)][d]));
}

ZVec DualPair::functional_on(const ZVec& mb, int d) const {
    const ZMat& b = blocks_[m_->locate(mb)][d];
    ZVec out(n_->rank(), 0);
    for (std::size_t i = 0; i < mb.size(); ++i)
        if (mb[i] != 0)
            for (std::size_t j = 0; j < out.size(); ++j) out[j] += mb[i] * b[i][j];
    return out;
}

std::shared_ptr<const DualPair> DualPair::swapped() const {
    return make(n_, m_, w_, v_, w_inv_, v_inv_, radius_);
}

void register_dual(const DualPtr& pair) {
    DualPtr other = pair->M() == pair->N() ? nullptr : pair->swapped();
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    registry()[pair->M().get()] = pair;
    if (other) registry()[other->M().get()] = other;
}

DualPtr find_dual(const PolyptychLattice* lat) {
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto it = registry().find(lat);
    return it == registry().end() ? nullptr : it->second;
}

DualPtr require_dual(const LatticePtr& lat) {
    DualPtr p = find_dual(lat.get());
    if (!p) fail(ErrorCode::NoDualRegistered, "no dual pair registered for this lattice");
    return p;
}

Int pair_eval(const DualPair& pair, const Element& m, const Element& n) {
    if (m.lat != pair.M() || n.lat != pair.N()) fail(ErrorCode::DimensionMismatch, "elements not in the paired lattices");
    Int a = pair.v(m)(n), b = pair.w(n)(m);
    if (a != b)
        fail(ErrorCode::VerificationFailure, "v(m)(n) = " + std::to_string(a) + " but w(n)(m) = " + std::to_string(b));
    return a;
}

std::vector<int> sp_chart_cones(const DualPair& pair, std::string* problem) {
    const auto& M = *pair.M();
    const auto& N = *pair.N();
    int r = M.rank();
    std::vector<int> result(N.num_charts(), -1);
    auto report = [&](const std::string& s) {
        if (problem && problem->empty()) *problem = s;
    };
    for (int g = 0; g < N.num_charts(); ++g) {
        // eqs[c]: linear conditions on m in cone c making v(m) linear on chart g.
        std::vector<RMat> eqs(M.num_cones());
        std::vector<int> full;
        for (int c = 0; c < M.num_cones(); ++c) {
            // Chart-g functional of piece d is m^T B_{c,d} A_{g,d}^{-1}.
            std::vector<RMat> k;
            for (int d = 0; d < N.num_cones(); ++d) k.push_back(matmul(to_rmat(pair.block(c, d)), N.chart_matrix_inv(g, d)));
            for (int d = 1; d < N.num_cones(); ++d)
                for (int j = 0; j < r; ++j) {
                    RVec e(r);
                    for (int i = 0; i < r; ++i) e[i] = k[d][i][j] - k[0][i][j];
                    if (!is_zero(e)) eqs[c].push_back(e);
                }
            if (eqs[c].empty()) full.push_back(c);
        }
        if (full.size() != 1) {
            report("chart " + N.charts()[g] + " matches " + std::to_string(full.size()) + " maximal cones");
            continue;
        }
        int star = full[0];
        bool ok = true;
        for (int c = 0; c < M.num_cones() && ok; ++c) {
            if (c == star) continue;
            HPolyhedron h = M.sigma().cones[c].h;
            for (const auto& e : eqs[c]) h.eqs.push_back({e, Rat(0)});
            RationalCone kc(h);
            for (const auto& gen : kc.generators())
                if (!M.sigma().cones[star].contains(gen)) {
                    report("preimage of chart " + N.charts()[g] + " leaves its cone at " + to_string(gen));
                    ok = false;
                    break;
                }
        }
        if (ok) result[g] = star;
    }
    return result;
}

DualReport verify_dual_pair(const DualPair& pair) {
    DualReport rep;
    const auto& M = pair.M();
    const auto& N = pair.N();
    int R = pair.box_radius();
    auto add = [&](AxiomResult a) {
        rep.ok = rep.ok && a.ok;
        rep.axioms.push_back(std::move(a));
    };

    // (1) v and w take values in points of equal-rank lattices.
    {
        AxiomResult a{"axiom1_points", true, ""};
        if (M->rank() != N->rank()) a = {"axiom1_points", false, "ranks differ"};
        auto check_side = [&](const LatticePtr& src, const DualPair::ToPoint& f, const LatticePtr& dst) {
            std::set<ZVec> samples;
            for (const auto& c : src->sigma().cones)
                for (const auto& g : c.generators()) samples.insert(g);
            for (int i = 0; i < src->rank(); ++i)
                for (Int s : {1, -1}) {
                    ZVec e(src->rank(), 0);
                    e[i] = s;
                    samples.insert(e);
                }
            for (const auto& x : samples) {
                Point p = f(Element{src, x});
                if (p.lattice() != dst) return "image of " + to_string(x) + " lives on the wrong lattice";
                auto pc = verify_point(p);
                if (!pc.ok) return "image of " + to_string(x) + " is not a point: " + pc.witness;
            }
            return std::string();
        };
        if (a.ok) {
            std::string s = check_side(M, [&](const Element& e) { return pair.v(e); }, N);
            if (s.empty()) s = check_side(N, [&](const Element& e) { return pair.w(e); }, M);
            if (!s.empty()) a = {"axiom1_points", false, s};
        }
        add(a);
    }
    if (!rep.ok) return rep;

    auto mbox = box(M->rank(), R);
    auto nbox = box(N->rank(), R);
    std::vector<Point> vm, wn;
    for (const auto& x : mbox) vm.push_back(pair.v(Element{M, x}));
    for (const auto& y : nbox) wn.push_back(pair.w(Element{N, y}));

    // (2) v(m)(n) = w(n)(m) on the box.
    {
        AxiomResult a{"axiom2_pairing", true, ""};
        for (std::size_t i = 0; i < mbox.size() && a.ok; ++i)
            for (std::size_t j = 0; j < nbox.size(); ++j) {
                Int x = vm[i].eval(nbox[j]), y = wn[j].eval(mbox[i]);
                if (x != y || pair.pair(mbox[i], nbox[j]) != x) {
                    a = {"axiom2_pairing", false,
                         "m=" + to_string(mbox[i]) + " n=" + to_string(nbox[j]) + ": " + std::to_string(x) +
                             " vs " + std::to_string(y)};
                    break;
                }
            }
        add(a);
    }

    // (3) bijectivity through the supplied inverses.
    {
        AxiomResult a{"axiom3_bijection", true, ""};
        for (std::size_t i = 0; i < mbox.size() && a.ok; ++i)
            if (pair.v_inv(vm[i]).base != mbox[i]) a = {"axiom3_bijection", false, "v_inv(v(m)) != m at " + to_string(mbox[i])};
        for (std::size_t j = 0; j < nbox.size() && a.ok; ++j)
            if (pair.w_inv(wn[j]).base != nbox[j]) a = {"axiom3_bijection", false, "w_inv(w(n)) != n at " + to_string(nbox[j])};
        // Surjectivity: every point whose first-cone restriction lies in the box is hit.
        auto surj = [&](const LatticePtr& lat, const DualPair::FromPoint& inv, const DualPair::ToPoint& fwd,
                        const char* name) {
            for (const auto& f : box(lat->rank(), R)) {
                auto p = extend_from_cone(lat, 0, f, false);
                if (!p) continue;
                Element e = inv(*p);
                if (fwd(e) == *p) continue;
                if (verify_point(*p).ok) return std::string(name) + " misses the point restricting to " + to_string(f);
            }
            return std::string();
        };
        if (a.ok) {
            std::string s = surj(N, [&](const Point& p) { return pair.v_inv(p); },
                                 [&](const Element& e) { return pair.v(e); }, "v");
            if (s.empty())
                s = surj(M, [&](const Point& p) { return pair.w_inv(p); }, [&](const Element& e) { return pair.w(e); },
                         "w");
            if (!s.empty()) a = {"axiom3_bijection", false, s};
        }
        add(a);
    }

    // (4) preimages of linear points are exactly the maximal cones, bijectively.
    {
        AxiomResult a{"axiom4_cones", true, ""};
        std::string why;
        rep.chart_cone = sp_chart_cones(pair, &why);
        auto sw = pair.swapped();
        rep.chart_cone_w = sp_chart_cones(*sw, &why);
        auto bijective = [](const std::vector<int>& v, int ncones) {
            if (static_cast<int>(v.size()) != ncones) return false;
            std::set<int> s(v.begin(), v.end());
            return static_cast<int>(s.size()) == ncones && !s.count(-1);
        };
        if (!why.empty())
            a = {"axiom4_cones", false, why};
        else if (!bijective(rep.chart_cone, M->num_cones()))
            a = {"axiom4_cones", false, "charts of N and maximal cones of M are not in bijection"};
        else if (!bijective(rep.chart_cone_w, N->num_cones()))
            a = {"axiom4_cones", false, "charts of M and maximal cones of N are not in bijection"};
        add(a);
    }
    return rep;
}

bool in_pconv(const DualPair& pair, const RVec& m, const std::vector<ZVec>& s) {
    if (s.empty()) return false;
    const auto& N = *pair.N();
    bool integral = is_integral(m);
    if (integral) {
        ZVec zm = to_zvec(m);
        for (const auto& x : s)
            if (x == zm) return true;
        for (const auto& n : N.certificate_vectors()) {
            Int lhs = pair.pair(zm, n);
            bool below = true;
            for (const auto& x : s)
                if (pair.pair(x, n) <= lhs) { below = false; break; }
            if (below) return false;
        }
    }
    int r = N.rank();
    for (int d = 0; d < N.num_cones(); ++d) {
        ZMat normals = integer_normals(N.sigma().cones[d]);
        int ns = static_cast<int>(s.size()), nb = static_cast<int>(normals.size());
        RMat A(r + 1, RVec(ns + nb, Rat(0)));
        RVec b(r + 1);
        RVec hm = pair.functional_on(m, d);
        for (int j = 0; j < ns; ++j) {
            ZVec h = pair.functional_on(s[j], d);
            for (int k = 0; k < r; ++k) A[k][j] = static_cast<long>(h[k]);
            A[r][j] = 1;
        }
        for (int j = 0; j < nb; ++j)
            for (int k = 0; k < r; ++k) A[k][ns + j] = static_cast<long>(normals[j][k]);
        for (int k = 0; k < r; ++k) b[k] = hm[k];
        b[r] = 1;
        if (solve_standard(A, b, RVec(ns + nb, Rat(0))).status != LPStatus::Optimal) return false;
    }
    return true;
}

InducedStructure induced_pl_on_points(const DualPair& pair) {
    InducedStructure out;
    const auto& M = pair.M();
    const auto& N = pair.N();
    int r = N->rank();
    std::string why;
    out.chart_cone = sp_chart_cones(pair, &why);
    if (!why.empty()) fail(ErrorCode::VerificationFailure, "axiom (4) fails: " + why);
    std::vector<RMat> winv;
    for (int g = 0; g < N->num_charts(); ++g) {
        RMat W(r, RVec(r));
        for (int i = 0; i < r; ++i) {
            ZVec e(r, 0);
            e[i] = 1;
            ZVec f = pair.w(Element::from_chart(N, g, e)).cone_functionals()[out.chart_cone[g]];
            for (int k = 0; k < r; ++k) W[k][i] = static_cast<long>(f[k]);
        }
        auto inv = inverse(W);
        if (!inv || det(W) * det(W) != 1)
            fail(ErrorCode::VerificationFailure, "chart map w_" + N->charts()[g] + " is not unimodular");
        out.w_maps.push_back(W);
        winv.push_back(*inv);
    }
    std::vector<MutationSpec> muts;
    for (int g = 0; g < N->num_charts(); ++g)
        for (int d = 0; d < N->num_charts(); ++d) {
            const PLMap& mu = N->mu(g, d);
            ClassicalFan fan;
            fan.dim = r;
            std::vector<ZMat> mats;
            for (std::size_t k = 0; k < mu.fan().cones.size(); ++k) {
                fan.cones.push_back(image_cone(mu.fan().cones[k], winv[g]));
                RMat m = matmul(matmul(out.w_maps[d], to_rmat(mu.matrices()[k])), winv[g]);
                ZMat zm;
                for (const auto& row : m) zm.push_back(to_zvec(row));
                mats.push_back(zm);
            }
            muts.push_back({N->charts()[g], N->charts()[d], PLMap(fan, mats)});
        }
    out.lattice = PolyptychLattice::make(r, N->charts(), muts, N->base());
    auto rep = validate_lattice(*out.lattice);
    for (const auto& f : rep.failures) out.failures.push_back("induced lattice: " + f);
    // Commuting squares: w_d(mu_gd(x)) equals the restriction of w(n) to the d-cone.
    std::vector<ZVec> samples = N->certificate_vectors();
    for (const auto& x : box(r, 2)) samples.push_back(x);
    for (const auto& nb : samples) {
        Point wn = pair.w(Element{N, nb});
        for (int g = 0; g < N->num_charts(); ++g) {
            ZVec xg = N->to_chart(nb, g);
            RVec lg = matvec(out.w_maps[g], to_rvec(xg));
            for (int d = 0; d < N->num_charts(); ++d) {
                RVec direct = to_rvec(wn.cone_functionals()[out.chart_cone[d]]);
                RVec via = out.lattice->mu(g, d).apply(lg);
                if (direct != via) {
                    out.failures.push_back("square (" + N->charts()[g] + "," + N->charts()[d] + ") fails at n=" +
                                           to_string(nb));
                    break;
                }
            }
        }
        if (out.failures.size() > 5) break;
    }
    out.ok = out.failures.empty();
    if (!out.ok) fail(ErrorCode::VerificationFailure, out.failures.front());
    (void)M;
    return out;
}

}  // namespace plyp
