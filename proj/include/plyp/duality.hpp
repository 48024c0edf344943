#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "plyp/points.hpp"

namespace plyp {

/// Strict dual pair (M, N, v, w) with explicit inverses.
class DualPair {
public:
    using ToPoint = std::function<Point(const Element&)>;
    using FromPoint = std::function<Element(const Point&)>;

    static std::shared_ptr<const DualPair> make(LatticePtr m, LatticePtr n, ToPoint v, ToPoint w, FromPoint v_inv,
                                                FromPoint w_inv, int box_radius = 3);

    const LatticePtr& M() const { return m_; }
    const LatticePtr& N() const { return n_; }
    int box_radius() const { return radius_; }

    Point v(const Element& m) const { return v_(m); }
    Point w(const Element& n) const { return w_(n); }
    Element v_inv(const Point& p) const { return v_inv_(p); }
    Element w_inv(const Point& p) const { return w_inv_(p); }

    /// v(m)(n) through the per-cone bilinear blocks.
    Int pair(const ZVec& mbase, const ZVec& nbase) const;
    Rat pair(const RVec& mbase, const ZVec& nbase) const;
    /// v(m) restricted to maximal cone d of Sigma(N), in N base coordinates.
    RVec functional_on(const RVec& mbase, int d) const;
    ZVec functional_on(const ZVec& mbase, int d) const;
    /// Bilinear block for Sigma(M) cone c and Sigma(N) cone d.
    const ZMat& block(int c, int d) const { return blocks_[c][d]; }

    /// Roles of M and N exchanged.
    std::shared_ptr<const DualPair> swapped() const;

private:
    LatticePtr m_, n_;
    ToPoint v_, w_;
    FromPoint v_inv_, w_inv_;
    int radius_ = 3;
    // blocks_[c][d]: v(m)(n) = m^T B n for m in cone c of Sigma(M), n in cone d of Sigma(N).
    std::vector<std::vector<ZMat>> blocks_;
    void build_blocks();
};

using DualPtr = std::shared_ptr<const DualPair>;

/// Registers the pair for both M and N (swapped orientation for N).
void register_dual(const DualPtr& pair);
/// Pair oriented with lattice as M, or null.
DualPtr find_dual(const PolyptychLattice* lat);
DualPtr require_dual(const LatticePtr& lat);

struct AxiomResult {
    std::string name;
    bool ok = true;
    std::string witness;
};

struct DualReport {
    bool ok = true;
    std::vector<AxiomResult> axioms;
    /// chart_cone[g] = Sigma(M) cone equal to v^{-1}(Sp(N, g)).
    std::vector<int> chart_cone;
    /// Same for w: Sigma(N) cone equal to w^{-1}(Sp(M, a)).
    std::vector<int> chart_cone_w;
};

DualReport verify_dual_pair(const DualPair& pair);

/// Chart index g of N with v^{-1}(Sp(N,g)) equal to Sigma(M) cone c, computed symbolically; -1 if none.
std::vector<int> sp_chart_cones(const DualPair& pair, std::string* problem = nullptr);

Int pair_eval(const DualPair& pair, const Element& m, const Element& n);

/// Point-convex hull membership: m in p-conv(S) via the dual.
bool in_pconv(const DualPair& pair, const RVec& m, const std::vector<ZVec>& s);

struct InducedStructure {
    LatticePtr lattice;           // PL structure on Sp(M), charts labelled as N's
    std::vector<RMat> w_maps;     // W_g: chart-g coordinates of n -> restriction of w(n) to its cone
    std::vector<int> chart_cone;  // Sigma(M) cone used for chart g
    bool ok = true;
    std::vector<std::string> failures;
};

InducedStructure induced_pl_on_points(const DualPair& pair);

}  // namespace plyp
