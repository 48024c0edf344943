#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plyp/polyhedra.hpp"

namespace plyp {

/// Piecewise-linear map: one integer matrix per maximal cone of a complete fan.
class PLMap {
public:
    PLMap() = default;
    PLMap(ClassicalFan fan, std::vector<ZMat> mats);
    static PLMap identity(int dim);

    int dim() const { return fan_.dim; }
    const ClassicalFan& fan() const { return fan_; }
    const std::vector<ZMat>& matrices() const { return mats_; }

    int locate(const ZVec& x) const;
    ZVec apply(const ZVec& x) const;
    RVec apply(const RVec& x) const;

    /// Structural problems: incomplete fan, singular matrix, discontinuity.
    std::vector<std::string> check() const;

private:
    ClassicalFan fan_;
    std::vector<ZMat> mats_;
    std::vector<ZMat> znormals_;  // integer cone normals for the fast path
};

/// g after f; the fan lives in the source of f.
PLMap compose(const PLMap& g, const PLMap& f);
/// Empty when f and g agree everywhere, otherwise a description of a disagreeing cone.
std::optional<std::string> pl_difference(const PLMap& f, const PLMap& g);

bool in_cone(const ZMat& normals, const ZVec& x);
ZMat integer_normals(const RationalCone& c);

class PolyptychLattice;
using LatticePtr = std::shared_ptr<const PolyptychLattice>;

struct MutationSpec {
    std::string from, to;
    PLMap map;
};

class PolyptychLattice {
public:
    /// Diagonal mutations default to the identity when omitted. Sigma is computed eagerly.
    static LatticePtr make(int rank, std::vector<std::string> charts, const std::vector<MutationSpec>& muts,
                           int base = 0);

    int rank() const { return rank_; }
    int num_charts() const { return static_cast<int>(charts_.size()); }
    const std::vector<std::string>& charts() const { return charts_; }
    int base() const { return base_; }
    int chart_index(const std::string& label) const;
    void check_chart(int alpha) const;
    const PLMap& mu(int a, int b) const;

    /// Sigma(M) as cones in base coordinates.
    const ClassicalFan& sigma() const { return sigma_; }
    int num_cones() const { return static_cast<int>(sigma_.cones.size()); }
    int locate(const ZVec& base) const;
    int locate(const RVec& base) const;
    /// Matrix of mu_{base,alpha} on Sigma cone c, and its inverse.
    const ZMat& chart_matrix(int alpha, int c) const { return cmat_[alpha][c]; }
    const RMat& chart_matrix_inv(int alpha, int c) const { return cinv_[alpha][c]; }

    ZVec to_chart(const ZVec& base, int alpha) const;
    RVec to_chart(const RVec& base, int alpha) const;
    ZVec from_chart(const ZVec& v, int alpha) const;
    RVec from_chart(const RVec& v, int alpha) const;

    /// Cone generators of Sigma plus the radius-1 box; used as a finite test set.
    const std::vector<ZVec>& certificate_vectors() const { return cert_; }

private:
    int rank_ = 0;
    int base_ = 0;
    std::vector<std::string> charts_;
    std::map<std::pair<int, int>, PLMap> mut_;
    ClassicalFan sigma_;
    std::vector<ZMat> sigma_normals_;
    std::vector<std::vector<ZMat>> cmat_;
    std::vector<std::vector<RMat>> cinv_;
    std::vector<ZVec> cert_;
};

struct Element {
    LatticePtr lat;
    ZVec base;

    static Element zero(const LatticePtr& lat);
    static Element from_chart(const LatticePtr& lat, int alpha, const ZVec& v);
    ZVec chart(int alpha) const { return lat->to_chart(base, alpha); }
    ZVec chart(const std::string& label) const { return chart(lat->chart_index(label)); }

    bool operator==(const Element& o) const { return lat == o.lat && base == o.base; }
    bool operator<(const Element& o) const { return base < o.base; }
};

Element add_in_chart(const Element& a, const Element& b, int alpha);
/// Distinct chart sums, sorted by base coordinates.
std::vector<Element> upsilon(const Element& a, const Element& b);
Element scale(const Element& e, Int lambda);

struct LatticeReport {
    bool ok = true;
    std::vector<std::string> failures;
};

LatticeReport validate_lattice(const PolyptychLattice& lat);

struct PLCone {
    RationalCone base;
    std::vector<RationalCone> images;  // one per chart
};

struct PLFan {
    std::vector<PLCone> cones;
};

PLFan pl_fan(const LatticePtr& lat);
LatticePtr product_lattice(const LatticePtr& a, const LatticePtr& b);
/// Same lattice with another chart designated as base.
LatticePtr rebase(const LatticePtr& lat, int new_base);

/// Image of a cone under an invertible linear map.
RationalCone image_cone(const RationalCone& c, const RMat& inv);

}  // namespace plyp
