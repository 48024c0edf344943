#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "plyp/detrop.hpp"

namespace plyp::io {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Everything a command may need; fields are filled according to the manifest kind.
struct Loaded {
    std::string kind;
    std::string family;  // "a1", "mdr", "trivial" or empty for inline lattices
    int d = 0, r = 0;    // family parameters (r is the rank for "trivial")
    LatticePtr lattice;
    DualPtr pair;
    std::optional<Point> point;
    std::optional<PLPolytope> polytope;
    std::optional<AlgebraElement> element;
};

/// JSON text to value; syntax errors become Parse errors with line and column.
json parse_text(const std::string& text);
json read_file(const std::string& path);

/// "a1", "mdr:d,r" or "trivial:r".
Loaded load_family(const std::string& family, bool builtin_polytope, int box_radius);
Loaded load_manifest(const json& j, int box_radius);

LatticePtr parse_lattice(const json& j, int box_radius, Loaded* fam = nullptr);
Point parse_point(const json& j, const Loaded& ctx);
PLPolytope parse_polytope(const json& j, const Loaded& ctx);

json emit_lattice(const PolyptychLattice& lat);
json emit_point(const Point& p);
json emit_polytope(const PLPolytope& p);
/// Wraps a payload with version and kind.
json manifest(const std::string& kind, json payload);

std::string rat_str(const Rat& x);
json rvec_json(const RVec& v);

}  // namespace plyp::io
