#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>

#include <CLI11.hpp>

#include "manifest.hpp"
#include "plyp/error.hpp"

using namespace plyp;
using plyp::io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

struct Source {
    std::string file;
    std::string family;
    std::string polytope;
};

int box_radius_from_env() {
    const char* s = std::getenv("PLYP_BOX_RADIUS");
    if (!s || !*s) return 3;
    char* end = nullptr;
    long r = std::strtol(s, &end, 10);
    if (*end != '\0' || r < 1 || r > 20) fail(ErrorCode::BadParams, std::string("PLYP_BOX_RADIUS must be in 1..20, got ") + s);
    return static_cast<int>(r);
}

io::Loaded load(const Source& src) {
    int radius = box_radius_from_env();
    if (!src.polytope.empty() && src.polytope != "builtin")
        fail(ErrorCode::BadParams, "--polytope only accepts 'builtin'");
    if (!src.family.empty() && !src.file.empty()) fail(ErrorCode::BadParams, "give either a manifest file or --family");
    if (!src.family.empty()) return io::load_family(src.family, src.polytope == "builtin", radius);
    if (src.file.empty()) fail(ErrorCode::BadParams, "a manifest file or --family is required");
    return io::load_manifest(io::read_file(src.file), radius);
}

const PLPolytope& need_polytope(const io::Loaded& l) {
    if (!l.polytope) fail(ErrorCode::BadParams, "this command needs a polytope (manifest kind 'polytope' or --polytope builtin)");
    return *l.polytope;
}

const DualPair& need_pair(const io::Loaded& l) {
    if (!l.pair) fail(ErrorCode::NoDualRegistered, "this command needs a built-in family with a dual pair");
    return *l.pair;
}

json elem_json(const PolyptychLattice& lat, const RVec& base) {
    json charts = json::object();
    for (int a = 0; a < lat.num_charts(); ++a) charts[lat.charts()[a]] = io::rvec_json(lat.to_chart(base, a));
    return json{{"base", io::rvec_json(base)}, {"charts", charts}};
}

json cone_json(const RationalCone& c) {
    json normals = json::array(), gens = json::array();
    for (const auto& in : c.h.ineqs) normals.push_back(io::rvec_json(in.normal));
    for (const auto& g : c.generators()) gens.push_back(g);
    return json{{"normals", normals}, {"generators", gens}};
}

json images_json(const PLPolytope& p) {
    json out = json::object();
    const auto& lat = *p.lattice();
    for (int a = 0; a < lat.num_charts(); ++a) {
        json vs = json::array();
        for (const auto& v : p.chart_image(a).vertices) vs.push_back(io::rvec_json(v));
        out[lat.charts()[a]] = json{{"vertices", vs}, {"integral", p.chart_image(a).is_integral()}};
    }
    return out;
}

int chart_arg(const PolyptychLattice& lat, const std::string& label) { return lat.chart_index(label); }

int emit(const json& j, bool ok = true) {
    std::cout << j.dump(2) << "\n";
    return ok ? kExitOk : kExitFailed;
}

int cmd_validate(const Source& src) {
    io::Loaded l = load(src);
    json out;
    bool ok = true;
    LatticeReport lr = validate_lattice(*l.lattice);
    out["lattice"] = json{{"ok", lr.ok}, {"failures", lr.failures}};
    ok = ok && lr.ok;
    if (l.pair) {
        DualReport dr = verify_dual_pair(*l.pair);
        json axioms = json::array();
        for (const auto& a : dr.axioms) axioms.push_back({{"name", a.name}, {"ok", a.ok}, {"witness", a.witness}});
        out["dual"] = json{{"ok", dr.ok}, {"axioms", axioms}};
        ok = ok && dr.ok;
    }
    if (l.point) {
        PointCheck pc = verify_point(*l.point);
        out["point"] = json{{"ok", pc.ok}, {"witness", pc.witness}};
        ok = ok && pc.ok;
    }
    if (l.polytope) {
        bool cons = charts_consistent(*l.polytope);
        out["polytope"] = json{{"compact", true}, {"empty", l.polytope->empty()}, {"charts_consistent", cons}};
        ok = ok && cons;
    }
    if (l.element) out["algebra_element"] = json{{"expansion", to_string(*l.element)}};
    out["ok"] = ok;
    return emit(out, ok);
}

int cmd_fan(const Source& src) {
    io::Loaded l = load(src);
    PLFan fan = pl_fan(l.lattice);
    json cones = json::array();
    for (const auto& c : fan.cones) {
        json images = json::object();
        for (int a = 0; a < l.lattice->num_charts(); ++a) images[l.lattice->charts()[a]] = cone_json(c.images[a]);
        json cj = cone_json(c.base);
        cj["images"] = images;
        cones.push_back(cj);
    }
    return emit(json{{"rank", l.lattice->rank()}, {"charts", l.lattice->charts()}, {"cones", cones}});
}

int cmd_vertices(const Source& src) {
    io::Loaded l = load(src);
    const PLPolytope& p = need_polytope(l);
    json vs = json::array();
    for (const auto& v : p.vertex_coords()) vs.push_back(elem_json(*l.lattice, v));
    return emit(json{{"count", vs.size()}, {"vertices", vs}, {"chart_images", images_json(p)}});
}

int cmd_dual(const Source& src) {
    io::Loaded l = load(src);
    PLPolytope d = dual_polytope(need_polytope(l), need_pair(l));
    json vs = json::array();
    for (const auto& v : d.vertex_coords()) vs.push_back(elem_json(*d.lattice(), v));
    return emit(json{{"half_spaces", d.half_spaces().size()},
                     {"integral", is_integral(d)},
                     {"vertices", vs},
                     {"chart_images", images_json(d)}});
}

int cmd_points_count(const Source& src, Int k) {
    io::Loaded l = load(src);
    PLPolytope kp = scale_polytope(need_polytope(l), k);
    json counts = json::object();
    for (int a = 0; a < l.lattice->num_charts(); ++a)
        counts[l.lattice->charts()[a]] = lattice_points(kp.chart_image(a)).size();
    auto pts = pl_lattice_points(kp);
    return emit(json{{"k", k}, {"count", pts.size()}, {"per_chart", counts}});
}

int cmd_gf_check(const Source& src) {
    io::Loaded l = load(src);
    const PLPolytope& p = need_polytope(l);
    bool gf = is_chart_gorenstein_fano(p);
    json out{{"compact", true}, {"integral", is_integral(p)}, {"chart_gorenstein_fano", gf}};
    bool ok = gf;
    if (l.family == "mdr") {
        bool tu = true;
        for (int k = 0; k < l.d; ++k) tu = tu && is_totally_unimodular(mdr_tu_matrix(l.d, l.r, k));
        out["tu_matrix"] = tu;
        ok = ok && tu;
    } else {
        out["tu_matrix"] = nullptr;
    }
    return emit(out, ok);
}

int cmd_valuate(const std::string& expr, int d, int r) {
    AlgebraElement f = parse_algebra(expr, d, r);
    SElem v = valuate(f);
    json out{{"d", d}, {"r", r}, {"expansion", to_string(f)}};
    if (v.inf) {
        out["valuation"] = "infinity";
        return emit(out);
    }
    DualPtr pair = mdr_dual_pair(d, r);
    json members = json::array();
    for (const auto& m : v.members) {
        MdrElement x = mdr_phi_inv(d, r, 0, m);
        auto [a, b] = mdr_point_params(r, d, pair->v(Element{pair->M(), m}));
        members.push_back({{"element", {{"u", x.u}, {"w", x.w}}}, {"a", a}, {"b", b}});
    }
    out["valuation"] = members;
    return emit(out);
}

void need_mdr(const io::Loaded& l) {
    if (l.family != "mdr") fail(ErrorCode::BadParams, "this command needs the mdr family");
}

int cmd_level_dim(const Source& src, Int k) {
    io::Loaded l = load(src);
    need_mdr(l);
    auto basis = level_space(need_polytope(l), l.d, l.r, k);
    json names = json::array();
    for (const auto& m : basis) names.push_back(to_string(AlgebraElement::basis(l.d, l.r, m)));
    return emit(json{{"k", k}, {"dim", basis.size()}, {"basis", names}});
}

int cmd_no_body(const Source& src, const std::string& chart, Int kmax) {
    io::Loaded l = load(src);
    need_mdr(l);
    int alpha = chart_arg(*l.lattice, chart);
    NoBodyReport rep = no_body_check(need_polytope(l), l.d, l.r, alpha, kmax);
    json levels = json::array();
    for (const auto& lv : rep.levels)
        levels.push_back({{"k", lv.k}, {"values", lv.values}, {"lattice_points", lv.lattice_points}, {"ok", lv.ok}});
    return emit(json{{"chart", chart}, {"ok", rep.ok}, {"levels", levels}}, rep.ok);
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

int cmd_render(const Source& src, const std::string& chart, const std::string& out_path) {
    io::Loaded l = load(src);
    const PLPolytope& p = need_polytope(l);
    if (l.lattice->rank() != 2) fail(ErrorCode::DimensionMismatch, "render needs a rank-2 lattice");
    int alpha = chart_arg(*l.lattice, chart);
    std::vector<RVec> vs = p.chart_image(alpha).vertices;
    // Cycle order by angle around the centroid.
    double cx = 0, cy = 0;
    for (const auto& v : vs) {
        cx += v[0].get_d() / vs.size();
        cy += v[1].get_d() / vs.size();
    }
    std::stable_sort(vs.begin(), vs.end(), [&](const RVec& a, const RVec& b) {
        return std::atan2(a[1].get_d() - cy, a[0].get_d() - cx) < std::atan2(b[1].get_d() - cy, b[0].get_d() - cx);
    });
    const double s = 40.0;
    double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    for (const auto& v : vs) {
        lo_x = std::min(lo_x, v[0].get_d());
        hi_x = std::max(hi_x, v[0].get_d());
        lo_y = std::min(lo_y, v[1].get_d());
        hi_y = std::max(hi_y, v[1].get_d());
    }
    lo_x = std::floor(lo_x) - 1;
    lo_y = std::floor(lo_y) - 1;
    hi_x = std::ceil(hi_x) + 1;
    hi_y = std::ceil(hi_y) + 1;
    auto X = [&](double x) { return fmt((x - lo_x) * s); };
    auto Y = [&](double y) { return fmt((hi_y - y) * s); };
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt((hi_x - lo_x) * s)
        << "\" height=\"" << fmt((hi_y - lo_y) * s) << "\">\n";
    svg << "  <metadata>chart " << chart << " vertices:";
    for (const auto& v : vs) svg << " (" << io::rat_str(v[0]) << "," << io::rat_str(v[1]) << ")";
    svg << "</metadata>\n";
    svg << "  <line x1=\"" << X(lo_x) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(hi_x) << "\" y2=\"" << Y(0)
        << "\" stroke=\"#999\"/>\n";
    svg << "  <line x1=\"" << X(0) << "\" y1=\"" << Y(lo_y) << "\" x2=\"" << X(0) << "\" y2=\"" << Y(hi_y)
        << "\" stroke=\"#999\"/>\n";
    svg << "  <polygon points=\"";
    for (std::size_t i = 0; i < vs.size(); ++i) svg << (i ? " " : "") << X(vs[i][0].get_d()) << "," << Y(vs[i][1].get_d());
    svg << "\" fill=\"#ccc\" stroke=\"black\"/>\n";
    for (Int x = static_cast<Int>(lo_x); x <= static_cast<Int>(hi_x); ++x)
        for (Int y = static_cast<Int>(lo_y); y <= static_cast<Int>(hi_y); ++y)
            svg << "  <circle cx=\"" << X(static_cast<double>(x)) << "\" cy=\"" << Y(static_cast<double>(y))
                << "\" r=\"1.5\"/>\n";
    svg << "</svg>\n";
    std::ofstream f(out_path);
    if (!f) fail(ErrorCode::BadParams, "cannot write " + out_path);
    f << svg.str();
    json jv = json::array();
    for (const auto& v : vs) jv.push_back(io::rvec_json(v));
    return emit(json{{"svg", out_path}, {"chart", chart}, {"vertices", jv}});
}

void add_source(CLI::App* c, Source& src) {
    c->add_option("file", src.file, "Manifest file (JSON)");
    c->add_option("--family", src.family, "Built-in family: a1, mdr:d,r or trivial:r");
    c->add_option("--polytope", src.polytope, "Use the family's built-in polytope ('builtin')");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polyptych lattices, PL polytopes and detropicalizations"};
    app.require_subcommand(1);
    Source src;
    Int k = 1, kmax = 3;
    std::string chart = "1", out_path = "chart.svg", expr;
    int d = 2, r = 2;

    auto* validate = app.add_subcommand("validate", "Check lattice, dual pair, point or polytope axioms");
    add_source(validate, src);
    auto* fan = app.add_subcommand("fan", "Print the fan Sigma(M) and its chart images");
    add_source(fan, src);
    auto* vertices = app.add_subcommand("vertices", "Vertex set V(P) with chart coordinates");
    add_source(vertices, src);
    auto* dual = app.add_subcommand("dual", "Dual PL polytope");
    add_source(dual, src);
    auto* count = app.add_subcommand("points-count", "Lattice points of kP in every chart");
    add_source(count, src);
    count->add_option("-k,--k", k, "Dilation factor")->check(CLI::NonNegativeNumber);
    auto* gf = app.add_subcommand("gf-check", "Chart-Gorenstein-Fano and total unimodularity checks");
    add_source(gf, src);
    auto* val = app.add_subcommand("valuate", "Expand an element of A_{d,r} and print its valuation");
    val->add_option("expr", expr, "Expression in x1..xd, t1..tr")->required();
    val->add_option("d", d, "d")->required();
    val->add_option("r", r, "r")->required();
    auto* level = app.add_subcommand("level-dim", "Dimension of the level-k subspace");
    add_source(level, src);
    level->add_option("-k,--k", k, "Level")->check(CLI::NonNegativeNumber);
    auto* nobody = app.add_subcommand("no-body", "Compare valuation values with lattice points of k pi_alpha(P)");
    add_source(nobody, src);
    nobody->add_option("--chart", chart, "Chart label");
    nobody->add_option("--kmax", kmax, "Largest level")->check(CLI::NonNegativeNumber);
    auto* render = app.add_subcommand("render", "Write a rank-2 chart image as SVG");
    add_source(render, src);
    render->add_option("--chart", chart, "Chart label");
    render->add_option("-o,--out", out_path, "Output SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*validate) return cmd_validate(src);
        if (*fan) return cmd_fan(src);
        if (*vertices) return cmd_vertices(src);
        if (*dual) return cmd_dual(src);
        if (*count) return cmd_points_count(src, k);
        if (*gf) return cmd_gf_check(src);
        if (*val) return cmd_valuate(expr, d, r);
        if (*level) return cmd_level_dim(src, k);
        if (*nobody) return cmd_no_body(src, chart, kmax);
        if (*render) return cmd_render(src, chart, out_path);
    } catch (const Error& e) {
        json err{{"error", error_code_name(e.code())}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        return e.code() == ErrorCode::VerificationFailure ? kExitFailed : kExitUsage;
    } catch (const json::exception& e) {
        // Type errors from well-formed JSON with wrongly typed fields.
        json err{{"error", error_code_name(ErrorCode::Parse)}, {"message", e.what()}};
        std::cout << err.dump(2) << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
