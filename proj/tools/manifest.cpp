#include "manifest.hpp"

#include <fstream>
#include <sstream>

#include "plyp/error.hpp"

namespace plyp::io {

namespace {

[[noreturn]] void bad(const std::string& msg) { fail(ErrorCode::Parse, msg); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

Int as_int(const json& j) {
    if (!j.is_number_integer()) bad("expected an integer, got " + j.dump());
    return j.get<Int>();
}

Rat as_rat(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<Int>()));
    if (j.is_string()) {
        try {
            Rat x(j.get<std::string>());
            x.canonicalize();
            return x;
        } catch (const std::invalid_argument&) {
        }
    }
    bad("expected an integer or a rational string, got " + j.dump());
}

ZVec as_zvec(const json& j) {
    if (!j.is_array()) bad("expected an integer array, got " + j.dump());
    ZVec v;
    for (const auto& x : j) v.push_back(as_int(x));
    return v;
}

RVec as_rvec(const json& j) {
    if (!j.is_array()) bad("expected an array, got " + j.dump());
    RVec v;
    for (const auto& x : j) v.push_back(as_rat(x));
    return v;
}

ZMat as_zmat(const json& j) {
    if (!j.is_array()) bad("expected a matrix, got " + j.dump());
    ZMat m;
    for (const auto& row : j) m.push_back(as_zvec(row));
    return m;
}

json rat_json(const Rat& x) {
    if (x.get_den() == 1 && x.get_num().fits_slong_p()) return json(x.get_num().get_si());
    return json(rat_str(x));
}

std::pair<int, int> parse_pair(const std::string& s, const std::string& family) {
    int a = 0, b = 0;
    char comma = 0;
    std::istringstream in(s);
    if (!(in >> a >> comma >> b) || comma != ',' || !in.eof()) bad("bad family parameters in '" + family + "'");
    return {a, b};
}

}  // namespace

std::string rat_str(const Rat& x) { return x.get_str(); }

json rvec_json(const RVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rat_json(x));
    return a;
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string what = e.what();
        auto pos = what.find("syntax error");
        fail(ErrorCode::Parse, "JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) +
                                   (pos == std::string::npos ? "" : ": " + what.substr(pos)));
    }
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Parse, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

Loaded load_family(const std::string& family, bool builtin_polytope, int box_radius) {
    Loaded out;
    out.kind = "dual-pair";
    if (family == "a1") {
        out.family = "a1";
        out.d = out.r = 2;
        out.lattice = a1_lattice();
        out.pair = a1_dual(box_radius);
        if (builtin_polytope) out.polytope = a1_polytope();
    } else if (family.rfind("mdr:", 0) == 0) {
        auto [d, r] = parse_pair(family.substr(4), family);
        out.family = "mdr";
        out.d = d;
        out.r = r;
        out.lattice = mdr_lattice(d, r);
        out.pair = mdr_dual_pair(d, r, box_radius);
        if (builtin_polytope) out.polytope = mdr_gf_polytope(d, r);
    } else if (family.rfind("trivial:", 0) == 0) {
        int r = 0;
        std::istringstream in(family.substr(8));
        if (!(in >> r) || !in.eof()) bad("bad family parameters in '" + family + "'");
        out.family = "trivial";
        out.r = r;
        out.lattice = trivial_lattice(r);
        out.pair = trivial_dual(r, box_radius);
        if (builtin_polytope) {
            // The cube -1 <= x_i <= 1.
            std::vector<PLHalfSpace> hs;
            for (int i = 0; i < r; ++i)
                for (Int s : {1, -1}) {
                    ZVec f(r, 0);
                    f[i] = s;
                    hs.push_back({Point(out.lattice, {f}), -1});
                }
            out.polytope = PLPolytope::build(std::move(hs));
        }
    } else {
        fail(ErrorCode::BadParams, "unknown family '" + family + "' (expected a1, mdr:d,r or trivial:r)");
    }
    if (builtin_polytope) out.kind = "polytope";
    return out;
}

LatticePtr parse_lattice(const json& j, int box_radius, Loaded* fam) {
    if (j.is_object() && j.contains("family")) {
        if (!j.at("family").is_string()) bad("family must be a string");
        Loaded l = load_family(j.at("family").get<std::string>(), false, box_radius);
        if (fam) *fam = l;
        return l.lattice;
    }
    int rank = static_cast<int>(as_int(field(j, "rank")));
    std::vector<std::string> charts;
    for (const auto& c : field(j, "charts")) {
        if (!c.is_string()) bad("chart labels must be strings");
        charts.push_back(c.get<std::string>());
    }
    std::vector<MutationSpec> muts;
    const json& ms = j.contains("mutations") ? j.at("mutations") : json::array();
    for (const auto& m : ms) {
        MutationSpec spec;
        spec.from = field(m, "from").get<std::string>();
        spec.to = field(m, "to").get<std::string>();
        ClassicalFan fan{rank, {}};
        for (const auto& cone : field(m, "cones")) {
            HPolyhedron h(rank);
            for (const auto& n : cone) {
                RVec v = as_rvec(n);
                if (static_cast<int>(v.size()) != rank) bad("cone normal has wrong length");
                h.ineqs.push_back({v, 0});
            }
            fan.cones.emplace_back(h);
        }
        std::vector<ZMat> mats;
        for (const auto& a : field(m, "matrices")) mats.push_back(as_zmat(a));
        if (mats.size() != fan.cones.size()) bad("need one matrix per cone");
        spec.map = PLMap(fan, mats);
        muts.push_back(spec);
    }
    int base = 0;
    if (j.contains("base")) {
        auto label = j.at("base").get<std::string>();
        auto it = std::find(charts.begin(), charts.end(), label);
        if (it == charts.end()) fail(ErrorCode::UnknownChart, "unknown base chart " + label);
        base = static_cast<int>(it - charts.begin());
    }
    if (fam) {
        *fam = Loaded{};
    }
    return PolyptychLattice::make(rank, charts, muts, base);
}

Point parse_point(const json& j, const Loaded& ctx) {
    const auto& lat = ctx.lattice;
    if (j.contains("params")) {
        if (ctx.family != "a1") bad("'params' points are only defined for the a1 family");
        ZVec p = as_zvec(j.at("params"));
        if (p.size() != 3) bad("a1 point needs three parameters (a, b, b')");
        return a1_point(p[0], p[1], p[2]);
    }
    if (j.contains("a") || j.contains("b")) {
        if (ctx.family != "mdr") bad("'a'/'b' points are only defined for the mdr family");
        return mdr_point(ctx.d, ctx.r, as_zvec(field(j, "a")), as_zvec(field(j, "b")));
    }
    const json& fj = field(j, "functionals");
    std::vector<TropExpr> per_chart(lat->num_charts());
    for (int a = 0; a < lat->num_charts(); ++a) {
        const auto& label = lat->charts()[a];
        if (!fj.contains(label)) bad("missing functionals for chart " + label);
        for (const auto& f : fj.at(label)) per_chart[a].members.push_back(as_rvec(f));
    }
    Point p;
    PointCheck pc = is_point(lat, per_chart, &p);
    if (!pc.ok) fail(ErrorCode::NotAPoint, pc.witness);
    return p;
}

PLPolytope parse_polytope(const json& j, const Loaded& ctx) {
    std::vector<PLHalfSpace> hs;
    for (const auto& h : field(j, "half_spaces")) hs.push_back({parse_point(field(h, "point"), ctx), as_int(field(h, "threshold"))});
    return PLPolytope::build(std::move(hs));
}

Loaded load_manifest(const json& j, int box_radius) {
    if (!j.is_object()) bad("manifest must be a JSON object");
    if (!j.contains("version")) bad("missing field 'version'");
    if (as_int(j.at("version")) != kFormatVersion)
        bad("unsupported manifest version " + j.at("version").dump());
    std::string kind = field(j, "kind").get<std::string>();
    Loaded out;
    if (kind == "dual-pair") {
        out = load_family(field(j, "family").get<std::string>(), false, box_radius);
    } else if (kind == "algebra-element") {
        int d = static_cast<int>(as_int(field(j, "d"))), r = static_cast<int>(as_int(field(j, "r")));
        out = load_family("mdr:" + std::to_string(d) + "," + std::to_string(r), false, box_radius);
        if (j.contains("expr")) {
            out.element = parse_algebra(j.at("expr").get<std::string>(), d, r);
        } else {
            AlgebraElement f = AlgebraElement::zero(d, r);
            for (const auto& t : field(j, "terms"))
                f = alg_add(f, alg_scale(AlgebraElement::basis(d, r, {as_zvec(field(t, "u")), as_zvec(field(t, "w"))}),
                                         as_rat(field(t, "coef"))));
            out.element = f;
        }
    } else if (kind == "lattice" || kind == "point" || kind == "polytope") {
        const json& lj = field(j, "lattice");
        Loaded fam;
        LatticePtr lat = parse_lattice(lj, box_radius, &fam);
        out = fam;
        out.lattice = lat;
        if (kind == "point") out.point = parse_point(field(j, "point"), out);
        if (kind == "polytope") out.polytope = parse_polytope(j, out);
    } else {
        bad("unknown manifest kind '" + kind + "'");
    }
    out.kind = kind;
    return out;
}

json emit_lattice(const PolyptychLattice& lat) {
    json j;
    j["rank"] = lat.rank();
    j["charts"] = lat.charts();
    j["base"] = lat.charts()[lat.base()];
    json muts = json::array();
    for (int a = 0; a < lat.num_charts(); ++a)
        for (int b = 0; b < lat.num_charts(); ++b) {
            if (a == b) continue;
            const PLMap& m = lat.mu(a, b);
            json cones = json::array(), mats = json::array();
            for (const auto& c : m.fan().cones) {
                json normals = json::array();
                for (const auto& in : c.h.ineqs) normals.push_back(rvec_json(in.normal));
                for (const auto& eq : c.h.eqs) {
                    normals.push_back(rvec_json(eq.normal));
                    normals.push_back(rvec_json(neg(eq.normal)));
                }
                cones.push_back(normals);
            }
            for (const auto& z : m.matrices()) mats.push_back(z);
            muts.push_back({{"from", lat.charts()[a]}, {"to", lat.charts()[b]}, {"cones", cones}, {"matrices", mats}});
        }
    j["mutations"] = muts;
    return j;
}

json emit_point(const Point& p) {
    json f = json::object();
    const auto& lat = p.lattice();
    for (int a = 0; a < lat->num_charts(); ++a) {
        json members = json::array();
        for (const auto& m : p.chart_expr(a).members) members.push_back(rvec_json(m));
        f[lat->charts()[a]] = members;
    }
    return json{{"functionals", f}};
}

json emit_polytope(const PLPolytope& p) {
    json hs = json::array();
    for (const auto& h : p.half_spaces()) hs.push_back({{"point", emit_point(h.point)}, {"threshold", h.threshold}});
    return json{{"lattice", emit_lattice(*p.lattice())}, {"half_spaces", hs}};
}

json manifest(const std::string& kind, json payload) {
    payload["version"] = kFormatVersion;
    payload["kind"] = kind;
    return payload;
}

}  // namespace plyp::io
