#include "plyp/detrop.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "plyp/error.hpp"

namespace plyp {

namespace {

void same_params(const AlgebraElement& f, const AlgebraElement& g) {
    if (f.d != g.d || f.r != g.r) fail(ErrorCode::ParamMismatch, "algebra elements with different (d, r)");
}

void add_term(AlgebraElement& f, const MdrElement& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = f.terms.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) f.terms.erase(it);
    }
}

// Calls fn(k) for each composition k of n into parts parts.
template <class Fn>
void for_each_composition(Int n, int parts, ZVec& k, int pos, Fn&& fn) {
    if (pos == parts - 1) {
        k[pos] = n;
        fn(k);
        return;
    }
    for (Int a = n; a >= 0; --a) {
        k[pos] = a;
        for_each_composition(n - a, parts, k, pos + 1, fn);
    }
}

mpz_class factorial(Int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

}  // namespace

AlgebraElement AlgebraElement::zero(int d, int r) {
    mdr_lattice(d, r);
    AlgebraElement f;
    f.d = d;
    f.r = r;
    return f;
}

AlgebraElement AlgebraElement::one(int d, int r) { return basis(d, r, {ZVec(d, 0), ZVec(r, 0)}); }

AlgebraElement AlgebraElement::basis(int d, int r, const MdrElement& m) {
    mdr_phi(d, r, 0, m);  // shape and normal-form check
    AlgebraElement f = zero(d, r);
    f.terms[m] = 1;
    return f;
}

AlgebraElement AlgebraElement::x(int d, int r, int i) {
    if (i < 1 || i > d) fail(ErrorCode::BadParams, "x index out of range");
    MdrElement m{ZVec(d, 0), ZVec(r, 0)};
    m.u[i - 1] = 1;
    return basis(d, r, m);
}

AlgebraElement AlgebraElement::t(int d, int r, int j) {
    if (j < 1 || j > r) fail(ErrorCode::BadParams, "t index out of range");
    MdrElement m{ZVec(d, 0), ZVec(r, 0)};
    m.w[j - 1] = 1;
    return basis(d, r, m);
}

AlgebraElement alg_add(const AlgebraElement& f, const AlgebraElement& g) {
    same_params(f, g);
    AlgebraElement h = f;
    for (const auto& [m, c] : g.terms) add_term(h, m, c);
    return h;
}

AlgebraElement alg_scale(const AlgebraElement& f, const Rat& c) {
    AlgebraElement h = AlgebraElement::zero(f.d, f.r);
    if (c == 0) return h;
    for (const auto& [m, a] : f.terms) h.terms[m] = a * c;
    return h;
}

AlgebraElement alg_mul(const AlgebraElement& f, const AlgebraElement& g) {
    same_params(f, g);
    AlgebraElement h = AlgebraElement::zero(f.d, f.r);
    ZVec k(f.r, 0);
    for (const auto& [m1, c1] : f.terms)
        for (const auto& [m2, c2] : g.terms) {
            ZVec U(f.d), W(f.r);
            for (int i = 0; i < f.d; ++i) U[i] = m1.u[i] + m2.u[i];
            for (int j = 0; j < f.r; ++j) W[j] = m1.w[j] + m2.w[j];
            Int lo = *std::min_element(U.begin(), U.end());
            for (auto& x : U) x -= lo;
            // (t_1 + ... + t_r)^lo expanded multinomially.
            mpz_class top = factorial(lo);
            for_each_composition(lo, f.r, k, 0, [&](const ZVec& parts) {
                mpz_class coef = top;
                MdrElement m{U, W};
                for (int j = 0; j < f.r; ++j) {
                    coef /= factorial(parts[j]);
                    m.w[j] += parts[j];
                }
                add_term(h, m, c1 * c2 * Rat(coef));
            });
        }
    return h;
}

AlgebraElement alg_pow(const AlgebraElement& f, int k) {
    if (k < 0) fail(ErrorCode::NegativeScalar, "negative exponent");
    AlgebraElement h = AlgebraElement::one(f.d, f.r);
    for (int i = 0; i < k; ++i) h = alg_mul(h, f);
    return h;
}

namespace {

class Parser {
public:
    Parser(const std::string& s, int d, int r) : s_(s), d_(d), r_(r) {}

    AlgebraElement parse() {
        AlgebraElement f = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected character");
        return f;
    }

private:
    const std::string& s_;
    int d_, r_;
    std::size_t pos_ = 0;

    [[noreturn]] void error(const std::string& msg) {
        fail(ErrorCode::Parse, msg + " at line 1, column " + std::to_string(pos_ + 1));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    Int number() {
        skip();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) error("expected a number");
        Int v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_++] - '0');
            if (v > (Int(1) << 40)) error("number too large");
        }
        return v;
    }
    AlgebraElement expr() {
        AlgebraElement f = AlgebraElement::zero(d_, r_);
        bool neg = eat('-');
        if (!neg) eat('+');
        for (;;) {
            AlgebraElement t = term();
            f = alg_add(f, neg ? alg_scale(t, -1) : t);
            if (eat('+'))
                neg = false;
            else if (eat('-'))
                neg = true;
            else
                return f;
        }
    }
    AlgebraElement term() {
        AlgebraElement f = factor();
        while (eat('*')) f = alg_mul(f, factor());
        return f;
    }
    AlgebraElement factor() {
        AlgebraElement f = atom();
        if (!eat('^')) return f;
        if (!eat('-')) return alg_pow(f, static_cast<int>(number()));
        // Only t-monomials are invertible.
        std::size_t at = pos_;
        Int e = number();
        if (f.terms.size() != 1 || std::any_of(f.terms.begin()->first.u.begin(), f.terms.begin()->first.u.end(),
                                               [](Int x) { return x != 0; })) {
            pos_ = at;
            error("negative power of a non-invertible element");
        }
        MdrElement m = f.terms.begin()->first;
        Rat c = f.terms.begin()->second;
        for (auto& w : m.w) w = -w;
        AlgebraElement inv = AlgebraElement::zero(d_, r_);
        inv.terms[m] = 1 / c;
        return alg_pow(inv, static_cast<int>(e));
    }
    AlgebraElement atom() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            AlgebraElement f = expr();
            if (!eat(')')) error("expected ')'");
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return alg_scale(AlgebraElement::one(d_, r_), Rat(static_cast<long>(number())));
        if (c == 'x' || c == 't') {
            std::size_t at = pos_++;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) error("expected an index");
            Int i = number();
            Int bound = c == 'x' ? d_ : r_;
            if (i < 1 || i > bound) {
                pos_ = at;
                error(std::string("index out of range for ") + c);
            }
            return c == 'x' ? AlgebraElement::x(d_, r_, static_cast<int>(i)) : AlgebraElement::t(d_, r_, static_cast<int>(i));
        }
        error("unexpected character");
    }
};

std::string monomial(const MdrElement& m) {
    std::string out;
    auto put = [&](char v, std::size_t i, Int e) {
        if (e == 0) return;
        if (!out.empty()) out += "*";
        out += v + std::to_string(i + 1);
        if (e != 1) out += "^" + std::to_string(e);
    };
    for (std::size_t i = 0; i < m.u.size(); ++i) put('x', i, m.u[i]);
    for (std::size_t j = 0; j < m.w.size(); ++j) put('t', j, m.w[j]);
    return out;
}

}  // namespace

AlgebraElement parse_algebra(const std::string& expr, int d, int r) {
    mdr_lattice(d, r);
    return Parser(expr, d, r).parse();
}

std::string to_string(const AlgebraElement& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        const auto& [m, c] = *it;
        bool neg = c < 0;
        Rat a = neg ? Rat(-c) : c;
        std::string mono = monomial(m);
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        if (mono.empty())
            out += a.get_str();
        else if (a == 1)
            out += mono;
        else
            out += a.get_str() + "*" + mono;
    }
    return out;
}

SElem valuate(const AlgebraElement& f) {
    LatticePtr lat = mdr_lattice(f.d, f.r);
    mdr_dual_pair(f.d, f.r);
    std::vector<ZVec> keys;
    for (const auto& [m, c] : f.terms) keys.push_back(mdr_phi(f.d, f.r, 0, m));
    return SElem::from_set(lat, keys);
}

std::vector<MdrElement> default_rho(int d, int r, int alpha) {
    if (alpha < 0 || alpha >= r) fail(ErrorCode::UnknownChart, "chart index out of range");
    std::vector<MdrElement> rho;
    for (int j = 0; j < d; ++j) {
        MdrElement n{ZVec(r, 0), ZVec(d, 0)};
        n.w[j] = 1;
        rho.push_back(n);
    }
    for (int l = 0; l < r; ++l) {
        if (l == alpha) continue;
        MdrElement n{ZVec(r, 0), ZVec(d, 0)};
        n.u[l] = 1;
        rho.push_back(n);
    }
    return rho;
}

namespace {

std::vector<ZVec> rho_bases(int d, int r, const std::vector<MdrElement>& ns) {
    std::vector<ZVec> out;
    for (const auto& n : ns) out.push_back(mdr_phi(r, d, 0, n));
    return out;
}

ZVec tuple_of(const DualPair& pair, int d, int r, const MdrElement& m, const std::vector<ZVec>& nb) {
    ZVec mb = mdr_phi(d, r, 0, m);
    ZVec out;
    for (const auto& n : nb) out.push_back(pair.pair(mb, n));
    return out;
}

}  // namespace

ZVec full_rank_valuation(const AlgebraElement& f, int alpha, const std::vector<MdrElement>& rho) {
    int d = f.d, r = f.r;
    if (alpha < 0 || alpha >= r) fail(ErrorCode::UnknownChart, "chart index out of range");
    if (static_cast<int>(rho.size()) != d + r - 1) fail(ErrorCode::BadBasis, "basis needs d + r - 1 vectors");
    for (const auto& n : rho) {
        if (static_cast<int>(n.u.size()) != r || static_cast<int>(n.w.size()) != d)
            fail(ErrorCode::BadBasis, "basis vector has wrong shape");
        if (n.u[alpha] != 0) fail(ErrorCode::BadBasis, "basis vector outside the cone of chart " + std::to_string(alpha + 1));
    }
    std::vector<ZVec> nb;
    try {
        nb = rho_bases(d, r, rho);
    } catch (const Error& e) {
        fail(ErrorCode::BadBasis, e.what());
    }
    RMat m;
    for (const auto& n : nb) m.push_back(to_rvec(n));
    if (rank(m) != d + r - 1) fail(ErrorCode::BadBasis, "basis vectors are linearly dependent");
    if (f.is_zero()) fail(ErrorCode::BadParams, "valuation of zero is infinite");
    DualPtr pair = mdr_dual_pair(d, r);
    ZVec best;
    for (const auto& [key, c] : f.terms) {
        ZVec t = tuple_of(*pair, d, r, key, nb);
        if (best.empty() || t < best) best = t;
    }
    return best;
}

ZVec full_rank_valuation(const AlgebraElement& f, int alpha) {
    return full_rank_valuation(f, alpha, default_rho(f.d, f.r, alpha));
}

ZVec circledast(const AlgebraElement& f, const std::vector<MdrElement>& ns) {
    if (f.is_zero()) fail(ErrorCode::BadParams, "valuation of zero is infinite");
    DualPtr pair = mdr_dual_pair(f.d, f.r);
    auto nb = rho_bases(f.d, f.r, ns);
    ZVec best;
    for (const auto& [key, c] : f.terms) {
        ZVec t = tuple_of(*pair, f.d, f.r, key, nb);
        if (best.empty() || t < best) best = t;
    }
    return best;
}

Int boxplus(const AlgebraElement& f, const std::vector<MdrElement>& ns) {
    if (f.is_zero()) fail(ErrorCode::BadParams, "valuation of zero is infinite");
    DualPtr pair = mdr_dual_pair(f.d, f.r);
    auto nb = rho_bases(f.d, f.r, ns);
    bool first = true;
    Int best = 0;
    for (const auto& [key, c] : f.terms) {
        ZVec t = tuple_of(*pair, f.d, f.r, key, nb);
        Int s = std::accumulate(t.begin(), t.end(), Int(0));
        if (first || s < best) best = s;
        first = false;
    }
    return best;
}

std::map<Int, Int> graded_dims_boxplus(int d, int r, const std::vector<MdrElement>& basis,
                                       const std::vector<MdrElement>& ns) {
    std::map<Int, Int> out;
    for (const auto& m : basis) ++out[boxplus(AlgebraElement::basis(d, r, m), ns)];
    return out;
}

std::map<Int, Int> graded_dims_circledast(int d, int r, const std::vector<MdrElement>& basis,
                                          const std::vector<MdrElement>& ns) {
    std::map<ZVec, Int> tuples;
    for (const auto& m : basis) ++tuples[circledast(AlgebraElement::basis(d, r, m), ns)];
    std::map<Int, Int> out;
    for (const auto& [t, c] : tuples) out[std::accumulate(t.begin(), t.end(), Int(0))] += c;
    return out;
}

std::vector<MdrElement> support(const AlgebraElement& f) {
    std::vector<MdrElement> out;
    for (const auto& [m, c] : f.terms) out.push_back(m);
    return out;
}

PConv support_hull(const AlgebraElement& f) {
    std::vector<ZVec> keys;
    for (const auto& [m, c] : f.terms) keys.push_back(mdr_phi(f.d, f.r, 0, m));
    return PConv(mdr_dual_pair(f.d, f.r), keys);
}

std::vector<MdrElement> level_space(const PLPolytope& p, int d, int r, Int k) {
    if (p.lattice() != mdr_lattice(d, r)) fail(ErrorCode::ParamMismatch, "polytope is not over M_{d,r}");
    for (const auto& h : p.half_spaces())
        if (h.threshold >= 0) fail(ErrorCode::OriginNotInterior, "level spaces need all thresholds negative");
    std::vector<MdrElement> out;
    for (const auto& e : pl_lattice_points(scale_polytope(p, k))) out.push_back(mdr_coords(d, r, e));
    std::sort(out.begin(), out.end());
    return out;
}

NoBodyReport no_body_check(const PLPolytope& p, int d, int r, int alpha, Int k_max) {
    NoBodyReport rep;
    for (Int k = 0; k <= k_max; ++k) {
        NoBodyLevel lv;
        lv.k = k;
        std::set<ZVec> values;
        for (const auto& m : level_space(p, d, r, k))
            values.insert(full_rank_valuation(AlgebraElement::basis(d, r, m), alpha));
        PLPolytope kp = scale_polytope(p, k);
        auto pts = lattice_points(kp.chart_image(alpha));
        std::set<ZVec> expect(pts.begin(), pts.end());
        lv.values = values.size();
        lv.lattice_points = expect.size();
        lv.ok = values == expect;
        rep.ok = rep.ok && lv.ok;
        rep.levels.push_back(lv);
    }
    return rep;
}

}  // namespace plyp
