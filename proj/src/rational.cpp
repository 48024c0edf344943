#include "plyp/rational.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "plyp/error.hpp"

namespace plyp {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::Unbounded: return "E_UNBOUNDED";
        case ErrorCode::DimensionMismatch: return "E_DIMENSION_MISMATCH";
        case ErrorCode::Tie: return "E_TIE";
        case ErrorCode::IncompatibleFans: return "E_INCOMPATIBLE_FANS";
        case ErrorCode::UnknownChart: return "E_UNKNOWN_CHART";
        case ErrorCode::NegativeScalar: return "E_NEGATIVE_SCALAR";
        case ErrorCode::NotACone: return "E_NOT_A_CONE";
        case ErrorCode::NoDualRegistered: return "E_NO_DUAL_REGISTERED";
        case ErrorCode::NotCompact: return "E_NOT_COMPACT";
        case ErrorCode::OriginNotInterior: return "E_ORIGIN_NOT_INTERIOR";
        case ErrorCode::NotAPoint: return "E_NOT_A_POINT";
        case ErrorCode::BadParams: return "E_BAD_PARAMS";
        case ErrorCode::ParamMismatch: return "E_PARAM_MISMATCH";
        case ErrorCode::BadBasis: return "E_BAD_BASIS";
        case ErrorCode::VerificationFailure: return "E_VERIFICATION_FAILURE";
        case ErrorCode::Parse: return "E_PARSE";
    }
    return "E_UNKNOWN";
}

RVec to_rvec(const ZVec& v) {
    RVec r;
    r.reserve(v.size());
    for (Int x : v) r.emplace_back(static_cast<long>(x));
    return r;
}

bool is_integral(const Rat& x) { return x.get_den() == 1; }

bool is_integral(const RVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return is_integral(x); });
}

ZVec to_zvec(const RVec& v) {
    ZVec r;
    r.reserve(v.size());
    for (const Rat& x : v) {
        if (!is_integral(x) || !x.get_num().fits_slong_p())
            fail(ErrorCode::DimensionMismatch, "non-integral coordinate " + to_string(x));
        r.push_back(x.get_num().get_si());
    }
    return r;
}

static void check_dims(std::size_t a, std::size_t b) {
    if (a != b) fail(ErrorCode::DimensionMismatch, "dimension " + std::to_string(a) + " vs " + std::to_string(b));
}

Rat dot(const RVec& a, const RVec& b) {
    check_dims(a.size(), b.size());
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    return s;
}

Rat dot(const RVec& a, const ZVec& b) {
    check_dims(a.size(), b.size());
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] != 0 && sgn(a[i]) != 0) s += a[i] * static_cast<long>(b[i]);
    return s;
}

RVec add(const RVec& a, const RVec& b) {
    check_dims(a.size(), b.size());
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RVec sub(const RVec& a, const RVec& b) {
    check_dims(a.size(), b.size());
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RVec scale(const RVec& a, const Rat& s) {
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

RVec neg(const RVec& a) { return scale(a, Rat(-1)); }

bool is_zero(const RVec& a) {
    return std::all_of(a.begin(), a.end(), [](const Rat& x) { return sgn(x) == 0; });
}

RVec unit(int n, int i) {
    RVec r(n, Rat(0));
    r[i] = 1;
    return r;
}

RVec zeros(int n) { return RVec(n, Rat(0)); }

RMat to_rmat(const ZMat& m) {
    RMat r;
    for (const auto& row : m) r.push_back(to_rvec(row));
    return r;
}

RMat identity(int n) {
    RMat r(n, RVec(n, Rat(0)));
    for (int i = 0; i < n; ++i) r[i][i] = 1;
    return r;
}

RMat transpose(const RMat& m) {
    if (m.empty()) return {};
    RMat t(m[0].size(), RVec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

RMat matmul(const RMat& a, const RMat& b) {
    if (a.empty()) return {};
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    check_dims(a[0].size(), k);
    RMat c(n, RVec(m, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (sgn(a[i][l]) == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

RVec matvec(const RMat& a, const RVec& x) {
    RVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], x);
    return r;
}

RVec vecmat(const RVec& x, const RMat& a) {
    check_dims(x.size(), a.size());
    std::size_t m = a.empty() ? 0 : a[0].size();
    RVec r(m, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < m; ++j) r[j] += x[i] * a[i][j];
    }
    return r;
}

ZVec matvec(const ZMat& a, const ZVec& x) {
    ZVec r(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        check_dims(a[i].size(), x.size());
        Int s = 0;
        for (std::size_t j = 0; j < x.size(); ++j) s += a[i][j] * x[j];
        r[i] = s;
    }
    return r;
}

// Row-reduce in place; returns pivot columns.
static std::vector<int> rref(RMat& m, int ncols) {
    std::vector<int> piv;
    int row = 0;
    int nrows = static_cast<int>(m.size());
    for (int col = 0; col < ncols && row < nrows; ++col) {
        int sel = -1;
        for (int i = row; i < nrows; ++i)
            if (sgn(m[i][col]) != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(m[row], m[sel]);
        Rat p = m[row][col];
        int width = static_cast<int>(m[row].size());
        for (int j = col; j < width; ++j) m[row][j] /= p;
        for (int i = 0; i < nrows; ++i) {
            if (i == row || sgn(m[i][col]) == 0) continue;
            Rat f = m[i][col];
            for (int j = col; j < width; ++j)
                if (sgn(m[row][j]) != 0) m[i][j] -= f * m[row][j];
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

int rank(RMat m) {
    if (m.empty()) return 0;
    int nc = static_cast<int>(m[0].size());
    return static_cast<int>(rref(m, nc).size());
}

Rat det(RMat m) {
    int n = static_cast<int>(m.size());
    Rat d = 1;
    for (int col = 0; col < n; ++col) {
        int sel = -1;
        for (int i = col; i < n; ++i)
            if (sgn(m[i][col]) != 0) { sel = i; break; }
        if (sel < 0) return Rat(0);
        if (sel != col) { std::swap(m[sel], m[col]); d = -d; }
        d *= m[col][col];
        for (int i = col + 1; i < n; ++i) {
            if (sgn(m[i][col]) == 0) continue;
            Rat f = m[i][col] / m[col][col];
            for (int j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return d;
}

std::optional<RMat> inverse(const RMat& m) {
    int n = static_cast<int>(m.size());
    RMat aug(n, RVec(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        check_dims(m[i].size(), n);
        for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    auto piv = rref(aug, n);
    if (static_cast<int>(piv.size()) < n) return std::nullopt;
    RMat inv(n, RVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

std::optional<RVec> solve_unique(const RMat& a, const RVec& b) {
    if (a.empty()) return std::nullopt;
    int nc = static_cast<int>(a[0].size());
    RMat aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto piv = rref(aug, nc + 1);
    if (!piv.empty() && piv.back() == nc) return std::nullopt;  // inconsistent
    if (static_cast<int>(piv.size()) < nc) return std::nullopt;  // not unique
    RVec x(nc);
    for (int i = 0; i < nc; ++i) x[i] = aug[i][nc];
    return x;
}

RMat nullspace(const RMat& a, int ncols) {
    RMat m = a;
    auto piv = rref(m, ncols);
    std::vector<bool> is_piv(ncols, false);
    for (int p : piv) is_piv[p] = true;
    RMat basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        RVec v(ncols, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m[i][f];
        basis.push_back(v);
    }
    return basis;
}

ZVec primitive(const RVec& v) {
    mpz_class l = 1;
    for (const Rat& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> z;
    mpz_class g = 0;
    for (const Rat& x : v) {
        mpz_class t = x.get_num() * (l / x.get_den());
        z.push_back(t);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.get_mpz_t());
    }
    ZVec out;
    for (auto& t : z) {
        if (g != 0) t /= g;
        out.push_back(t.get_si());
    }
    return out;
}

RVec normalize_direction(const RVec& v) {
    for (const Rat& x : v)
        if (sgn(x) != 0) return scale(v, Rat(1) / abs(x));
    return v;
}

std::string to_string(const Rat& x) { return x.get_str(); }

std::string to_string(const RVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ")";
    return os.str();
}

std::string to_string(const ZVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

bool RVecLess::operator()(const RVec& a, const RVec& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Int floor_int(const Rat& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q.get_si();
}

Int ceil_int(const Rat& x) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q.get_si();
}

}  // namespace plyp
