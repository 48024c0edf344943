#pragma once

// Random generators and brute-force oracles shared by the test binaries.
// Oracles use closed formulas or plain enumeration, never the library's PL machinery.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "plyp/detrop.hpp"

namespace plyp::testing {

inline Int uniform(std::mt19937& g, Int lo, Int hi) { return std::uniform_int_distribution<Int>(lo, hi)(g); }

inline ZVec random_zvec(std::mt19937& g, int n, Int lo, Int hi) {
    ZVec v(n);
    for (auto& x : v) x = uniform(g, lo, hi);
    return v;
}

/// Normal-form element of M_{d,r}: min(u) = 0, entries of w in [-radius, radius].
inline MdrElement random_mdr(std::mt19937& g, int d, int r, Int radius) {
    MdrElement m{random_zvec(g, d, 0, radius), random_zvec(g, r, -radius, radius)};
    Int lo = *std::min_element(m.u.begin(), m.u.end());
    for (auto& x : m.u) x -= lo;
    return m;
}

/// Random element of A_{d,r} with 1..max_terms basis elements and coefficients in [-3, 3] \ {0}.
inline AlgebraElement random_algebra(std::mt19937& g, int d, int r, Int radius, int max_terms) {
    AlgebraElement f = AlgebraElement::zero(d, r);
    int n = static_cast<int>(uniform(g, 1, max_terms));
    while (static_cast<int>(f.terms.size()) < n) {
        Int c = uniform(g, 1, 3) * (uniform(g, 0, 1) ? 1 : -1);
        f = alg_add(f, alg_scale(AlgebraElement::basis(d, r, random_mdr(g, d, r, radius)), Rat(static_cast<long>(c))));
    }
    return f;
}

/// Random T_{d,r} tuple (a, b) with sum(a) = min(b).
inline std::pair<ZVec, ZVec> random_tdr(std::mt19937& g, int d, int r, Int radius) {
    ZVec a = random_zvec(g, d, -radius, radius);
    Int s = std::accumulate(a.begin(), a.end(), Int(0));
    ZVec b = random_zvec(g, r, s, s + radius);
    b[uniform(g, 0, r - 1)] = s;
    return {a, b};
}

/// Pairing of (u, w) in M_{d,r} with (y, z) in M_{r,d}: <w,y> + <u,z> + <1,z><1,w>.
inline Int mdr_pairing_formula(const MdrElement& m, const MdrElement& n) {
    Int s = 0;
    for (std::size_t i = 0; i < m.w.size(); ++i) s += m.w[i] * n.u[i];
    for (std::size_t i = 0; i < m.u.size(); ++i) s += m.u[i] * n.w[i];
    Int sz = std::accumulate(n.w.begin(), n.w.end(), Int(0)), sw = std::accumulate(m.w.begin(), m.w.end(), Int(0));
    return s + sz * sw;
}

/// Normal-form elements of M_{d,r} in the level-k polytope, by scanning a box.
/// The half-spaces come from f_{a,b}(u, w) = <a,u> + <b,w> with (a, b) = (z, y + <1,z>1) for the generators (y, z).
inline std::set<MdrElement> mdr_level_oracle(int d, int r, Int k) {
    std::vector<std::pair<ZVec, ZVec>> fs;
    auto add_gen = [&](const ZVec& y, const ZVec& z) {
        Int s = std::accumulate(z.begin(), z.end(), Int(0));
        ZVec b = y;
        for (auto& x : b) x += s;
        fs.push_back({z, b});
    };
    for (int j = 0; j < r; ++j) {
        ZVec y(r, 0), z(d, 0);
        y[j] = 1;
        add_gen(y, z);
    }
    for (int j = 0; j < d; ++j)
        for (Int s : {1, -1}) {
            ZVec y(r, 0), z(d, 0);
            z[j] = s;
            add_gen(y, z);
        }
    Int bu = 2 * k, bw = (r + 2) * k + 1;
    std::set<MdrElement> out;
    ZVec u(d, 0), w(r, -bw);
    // Odometer over u in [0, bu]^d and w in [-bw, bw]^r.
    std::vector<Int> idx(d + r, 0);
    for (;;) {
        for (int i = 0; i < d; ++i) u[i] = idx[i];
        for (int j = 0; j < r; ++j) w[j] = idx[d + j] - bw;
        if (*std::min_element(u.begin(), u.end()) == 0) {
            bool in = true;
            for (const auto& [a, b] : fs) {
                Int v = 0;
                for (int i = 0; i < d; ++i) v += a[i] * u[i];
                for (int j = 0; j < r; ++j) v += b[j] * w[j];
                if (v < -k) {
                    in = false;
                    break;
                }
            }
            if (in) out.insert({u, w});
        }
        int p = d + r - 1;
        while (p >= 0) {
            Int lim = p < d ? bu : 2 * bw;
            if (idx[p] < lim) {
                ++idx[p];
                break;
            }
            idx[p] = 0;
            --p;
        }
        if (p < 0) break;
    }
    return out;
}

/// Determinant by cofactor expansion over the integers.
inline Int det_cofactor(const ZMat& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Int s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        ZMat minor;
        for (std::size_t i = 1; i < n; ++i) {
            ZVec row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[i][c]);
            minor.push_back(row);
        }
        s += (j % 2 ? -1 : 1) * m[0][j] * det_cofactor(minor);
    }
    return s;
}

/// Every square minor in {-1, 0, 1}, by enumerating row and column subsets.
inline bool tu_oracle(const ZMat& a) {
    int rows = static_cast<int>(a.size()), cols = static_cast<int>(a[0].size());
    for (int k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<int> rsel(rows, 0), csel(cols, 0);
        std::fill(rsel.end() - k, rsel.end(), 1);
        do {
            std::fill(csel.begin(), csel.end(), 0);
            std::fill(csel.end() - k, csel.end(), 1);
            do {
                ZMat sub;
                for (int i = 0; i < rows; ++i) {
                    if (!rsel[i]) continue;
                    ZVec row;
                    for (int j = 0; j < cols; ++j)
                        if (csel[j]) row.push_back(a[i][j]);
                    sub.push_back(row);
                }
                Int dv = det_cofactor(sub);
                if (dv < -1 || dv > 1) return false;
            } while (std::next_permutation(csel.begin(), csel.end()));
        } while (std::next_permutation(rsel.begin(), rsel.end()));
    }
    return true;
}

/// pi_1 lattice points of the running-example polytope, from its three chart-1 inequalities.
inline std::set<ZVec> a1_polytope_oracle(Int k) {
    std::set<ZVec> out;
    for (Int x = -5 * k - 1; x <= 5 * k + 1; ++x)
        for (Int y = -5 * k - 1; y <= 5 * k + 1; ++y) {
            // p1 = -x + min(0, y), p2 = y, p3 = x - y.
            bool in = -x + std::min<Int>(0, y) >= -k && y >= -k && x - y >= -k;
            if (in) out.insert({x, y});
        }
    return out;
}

}  // namespace plyp::testing
