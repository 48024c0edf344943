#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace plyp {

using Rat = mpq_class;
using RVec = std::vector<Rat>;
using RMat = std::vector<RVec>;
using Int = std::int64_t;
using ZVec = std::vector<Int>;
using ZMat = std::vector<ZVec>;

RVec to_rvec(const ZVec& v);
// Throws if some entry is not an integer.
ZVec to_zvec(const RVec& v);
bool is_integral(const RVec& v);
bool is_integral(const Rat& x);

Rat dot(const RVec& a, const RVec& b);
Rat dot(const RVec& a, const ZVec& b);
RVec add(const RVec& a, const RVec& b);
RVec sub(const RVec& a, const RVec& b);
RVec scale(const RVec& a, const Rat& s);
RVec neg(const RVec& a);
bool is_zero(const RVec& a);
RVec unit(int n, int i);
RVec zeros(int n);

RMat to_rmat(const ZMat& m);
RMat identity(int n);
RMat transpose(const RMat& m);
RMat matmul(const RMat& a, const RMat& b);
RVec matvec(const RMat& a, const RVec& x);
// Row vector times matrix: y^T = x^T A.
RVec vecmat(const RVec& x, const RMat& a);
ZVec matvec(const ZMat& a, const ZVec& x);

int rank(RMat m);
Rat det(RMat m);
std::optional<RMat> inverse(const RMat& m);
// Unique solution of A x = b for square or overdetermined consistent systems.
std::optional<RVec> solve_unique(const RMat& a, const RVec& b);
// Basis of {x : A x = 0}; ncols must be given for empty A.
RMat nullspace(const RMat& a, int ncols);

// Scale a nonzero rational vector to the primitive integer vector on its ray.
ZVec primitive(const RVec& v);
// Canonical positive rescaling: first nonzero entry has absolute value 1.
RVec normalize_direction(const RVec& v);

std::string to_string(const Rat& x);
std::string to_string(const RVec& v);
std::string to_string(const ZVec& v);

struct RVecLess {
    bool operator()(const RVec& a, const RVec& b) const;
};

Int floor_int(const Rat& x);
Int ceil_int(const Rat& x);

}  // namespace plyp
