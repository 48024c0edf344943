#pragma once

#include <stdexcept>
#include <string>

namespace plyp {

enum class ErrorCode {
    Unbounded,
    DimensionMismatch,
    Tie,
    IncompatibleFans,
    UnknownChart,
    NegativeScalar,
    NotACone,
    NoDualRegistered,
    NotCompact,
    OriginNotInterior,
    NotAPoint,
    BadParams,
    ParamMismatch,
    BadBasis,
    VerificationFailure,
    Parse,
};

// Stable identifier used in CLI reports ("E_UNBOUNDED", ...).
const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

}  // namespace plyp
