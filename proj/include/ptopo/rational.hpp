#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptopo {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
// High-precision float used wherever an exact value does not exist
// (k-volumes, masses). 40 decimal digits ~ 133-bit mantissa.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>>;

/// Errors are classified so the CLI can map them onto exit codes.
struct Error : std::runtime_error {
    enum class Kind { Input, Guard, Internal };
    Kind kind;
    Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

[[noreturn]] inline void fail_input(const std::string& msg) {
    throw Error(Error::Kind::Input, msg);
}
[[noreturn]] inline void fail_guard(const std::string& msg) {
    throw Error(Error::Kind::Guard, msg);
}
[[noreturn]] inline void fail_internal(const std::string& msg) {
    throw Error(Error::Kind::Internal, msg);
}

inline void require_input(bool ok, const std::string& msg) {
    if (!ok) fail_input(msg);
}
inline void require_internal(bool ok, const std::string& msg) {
    if (!ok) fail_internal(msg);
}

/// Parse "p/q" or "p" (decimal strings like "0.25" are accepted too).
Rat parse_rat(const std::string& s);

/// Canonical "p/q" (plain "p" when the denominator is 1).
std::string rat_str(const Rat& q);

inline Real to_real(const Rat& q) { return Real(q); }

/// Fixed 17-significant-digit formatting used for all float output.
std::string real_str17(const Real& x);
std::string double_str17(double x);

/// Nearest rational with denominator 2^bits. Used to freeze float
/// objectives into exact arithmetic.
Rat rationalize(const Real& x, unsigned bits = 96);

using RatPoint = std::vector<Rat>;

} // namespace ptopo
