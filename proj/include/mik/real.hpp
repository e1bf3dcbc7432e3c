#pragma once

// Numeric foundation: a 256-bit binary float for angle/mean-index arithmetic,
// a 4x wider type for guarded re-evaluation near ceiling discontinuities,
// exact rationals/integers for everything combinatorial.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/math/constants/constants.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mik {

namespace mp = boost::multiprecision;

using real_t = mp::number<mp::cpp_bin_float<256, mp::backends::digit_base_2>, mp::et_off>;
using wide_t = mp::number<mp::cpp_bin_float<1024, mp::backends::digit_base_2>, mp::et_off>;
using rational_t = mp::cpp_rational;
using integer_t = mp::cpp_int;

inline constexpr unsigned real_significand_bits = 256;

inline const real_t& pi() {
    static const real_t v = boost::math::constants::pi<real_t>();
    return v;
}
inline const real_t& two_pi() {
    static const real_t v = 2 * boost::math::constants::pi<real_t>();
    return v;
}
inline const wide_t& pi_wide() {
    static const wide_t v = boost::math::constants::pi<wide_t>();
    return v;
}

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct hypothesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct oracle_inconclusive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// floor of a positive real with certified distance from the integer lattice.
// `x` must be exactly representable intent: we guard against values within
// `guard` of an integer by re-evaluating the supplied wide expression.
struct guarded_floor_result {
    long long floor_value;
    real_t frac;  // x - floor(x), certified in (guard, 1-guard)
};

inline const real_t& integer_guard() {
    static const real_t g = real_t("1e-20");
    return g;
}

template <typename WideEval>
guarded_floor_result guarded_floor(const real_t& x, WideEval&& wide_eval) {
    real_t f = floor(x);
    real_t frac = x - f;
    const real_t& g = integer_guard();
    if (frac > g && frac < 1 - g) {
        return {static_cast<long long>(f), frac};
    }
    // escalate once at 4x precision
    wide_t xw = wide_eval();
    wide_t fw = floor(xw);
    wide_t fracw = xw - fw;
    wide_t gw(g);
    if (fracw > gw && fracw < 1 - gw) {
        return {static_cast<long long>(fw), real_t(fracw)};
    }
    throw precision_error(
        "value within 1e-20 of an integer after precision escalation");
}

inline long long checked_ll(const integer_t& v, const char* what) {
    if (v > integer_t((std::numeric_limits<long long>::max)()) ||
        v < integer_t((std::numeric_limits<long long>::min)())) {
        throw domain_error(std::string(what) + ": integer out of 64-bit range");
    }
    return static_cast<long long>(v);
}

inline long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { long long t = a % b; a = b; b = t; }
    return a;
}

}  // namespace mik
