/**
 * @file rational.hpp
 * @brief Exact rational scalars (GMP-backed) and small helpers.
 *
 * All exact computations in the library run over mpq_class. Values are kept
 * canonical by GMP (lowest terms, positive denominator).
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sovlab {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "-p" or "p/q". Used by the JSON config layer.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rat_from_string: empty string");
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("rat_from_string: cannot parse '" + s + "'");
    r.canonicalize();
    if (r.get_den() == 0) throw std::invalid_argument("rat_from_string: zero denominator in '" + s + "'");
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline long rat_to_long(const Rat& r) {
    if (!is_integer(r) || !r.get_num().fits_slong_p())
        throw std::domain_error("rat_to_long: " + rat_to_string(r) + " is not a machine integer");
    return r.get_num().get_si();
}

inline Rat pow_rat(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (base == 0) throw std::domain_error("pow_rat: 0 to negative power");
        return Rat(1) / pow_rat(base, -e);
    }
    Rat acc(1), b = base;
    long k = e;
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

inline Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace sovlab
