/**
 * @file numeric.hpp
 * @brief Arbitrary-precision real/complex scalars and the tolerance policy.
 *
 * Numeric scalars are MPFR floats with runtime-selectable decimal precision;
 * complex arithmetic is layered on top through boost::multiprecision. Every
 * tolerance in the numeric layer is derived from the configured digit count
 * in one place (Policy), never hard-coded at call sites.
 */
#pragma once

#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "sovlab/rational.hpp"

namespace sovlab {

namespace mp = boost::multiprecision;

using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using Complex = mp::number<mp::complex_adaptor<mp::mpfr_float_backend<0>>, mp::et_off>;

/// Sets the working decimal precision process-wide. Call before any Real/Complex is made.
inline void set_working_precision(unsigned digits) {
    // Real and Complex share the mpfr backend, so one static covers both.
    Real::default_precision(digits);
    mp::mpfr_float::default_precision(digits);
}

inline Real real_from_rat(const Rat& r) {
    Real num(r.get_num().get_str());
    Real den(r.get_den().get_str());
    return num / den;
}

inline Complex complex_from_rat(const Rat& r) { return Complex(real_from_rat(r)); }

inline Real abs_c(const Complex& z) { return abs(z); }

inline Real pow10(long e) { return pow(Real(10), (int)e); }

/// Principal-branch power base^e for rational exponent e.
inline Complex cpow(const Complex& base, const Rat& e) {
    return exp(complex_from_rat(e) * log(base));
}

/**
 * Tolerance policy: all thresholds are 10^(offset - digits) for documented
 * offsets, so raising the precision tightens every check uniformly.
 */
struct Policy {
    unsigned digits = 60;

    Real tol(long offset) const { return pow10(offset - (long)digits); }

    /// Eigensolver residual / bi-orthogonality target (1e-30 at 60 digits).
    Real eigen_tol() const { return tol((long)digits / 2); }
    /// Acceptance of a Baxter-equation solution (1e-50 at 60 digits).
    Real baxter_tol() const { return tol(10); }
    /// Identity checks at reporting tolerance (1e-25 at 60 digits).
    Real check_tol() const { return tol(35); }
    /// Nearly-equal eigenvalue clustering threshold (1e-40 at 60 digits).
    Real cluster_tol() const { return tol(20); }
};

}  // namespace sovlab
