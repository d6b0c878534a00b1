/**
 * @file poly.hpp
 * @brief Univariate polynomials in the spectral parameter over a generic scalar.
 *
 * Coefficients are stored in ascending degree; the zero polynomial is the
 * empty list. Shifts p(u) -> p(u+s) are exact binomial reindexings, never
 * point-evaluation round trips.
 */
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace sovlab {

template <class T>
class Poly {
  public:
    Poly() = default;
    explicit Poly(T c) : c_{std::move(c)} { trim(); }
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(T(1)); }
    /// The monomial u.
    static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }
    static Poly monomial(std::size_t k, T coeff = T(1)) {
        std::vector<T> c(k + 1, T(0));
        c[k] = std::move(coeff);
        return Poly(std::move(c));
    }

    const std::vector<T>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return (long)c_.size() - 1; }

    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    T leading() const {
        if (c_.empty()) throw std::domain_error("Poly::leading on zero polynomial");
        return c_.back();
    }

    T operator()(const T& u) const {
        T acc(0);
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * u + c_[k];
        return acc;
    }

    Poly operator+(const Poly& o) const {
        std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
        for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
        for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const {
        std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
        for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
        for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] -= o.c_[k];
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<T> r = c_;
        for (auto& v : r) v = -v;
        return Poly(std::move(r));
    }
    Poly operator*(const Poly& o) const {
        if (c_.empty() || o.c_.empty()) return Poly();
        std::vector<T> r(c_.size() + o.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(r));
    }
    Poly operator*(const T& s) const {
        std::vector<T> r = c_;
        for (auto& v : r) v = v * s;
        return Poly(std::move(r));
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// p(u + s), expanded in the monomial basis. Degree preserved.
    Poly shift(const T& s) const {
        if (c_.empty()) return Poly();
        std::vector<T> r(c_.size(), T(0));
        // Accumulate c_k * (u+s)^k by iterated multiplication with (u+s).
        std::vector<T> pw{T(1)};  // (u+s)^k, ascending
        for (std::size_t k = 0; k < c_.size(); ++k) {
            for (std::size_t i = 0; i < pw.size(); ++i) r[i] += c_[k] * pw[i];
            if (k + 1 < c_.size()) {
                std::vector<T> nx(pw.size() + 1, T(0));
                for (std::size_t i = 0; i < pw.size(); ++i) {
                    nx[i + 1] += pw[i];
                    nx[i] += pw[i] * s;
                }
                pw = std::move(nx);
            }
        }
        return Poly(std::move(r));
    }

    Poly monic() const {
        if (c_.empty()) throw std::domain_error("Poly::monic on zero polynomial");
        T inv = T(1) / c_.back();
        return *this * inv;
    }

    /// Quotient and remainder; requires an invertible leading divisor coefficient.
    static std::pair<Poly, Poly> divrem(const Poly& num, const Poly& den) {
        if (den.is_zero()) throw std::domain_error("Poly::divrem by zero");
        std::vector<T> r = num.c_;
        long dd = den.degree();
        if (num.degree() < dd) return {Poly(), num};
        std::vector<T> q((std::size_t)(num.degree() - dd) + 1, T(0));
        T lead_inv = T(1) / den.c_.back();
        for (long k = num.degree(); k >= dd; --k) {
            T f = r[(std::size_t)k] * lead_inv;
            q[(std::size_t)(k - dd)] = f;
            for (long j = 0; j <= dd; ++j) r[(std::size_t)(k - dd + j)] -= f * den.c_[(std::size_t)j];
        }
        return {Poly(std::move(q)), Poly(std::move(r))};
    }

  private:
    // Strips exact-zero leading coefficients only; numeric near-zeros are kept.
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
    std::vector<T> c_;
};

template <class T>
Poly<T> operator*(const T& s, const Poly<T>& p) {
    return p * s;
}

/// prod_{i} (u - roots[i])
template <class T>
Poly<T> poly_from_roots(const std::vector<T>& roots) {
    Poly<T> p = Poly<T>::one();
    for (const auto& r : roots) p = p * Poly<T>(std::vector<T>{-r, T(1)});
    return p;
}

}  // namespace sovlab
