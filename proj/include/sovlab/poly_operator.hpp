/**
 * @file poly_operator.hpp
 * @brief Polynomials in the spectral parameter with matrix coefficients.
 *
 * Multiplication preserves factor order (the coefficients do not commute).
 * Exact-zero coefficient matrices are trimmed from the top so degree() is
 * meaningful, but a tracked degree bound is kept for sanity checks.
 */
#pragma once

#include <stdexcept>
#include <vector>

#include "sovlab/matrix.hpp"
#include "sovlab/poly.hpp"

namespace sovlab {

template <class T>
class PolyOp {
  public:
    PolyOp() = default;
    PolyOp(std::size_t dim, std::vector<Mat<T>> coeffs) : dim_(dim), c_(std::move(coeffs)) {
        for (const auto& m : c_)
            if (m.rows() != dim_ || m.cols() != dim_) throw std::invalid_argument("PolyOp: coefficient shape mismatch");
        trim();
    }

    static PolyOp zero(std::size_t dim) { return PolyOp(dim, {}); }
    static PolyOp constant(Mat<T> m) {
        std::size_t d = m.rows();
        return PolyOp(d, {std::move(m)});
    }
    static PolyOp identity(std::size_t dim) { return constant(Mat<T>::identity(dim)); }
    /// Scalar polynomial times the identity operator.
    static PolyOp from_scalar_poly(const Poly<T>& p, std::size_t dim) {
        std::vector<Mat<T>> c;
        c.reserve(p.coeffs().size());
        for (const auto& s : p.coeffs()) c.push_back(Mat<T>::scalar(dim, s));
        return PolyOp(dim, std::move(c));
    }

    std::size_t dim() const { return dim_; }
    long degree() const { return (long)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }

    const Mat<T>& coeff(std::size_t k) const {
        static const Mat<T> empty;
        if (k >= c_.size()) {
            zero_cache_ = Mat<T>(dim_, dim_);
            return zero_cache_;
        }
        return c_[k];
    }
    const std::vector<Mat<T>>& coeffs() const { return c_; }

    Mat<T> operator()(const T& u) const {
        Mat<T> acc(dim_, dim_);
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * u + c_[k];
        return acc;
    }

    PolyOp operator+(const PolyOp& o) const {
        check_dim(o);
        std::vector<Mat<T>> r(std::max(c_.size(), o.c_.size()), Mat<T>(dim_, dim_));
        for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
        for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
        return PolyOp(dim_, std::move(r));
    }
    PolyOp operator-(const PolyOp& o) const {
        check_dim(o);
        std::vector<Mat<T>> r(std::max(c_.size(), o.c_.size()), Mat<T>(dim_, dim_));
        for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
        for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] -= o.c_[k];
        return PolyOp(dim_, std::move(r));
    }
    PolyOp operator-() const {
        std::vector<Mat<T>> r;
        r.reserve(c_.size());
        for (const auto& m : c_) r.push_back(-m);
        return PolyOp(dim_, std::move(r));
    }

    /// (a*b)(u) with a acting left of b; coefficient convolution.
    PolyOp operator*(const PolyOp& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("PolyOp: dimension mismatch");
        if (c_.empty() || o.c_.empty()) return zero(dim_);
        std::vector<Mat<T>> r(c_.size() + o.c_.size() - 1, Mat<T>(dim_, dim_));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j].is_zero()) continue;
                r[i + j] += c_[i] * o.c_[j];
            }
        }
        return PolyOp(dim_, std::move(r));
    }
    PolyOp operator*(const T& s) const {
        std::vector<Mat<T>> r;
        r.reserve(c_.size());
        for (const auto& m : c_) r.push_back(m * s);
        return PolyOp(dim_, std::move(r));
    }
    PolyOp operator*(const Poly<T>& p) const { return *this * from_scalar_poly(p, dim_); }

    bool operator==(const PolyOp& o) const { return dim_ == o.dim_ && c_ == o.c_; }
    bool operator!=(const PolyOp& o) const { return !(*this == o); }

    /// p(u + s); exact binomial reindexing, degree preserved.
    PolyOp shift(const T& s) const {
        if (c_.empty()) return zero(dim_);
        std::vector<Mat<T>> r(c_.size(), Mat<T>(dim_, dim_));
        std::vector<T> pw{T(1)};  // coefficients of (u+s)^k
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (!c_[k].is_zero())
                for (std::size_t i = 0; i < pw.size(); ++i)
                    if (!detail::scalar_is_zero(pw[i])) r[i] += c_[k] * pw[i];
            if (k + 1 < c_.size()) {
                std::vector<T> nx(pw.size() + 1, T(0));
                for (std::size_t i = 0; i < pw.size(); ++i) {
                    nx[i + 1] += pw[i];
                    nx[i] += pw[i] * s;
                }
                pw = std::move(nx);
            }
        }
        return PolyOp(dim_, std::move(r));
    }

    /// Row covector applied to every coefficient: the vector-valued polynomial v^T * this.
    std::vector<std::vector<T>> apply_left(const std::vector<T>& v) const {
        std::vector<std::vector<T>> out;
        out.reserve(c_.size());
        for (const auto& m : c_) out.push_back(m.vec_mat(v));
        return out;
    }

  private:
    void check_dim(const PolyOp& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("PolyOp: dimension mismatch");
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::size_t dim_ = 0;
    std::vector<Mat<T>> c_;
    mutable Mat<T> zero_cache_;
};

template <class T>
PolyOp<T> operator*(const T& s, const PolyOp<T>& p) {
    return p * s;
}
template <class T>
PolyOp<T> operator*(const Poly<T>& s, const PolyOp<T>& p) {
    return PolyOp<T>::from_scalar_poly(s, p.dim()) * p;
}

inline PolyOp<Complex> to_complex(const PolyOp<Rat>& p) {
    std::vector<Mat<Complex>> c;
    c.reserve(p.coeffs().size());
    for (const auto& m : p.coeffs()) c.push_back(to_complex(m));
    return PolyOp<Complex>(p.dim(), std::move(c));
}

inline Poly<Complex> to_complex(const Poly<Rat>& p) {
    std::vector<Complex> c;
    c.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) c.push_back(complex_from_rat(v));
    return Poly<Complex>(std::move(c));
}

}  // namespace sovlab
