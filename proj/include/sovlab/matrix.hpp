/**
 * @file matrix.hpp
 * @brief Dense matrices over exact rationals or arbitrary-precision complex scalars.
 *
 * The exact multiply clears denominators once per operand and runs the inner
 * loops over integers, which is where essentially all time is spent in the
 * operator-identity suites. Zero entries are skipped, so products of the
 * sparse Lax-type factors cost close to their fill-in.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sovlab/numeric.hpp"
#include "sovlab/rational.hpp"

namespace sovlab {

namespace detail {
inline Rat conj_scalar(const Rat& x) { return x; }
inline Complex conj_scalar(const Complex& z) { return conj(z); }
inline bool scalar_is_zero(const Rat& x) { return x == 0; }
inline bool scalar_is_zero(const Complex& z) { return z == Complex(0); }
}  // namespace detail

template <class T>
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Mat scalar(std::size_t n, const T& s) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& v : a_)
            if (!detail::scalar_is_zero(v)) return false;
        return true;
    }

    Mat operator+(const Mat& o) const {
        check_same_shape(o);
        Mat m(r_, c_);
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] + o.a_[k];
        return m;
    }
    Mat operator-(const Mat& o) const {
        check_same_shape(o);
        Mat m(r_, c_);
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] - o.a_[k];
        return m;
    }
    Mat operator-() const {
        Mat m(r_, c_);
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = -a_[k];
        return m;
    }
    Mat& operator+=(const Mat& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat operator*(const T& s) const {
        Mat m(r_, c_);
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] * s;
        return m;
    }

    Mat operator*(const Mat& o) const {
        if (c_ != o.r_) throw std::invalid_argument("Mat: dimension mismatch in product");
        return mul_impl(o);
    }

    Mat transpose() const {
        Mat m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    Mat conj_transpose() const {
        Mat m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(j, i) = detail::conj_scalar((*this)(i, j));
        return m;
    }

    std::vector<T> mat_vec(const std::vector<T>& v) const {
        if (v.size() != c_) throw std::invalid_argument("Mat::mat_vec: dimension mismatch");
        std::vector<T> r(r_, T(0));
        for (std::size_t i = 0; i < r_; ++i) {
            T acc(0);
            for (std::size_t j = 0; j < c_; ++j)
                if (!detail::scalar_is_zero((*this)(i, j))) acc += (*this)(i, j) * v[j];
            r[i] = acc;
        }
        return r;
    }
    /// Row covector acting from the left: (v^T M)_j.
    std::vector<T> vec_mat(const std::vector<T>& v) const {
        if (v.size() != r_) throw std::invalid_argument("Mat::vec_mat: dimension mismatch");
        std::vector<T> r(c_, T(0));
        for (std::size_t i = 0; i < r_; ++i) {
            if (detail::scalar_is_zero(v[i])) continue;
            for (std::size_t j = 0; j < c_; ++j) r[j] += v[i] * (*this)(i, j);
        }
        return r;
    }

  private:
    void check_same_shape(const Mat& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Mat: shape mismatch");
    }

    Mat mul_impl(const Mat& o) const;

    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

// Generic product: zero-skipping row-times-matrix accumulation.
template <class T>
Mat<T> Mat<T>::mul_impl(const Mat<T>& o) const {
    Mat<T> m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t k = 0; k < c_; ++k) {
            const T& aik = (*this)(i, k);
            if (detail::scalar_is_zero(aik)) continue;
            const T* brow = &o.a_[k * o.c_];
            T* mrow = &m.a_[i * o.c_];
            for (std::size_t j = 0; j < o.c_; ++j) {
                if (!detail::scalar_is_zero(brow[j])) mrow[j] += aik * brow[j];
            }
        }
    }
    return m;
}

// Exact product: scale both operands to integer matrices, multiply with
// mpz_addmul, canonicalize once per output entry.
template <>
inline Mat<Rat> Mat<Rat>::mul_impl(const Mat<Rat>& o) const {
    Int da(1), db(1);
    for (const auto& v : a_) mpz_lcm(da.get_mpz_t(), da.get_mpz_t(), v.get_den().get_mpz_t());
    for (const auto& v : o.a_) mpz_lcm(db.get_mpz_t(), db.get_mpz_t(), v.get_den().get_mpz_t());

    std::vector<Int> A(a_.size()), B(o.a_.size());
    std::vector<bool> Az(a_.size()), Bz(o.a_.size());
    for (std::size_t k = 0; k < a_.size(); ++k) {
        A[k] = a_[k].get_num() * (da / a_[k].get_den());
        Az[k] = (mpz_sgn(A[k].get_mpz_t()) == 0);
    }
    for (std::size_t k = 0; k < o.a_.size(); ++k) {
        B[k] = o.a_[k].get_num() * (db / o.a_[k].get_den());
        Bz[k] = (mpz_sgn(B[k].get_mpz_t()) == 0);
    }

    Mat<Rat> m(r_, o.c_);
    Int scale = da * db;
    std::vector<Int> acc(o.c_);
    for (std::size_t i = 0; i < r_; ++i) {
        for (auto& v : acc) v = 0;
        for (std::size_t k = 0; k < c_; ++k) {
            std::size_t ak = i * c_ + k;
            if (Az[ak]) continue;
            const Int& aik = A[ak];
            for (std::size_t j = 0; j < o.c_; ++j) {
                std::size_t bk = k * o.c_ + j;
                if (Bz[bk]) continue;
                mpz_addmul(acc[j].get_mpz_t(), aik.get_mpz_t(), B[bk].get_mpz_t());
            }
        }
        for (std::size_t j = 0; j < o.c_; ++j) {
            if (mpz_sgn(acc[j].get_mpz_t()) == 0) continue;
            Rat v(acc[j], scale);
            v.canonicalize();
            m(i, j) = std::move(v);
        }
    }
    return m;
}

template <class T>
Mat<T> operator*(const T& s, const Mat<T>& m) {
    return m * s;
}

/// kron(A, B)[ia*rB+ib, ja*cB+jb] = A(ia,ja) * B(ib,jb)
template <class T>
Mat<T> kron(const Mat<T>& A, const Mat<T>& B) {
    Mat<T> m(A.rows() * B.rows(), A.cols() * B.cols());
    for (std::size_t ia = 0; ia < A.rows(); ++ia)
        for (std::size_t ja = 0; ja < A.cols(); ++ja) {
            const T& a = A(ia, ja);
            if (detail::scalar_is_zero(a)) continue;
            for (std::size_t ib = 0; ib < B.rows(); ++ib)
                for (std::size_t jb = 0; jb < B.cols(); ++jb) {
                    if (detail::scalar_is_zero(B(ib, jb))) continue;
                    m(ia * B.rows() + ib, ja * B.cols() + jb) = a * B(ib, jb);
                }
        }
    return m;
}

namespace detail {
// Pivot quality: exact scalars prefer short numerators/denominators, numeric
// scalars prefer large magnitude.
inline bool better_pivot(const Rat& cand, const Rat& cur) {
    if (cur == 0) return cand != 0;
    if (cand == 0) return false;
    std::size_t sc = mpz_sizeinbase(cand.get_num().get_mpz_t(), 2) + mpz_sizeinbase(cand.get_den().get_mpz_t(), 2);
    std::size_t su = mpz_sizeinbase(cur.get_num().get_mpz_t(), 2) + mpz_sizeinbase(cur.get_den().get_mpz_t(), 2);
    return sc < su;
}
inline bool better_pivot(const Complex& cand, const Complex& cur) { return abs(cand) > abs(cur); }
}  // namespace detail

/**
 * In-place LU with row pivoting over a field. Returns the permutation parity
 * and pivot row order; rank = number of nonzero pivots found.
 */
template <class T>
struct LU {
    Mat<T> lu;
    std::vector<std::size_t> perm;  // row order
    int parity = 1;
    std::size_t rank = 0;

    explicit LU(Mat<T> m) : lu(std::move(m)) {
        std::size_t n = lu.rows(), c = lu.cols();
        perm.resize(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        std::size_t row = 0;
        for (std::size_t col = 0; col < c && row < n; ++col) {
            std::size_t best = row;
            for (std::size_t i = row; i < n; ++i)
                if (detail::better_pivot(lu(perm[i], col), lu(perm[best], col))) best = i;
            if (detail::scalar_is_zero(lu(perm[best], col))) continue;
            if (best != row) {
                std::swap(perm[best], perm[row]);
                parity = -parity;
            }
            const T piv = lu(perm[row], col);
            for (std::size_t i = row + 1; i < n; ++i) {
                T f = lu(perm[i], col);
                if (detail::scalar_is_zero(f)) continue;
                f = f / piv;
                lu(perm[i], col) = T(0);
                for (std::size_t j = col + 1; j < c; ++j) lu(perm[i], j) -= f * lu(perm[row], j);
                lu(perm[i], col) = f;  // store multiplier below the diagonal
            }
            pivots.push_back(col);
            ++row;
        }
        rank = row;
    }

    std::vector<std::size_t> pivots;  // pivot column per pivot row
};

template <class T>
std::size_t rank_of(const Mat<T>& m) {
    return LU<T>(m).rank;
}

template <class T>
T det_of(const Mat<T>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det_of: not square");
    LU<T> f(m);
    if (f.rank < m.rows()) return T(0);
    T d(f.parity);
    for (std::size_t i = 0; i < m.rows(); ++i) d = d * f.lu(f.perm[i], f.pivots[i]);
    return d;
}

/// Solves A X = B for square invertible A.
template <class T>
Mat<T> lu_solve(const Mat<T>& A, const Mat<T>& B) {
    if (A.rows() != A.cols() || A.rows() != B.rows()) throw std::invalid_argument("lu_solve: shape mismatch");
    LU<T> f(A);
    if (f.rank < A.rows()) throw std::domain_error("lu_solve: singular matrix");
    std::size_t n = A.rows(), m = B.cols();
    Mat<T> X(n, m);
    // forward: L y = P b (unit lower, multipliers stored)
    for (std::size_t col = 0; col < m; ++col) {
        std::vector<T> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            T acc = B(f.perm[i], col);
            for (std::size_t j = 0; j < i; ++j) acc -= f.lu(f.perm[i], f.pivots[j]) * y[j];
            y[i] = acc;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            T acc = y[ii];
            for (std::size_t j = ii + 1; j < n; ++j) acc -= f.lu(f.perm[ii], f.pivots[j]) * X(j, col);
            X(ii, col) = acc / f.lu(f.perm[ii], f.pivots[ii]);
        }
    }
    return X;
}

template <class T>
Mat<T> inverse_of(const Mat<T>& A) {
    return lu_solve(A, Mat<T>::identity(A.rows()));
}

inline Real max_abs(const Mat<Complex>& m) {
    Real r(0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Real t = abs(m(i, j));
            if (t > r) r = t;
        }
    return r;
}

inline Rat max_abs(const Mat<Rat>& m) {
    Rat r(0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rat t = abs_rat(m(i, j));
            if (t > r) r = t;
        }
    return r;
}

inline Mat<Complex> to_complex(const Mat<Rat>& m) {
    Mat<Complex> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) r(i, j) = complex_from_rat(m(i, j));
    return r;
}

inline std::vector<Complex> to_complex(const std::vector<Rat>& v) {
    std::vector<Complex> r(v.size(), Complex(0));
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) r[i] = complex_from_rat(v[i]);
    return r;
}

/// 1-norm condition estimate through an explicit inverse (desk-scale sizes).
inline Real condition_estimate(const Mat<Complex>& A) {
    auto norm1 = [](const Mat<Complex>& m) {
        Real best(0);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Real s(0);
            for (std::size_t i = 0; i < m.rows(); ++i) s += abs(m(i, j));
            best = std::max(best, s);
        }
        return best;
    };
    Mat<Complex> inv = lu_solve(A, Mat<Complex>::identity(A.rows()));
    return norm1(A) * norm1(inv);
}

}  // namespace sovlab
