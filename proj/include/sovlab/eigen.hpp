/**
 * @file eigen.hpp
 * @brief Dense nonsymmetric eigensolver at arbitrary precision: Hessenberg
 *        reduction, shifted QR for eigenvalues, inverse iteration for left
 *        and right eigenvectors, bi-orthogonal normalization.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sovlab/matrix.hpp"
#include "sovlab/numeric.hpp"
#include "sovlab/poly.hpp"

namespace sovlab {

struct EigenResult {
    std::vector<Complex> values;
    std::vector<std::vector<Complex>> right;  // unit right eigenvectors
    std::vector<std::vector<Complex>> left;   // scaled so left^H right = 1
    Real worst_residual = Real(0);
    bool converged = true;
    std::string detail;
};

namespace detail {

inline Real vec_norm(const std::vector<Complex>& v) {
    Real s(0);
    for (const auto& x : v) s += norm(x);  // |x|^2
    return sqrt(s);
}

inline void hessenberg_reduce(Mat<Complex>& A) {
    std::size_t n = A.rows();
    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Householder on column k below the subdiagonal.
        Real scale(0);
        for (std::size_t i = k + 1; i < n; ++i) {
            Real t = abs(A(i, k));
            if (t > scale) scale = t;
        }
        if (scale == 0) continue;
        std::vector<Complex> v(n, Complex(0));
        Real nrm2(0);
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = A(i, k) / scale;
            nrm2 += norm(v[i]);
        }
        Real nrm = sqrt(nrm2);
        Complex alpha = v[k + 1];
        Real aab = abs(alpha);
        Complex phase = (aab == Real(0)) ? Complex(1) : alpha / Complex(aab);
        v[k + 1] += phase * Complex(nrm);
        Real vn2(0);
        for (std::size_t i = k + 1; i < n; ++i) vn2 += norm(v[i]);
        if (vn2 == 0) continue;
        Complex beta = Complex(Real(2) / vn2);
        // A <- (I - beta v v^H) A (I - beta v v^H)
        for (std::size_t j = 0; j < n; ++j) {
            Complex s(0);
            for (std::size_t i = k + 1; i < n; ++i) s += conj(v[i]) * A(i, j);
            s = s * beta;
            for (std::size_t i = k + 1; i < n; ++i) A(i, j) -= v[i] * s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            Complex s(0);
            for (std::size_t j = k + 1; j < n; ++j) s += A(i, j) * v[j];
            s = s * beta;
            for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= s * conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) A(i, k) = Complex(0);
    }
}

/// Eigenvalues of an upper-Hessenberg matrix by explicit shifted QR.
inline std::vector<Complex> hessenberg_qr_eigenvalues(Mat<Complex> H, const Policy& pol, bool& ok) {
    std::size_t n = H.rows();
    std::vector<Complex> eig(n, Complex(0));
    Real eps = pol.tol(4);  // deflation threshold relative factor
    long hi = (long)n - 1;
    long iter_total = 0, iter_since = 0;
    ok = true;
    while (hi >= 0) {
        if (++iter_total > 400 * (long)n) {
            ok = false;
            break;
        }
        // deflate trailing 1x1
        if (hi == 0) {
            eig[(std::size_t)hi] = H(0, 0);
            --hi;
            continue;
        }
        Real sub = abs(H((std::size_t)hi, (std::size_t)hi - 1));
        Real diag = abs(H((std::size_t)hi, (std::size_t)hi)) + abs(H((std::size_t)hi - 1, (std::size_t)hi - 1));
        if (diag == 0) diag = Real(1);
        if (sub <= eps * diag) {
            eig[(std::size_t)hi] = H((std::size_t)hi, (std::size_t)hi);
            --hi;
            iter_since = 0;
            continue;
        }
        // find active block start
        long lo = hi - 1;
        while (lo > 0) {
            Real s2 = abs(H((std::size_t)lo, (std::size_t)lo - 1));
            Real d2 = abs(H((std::size_t)lo, (std::size_t)lo)) + abs(H((std::size_t)lo - 1, (std::size_t)lo - 1));
            if (d2 == 0) d2 = Real(1);
            if (s2 <= eps * d2) {
                H((std::size_t)lo, (std::size_t)lo - 1) = Complex(0);
                break;
            }
            --lo;
        }
        // Wilkinson shift from trailing 2x2 of the active block.
        Complex a = H((std::size_t)hi - 1, (std::size_t)hi - 1), b = H((std::size_t)hi - 1, (std::size_t)hi);
        Complex c = H((std::size_t)hi, (std::size_t)hi - 1), dd = H((std::size_t)hi, (std::size_t)hi);
        Complex tr = a + dd, det = a * dd - b * c;
        Complex disc = sqrt(tr * tr - Complex(4) * det);
        Complex l1 = (tr + disc) / Complex(2), l2 = (tr - disc) / Complex(2);
        Complex shift = (abs(l1 - dd) < abs(l2 - dd)) ? l1 : l2;
        if (++iter_since % 25 == 0) shift = Complex(abs(b) + abs(c));  // exceptional shift
        // Explicit QR step on the active block via Givens rotations.
        std::size_t m = (std::size_t)(hi - lo + 1);
        std::vector<Complex> cs(m), sn(m);
        for (std::size_t i = 0; i < m; ++i) H((std::size_t)lo + i, (std::size_t)lo + i) -= shift;
        for (std::size_t k = 0; k + 1 < m; ++k) {
            std::size_t i = (std::size_t)lo + k;
            Complex x = H(i, i), y = H(i + 1, i);
            Real r = sqrt(norm(x) + norm(y));
            if (r == 0) {
                cs[k] = Complex(1);
                sn[k] = Complex(0);
                continue;
            }
            cs[k] = x / Complex(r);
            sn[k] = y / Complex(r);
            for (std::size_t j = i; j <= (std::size_t)hi; ++j) {
                Complex t1 = H(i, j), t2 = H(i + 1, j);
                H(i, j) = conj(cs[k]) * t1 + conj(sn[k]) * t2;
                H(i + 1, j) = -sn[k] * t1 + cs[k] * t2;
            }
        }
        for (std::size_t k = 0; k + 1 < m; ++k) {
            std::size_t i = (std::size_t)lo + k;
            std::size_t top = (std::size_t)lo;
            for (std::size_t r2 = top; r2 <= std::min(i + 2, (std::size_t)hi); ++r2) {
                Complex t1 = H(r2, i), t2 = H(r2, i + 1);
                H(r2, i) = t1 * cs[k] + t2 * sn[k];
                H(r2, i + 1) = -t1 * conj(sn[k]) + t2 * conj(cs[k]);
            }
        }
        for (std::size_t i = 0; i < m; ++i) H((std::size_t)lo + i, (std::size_t)lo + i) += shift;
    }
    return eig;
}

/// LU-backed inverse iteration; the shifted matrix is near-singular on purpose,
/// so tiny pivots are floored instead of rejected.
inline std::vector<Complex> inverse_iterate(const Mat<Complex>& A, const Complex& lambda, const Policy& pol,
                                            int iters) {
    std::size_t n = A.rows();
    Real floor_val = pol.tol(-(long)pol.digits);  // 10^(-2*digits)
    Complex shift = lambda;
    Mat<Complex> S = A;
    for (std::size_t i = 0; i < n; ++i) S(i, i) -= shift;
    LU<Complex> f(S);
    if (f.pivots.size() != n) {
        // exactly singular shift: nudge it off the spectrum by a relative epsilon
        Real mag = abs(lambda);
        if (mag == 0) mag = Real(1);
        shift = lambda + Complex(mag * pol.tol(3));
        S = A;
        for (std::size_t i = 0; i < n; ++i) S(i, i) -= shift;
        f = LU<Complex>(S);
    }
    const bool full = (f.pivots.size() == n);
    std::vector<Complex> x(n, Complex(1));
    for (int it = 0; it < iters && full; ++it) {
        std::vector<Complex> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            Complex acc = x[f.perm[i]];
            for (std::size_t j = 0; j < i; ++j) acc -= f.lu(f.perm[i], j) * y[j];
            y[i] = acc;
        }
        std::vector<Complex> z(n);
        for (std::size_t ii = n; ii-- > 0;) {
            Complex acc = y[ii];
            for (std::size_t j = ii + 1; j < n; ++j) acc -= f.lu(f.perm[ii], j) * z[j];
            Complex piv = f.lu(f.perm[ii], ii);
            if (abs(piv) < floor_val) piv = Complex(floor_val);
            z[ii] = acc / piv;
        }
        Real nn = vec_norm(z);
        if (nn == 0) break;
        for (auto& v : z) v /= Complex(nn);
        x = std::move(z);
    }
    return x;
}

}  // namespace detail

/**
 * Full decomposition. Residual target ||A v - lambda v|| / ||A|| <= pol.eigen_tol();
 * failure to bi-orthogonalize reports a defective matrix.
 */
inline EigenResult eigen_decompose(const Mat<Complex>& A, const Policy& pol) {
    std::size_t n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("eigen_decompose: not square");
    EigenResult res;
    Mat<Complex> H = A;
    detail::hessenberg_reduce(H);
    bool ok = true;
    res.values = detail::hessenberg_qr_eigenvalues(H, pol, ok);
    if (!ok) {
        res.converged = false;
        res.detail = "QR iteration exceeded its sweep budget";
        return res;
    }
    Real anorm = max_abs(A);
    if (anorm == 0) anorm = Real(1);
    Mat<Complex> AH = A.conj_transpose();
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Complex> v = detail::inverse_iterate(A, res.values[i], pol, 3);
        std::vector<Complex> w = detail::inverse_iterate(AH, conj(res.values[i]), pol, 3);
        // residual of the right vector
        std::vector<Complex> Av = A.mat_vec(v);
        for (std::size_t k = 0; k < n; ++k) Av[k] -= res.values[i] * v[k];
        Real r = detail::vec_norm(Av) / anorm;
        if (r > res.worst_residual) res.worst_residual = r;
        res.right.push_back(std::move(v));
        res.left.push_back(std::move(w));
    }
    if (res.worst_residual > pol.eigen_tol()) {
        res.converged = false;
        res.detail = "eigenpair residual above tolerance";
    }
    // bi-orthogonal scaling: left_i^H right_i = 1
    for (std::size_t i = 0; i < n; ++i) {
        Complex dot(0);
        for (std::size_t k = 0; k < n; ++k) dot += conj(res.left[i][k]) * res.right[i][k];
        if (abs(dot) < pol.tol((long)pol.digits / 2)) {
            res.converged = false;
            res.detail = "bi-orthogonalization failed (defective or clustered eigenvalue)";
            continue;
        }
        for (auto& x : res.left[i]) x = x / conj(dot);
    }
    return res;
}

/// Householder least squares: minimizes ||A x - b||, A tall.
inline std::vector<Complex> least_squares(Mat<Complex> A, std::vector<Complex> b, Real* residual = nullptr) {
    std::size_t m = A.rows(), n = A.cols();
    if (b.size() != m || m < n) throw std::invalid_argument("least_squares: shape mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        Real nrm2(0);
        for (std::size_t i = k; i < m; ++i) nrm2 += norm(A(i, k));
        Real nrm = sqrt(nrm2);
        if (nrm == 0) continue;
        Complex alpha = A(k, k);
        Real aab = abs(alpha);
        Complex phase = (aab == Real(0)) ? Complex(1) : alpha / Complex(aab);
        std::vector<Complex> v(m, Complex(0));
        for (std::size_t i = k; i < m; ++i) v[i] = A(i, k);
        v[k] += phase * Complex(nrm);
        Real vn2(0);
        for (std::size_t i = k; i < m; ++i) vn2 += norm(v[i]);
        if (vn2 == 0) continue;
        Real beta = Real(2) / vn2;
        for (std::size_t j = k; j < n; ++j) {
            Complex s(0);
            for (std::size_t i = k; i < m; ++i) s += conj(v[i]) * A(i, j);
            s = s * Complex(beta);
            for (std::size_t i = k; i < m; ++i) A(i, j) -= v[i] * s;
        }
        Complex s(0);
        for (std::size_t i = k; i < m; ++i) s += conj(v[i]) * b[i];
        s = s * Complex(beta);
        for (std::size_t i = k; i < m; ++i) b[i] -= v[i] * s;
    }
    std::vector<Complex> x(n, Complex(0));
    for (std::size_t ii = n; ii-- > 0;) {
        Complex acc = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= A(ii, j) * x[j];
        x[ii] = acc / A(ii, ii);
    }
    if (residual) {
        Real r(0);
        for (std::size_t i = n; i < m; ++i) r += norm(b[i]);
        *residual = sqrt(r);
    }
    return x;
}

/// Newton-form interpolation through (points[i], values[i]); exact degree fit.
inline Poly<Complex> interpolate_poly(const std::vector<Complex>& points, const std::vector<Complex>& values) {
    std::size_t m = points.size();
    if (values.size() != m || m == 0) throw std::invalid_argument("interpolate_poly: bad input");
    std::vector<Complex> dd = values;  // divided differences in place
    for (std::size_t lvl = 1; lvl < m; ++lvl)
        for (std::size_t i = m; i-- > lvl;) dd[i] = (dd[i] - dd[i - 1]) / (points[i] - points[i - lvl]);
    Poly<Complex> p(dd[m - 1]);
    for (std::size_t i = m - 1; i-- > 0;) {
        p = p * Poly<Complex>(std::vector<Complex>{-points[i], Complex(1)});
        p = p + Poly<Complex>(dd[i]);
    }
    return p;
}

}  // namespace sovlab
