/**
 * @file twist.hpp
 * @brief Twist matrices: identity, diagonal, companion, modified companion
 *        (with auxiliary parameters), and its null limit.
 */
#pragma once

#include <stdexcept>
#include <vector>

#include "sovlab/matrix.hpp"
#include "sovlab/rational.hpp"

namespace sovlab {

enum class TwistKind { Identity, Diagonal, Companion, MCT, Null };

/// Elementary symmetric polynomials chi_1..chi_n of the eigenvalues.
inline std::vector<Rat> elementary_symmetric(const std::vector<Rat>& z) {
    std::size_t n = z.size();
    std::vector<Rat> e(n + 1, Rat(0));
    e[0] = Rat(1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = std::min(i + 1, n); k >= 1; --k) e[k] += e[k - 1] * z[i];
    return std::vector<Rat>(e.begin() + 1, e.end());
}

struct TwistSpec {
    TwistKind kind = TwistKind::Identity;
    Mat<Rat> G;

    static TwistSpec make(TwistKind kind, int n, const std::vector<Rat>& z, const std::vector<Rat>& w) {
        TwistSpec t;
        t.kind = kind;
        std::size_t N = (std::size_t)n;
        switch (kind) {
            case TwistKind::Identity:
                t.G = Mat<Rat>::identity(N);
                break;
            case TwistKind::Diagonal: {
                if (z.size() != N) throw std::invalid_argument("twist: need n eigenvalues");
                t.G = Mat<Rat>(N, N);
                for (std::size_t i = 0; i < N; ++i) t.G(i, i) = z[i];
                break;
            }
            case TwistKind::Companion: {
                std::vector<Rat> ones(N - 1, Rat(1));
                return make_mct(n, z, ones, TwistKind::Companion);
            }
            case TwistKind::MCT:
                return make_mct(n, z, w, TwistKind::MCT);
            case TwistKind::Null: {
                std::vector<Rat> zeros(N, Rat(0));
                return make_mct(n, zeros, w, TwistKind::Null);
            }
        }
        return t;
    }

  private:
    // G_{ij} = chi_j delta_{i1} / w_{|j-1|} + delta_{i,j+1} w_j,
    // with w_{|j|} = (-1)^j w_1 ... w_j and w_{|0|} = 1.
    static TwistSpec make_mct(int n, const std::vector<Rat>& z, const std::vector<Rat>& w, TwistKind kind) {
        std::size_t N = (std::size_t)n;
        if (z.size() != N) throw std::invalid_argument("twist: need n eigenvalues");
        if (w.size() + 1 != N) throw std::invalid_argument("twist: need n-1 auxiliary parameters");
        std::vector<Rat> chi = elementary_symmetric(z);
        std::vector<Rat> wabs(N, Rat(1));  // wabs[j] = (-1)^j w_1..w_j
        for (std::size_t j = 1; j < N; ++j) wabs[j] = -wabs[j - 1] * w[j - 1];
        TwistSpec t;
        t.kind = kind;
        t.G = Mat<Rat>(N, N);
        for (std::size_t j = 1; j <= N; ++j) {
            t.G(0, j - 1) += chi[j - 1] / wabs[j - 1];
            if (j + 1 <= N) t.G(j, j - 1) += w[j - 1];
        }
        return t;
    }
};

/// All strictly increasing a-element index lists from {1..n}, lexicographic.
inline std::vector<std::vector<int>> index_subsets(int n, int a) {
    std::vector<std::vector<int>> out;
    if (a < 0 || a > n) return out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if ((int)cur.size() == a) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= n - (a - (int)cur.size()) + 1; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

/// Ordinary minor of a scalar matrix (1-based row/column index lists).
inline Rat scalar_minor(const Mat<Rat>& G, const std::vector<int>& rows, const std::vector<int>& cols) {
    std::size_t a = rows.size();
    if (cols.size() != a) throw std::invalid_argument("scalar_minor: size mismatch");
    Mat<Rat> sub(a, a);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j) sub(i, j) = G((std::size_t)rows[i] - 1, (std::size_t)cols[j] - 1);
    return det_of(sub);
}

}  // namespace sovlab
