/**
 * @file yangian.hpp
 * @brief Lax matrices, monodromy, quantum minors, antisymmetric and fused
 *        transfer matrices, and the generating-function cross-check.
 *
 * Operator-valued polynomials are exact throughout. Point evaluations are
 * cached per spectral value because the separated-variable recursion hits
 * the same few points repeatedly.
 */
#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "sovlab/chain.hpp"
#include "sovlab/poly_operator.hpp"
#include "sovlab/twist.hpp"

namespace sovlab {

/// Permutations of {0..a-1} with signs.
inline const std::vector<std::pair<std::vector<int>, int>>& permutations_signed(int a) {
    static std::mutex mu;
    static std::map<int, std::vector<std::pair<std::vector<int>, int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(a);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<std::vector<int>, int>> out;
    std::vector<int> p((std::size_t)a);
    for (int i = 0; i < a; ++i) p[(std::size_t)i] = i;
    do {
        int sgn = 1;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j)
                if (p[i] > p[j]) sgn = -sgn;
        out.emplace_back(p, sgn);
    } while (std::next_permutation(p.begin(), p.end()));
    return cache.emplace(a, std::move(out)).first->second;
}

class Monodromy {
  public:
    explicit Monodromy(const Chain& chain) : chain_(&chain) {
        const ChainSpec& s = chain.spec();
        int n = s.n;
        std::size_t d = chain.dim();
        // Aux-space matrix of degree-1 entries per site:
        //   (M_alpha)_{ij}(u) = (u - theta_alpha) delta_{ij} - hbar E_{ji}|site alpha.
        // Ordered product M_L ... M_1.
        std::vector<PolyOp<Rat>> acc((std::size_t)(n * n));
        for (int i = 0; i < n * n; ++i) acc[(std::size_t)i] = PolyOp<Rat>::zero(d);
        for (int i = 0; i < n; ++i) acc[(std::size_t)(i * n + i)] = PolyOp<Rat>::identity(d);
        for (int alpha = 1; alpha <= s.L; ++alpha) {
            std::vector<PolyOp<Rat>> lax((std::size_t)(n * n));
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) {
                    std::vector<Mat<Rat>> c;
                    Mat<Rat> c0 = chain.site_op(alpha, chain.rep(alpha).E(j, i)) * (-s.hbar);
                    if (i == j) {
                        c0 += Mat<Rat>::scalar(d, -s.th(alpha));
                        c.push_back(std::move(c0));
                        c.push_back(Mat<Rat>::identity(d));
                    } else {
                        c.push_back(std::move(c0));
                    }
                    lax[(std::size_t)((i - 1) * n + j - 1)] = PolyOp<Rat>(d, std::move(c));
                }
            // acc <- lax * acc (factor for the new site multiplies from the left)
            std::vector<PolyOp<Rat>> next((std::size_t)(n * n), PolyOp<Rat>::zero(d));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    PolyOp<Rat> e = PolyOp<Rat>::zero(d);
                    for (int k = 0; k < n; ++k) {
                        const PolyOp<Rat>&a = lax[(std::size_t)(i * n + k)], &b = acc[(std::size_t)(k * n + j)];
                        if (a.is_zero() || b.is_zero()) continue;
                        e = e + a * b;
                    }
                    next[(std::size_t)(i * n + j)] = std::move(e);
                }
            acc = std::move(next);
        }
        t_ = std::move(acc);
    }

    const Chain& chain() const { return *chain_; }
    const ChainSpec& spec() const { return chain_->spec(); }
    int n() const { return spec().n; }
    std::size_t dim() const { return chain_->dim(); }

    /// Untwisted entry T_{ij}(u), 1-based.
    const PolyOp<Rat>& T(int i, int j) const { return t_[(std::size_t)((i - 1) * n() + j - 1)]; }

    /// Cached evaluation of all entries at a point.
    const Mat<Rat>& T_at(int i, int j, const Rat& u) const {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = cache_.find(u);
        if (it == cache_.end()) {
            std::vector<Mat<Rat>> vals;
            vals.reserve(t_.size());
            for (const auto& p : t_) vals.push_back(p(u));
            it = cache_.emplace(u, std::move(vals)).first;
        }
        return it->second[(std::size_t)((i - 1) * n() + j - 1)];
    }

  private:
    const Chain* chain_;
    std::vector<PolyOp<Rat>> t_;
    mutable std::mutex cache_mu_;
    mutable std::map<Rat, std::vector<Mat<Rat>>> cache_;
};

// ------------------------------------------------------------- quantum minors

/**
 * T[rows|cols](u) = sum_sigma sgn(sigma) T_{r_sigma(1) c_1}(u) T_{r_sigma(2) c_2}(u-hbar) ...
 * Repeated indices within rows or cols are rejected.
 */
inline void check_minor_indices(const Monodromy& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    if (rows.size() != cols.size()) throw std::invalid_argument("quantum minor: row/col arity mismatch");
    auto distinct_in_range = [&](const std::vector<int>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] < 1 || v[i] > m.n()) throw std::invalid_argument("quantum minor: index out of range");
            for (std::size_t j = i + 1; j < v.size(); ++j)
                if (v[i] == v[j]) throw std::invalid_argument("quantum minor: repeated index");
        }
    };
    distinct_in_range(rows);
    distinct_in_range(cols);
}

inline PolyOp<Rat> quantum_minor(const Monodromy& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    check_minor_indices(m, rows, cols);
    int a = (int)rows.size();
    std::size_t d = m.dim();
    if (a == 0) return PolyOp<Rat>::identity(d);
    const Rat& h = m.spec().hbar;
    // Pre-shift: factor at position k uses T_{*, cols[k]}(u - k hbar).
    std::map<std::pair<int, int>, PolyOp<Rat>> shifted;
    for (int k = 0; k < a; ++k)
        for (int r : rows) shifted[{k, r}] = m.T(r, cols[(std::size_t)k]).shift(-h * Rat(k));
    PolyOp<Rat> acc = PolyOp<Rat>::zero(d);
    for (const auto& [perm, sgn] : permutations_signed(a)) {
        PolyOp<Rat> term = shifted[{0, rows[(std::size_t)perm[0]]}];
        for (int k = 1; k < a; ++k) term = term * shifted[{k, rows[(std::size_t)perm[(std::size_t)k]]}];
        acc = (sgn > 0) ? acc + term : acc - term;
    }
    return acc;
}

inline Mat<Rat> quantum_minor_at(const Monodromy& m, const std::vector<int>& rows, const std::vector<int>& cols,
                                 const Rat& u) {
    check_minor_indices(m, rows, cols);
    int a = (int)rows.size();
    std::size_t d = m.dim();
    if (a == 0) return Mat<Rat>::identity(d);
    const Rat& h = m.spec().hbar;
    Mat<Rat> acc(d, d);
    for (const auto& [perm, sgn] : permutations_signed(a)) {
        Mat<Rat> term = m.T_at(rows[(std::size_t)perm[0]], cols[0], u);
        for (int k = 1; k < a; ++k)
            term = term * m.T_at(rows[(std::size_t)perm[(std::size_t)k]], cols[(std::size_t)k], u - h * Rat(k));
        if (sgn > 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

// --------------------------------------------------- twisted transfer matrices

/**
 * Antisymmetric transfer for twist G:
 *   sum over |I| = a of (T G)[I|I](u), expanded by Cauchy-Binet into
 *   sum_{I,C} T[I|C](u) * minor_G(C,I).
 */
inline PolyOp<Rat> transfer_antisym_poly(const Monodromy& m, const Mat<Rat>& G, int a) {
    std::size_t d = m.dim();
    if (a == 0) return PolyOp<Rat>::identity(d);
    if (a < 0 || a > m.n()) return PolyOp<Rat>::zero(d);
    PolyOp<Rat> acc = PolyOp<Rat>::zero(d);
    auto subsets = index_subsets(m.n(), a);
    for (const auto& I : subsets)
        for (const auto& C : subsets) {
            Rat g = scalar_minor(G, C, I);
            if (g == 0) continue;
            acc = acc + quantum_minor(m, I, C) * g;
        }
    return acc;
}

inline Mat<Rat> transfer_antisym_at(const Monodromy& m, const Mat<Rat>& G, int a, const Rat& u) {
    std::size_t d = m.dim();
    if (a == 0) return Mat<Rat>::identity(d);
    if (a < 0 || a > m.n()) return Mat<Rat>(d, d);
    Mat<Rat> acc(d, d);
    auto subsets = index_subsets(m.n(), a);
    for (const auto& I : subsets)
        for (const auto& C : subsets) {
            Rat g = scalar_minor(G, C, I);
            if (g == 0) continue;
            acc += quantum_minor_at(m, I, C, u) * g;
        }
    return acc;
}

/**
 * Fused transfer for a Young diagram by the column-determinant over
 * antisymmetric transfers: entries commute, Leibniz expansion.
 */
inline Mat<Rat> cbr_transfer_at(const Monodromy& m, const Mat<Rat>& G, const YoungDiagram& xi, const Rat& u) {
    std::size_t d = m.dim();
    if (xi.boxes() == 0) return Mat<Rat>::identity(d);
    if (xi.height() > m.n()) return Mat<Rat>(d, d);
    long w = xi.width();
    YoungDiagram xt = xi.transpose();
    const Rat& h = m.spec().hbar;
    // entry(i,j) = transfer_{xt_j + i - j}(u + hbar (i-1)), 1-based i,j
    std::map<std::pair<long, long>, Mat<Rat>> entry;
    auto ent = [&](long i, long j) -> const Mat<Rat>& {
        auto key = std::make_pair(i, j);
        auto it = entry.find(key);
        if (it == entry.end()) {
            long a = xt.row((std::size_t)j - 1) + i - j;
            it = entry.emplace(key, transfer_antisym_at(m, G, (int)a, u + h * Rat(i - 1))).first;
        }
        return it->second;
    };
    Mat<Rat> acc(d, d);
    for (const auto& [perm, sgn] : permutations_signed((int)w)) {
        Mat<Rat> term = ent(perm[0] + 1, 1);
        bool zero = term.is_zero();
        for (long j = 2; j <= w && !zero; ++j) {
            const Mat<Rat>& e = ent(perm[(std::size_t)j - 1] + 1, j);
            if (e.is_zero()) {
                zero = true;
                break;
            }
            term = term * e;
        }
        if (zero) continue;
        if (sgn > 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

inline PolyOp<Rat> cbr_transfer_poly(const Monodromy& m, const Mat<Rat>& G, const YoungDiagram& xi) {
    std::size_t d = m.dim();
    if (xi.boxes() == 0) return PolyOp<Rat>::identity(d);
    if (xi.height() > m.n()) return PolyOp<Rat>::zero(d);
    long w = xi.width();
    YoungDiagram xt = xi.transpose();
    const Rat& h = m.spec().hbar;
    std::map<std::pair<long, long>, PolyOp<Rat>> entry;
    auto ent = [&](long i, long j) -> const PolyOp<Rat>& {
        auto key = std::make_pair(i, j);
        auto it = entry.find(key);
        if (it == entry.end()) {
            long a = xt.row((std::size_t)j - 1) + i - j;
            it = entry.emplace(key, transfer_antisym_poly(m, G, (int)a).shift(h * Rat(i - 1))).first;
        }
        return it->second;
    };
    PolyOp<Rat> acc = PolyOp<Rat>::zero(d);
    for (const auto& [perm, sgn] : permutations_signed((int)w)) {
        PolyOp<Rat> term = ent(perm[0] + 1, 1);
        for (long j = 2; j <= w; ++j) term = term * ent(perm[(std::size_t)j - 1] + 1, j);
        acc = (sgn > 0) ? acc + term : acc - term;
    }
    return acc;
}

// --------------------------------------------- null-twist embedded transfers

/**
 * Level-(k+1) null-twist antisymmetric transfer, embedded with index offset r:
 *   sum over J subset {1..k}, |J| = a of  (prod_{j in J} w_{j+r}) T[J+r | J+r+1](u).
 * The auxiliary parameters of the embedded chain sit at shifted positions of
 * the full chain's list.
 */
inline Mat<Rat> null_antisym_at(const Monodromy& m, int a, const Rat& u, int level_k, int offset_r,
                                const std::vector<Rat>& w) {
    std::size_t d = m.dim();
    if (a == 0) return Mat<Rat>::identity(d);
    if (a < 0 || a > level_k) return Mat<Rat>(d, d);
    Mat<Rat> acc(d, d);
    for (const auto& J : index_subsets(level_k, a)) {
        Rat weight(1);
        std::vector<int> rows, cols;
        for (int j : J) {
            weight *= w[(std::size_t)(j + offset_r) - 1];
            rows.push_back(j + offset_r);
            cols.push_back(j + offset_r + 1);
        }
        acc += quantum_minor_at(m, rows, cols, u) * weight;
    }
    return acc;
}

/// CBR assembly of the embedded null-twist fused transfer, evaluated at u.
inline Mat<Rat> null_cbr_at(const Monodromy& m, const YoungDiagram& xi, const Rat& u, int level_k, int offset_r,
                            const std::vector<Rat>& w) {
    std::size_t d = m.dim();
    if (xi.boxes() == 0) return Mat<Rat>::identity(d);
    if (xi.height() > level_k) return Mat<Rat>(d, d);
    long wd = xi.width();
    YoungDiagram xt = xi.transpose();
    const Rat& h = m.spec().hbar;
    std::map<std::pair<long, long>, Mat<Rat>> entry;
    auto ent = [&](long i, long j) -> const Mat<Rat>& {
        auto key = std::make_pair(i, j);
        auto it = entry.find(key);
        if (it == entry.end()) {
            long a = xt.row((std::size_t)j - 1) + i - j;
            it = entry.emplace(key, null_antisym_at(m, (int)a, u + h * Rat(i - 1), level_k, offset_r, w)).first;
        }
        return it->second;
    };
    Mat<Rat> acc(d, d);
    for (const auto& [perm, sgn] : permutations_signed((int)wd)) {
        Mat<Rat> term = ent(perm[0] + 1, 1);
        bool zero = term.is_zero();
        for (long j = 2; j <= wd && !zero; ++j) {
            const Mat<Rat>& e = ent(perm[(std::size_t)j - 1] + 1, j);
            if (e.is_zero()) {
                zero = true;
                break;
            }
            term = term * e;
        }
        if (zero) continue;
        if (sgn > 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

// ------------------------------------------------------------ cross-checks

/// Residual of the exchange relation at one (u,v): zero matrix iff it holds.
inline Mat<Rat> rtt_residual(const Monodromy& m, int i, int j, int k, int l, const Rat& u, const Rat& v) {
    const Rat& h = m.spec().hbar;
    Mat<Rat> lhs = (m.T_at(i, j, u) * m.T_at(k, l, v) - m.T_at(k, l, v) * m.T_at(i, j, u)) * (u - v);
    Mat<Rat> rhs = (m.T_at(k, j, u) * m.T_at(i, l, v) - m.T_at(k, j, v) * m.T_at(i, l, u)) * h;
    return lhs - rhs;
}

/**
 * Difference operators sum_a C_a(u) e^{-a hbar d/du} with operator-matrix
 * coefficients; used to expand the generating determinant.
 */
struct DiffOp {
    Rat hbar;
    std::vector<PolyOp<Rat>> c;  // coefficient of e^{-a hbar d/du}

    static DiffOp zero(const Rat& h, std::size_t dim) { return DiffOp{h, {PolyOp<Rat>::zero(dim)}}; }

    DiffOp mul(const DiffOp& o) const {
        std::size_t dim = 0;
        for (const auto& p : c)
            if (p.dim()) dim = p.dim();
        DiffOp r{hbar, std::vector<PolyOp<Rat>>(c.size() + o.c.size() - 1, PolyOp<Rat>::zero(dim))};
        for (std::size_t a = 0; a < c.size(); ++a) {
            if (c[a].is_zero()) continue;
            for (std::size_t b = 0; b < o.c.size(); ++b) {
                if (o.c[b].is_zero()) continue;
                // e^{-a hbar d} f(u) = f(u - a hbar) e^{-a hbar d}
                r.c[a + b] = r.c[a + b] + c[a] * o.c[b].shift(-hbar * Rat((long)a));
            }
        }
        return r;
    }
};

struct TalalaevReport {
    bool ok = true;
    int first_bad_a = -1;
    std::string detail;
};

/**
 * Column-ordered expansion of the generating determinant of the twisted
 * monodromy; confirms coefficient a equals (-1)^a times the antisymmetric
 * transfer for every a.
 */
inline TalalaevReport talalaev_check(const Monodromy& m, const Mat<Rat>& G) {
    int n = m.n();
    std::size_t d = m.dim();
    const Rat& h = m.spec().hbar;
    // Twisted entries (T G)_{ij}.
    auto tw = [&](int i, int j) {
        PolyOp<Rat> e = PolyOp<Rat>::zero(d);
        for (int k = 1; k <= n; ++k) {
            const Rat& g = G((std::size_t)k - 1, (std::size_t)j - 1);
            if (g == 0) continue;
            e = e + m.T(i, k) * g;
        }
        return e;
    };
    // cdet of A_{ij} = delta_{ij} - (TG)_{ij}(u) e^{-hbar d}: column order.
    DiffOp acc{h, {}};
    bool first = true;
    for (const auto& [perm, sgn] : permutations_signed(n)) {
        DiffOp term{h, {PolyOp<Rat>::identity(d)}};
        for (int col = 1; col <= n; ++col) {
            int row = perm[(std::size_t)col - 1] + 1;
            DiffOp factor{h, {PolyOp<Rat>::zero(d), -tw(row, col)}};
            if (row == col) factor.c[0] = PolyOp<Rat>::identity(d);
            term = term.mul(factor);
        }
        if (sgn < 0)
            for (auto& p : term.c) p = -p;
        if (first) {
            acc = term;
            first = false;
        } else {
            while (acc.c.size() < term.c.size()) acc.c.push_back(PolyOp<Rat>::zero(d));
            for (std::size_t a = 0; a < term.c.size(); ++a) acc.c[a] = acc.c[a] + term.c[a];
        }
    }
    TalalaevReport rep;
    for (int a = 0; a <= n; ++a) {
        PolyOp<Rat> expect = transfer_antisym_poly(m, G, a);
        if (a % 2 == 1) expect = -expect;
        PolyOp<Rat> got = ((std::size_t)a < acc.c.size()) ? acc.c[(std::size_t)a] : PolyOp<Rat>::zero(d);
        if (got != expect) {
            rep.ok = false;
            rep.first_bad_a = a;
            rep.detail = "generating-determinant coefficient mismatch at order " + std::to_string(a);
            return rep;
        }
    }
    return rep;
}

}  // namespace sovlab
