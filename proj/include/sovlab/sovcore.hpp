/**
 * @file sovcore.hpp
 * @brief The separating operator B, its eigenbasis built through the
 *        rank-raising recursion, rescaled covectors, separated coordinates,
 *        and conjugate momenta.
 */
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "sovlab/gtalg.hpp"
#include "sovlab/yangian.hpp"

namespace sovlab {

// ------------------------------------------------------------------ B build

/**
 * B for the embedded chain at the given level and index offset: the
 * multi-index sum over products of shifted untwisted quantum minors
 *   T[J_1 | 1] T[J_2 | 1, J_1+1]^{[2]} ... T[J_{level-1} | 1, J_{level-2}+1]^{[2(level-2)]}
 * weighted by the auxiliary parameters, then normalized monic (the leading
 * coefficient of the raw sum is prod_j w_{j+offset}^{level-j} times identity).
 *
 * level = n, offset = 0 is the chain's own B; level = n-1, offset = 1 is the
 * embedded lower-rank B used by the restriction identity.
 */
inline PolyOp<Rat> build_b_embedded(const Monodromy& m, int level, int offset,
                                    const std::vector<Rat>* w_override = nullptr) {
    const ChainSpec& s = m.spec();
    std::size_t d = m.dim();
    if (level < 1 || level + offset > s.n + 0) throw std::invalid_argument("build_b_embedded: bad level/offset");
    if (level == 1) return PolyOp<Rat>::identity(d);
    const Rat& h = s.hbar;
    const std::vector<Rat>& wlist = w_override ? *w_override : s.w;
    auto w_at = [&](int j) { return wlist[(std::size_t)(j + offset) - 1]; };

    PolyOp<Rat> acc = PolyOp<Rat>::zero(d);
    std::vector<std::vector<int>> chain_sets((std::size_t)level - 1);
    auto rec = [&](auto&& self, int k) -> void {
        if (k == level) {
            PolyOp<Rat> term;
            Rat weight(1);
            for (int kk = 1; kk <= level - 1; ++kk) {
                const auto& J = chain_sets[(std::size_t)kk - 1];
                std::vector<int> rows, cols;
                for (int j : J) rows.push_back(j + offset);
                cols.push_back(1 + offset);
                if (kk >= 2)
                    for (int j : chain_sets[(std::size_t)kk - 2]) cols.push_back(j + 1 + offset);
                for (int j : J) weight *= w_at(j);
                PolyOp<Rat> factor = quantum_minor(m, rows, cols).shift(h * Rat(kk - 1));
                term = (kk == 1) ? std::move(factor) : term * factor;
            }
            acc = acc + term * weight;
            return;
        }
        for (const auto& J : index_subsets(level - 1, k)) {
            chain_sets[(std::size_t)k - 1] = J;
            self(self, k + 1);
        }
    };
    rec(rec, 1);

    Rat lead(1);
    for (int j = 1; j <= level - 1; ++j) lead *= pow_rat(w_at(j), level - j);
    return acc * (Rat(1) / lead);
}

/// The chain's own separating operator, monic of degree L n(n-1)/2.
inline PolyOp<Rat> build_b(const Monodromy& m, const std::vector<Rat>* w_override = nullptr) {
    PolyOp<Rat> b = build_b_embedded(m, m.spec().n, 0, w_override);
    long expect = (long)m.spec().L * m.spec().n * (m.spec().n - 1) / 2;
    if (b.degree() != expect) throw std::domain_error("build_b: unexpected degree");
    return b;
}

/// Quantum minor of the twisted monodromy T(u)G via Cauchy-Binet over columns.
inline PolyOp<Rat> twisted_minor(const Monodromy& m, const Mat<Rat>& G, const std::vector<int>& rows,
                                 const std::vector<int>& cols) {
    std::size_t d = m.dim();
    PolyOp<Rat> acc = PolyOp<Rat>::zero(d);
    for (const auto& C : index_subsets(m.n(), (int)rows.size())) {
        Rat g = scalar_minor(G, C, cols);
        if (g == 0) continue;
        acc = acc + quantum_minor(m, rows, C) * g;
    }
    return acc;
}

/**
 * The separating operator assembled in the twisted frame: products of twisted
 * minors whose column sets append the last auxiliary direction. Proportional
 * to build_b with a z- and w-dependent constant; used to cross-check that the
 * twist eigenvalues drop out.
 */
inline PolyOp<Rat> build_b_twisted_frame(const Monodromy& m, const Mat<Rat>& G) {
    const ChainSpec& s = m.spec();
    int n = s.n;
    std::size_t d = m.dim();
    if (n == 1) return PolyOp<Rat>::identity(d);
    const Rat& h = s.hbar;
    PolyOp<Rat> acc = PolyOp<Rat>::zero(d);
    std::vector<std::vector<int>> chain_sets((std::size_t)n - 1);
    auto rec = [&](auto&& self, int k) -> void {
        if (k == n) {
            PolyOp<Rat> term;
            for (int kk = 1; kk <= n - 1; ++kk) {
                std::vector<int> cols;
                if (kk >= 2) cols = chain_sets[(std::size_t)kk - 2];
                cols.push_back(n);
                PolyOp<Rat> factor = twisted_minor(m, G, chain_sets[(std::size_t)kk - 1], cols).shift(h * Rat(kk - 1));
                term = (kk == 1) ? std::move(factor) : term * factor;
            }
            acc = acc + term;
            return;
        }
        for (const auto& J : index_subsets(n - 1, k)) {
            chain_sets[(std::size_t)k - 1] = J;
            self(self, k + 1);
        }
    };
    rec(rec, 1);
    return acc;
}

// ------------------------------------------------------------- SoV basis

/// Predicted eigenvalue of B on the covector labelled by a tuple.
inline Poly<Rat> b_eigenvalue(const ChainSpec& spec, const PatternTuple& t) {
    std::vector<Rat> roots;
    for (int alpha = 1; alpha <= spec.L; ++alpha)
        for (int k = 1; k <= spec.n - 1; ++k)
            for (int j = 1; j <= k; ++j) roots.push_back(sep_coordinate(spec, t[(std::size_t)alpha - 1], alpha, k, j));
    return poly_from_roots(roots);
}

struct SovBasis {
    const Chain* chain = nullptr;
    std::vector<std::vector<Rat>> covectors;  // canonical global order
    std::vector<std::vector<Rat>> rescaled;   // filled by rescale_to_x

    Mat<Rat> as_matrix() const {
        std::size_t d = covectors.size();
        Mat<Rat> m(d, chain->dim());
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < chain->dim(); ++j) m(i, j) = covectors[i][j];
        return m;
    }
};

/**
 * Eigenbasis recursion: apply to the vacuum, for k = 1..n-1 (lower k
 * leftmost) and every site, the embedded null-twist fused transfer of the
 * k-th dual-diagonal excitation evaluated at theta_alpha + hbar nu^alpha_{k+1}.
 */
inline SovBasis build_sov_basis(const Monodromy& m, const PolyOp<Rat>* b_op = nullptr, bool verify = true,
                                const std::vector<Rat>* w_override = nullptr) {
    const Chain& chain = m.chain();
    const ChainSpec& s = chain.spec();
    SovBasis basis;
    basis.chain = &chain;
    std::vector<Rat> vac = chain.vacuum_covector();
    std::vector<Rat> w = w_override ? *w_override : s.w;
    for (std::size_t g = 0; g < chain.dim(); ++g) {
        PatternTuple t = chain.tuple_at(g);
        std::vector<Rat> v = vac;
        for (int k = 1; k <= s.n - 1; ++k) {
            int r = s.n - k - 1;
            for (int alpha = 1; alpha <= s.L; ++alpha) {
                YoungDiagram mubar = t[(std::size_t)alpha - 1].mubar(k);
                if (mubar.empty()) continue;
                Rat u0 = s.th(alpha) + s.hbar * Rat(s.nu(alpha)[(std::size_t)k]);
                Mat<Rat> op = null_cbr_at(m, mubar, u0, k, r, w);
                v = op.vec_mat(v);
            }
        }
        bool zero = true;
        for (const auto& x : v)
            if (x != 0) zero = false;
        if (zero) throw std::domain_error("build_sov_basis: zero covector (non-generic auxiliary twists?)");
        basis.covectors.push_back(std::move(v));
    }
    if (verify) {
        if (!b_op) throw std::invalid_argument("build_sov_basis: verification needs the separating operator");
        for (std::size_t g = 0; g < chain.dim(); ++g) {
            Poly<Rat> expect = b_eigenvalue(s, chain.tuple_at(g));
            auto applied = b_op->apply_left(basis.covectors[g]);
            std::size_t top = std::max(applied.size(), (std::size_t)(expect.degree() + 1));
            for (std::size_t c = 0; c < top; ++c)
                for (std::size_t x = 0; x < chain.dim(); ++x) {
                    Rat lhs = (c < applied.size()) ? applied[c][x] : Rat(0);
                    if (lhs != expect.coeff(c) * basis.covectors[g][x])
                        throw std::domain_error("build_sov_basis: eigenvalue verification failed");
                }
        }
        if (rank_of(basis.as_matrix()) != chain.dim())
            throw std::domain_error("build_sov_basis: covectors are rank-deficient (re-randomize auxiliary twists)");
    }
    return basis;
}

// --------------------------------------------------------- restriction check

struct RestrictionReport {
    bool ok = true;
    std::size_t checked = 0;
    std::string detail;
};

/**
 * On covectors whose last dual diagonals are all minimal, B of the full chain
 * equals prod_{r=0}^{n-2} nu_n(u + hbar r) times the embedded lower-rank B
 * (both monic), coefficient by coefficient.
 */
inline RestrictionReport restriction_check(const Monodromy& m, const PolyOp<Rat>& b_full, const SovBasis& basis,
                                           const std::vector<Rat>* w_override = nullptr) {
    const Chain& chain = m.chain();
    const ChainSpec& s = chain.spec();
    RestrictionReport rep;
    PolyOp<Rat> b_low = build_b_embedded(m, s.n - 1, 1, w_override);
    Poly<Rat> pref = Poly<Rat>::one();
    Poly<Rat> nu_n = s.weight_poly(s.n);
    for (int r = 0; r <= s.n - 2; ++r) pref = pref * nu_n.shift(s.hbar * Rat(r));
    for (std::size_t g = 0; g < chain.dim(); ++g) {
        PatternTuple t = chain.tuple_at(g);
        bool in_subspace = true;
        for (const auto& p : t)
            if (!p.mubar(s.n - 1).empty()) in_subspace = false;
        if (!in_subspace) continue;
        ++rep.checked;
        auto lhs = b_full.apply_left(basis.covectors[g]);
        auto low = b_low.apply_left(basis.covectors[g]);
        // rhs coefficients: convolution of pref with the vector-valued low.
        std::size_t top = (std::size_t)(pref.degree() + 1) + low.size();
        for (std::size_t c = 0; c < std::max(top, lhs.size()); ++c) {
            std::vector<Rat> rhs(chain.dim(), Rat(0));
            for (std::size_t i = 0; i <= c && i < (std::size_t)(pref.degree() + 1); ++i) {
                if (c - i >= low.size()) continue;
                const Rat& pc = pref.coeff(i);
                if (pc == 0) continue;
                for (std::size_t x = 0; x < chain.dim(); ++x) rhs[x] += pc * low[c - i][x];
            }
            for (std::size_t x = 0; x < chain.dim(); ++x) {
                Rat l = (c < lhs.size()) ? lhs[c][x] : Rat(0);
                if (l != rhs[x]) {
                    rep.ok = false;
                    rep.detail = "restriction mismatch at covector " + std::to_string(g) + ", coefficient " +
                                 std::to_string(c);
                    return rep;
                }
            }
        }
    }
    return rep;
}

// ------------------------------------------------------- rescaling lattice

/**
 * Values of the Gamma function of nu_1 on each site's theta-lattice, anchored
 * to 1 at the minimal point the rescaling needs:
 *   Gamma(theta_a + hbar(m+1)) = nu_1(theta_a + hbar m) Gamma(theta_a + hbar m).
 */
struct GammaLattice {
    std::vector<long> m_min, m_max;
    std::vector<std::vector<Rat>> values;  // per site, index m - m_min

    Rat at(int alpha, long mpoint) const {
        long lo = m_min[(std::size_t)alpha - 1];
        if (mpoint < lo || mpoint > m_max[(std::size_t)alpha - 1])
            throw std::out_of_range("GammaLattice: point outside prepared range");
        return values[(std::size_t)alpha - 1][(std::size_t)(mpoint - lo)];
    }
};

inline GammaLattice build_gamma_lattice(const ChainSpec& s) {
    GammaLattice g;
    Poly<Rat> nu1 = s.weight_poly(1);
    for (int alpha = 1; alpha <= s.L; ++alpha) {
        const auto& nu = s.nu(alpha);
        long lo = nu[(std::size_t)s.n - 1] - (s.n - 1) + 1;  // smallest mu - j + 1
        long hi = nu[0];                                     // largest
        if (s.n == 1) hi = lo;
        g.m_min.push_back(lo);
        g.m_max.push_back(hi);
        std::vector<Rat> vals;
        vals.push_back(Rat(1));  // anchor
        for (long mm = lo; mm < hi; ++mm) {
            Rat point = s.th(alpha) + s.hbar * Rat(mm);
            Rat f = nu1(point);
            if (f == 0)
                throw std::domain_error("gamma lattice: recursion crossed a zero of nu_1 (theta collision?)");
            vals.push_back(vals.back() * f);
        }
        g.values.push_back(std::move(vals));
    }
    return g;
}

/// Fills basis.rescaled: each covector divided by prod over (alpha,k,j) of Gamma at its coordinate.
inline void rescale_to_x(SovBasis& basis, const GammaLattice& gamma) {
    const ChainSpec& s = basis.chain->spec();
    basis.rescaled.clear();
    for (std::size_t g = 0; g < basis.covectors.size(); ++g) {
        PatternTuple t = basis.chain->tuple_at(g);
        Rat scale(1);
        for (int alpha = 1; alpha <= s.L; ++alpha)
            for (int k = 1; k <= s.n - 1; ++k) {
                auto muvals = t[(std::size_t)alpha - 1].mu(k);
                for (int j = 1; j <= k; ++j) scale *= gamma.at(alpha, muvals[(std::size_t)j - 1] - j + 1);
            }
        std::vector<Rat> v = basis.covectors[g];
        for (auto& x : v) x /= scale;
        basis.rescaled.push_back(std::move(v));
    }
}

// --------------------------------------------------------------- momenta

/// X^alpha_{k'j'} on a pattern: in-range coordinate, boundary scalar, or absent.
inline std::optional<Rat> coordinate_or_boundary(const ChainSpec& s, const GTPattern& p, int alpha, int k, int j) {
    if (k >= 1 && k <= s.n - 1 && j >= 1 && j <= k) return sep_coordinate(s, p, alpha, k, j);
    if (j == k + 1 && k >= 0 && k <= s.n - 1) return boundary_coordinate(s, alpha, k);
    return std::nullopt;  // declared absent
}

struct MomentumOp {
    int sign = +1;
    int alpha = 1, k = 1, j = 1;
    Mat<Rat> matrix;  // acts on covector labels: row = source, column = target
};

inline MomentumOp momenta(const Chain& chain, int sign, int alpha, int k, int j) {
    const ChainSpec& s = chain.spec();
    if (k < 1 || k > s.n - 1 || j < 1 || j > k) throw std::invalid_argument("momenta: index out of range");
    MomentumOp op;
    op.sign = sign;
    op.alpha = alpha;
    op.k = k;
    op.j = j;
    op.matrix = Mat<Rat>(chain.dim(), chain.dim());
    for (std::size_t g = 0; g < chain.dim(); ++g) {
        PatternTuple t = chain.tuple_at(g);
        const GTPattern& p = t[(std::size_t)alpha - 1];
        Rat x0 = sep_coordinate(s, p, alpha, k, j);
        Rat c(1);
        if (sign > 0) {
            if (auto a = coordinate_or_boundary(s, p, alpha, k - 1, j)) c *= (*a - x0);
            if (auto a = coordinate_or_boundary(s, p, alpha, k, j - 1)) c *= (*a - x0 - s.hbar);
        } else {
            if (auto a = coordinate_or_boundary(s, p, alpha, k + 1, j)) c *= (x0 - *a);
            if (auto a = coordinate_or_boundary(s, p, alpha, k, j + 1)) c *= (x0 - *a - s.hbar);
        }
        GTPattern q = p;
        q.node(s.n - k + j - 1, j) += (sign > 0) ? 1 : -1;
        if (!q.valid()) {
            if (c != 0) throw std::domain_error("momenta: nonzero coefficient onto an invalid pattern");
            continue;
        }
        if (c == 0) continue;
        PatternTuple t2 = t;
        t2[(std::size_t)alpha - 1] = q;
        op.matrix(g, chain.tuple_to_index(t2)) = c;
    }
    return op;
}

/// Diagonal matrix of the coordinate X^alpha_{kj} in the covector-label basis.
inline Mat<Rat> coordinate_matrix(const Chain& chain, int alpha, int k, int j) {
    const ChainSpec& s = chain.spec();
    Mat<Rat> m(chain.dim(), chain.dim());
    for (std::size_t g = 0; g < chain.dim(); ++g)
        m(g, g) = sep_coordinate(s, chain.tuple_at(g)[(std::size_t)alpha - 1], alpha, k, j);
    return m;
}

// ------------------------------------------------------------ intertwining

/// f(u,v) = prod_{a=1}^{h} (u - v + hbar(a-1-xi_a)) / (u - v + hbar(a-1)).
inline Rat intertwining_factor(const YoungDiagram& xi, const Rat& u, const Rat& v, const Rat& hbar) {
    Rat num(1), den(1);
    for (long a = 1; a <= xi.height(); ++a) {
        num *= (u - v + hbar * Rat(a - 1 - xi.row((std::size_t)a - 1)));
        den *= (u - v + hbar * Rat(a - 1));
    }
    if (den == 0) throw std::domain_error("intertwining_factor: pole at this (u,v)");
    return num / den;
}

/// Full-chain admissibility at v: the covector kills every T_{j1}(v).
inline bool admissible_at(const Monodromy& m, const std::vector<Rat>& covector, const Rat& v, int offset_r = 0) {
    for (int j = 1; j + offset_r <= m.n(); ++j) {
        auto res = m.T_at(j + offset_r, 1 + offset_r, v).vec_mat(covector);
        for (const auto& x : res)
            if (x != 0) return false;
    }
    return true;
}

// ------------------------------------------------------------------- ASTL

/**
 * Decomposes each recursion covector built with w_k = t^{n-k} over the
 * w-independent joint eigenbasis, normalizes the diagonal label to 1, and
 * returns the largest off-label coefficient magnitude per covector.
 */
inline std::vector<Rat> astl_off_components(const Monodromy& m, const GTBasis& gt, const Rat& t) {
    const Chain& chain = m.chain();
    const ChainSpec& s = chain.spec();
    std::vector<Rat> w;
    for (int k = 1; k <= s.n - 1; ++k) w.push_back(pow_rat(t, s.n - k));
    SovBasis sb = build_sov_basis(m, nullptr, false, &w);
    Mat<Rat> G = gt.as_matrix().transpose();  // columns = GT covectors
    std::vector<Rat> out;
    for (std::size_t g = 0; g < chain.dim(); ++g) {
        Mat<Rat> rhs(chain.dim(), 1);
        for (std::size_t x = 0; x < chain.dim(); ++x) rhs(x, 0) = sb.covectors[g][x];
        Mat<Rat> coef = lu_solve(G, rhs);
        Rat diag = coef(g, 0);
        if (diag == 0) throw std::domain_error("astl: vanishing diagonal component");
        Rat worst(0);
        for (std::size_t x = 0; x < chain.dim(); ++x) {
            if (x == g) continue;
            Rat t2 = abs_rat(coef(x, 0) / diag);
            if (t2 > worst) worst = t2;
        }
        out.push_back(worst);
    }
    return out;
}

}  // namespace sovlab
