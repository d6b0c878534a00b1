/**
 * @file gtalg.hpp
 * @brief The commuting family of diagonal quantum minors, its raising and
 *        lowering minors, the rank-raising embedding, composite raisers, and
 *        the recursive construction of the joint eigenbasis of covectors.
 *
 * States are covectors throughout, acted on from the right; this mirrors the
 * bra conventions used by the eigenbasis recursion.
 */
#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sovlab/yangian.hpp"

namespace sovlab {

inline std::vector<int> index_range(int lo, int hi) {  // inclusive
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

/// Diagonal quantum minor on rows/cols {1..a}; the commuting family generator.
inline PolyOp<Rat> gt_generator(const Monodromy& m, int a) {
    if (a < 1 || a > m.n()) throw std::invalid_argument("gt_generator: a out of range");
    return quantum_minor(m, index_range(1, a), index_range(1, a));
}

/// Raising/lowering minors: rows {1..a-1,a}, cols {1..a-1,a+1} and transposed roles.
inline PolyOp<Rat> gp_raise(const Monodromy& m, int a) {
    if (a < 1 || a > m.n() - 1) throw std::invalid_argument("gp_raise: a out of range");
    std::vector<int> rows = index_range(1, a);
    std::vector<int> cols = index_range(1, a - 1);
    cols.push_back(a + 1);
    return quantum_minor(m, rows, cols);
}
inline PolyOp<Rat> gp_lower(const Monodromy& m, int a) {
    if (a < 1 || a > m.n() - 1) throw std::invalid_argument("gp_lower: a out of range");
    std::vector<int> rows = index_range(1, a - 1);
    rows.push_back(a + 1);
    std::vector<int> cols = index_range(1, a);
    return quantum_minor(m, rows, cols);
}

/// Predicted joint eigenvalue of the a-th generator on the covector labelled by a tuple.
inline Poly<Rat> gt_eigenvalue(const ChainSpec& spec, const PatternTuple& t, int a) {
    Poly<Rat> p = Poly<Rat>::one();
    for (int alpha = 1; alpha <= spec.L; ++alpha)
        for (int j = 1; j <= a; ++j) {
            Rat root = spec.th(alpha) + spec.hbar * Rat(t[(std::size_t)alpha - 1].node(a, j) + a - j);
            p = p * Poly<Rat>(std::vector<Rat>{-root, Rat(1)});
        }
    return p;
}

/**
 * Composite raiser for one dual diagonal, embedded with index offset r and
 * evaluated column by column: the j-th column of shape mubar contributes the
 * minor on rows {1+r..h_j+r}, cols {2+r..h_j+r+1} at u0 + hbar (j-1).
 * Returns the evaluated matrix product (left-to-right over columns).
 */
inline Mat<Rat> composite_raise_at(const Monodromy& m, const YoungDiagram& mubar, const Rat& u0, int offset_r) {
    std::size_t d = m.dim();
    Mat<Rat> acc = Mat<Rat>::identity(d);
    const Rat& h = m.spec().hbar;
    for (long j = 1; j <= mubar.width(); ++j) {
        long hj = mubar.column_height(j);
        std::vector<int> rows, cols;
        for (long i = 1; i <= hj; ++i) {
            rows.push_back((int)i + offset_r);
            cols.push_back((int)i + 1 + offset_r);
        }
        acc = acc * quantum_minor_at(m, rows, cols, u0 + h * Rat(j - 1));
    }
    return acc;
}

struct GTBasis {
    const Chain* chain = nullptr;
    std::vector<std::vector<Rat>> covectors;  // one per tuple, canonical global order

    const std::vector<Rat>& covector(std::size_t g) const { return covectors[g]; }

    /// Stack covectors as rows.
    Mat<Rat> as_matrix() const {
        std::size_t d = covectors.size();
        Mat<Rat> m(d, chain->dim());
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < chain->dim(); ++j) m(i, j) = covectors[i][j];
        return m;
    }
};

/**
 * Recursive eigenbasis build: starting from the vacuum covector, excite dual
 * diagonals k = 1..n-1 (lower k leftmost) at every site through embedded
 * composite raisers evaluated at theta_alpha + hbar nu^alpha_{k+1}.
 */
inline GTBasis build_gt_basis(const Monodromy& m, bool verify = true) {
    const Chain& chain = m.chain();
    const ChainSpec& s = chain.spec();
    GTBasis basis;
    basis.chain = &chain;
    std::vector<Rat> vac = chain.vacuum_covector();
    for (std::size_t g = 0; g < chain.dim(); ++g) {
        PatternTuple t = chain.tuple_at(g);
        std::vector<Rat> v = vac;
        for (int k = 1; k <= s.n - 1; ++k) {
            int r = s.n - k - 1;
            for (int alpha = 1; alpha <= s.L; ++alpha) {
                YoungDiagram mubar = t[(std::size_t)alpha - 1].mubar(k);
                if (mubar.empty()) continue;
                Rat u0 = s.th(alpha) + s.hbar * Rat(s.nu(alpha)[(std::size_t)k]);
                Mat<Rat> op = composite_raise_at(m, mubar, u0, r);
                v = op.vec_mat(v);
            }
        }
        bool zero = true;
        for (const auto& x : v)
            if (x != 0) zero = false;
        if (zero) throw std::domain_error("build_gt_basis: recursion produced the zero covector (theta collision?)");
        basis.covectors.push_back(std::move(v));
    }
    if (verify) {
        std::vector<PolyOp<Rat>> gts;
        for (int a = 1; a <= s.n; ++a) gts.push_back(gt_generator(m, a));
        for (std::size_t g = 0; g < chain.dim(); ++g) {
            PatternTuple t = chain.tuple_at(g);
            for (int a = 1; a <= s.n; ++a) {
                Poly<Rat> expect = gt_eigenvalue(s, t, a);
                auto applied = gts[(std::size_t)a - 1].apply_left(basis.covectors[g]);
                for (std::size_t c = 0; c < applied.size(); ++c)
                    for (std::size_t x = 0; x < chain.dim(); ++x)
                        if (applied[c][x] != expect.coeff(c) * basis.covectors[g][x])
                            throw std::domain_error("build_gt_basis: eigenvalue verification failed");
            }
        }
        if (rank_of(basis.as_matrix()) != chain.dim())
            throw std::domain_error("build_gt_basis: covectors are rank-deficient");
    }
    return basis;
}

/// Text cache for a built basis, keyed by the chain configuration.
inline void gt_basis_save(const GTBasis& b, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("gt_basis_save: cannot open " + path);
    out << "sovlab-gtbasis-v1\n" << b.chain->spec().cache_key() << "\n" << b.covectors.size() << "\n";
    for (const auto& v : b.covectors) {
        for (std::size_t i = 0; i < v.size(); ++i) out << rat_to_string(v[i]) << (i + 1 < v.size() ? " " : "");
        out << "\n";
    }
}

inline bool gt_basis_load(GTBasis& b, const Chain& chain, const std::string& path) {
    std::ifstream in(path);
    if (!in) return false;
    std::string header, key;
    std::size_t count = 0;
    if (!std::getline(in, header) || header != "sovlab-gtbasis-v1") return false;
    if (!std::getline(in, key) || key != chain.spec().cache_key()) return false;
    in >> count;
    if (count != chain.dim()) return false;
    b.chain = &chain;
    b.covectors.assign(count, std::vector<Rat>(chain.dim()));
    for (auto& v : b.covectors)
        for (auto& x : v) {
            std::string tok;
            in >> tok;
            x = rat_from_string(tok);
        }
    return bool(in);
}

struct AgreementReport {
    bool ok = true;
    std::string detail;
};

/**
 * On covectors with the last dual diagonal minimal, the rank-raising map
 * realized through the normalized shifted minor agrees with the plain
 * index-shift embedding:
 *   v . T[1,1+i | 1,1+j](u+hbar) == nu_n(u+hbar) * v . T_{1+i,1+j}(u).
 */
inline AgreementReport psi_phi_agreement_check(const Monodromy& m, const std::vector<Rat>& covector,
                                               const std::vector<Rat>& sample_points) {
    const ChainSpec& s = m.spec();
    AgreementReport rep;
    Poly<Rat> nu_n = s.weight_poly(s.n);
    for (int i = 1; i <= s.n - 1 && rep.ok; ++i)
        for (int j = 1; j <= s.n - 1 && rep.ok; ++j)
            for (const Rat& u : sample_points) {
                Mat<Rat> lhs_op = quantum_minor_at(m, {1, 1 + i}, {1, 1 + j}, u + s.hbar);
                std::vector<Rat> lhs = lhs_op.vec_mat(covector);
                std::vector<Rat> rhs = m.T_at(1 + i, 1 + j, u).vec_mat(covector);
                Rat scale = nu_n(u + s.hbar);
                for (std::size_t x = 0; x < lhs.size(); ++x)
                    if (lhs[x] != scale * rhs[x]) {
                        rep.ok = false;
                        rep.detail = "embedding disagreement at (i,j)=(" + std::to_string(i) + "," +
                                     std::to_string(j) + "), u=" + rat_to_string(u);
                        break;
                    }
            }
    return rep;
}

}  // namespace sovlab
