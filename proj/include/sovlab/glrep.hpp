/**
 * @file glrep.hpp
 * @brief Finite-dimensional gl(n) irreps realized on the Gelfand-Tsetlin
 *        pattern basis with exact rational matrix elements.
 *
 * The gauge is the classical non-orthonormal one (lowering chains applied to
 * the highest vector), so every matrix element is rational and no square
 * roots appear. Simple-root generators come from the pattern-shift formulas;
 * everything else is filled in by nested commutators through adjacent
 * indices.
 */
#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sovlab/matrix.hpp"
#include "sovlab/rational.hpp"
#include "sovlab/young.hpp"

namespace sovlab {

struct IrrepData {
    int n = 0;
    std::vector<long> weight;
    std::vector<GTPattern> basis;          // canonical (excitation, lex) order
    std::map<std::pair<int, int>, Mat<Rat>> gen;  // (i,j) -> matrix of E_{ij}, 1-based

    std::size_t dim() const { return basis.size(); }
    const Mat<Rat>& E(int i, int j) const { return gen.at({i, j}); }
};

namespace detail {

// l_{kj} = lambda_{kj} - j + 1 for a pattern row.
inline long shifted_entry(const GTPattern& p, int k, int j) { return p.node(k, j) - j + 1; }

inline std::size_t pattern_index(const std::vector<GTPattern>& basis, const GTPattern& p) {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == p) return i;
    throw std::logic_error("pattern_index: pattern not in basis");
}

}  // namespace detail

inline IrrepData build_irrep(const std::vector<long>& nu) {
    for (std::size_t i = 0; i + 1 < nu.size(); ++i)
        if (nu[i] < nu[i + 1]) throw std::invalid_argument("build_irrep: weight must weakly decrease");
    IrrepData rep;
    rep.n = (int)nu.size();
    rep.weight = nu;
    rep.basis = enumerate_gt_patterns(nu);
    const int n = rep.n;
    const std::size_t d = rep.basis.size();

    // Cartan generators: row-sum differences.
    for (int k = 1; k <= n; ++k) {
        Mat<Rat> m(d, d);
        for (std::size_t s = 0; s < d; ++s) {
            long sum_k = 0, sum_km1 = 0;
            for (int j = 1; j <= k; ++j) sum_k += rep.basis[s].node(k, j);
            for (int j = 1; j <= k - 1; ++j) sum_km1 += rep.basis[s].node(k - 1, j);
            m(s, s) = Rat(sum_k - sum_km1);
        }
        rep.gen[{k, k}] = std::move(m);
    }

    // Simple raising/lowering from the pattern-shift formulas.
    for (int k = 1; k <= n - 1; ++k) {
        Mat<Rat> raise(d, d), lower(d, d);
        for (std::size_t s = 0; s < d; ++s) {
            const GTPattern& p = rep.basis[s];
            for (int j = 1; j <= k; ++j) {
                Rat den(1);
                for (int i = 1; i <= k; ++i)
                    if (i != j) den *= Rat(detail::shifted_entry(p, k, i) - detail::shifted_entry(p, k, j));
                // E_{k,k+1}: numerator over row k+1; vanishes exactly at branching maxima.
                Rat num_up(-1);
                for (int i = 1; i <= k + 1; ++i)
                    num_up *= Rat(detail::shifted_entry(p, k + 1, i) - detail::shifted_entry(p, k, j));
                if (num_up != 0) {
                    GTPattern q = p;
                    q.node(k, j) += 1;
                    if (q.valid()) raise(detail::pattern_index(rep.basis, q), s) += num_up / den;
                }
                // E_{k+1,k}: numerator over row k-1; invalid targets are dropped.
                Rat num_dn(1);
                for (int i = 1; i <= k - 1; ++i)
                    num_dn *= Rat(detail::shifted_entry(p, k - 1, i) - detail::shifted_entry(p, k, j));
                if (num_dn != 0) {
                    GTPattern q = p;
                    q.node(k, j) -= 1;
                    if (q.valid()) lower(detail::pattern_index(rep.basis, q), s) += num_dn / den;
                }
            }
        }
        rep.gen[{k, k + 1}] = std::move(raise);
        rep.gen[{k + 1, k}] = std::move(lower);
    }

    // Non-simple generators by nested commutators through adjacent indices:
    // E_{i,j} = [E_{i,m}, E_{m,j}] with m one step from i toward j.
    for (int gap = 2; gap <= n - 1; ++gap) {
        for (int i = 1; i + gap <= n; ++i) {
            int j = i + gap;
            const Mat<Rat>&a = rep.gen[{i, j - 1}], &b = rep.gen[{j - 1, j}];
            rep.gen[{i, j}] = a * b - b * a;
            const Mat<Rat>&c = rep.gen[{j, j - 1}], &e = rep.gen[{j - 1, i}];
            rep.gen[{j, i}] = c * e - e * c;
        }
    }
    return rep;
}

/// Versioned text cache keyed by (n, weight); entries are exact rationals.
inline void irrep_save(const IrrepData& rep, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("irrep_save: cannot open " + path);
    out << "sovlab-irrep-v1\n" << rep.n;
    for (long v : rep.weight) out << " " << v;
    out << "\n" << rep.dim() << "\n";
    for (const auto& [key, mat] : rep.gen) {
        out << key.first << " " << key.second << "\n";
        for (std::size_t i = 0; i < rep.dim(); ++i) {
            for (std::size_t j = 0; j < rep.dim(); ++j) out << rat_to_string(mat(i, j)) << (j + 1 < rep.dim() ? " " : "");
            out << "\n";
        }
    }
}

inline bool irrep_load(IrrepData& rep, int n, const std::vector<long>& nu, const std::string& path) {
    std::ifstream in(path);
    if (!in) return false;
    std::string header;
    if (!std::getline(in, header) || header != "sovlab-irrep-v1") return false;
    int n2 = 0;
    in >> n2;
    if (n2 != n) return false;
    std::vector<long> w((std::size_t)n);
    for (auto& v : w) in >> v;
    if (w != nu) return false;
    std::size_t d = 0;
    in >> d;
    rep.n = n;
    rep.weight = nu;
    rep.basis = enumerate_gt_patterns(nu);
    if (rep.basis.size() != d) return false;
    for (int count = 0; count < n * n; ++count) {
        int i = 0, j = 0;
        if (!(in >> i >> j)) return false;
        Mat<Rat> m(d, d);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                std::string tok;
                if (!(in >> tok)) return false;
                m(a, b) = rat_from_string(tok);
            }
        rep.gen[{i, j}] = std::move(m);
    }
    return true;
}

/// Sum_{ij} E_{ij} E_{ji}; must act as a scalar. Throws if it does not.
inline Rat quadratic_casimir(const IrrepData& rep) {
    std::size_t d = rep.dim();
    Mat<Rat> acc(d, d);
    for (int i = 1; i <= rep.n; ++i)
        for (int j = 1; j <= rep.n; ++j) acc += rep.E(i, j) * rep.E(j, i);
    Rat val = acc(0, 0);
    if (acc != Mat<Rat>::scalar(d, val)) throw std::domain_error("quadratic_casimir: non-scalar result");
    return val;
}

}  // namespace sovlab
