/**
 * @file oracles.hpp
 * @brief Test-only oracles, independent of the library code paths they check:
 *        dimension counts, brute-force expansions, and direct evaluations.
 */
#pragma once

#include "sovlab/betheq.hpp"
#include "sovlab/suites.hpp"

namespace sovlab::oracles {

/// Weyl dimension formula: prod_{i<j} (nu_i - nu_j + j - i)/(j - i).
inline long weyl_dimension(const std::vector<long>& nu) {
    long num = 1, den = 1;
    int n = (int)nu.size();
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            num *= nu[(std::size_t)i - 1] - nu[(std::size_t)j - 1] + j - i;
            den *= j - i;
        }
    return num / den;
}

/// Quantum minor by direct sum over permutations, written independently of
/// quantum_minor: hand-rolled sign and explicit per-factor shifts.
inline Mat<Rat> minor_bruteforce(const Monodromy& m, std::vector<int> rows, std::vector<int> cols, const Rat& u) {
    std::size_t a = rows.size();
    std::size_t d = m.dim();
    if (a == 0) return Mat<Rat>::identity(d);
    std::vector<int> idx((std::size_t)a);
    for (std::size_t i = 0; i < a; ++i) idx[i] = (int)i;
    Mat<Rat> acc(d, d);
    do {
        int sgn = 1;
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = i + 1; j < a; ++j)
                if (idx[i] > idx[j]) sgn = -sgn;
        Mat<Rat> term = Mat<Rat>::identity(d);
        for (std::size_t k = 0; k < a; ++k) {
            Rat point = u - m.spec().hbar * Rat((long)k);
            term = term * m.T(rows[(std::size_t)idx[k]], cols[k])(point);
        }
        if (sgn > 0)
            acc += term;
        else
            acc -= term;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return acc;
}

/// The separating operator expanded monomial by monomial from its multi-index
/// definition, evaluated at a point (n = 3 case written out explicitly).
inline Mat<Rat> b_bruteforce_n3(const Monodromy& m, const Rat& u) {
    const ChainSpec& s = m.spec();
    Mat<Rat> acc(m.dim(), m.dim());
    for (int j1 = 1; j1 <= 2; ++j1) {
        // J_1 = {j1}, J_2 = {1,2}; columns of factor 2 are {1, j1+1}
        Rat weight = s.w[(std::size_t)j1 - 1] * s.w[0] * s.w[1];
        Mat<Rat> f1 = m.T(j1, 1)(u);
        Mat<Rat> f2 = minor_bruteforce(m, {1, 2}, {1, j1 + 1}, u + s.hbar);
        acc += (f1 * f2) * weight;
    }
    return acc;
}

inline ChainSpec t0_spec() {
    ChainSpec s;
    s.n = 2;
    s.L = 1;
    s.weights = {{1, 0}};
    s.theta = {Rat(0)};
    s.hbar = Rat(1);
    s.z = {Rat(2), Rat(3)};
    s.w = {Rat(7)};
    return s;
}

inline ChainSpec t1_spec() {
    ChainSpec s;
    s.n = 3;
    s.L = 2;
    s.weights = {{2, 1, 0}, {2, 1, 0}};
    s.theta = {Rat(0), rat(1, 3)};
    s.hbar = Rat(1);
    s.z = {Rat(2), Rat(3), Rat(5)};
    s.w = {Rat(7), Rat(11)};
    return s;
}

/// One-dimensional chain: every site weight equal to (c,...,c).
inline ChainSpec scalar_chain_spec(int n, long c) {
    ChainSpec s;
    s.n = n;
    s.L = 1;
    s.weights = {std::vector<long>((std::size_t)n, c)};
    s.theta = {Rat(0)};
    s.hbar = Rat(1);
    for (int i = 0; i < n; ++i) s.z.push_back(Rat(2 + i));
    for (int i = 0; i + 1 < n; ++i) s.w.push_back(Rat(7 + 4 * i));
    return s;
}

}  // namespace sovlab::oracles
