/**
 * @file betheq.hpp
 * @brief Numeric layer: simultaneous diagonalization of the conserved
 *        charges, per-eigenstate Baxter polynomials from the finite-difference
 *        equation, the bilinear table of multi-index Q-functions, Wronskian
 *        transfer values, and the wave-function factorization machinery.
 *
 * Q-functions are computed per eigenstate from transfer-matrix eigenvalues,
 * never as operators. Every check here is projective or a ratio in which
 * the ladder factors collapse to finite products, so no global Gamma
 * normalization ever enters.
 */
#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sovlab/eigen.hpp"
#include "sovlab/sovcore.hpp"
#include "sovlab/yangian.hpp"

namespace sovlab {

// ------------------------------------------------------------ twisted polys

/// z_I^{u/hbar} times a monic polynomial; the index set selects twist eigenvalues.
struct TwistedPoly {
    std::vector<int> zidx;  // sorted subset of 1..n
    Poly<Complex> p;

    /// Principal-branch evaluation at a rational point.
    Complex eval(const ChainSpec& s, const Rat& u) const {
        Complex acc = p(complex_from_rat(u));
        Rat e = u / s.hbar;
        for (int i : zidx) acc *= cpow(complex_from_rat(s.z[(std::size_t)i - 1]), e);
        return acc;
    }
    long degree() const { return p.degree(); }
};

/// prod_{a<b in I} (z_a - z_b)/(z_a z_b); the canonical normalization constant.
inline Complex q_normalization(const ChainSpec& s, const std::vector<int>& I) {
    Complex acc(1);
    for (std::size_t a = 0; a < I.size(); ++a)
        for (std::size_t b = a + 1; b < I.size(); ++b) {
            Complex za = complex_from_rat(s.z[(std::size_t)I[a] - 1]);
            Complex zb = complex_from_rat(s.z[(std::size_t)I[b] - 1]);
            acc *= (za - zb) / (za * zb);
        }
    return acc;
}

// ------------------------------------------------------------- Bethe states

struct BetheState {
    std::size_t index = 0;
    std::vector<Complex> psi;        // right eigenvector
    std::vector<Complex> left;       // left eigenvector with left^H psi = 1
    std::vector<Poly<Complex>> tau;  // tau[a-1](u), a = 1..n
    std::vector<TwistedPoly> qhat;   // qhat[i-1], single index i
    std::map<std::vector<int>, TwistedPoly> qtable;  // multi-index table incl. singles
    Real diag_residual = Real(0);
};

struct CheckReport {
    bool ok = true;
    Real worst = Real(0);
    std::string detail;

    void update(const Real& r, const Real& tol, const std::string& what) {
        if (r > worst) worst = r;
        if (r > tol && ok) {
            ok = false;
            detail = what;
        }
    }
    void merge(const CheckReport& o) {
        if (o.worst > worst) worst = o.worst;
        if (!o.ok && ok) {
            ok = false;
            detail = o.detail;
        }
    }
};

// ---------------------------------------------------------------- the lab

class BetheLab {
  public:
    /// w_override must match the auxiliary parameters the covector basis was
    /// built with; the default is the chain's own list.
    BetheLab(const Monodromy& mon, Policy pol, unsigned seed = 1, const std::vector<Rat>* w_override = nullptr)
        : mon_(&mon), pol_(pol), seed_(seed) {
        const ChainSpec& s = mon.spec();
        s.validate(true);
        G_ = TwistSpec::make(TwistKind::MCT, s.n, s.z, w_override ? *w_override : s.w).G;
        for (int a = 1; a <= s.n; ++a) {
            transfer_exact_.push_back(transfer_antisym_poly(mon, G_, a));
            transfer_num_.push_back(to_complex(transfer_exact_.back()));
        }
        chi_ = elementary_symmetric(s.z);
    }

    const ChainSpec& spec() const { return mon_->spec(); }
    const Policy& policy() const { return pol_; }
    const std::vector<BetheState>& states() const { return states_; }
    std::vector<BetheState>& states() { return states_; }
    const PolyOp<Rat>& transfer_exact(int a) const { return transfer_exact_[(std::size_t)a - 1]; }

    Mat<Complex> transfer_num_at(int a, const Rat& u) const {
        auto key = std::make_pair(a, u);
        auto it = tcache_.find(key);
        if (it == tcache_.end())
            it = tcache_.emplace(key, transfer_num_[(std::size_t)a - 1](complex_from_rat(u))).first;
        return it->second;
    }

    /// tau_xi(u0) for one state by the column determinant over tau_{a,1} values.
    Complex tau_fused(const BetheState& st, const YoungDiagram& xi, const Rat& u0) const {
        const ChainSpec& s = spec();
        if (xi.boxes() == 0) return Complex(1);
        if (xi.height() > s.n) return Complex(0);
        long wd = xi.width();
        YoungDiagram xt = xi.transpose();
        auto ent = [&](long i, long j) -> Complex {
            long a = xt.row((std::size_t)j - 1) + i - j;
            if (a < 0 || a > s.n) return Complex(0);
            if (a == 0) return Complex(1);
            Rat point = u0 + s.hbar * Rat(i - 1);
            return st.tau[(std::size_t)a - 1](complex_from_rat(point));
        };
        Complex acc(0);
        for (const auto& [perm, sgn] : permutations_signed((int)wd)) {
            Complex term(1);
            for (long j = 1; j <= wd; ++j) term *= ent(perm[(std::size_t)j - 1] + 1, j);
            acc += Complex(sgn) * term;
        }
        return acc;
    }

    // ------------------------------------------------------- diagonalization

    /**
     * Diagonalizes a seeded random combination of the charges, validates each
     * eigenvector against every charge at aL+1 points, and interpolates the
     * eigenvalue polynomials. Retries with a fresh seed on clustering.
     */
    CheckReport diagonalize(int max_attempts = 3) {
        CheckReport last;
        const ChainSpec& s = spec();
        std::size_t d = mon_->dim();
        std::mt19937_64 rng(seed_);
        for (int attempt = 0; attempt < max_attempts; ++attempt) {
            CheckReport rep;
            std::uniform_int_distribution<int> num(2, 19), den(1, 7);
            Mat<Complex> M(d, d);
            for (int a = 1; a <= s.n; ++a) {
                Rat c = rat(num(rng), den(rng));
                Rat point = rat(num(rng), den(rng));
                M += transfer_num_at(a, point) * complex_from_rat(c);
            }
            EigenResult er = eigen_decompose(M, pol_);
            if (!er.converged) {
                last.ok = false;
                last.detail = er.detail;
                continue;
            }
            bool clustered = false;
            for (std::size_t i = 0; i < d && !clustered; ++i)
                for (std::size_t j = i + 1; j < d; ++j)
                    if (abs(er.values[i] - er.values[j]) < pol_.cluster_tol()) {
                        clustered = true;
                        break;
                    }
            if (clustered) {
                last.ok = false;
                last.detail = "clustered eigenvalues; retried with a fresh seed";
                continue;
            }
            states_.clear();
            for (std::size_t i = 0; i < d; ++i) {
                BetheState st;
                st.index = i;
                st.psi = er.right[i];
                st.left = er.left[i];
                for (int a = 1; a <= s.n; ++a) {
                    long deg = (long)a * s.L;
                    // residual scale: coefficient size of the polynomial, not the
                    // evaluated matrix (which can vanish identically at a point)
                    Real coeff_scale(0);
                    for (const auto& cm : transfer_num_[(std::size_t)a - 1].coeffs()) {
                        Real t = max_abs(cm);
                        if (t > coeff_scale) coeff_scale = t;
                    }
                    if (coeff_scale == 0) coeff_scale = Real(1);
                    std::vector<Complex> pts, vals;
                    for (long k = 0; k <= deg; ++k) {
                        Rat u = Rat(k) - rat(deg, 2);
                        pts.push_back(complex_from_rat(u));
                        Mat<Complex> Tn = transfer_num_at(a, u);
                        // Rayleigh value through the bi-orthogonal pair
                        std::vector<Complex> Tv = Tn.mat_vec(st.psi);
                        Complex val(0);
                        for (std::size_t x = 0; x < d; ++x) val += conj(st.left[x]) * Tv[x];
                        vals.push_back(val);
                        Real nv(0);
                        for (std::size_t x = 0; x < d; ++x) {
                            Real t = abs(Tv[x] - val * st.psi[x]);
                            if (t > nv) nv = t;
                        }
                        Real au = abs(pts.back());
                        Real nt = coeff_scale * pow(std::max(Real(1), au), (int)deg);
                        rep.update(nv / nt, pol_.check_tol(), "transfer eigen-residual, state " + std::to_string(i));
                        if (nv / nt > st.diag_residual) st.diag_residual = nv / nt;
                    }
                    st.tau.push_back(interpolate_poly(pts, vals));
                    // leading coefficient must be the symmetric function of the twist
                    Complex lead = st.tau.back().coeff((std::size_t)deg);
                    Real dl = abs(lead - complex_from_rat(chi_[(std::size_t)a - 1]));
                    rep.update(dl / (Real(1) + abs(lead)), pol_.check_tol(), "tau leading coefficient");
                }
                states_.push_back(std::move(st));
            }
            if (rep.ok) return rep;
            last = rep;
        }
        if (last.ok) {
            last.ok = false;
            last.detail = "diagonalization failed after retries (degenerate combination?)";
        }
        return last;
    }

    // ------------------------------------------------------- Baxter solve

    /// nu_1-ladder weight prod_{b=a}^{n-1} nu_1(u - hbar b) of the difference equation.
    Poly<Complex> baxter_weight(int a) const {
        const ChainSpec& s = spec();
        Poly<Rat> nu1 = s.weight_poly(1);
        Poly<Rat> acc = Poly<Rat>::one();
        for (int b = a; b <= s.n - 1; ++b) acc = acc * nu1.shift(-s.hbar * Rat(b));
        return to_complex(acc);
    }

    /**
     * Minimal-degree monic twisted polynomial annihilated by the conserved
     * charges' finite-difference operator at twist eigenvalue z_i:
     *   sum_a (-1)^a z_i^{-a} tau_a(u) [prod_{b=a}^{n-1} nu_1(u-hbar b)] p(u+hbar(1-a)) = 0.
     */
    /// Total polynomial degree across the n solutions, from the degree count
    /// of the staggered determinant identity: sum_alpha (n nu^a_1 - sum_j nu^a_j).
    long baxter_degree_sum() const {
        const ChainSpec& s = spec();
        long total = 0;
        for (int alpha = 1; alpha <= s.L; ++alpha)
            for (long v : s.nu(alpha)) total += s.nu(alpha)[0] - v;
        return total;
    }

    CheckReport solve_baxter(BetheState& st, int i) {
        CheckReport rep;
        const ChainSpec& s = spec();
        Complex zi = complex_from_rat(s.z[(std::size_t)i - 1]);
        long degree_budget = baxter_degree_sum();
        // G_a(u) = (-1)^a z_i^{-a} tau_a(u) weight_a(u)
        std::vector<Poly<Complex>> Ga;
        for (int a = 0; a <= s.n; ++a) {
            Poly<Complex> t = (a == 0) ? Poly<Complex>::one() : st.tau[(std::size_t)a - 1];
            Poly<Complex> g = t * baxter_weight(a);
            Complex c = pow(zi, -a);
            if (a % 2 == 1) c = -c;
            Ga.push_back(g * c);
        }
        Complex hbar_c = complex_from_rat(s.hbar);
        // Residuals are judged against the size of the equation's inputs, not
        // the assembled columns (those vanish when a candidate solves exactly).
        Real scale(0);
        for (const auto& g : Ga)
            for (const auto& cc : g.coeffs()) {
                Real t = abs(cc);
                if (t > scale) scale = t;
            }
        if (scale == 0) scale = Real(1);
        long found = -1;
        Poly<Complex> found_p;
        for (long M = 0; M <= degree_budget; ++M) {
            // columns: monomial coefficients c_0..c_{M-1}; monic top fixed.
            std::vector<Poly<Complex>> basis((std::size_t)M + 1);
            for (long k = 0; k <= M; ++k) {
                Poly<Complex> acc;
                for (int a = 0; a <= s.n; ++a) {
                    Poly<Complex> mono = Poly<Complex>::monomial((std::size_t)k).shift(hbar_c * Complex(1 - a));
                    acc = acc + Ga[(std::size_t)a] * mono;
                }
                basis[(std::size_t)k] = acc;
            }
            long rows = 0;
            for (const auto& b : basis) rows = std::max(rows, b.degree() + 1);
            Real resid(0);
            if (M == 0) {
                for (const auto& c : basis[0].coeffs()) resid += norm(c);
                resid = sqrt(resid);
            } else {
                Mat<Complex> A((std::size_t)rows, (std::size_t)M);
                std::vector<Complex> b((std::size_t)rows, Complex(0));
                for (long k = 0; k < M; ++k)
                    for (long r = 0; r <= basis[(std::size_t)k].degree(); ++r)
                        A((std::size_t)r, (std::size_t)k) = basis[(std::size_t)k].coeff((std::size_t)r);
                for (long r = 0; r <= basis[(std::size_t)M].degree(); ++r) b[(std::size_t)r] = -basis[(std::size_t)M].coeff((std::size_t)r);
                std::vector<Complex> x = least_squares(A, b, &resid);
                if (resid / scale <= pol_.baxter_tol()) {
                    std::vector<Complex> coeffs = x;
                    coeffs.push_back(Complex(1));
                    if (found < 0) {
                        found = M;
                        found_p = Poly<Complex>(coeffs);
                    } else {
                        rep.ok = false;
                        rep.detail = "ambiguous Baxter degree (" + std::to_string(found) + " and " +
                                     std::to_string(M) + ") - raise precision";
                        return rep;
                    }
                }
                continue;
            }
            if (resid / scale <= pol_.baxter_tol()) {
                if (found < 0) {
                    found = M;
                    found_p = Poly<Complex>(std::vector<Complex>{Complex(1)});
                } else {
                    rep.ok = false;
                    rep.detail = "ambiguous Baxter degree";
                    return rep;
                }
            }
        }
        if (found < 0) {
            rep.ok = false;
            rep.detail = "no polynomial degree admits a solution (contaminated state or precision shortfall)";
            return rep;
        }
        TwistedPoly q;
        q.zidx = {i};
        q.p = found_p;
        if ((long)st.qhat.size() < i) st.qhat.resize((std::size_t)i);
        st.qhat[(std::size_t)i - 1] = q;
        st.qtable[{i}] = std::move(q);
        return rep;
    }

    // ----------------------------------------------------------- QQ table

    /// Ladder polynomial of the bilinear relation at level m = |I|.
    Poly<Complex> qq_ladder(int m) const {
        const ChainSpec& s = spec();
        Poly<Rat> acc = Poly<Rat>::one();
        for (int alpha = 1; alpha <= s.L; ++alpha) {
            long hi = s.nu(alpha)[(std::size_t)m];      // nu_{m+1}
            long lo = s.nu(alpha)[(std::size_t)m + 1];  // nu_{m+2}
            for (long c = lo + 1; c <= hi; ++c) {
                Rat root = s.th(alpha) + s.hbar * Rat(c);
                acc = acc * Poly<Rat>(std::vector<Rat>{-root, Rat(1)});
            }
        }
        return to_complex(acc);
    }

    /**
     * Raw bilinear combination for extending I by {i,j}: the polynomial
     *   z_j^{-1} p_{Ii}(u) p_{Ij}(u-hbar) - z_i^{-1} p_{Ij}(u) p_{Ii}(u-hbar)
     * divided exactly by p_I(u-hbar) times the ladder. Unnormalized.
     */
    Poly<Complex> qq_extend_raw(const BetheState& st, const std::vector<int>& I, int i, int j,
                                Real* rel_remainder = nullptr) const {
        const ChainSpec& s = spec();
        auto sorted_with = [&](int extra) {
            std::vector<int> v = I;
            v.push_back(extra);
            std::sort(v.begin(), v.end());
            return v;
        };
        const Poly<Complex>& pI = st.qtable.at(I).p;
        const Poly<Complex>& pi = st.qtable.at(sorted_with(i)).p;
        const Poly<Complex>& pj = st.qtable.at(sorted_with(j)).p;
        Complex hbar_c = complex_from_rat(s.hbar);
        Complex zi = complex_from_rat(s.z[(std::size_t)i - 1]);
        Complex zj = complex_from_rat(s.z[(std::size_t)j - 1]);
        Poly<Complex> W = pi * pj.shift(-hbar_c) * (Complex(1) / zj) - pj * pi.shift(-hbar_c) * (Complex(1) / zi);
        Poly<Complex> den = pI.shift(-hbar_c) * qq_ladder((int)I.size());
        auto [quot, rem] = Poly<Complex>::divrem(W, den);
        Real scale(0);
        for (const auto& c : W.coeffs()) {
            Real t = abs(c);
            if (t > scale) scale = t;
        }
        if (scale == 0) scale = Real(1);
        Real rr(0);
        for (const auto& c : rem.coeffs()) rr += norm(c);
        rr = sqrt(rr) / scale;
        if (rel_remainder) *rel_remainder = rr;
        return quot;
    }

    /// Builds every multi-index Q up to the full set, monic-normalized.
    CheckReport qq_build(BetheState& st) {
        CheckReport rep;
        const ChainSpec& s = spec();
        st.qtable[{}] = TwistedPoly{{}, Poly<Complex>::one()};
        for (int size = 2; size <= s.n; ++size) {
            for (const auto& S : index_subsets(s.n, size)) {
                int j = S.back(), i = S[(std::size_t)size - 2];
                std::vector<int> I(S.begin(), S.end() - 2);
                Real rr(0);
                Poly<Complex> quot = qq_extend_raw(st, I, i, j, &rr);
                rep.update(rr, pol_.check_tol(), "inexact bilinear division at {" + std::to_string(i) + "," +
                                                     std::to_string(j) + "}");
                if (quot.is_zero()) {
                    rep.ok = false;
                    rep.detail = "vanishing quotient in the bilinear recursion";
                    return rep;
                }
                TwistedPoly q;
                q.zidx = S;
                q.p = quot.monic();
                st.qtable[S] = std::move(q);
            }
        }
        // the full-set polynomial part must be constant
        const Poly<Complex>& full = st.qtable.at(index_subsets(s.n, s.n)[0]).p;
        rep.update(Real(full.degree() > 0 ? 1 : 0), pol_.check_tol(), "full-index polynomial not constant");
        return rep;
    }

    // ------------------------------------------------- Wronskian transfers

    /**
     * Truncated Wronskian transfer value at a rational point:
     *   ladder factor  *  det[ qhat_{sigma(i)}(u0 + hbar xihat_j) ]
     *                   / det[ qhat_{sigma(i)}(u0 + hbar (1-j)) ].
     * The ladder factor collapses the Gamma content of the determinant ratio:
     *   prod_alpha prod_j prod_{b=0}^{xi_j - 1} (u0 - theta_alpha + hbar(1 - j - nu^alpha_1 + b)).
     */
    Complex wronskian_transfer(const BetheState& st, int k, const YoungDiagram& xi, const Rat& u0,
                               const std::vector<int>* sigma = nullptr, CheckReport* err = nullptr) const {
        const ChainSpec& s = spec();
        auto sig = [&](int i) { return sigma ? (*sigma)[(std::size_t)i - 1] : i; };
        Mat<Complex> num((std::size_t)k, (std::size_t)k), den((std::size_t)k, (std::size_t)k);
        for (int i = 1; i <= k; ++i)
            for (int j = 1; j <= k; ++j) {
                Rat pnum = u0 + s.hbar * Rat(xi.row((std::size_t)j - 1) - j + 1);
                Rat pden = u0 + s.hbar * Rat(1 - j);
                num((std::size_t)i - 1, (std::size_t)j - 1) = st.qhat[(std::size_t)sig(i) - 1].eval(s, pnum);
                den((std::size_t)i - 1, (std::size_t)j - 1) = st.qhat[(std::size_t)sig(i) - 1].eval(s, pden);
            }
        Complex dden = det_of(den);
        if (abs(dden) == Real(0)) {
            if (err) {
                err->ok = false;
                err->detail = "Wronskian denominator vanishes at the requested point";
            }
            return Complex(0);
        }
        Complex ladder(1);
        for (int alpha = 1; alpha <= s.L; ++alpha)
            for (int j = 1; j <= k; ++j)
                for (long b = 0; b < xi.row((std::size_t)j - 1); ++b) {
                    Rat f = u0 - s.th(alpha) + s.hbar * Rat(1 - j - s.nu(alpha)[0] + b);
                    ladder *= complex_from_rat(f);
                }
        return ladder * det_of(num) / dden;
    }

    /// Quantum-eigenvalue function built from the nested polynomial ratios.
    Complex quantum_eigenvalue(const BetheState& st, int r, const Rat& u,
                               const std::vector<int>* sigma = nullptr) const {
        const ChainSpec& s = spec();
        auto sig = [&](int i) { return sigma ? (*sigma)[(std::size_t)i - 1] : i; };
        std::vector<int> Im1, Ir;
        for (int i = 1; i <= r - 1; ++i) Im1.push_back(sig(i));
        for (int i = 1; i <= r; ++i) Ir.push_back(sig(i));
        std::sort(Im1.begin(), Im1.end());
        std::sort(Ir.begin(), Ir.end());
        const Poly<Complex>& pm1 = st.qtable.at(Im1).p;
        const Poly<Complex>& pr = st.qtable.at(Ir).p;
        Complex hbar_c = complex_from_rat(s.hbar);
        Complex uu = complex_from_rat(u);
        Complex denom = pm1(uu) * pr(uu);
        if (abs(denom) == Real(0)) throw std::domain_error("quantum_eigenvalue: pole at the requested point");
        Poly<Rat> nu_r = s.weight_poly(r);
        Complex zr = complex_from_rat(s.z[(std::size_t)sig(r) - 1]);
        return zr * to_complex(nu_r)(uu) * pm1(uu - hbar_c) * pr(uu + hbar_c) / denom;
    }

    /// Tableau-sum form of the truncated transfer (entries limited to 1..k).
    Complex tableau_transfer(const BetheState& st, int k, const YoungDiagram& xi, const Rat& u0,
                             const std::vector<int>* sigma = nullptr) const {
        const ChainSpec& s = spec();
        Complex acc(0);
        for (const auto& t : enumerate_ssyt(xi, k)) {
            Complex term(1);
            for (long a = 1; a <= xi.height(); ++a)
                for (long col = 1; col <= xi.row((std::size_t)a - 1); ++col) {
                    int entry = t.entries[(std::size_t)a - 1][(std::size_t)col - 1];
                    Rat point = u0 + s.hbar * Rat(col - a);
                    term *= quantum_eigenvalue(st, entry, point, sigma);
                }
            acc += term;
        }
        return acc;
    }

  private:
    const Monodromy* mon_;
    Policy pol_;
    unsigned seed_;
    Mat<Rat> G_;
    std::vector<Rat> chi_;
    std::vector<PolyOp<Rat>> transfer_exact_;
    std::vector<PolyOp<Complex>> transfer_num_;
    mutable std::map<std::pair<int, Rat>, Mat<Complex>> tcache_;
    std::vector<BetheState> states_;
};

}  // namespace sovlab
