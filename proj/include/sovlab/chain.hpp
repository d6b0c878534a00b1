/**
 * @file chain.hpp
 * @brief Chain configuration (ChainSpec), per-site irreps, the global basis
 *        indexing, and separated-coordinate bookkeeping.
 *
 * The Hilbert space is the tensor product of the per-site irreps. Global
 * basis order is mixed-radix over per-site pattern indices with site 1
 * fastest; per-site patterns follow the canonical (excitation, lex) order.
 */
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sovlab/glrep.hpp"
#include "sovlab/matrix.hpp"
#include "sovlab/poly.hpp"
#include "sovlab/rational.hpp"
#include "sovlab/young.hpp"

namespace sovlab {

struct ChainSpec {
    int n = 0;
    int L = 0;
    std::vector<std::vector<long>> weights;  // weights[alpha], alpha = 0..L-1
    std::vector<Rat> theta;
    Rat hbar = Rat(1);
    std::vector<Rat> z;  // n twist eigenvalues
    std::vector<Rat> w;  // n-1 auxiliary twists

    /// Construction-time checks; pass require_distinct_z for Bethe-algebra work.
    void validate(bool require_distinct_z = false) const {
        if (n < 1 || L < 1) throw std::invalid_argument("ChainSpec: need n >= 1 and L >= 1");
        if ((int)weights.size() != L) throw std::invalid_argument("ChainSpec: one weight per site required");
        for (const auto& nu : weights) {
            if ((int)nu.size() != n) throw std::invalid_argument("ChainSpec: weight length must equal n");
            for (std::size_t i = 0; i + 1 < nu.size(); ++i)
                if (nu[i] < nu[i + 1]) throw std::invalid_argument("ChainSpec: weights must weakly decrease");
        }
        if ((int)theta.size() != L) throw std::invalid_argument("ChainSpec: one inhomogeneity per site required");
        if (hbar == 0) throw std::invalid_argument("ChainSpec: hbar must be nonzero");
        for (int a = 0; a < L; ++a)
            for (int b = a + 1; b < L; ++b) {
                Rat d = (theta[(std::size_t)a] - theta[(std::size_t)b]) / hbar;
                if (is_integer(d))
                    throw std::invalid_argument("ChainSpec: theta_" + std::to_string(a + 1) + " - theta_" +
                                                std::to_string(b + 1) + " lies on the hbar lattice");
            }
        if ((int)z.size() != n) throw std::invalid_argument("ChainSpec: need n twist eigenvalues");
        if ((int)w.size() != n - 1) throw std::invalid_argument("ChainSpec: need n-1 auxiliary twists");
        for (const auto& wi : w)
            if (wi == 0) throw std::invalid_argument("ChainSpec: auxiliary twists must be nonzero");
        if (require_distinct_z)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (z[(std::size_t)i] == z[(std::size_t)j])
                        throw std::invalid_argument("ChainSpec: twist eigenvalues must be pairwise distinct");
    }

    const std::vector<long>& nu(int alpha) const { return weights[(std::size_t)alpha - 1]; }  // 1-based
    Rat th(int alpha) const { return theta[(std::size_t)alpha - 1]; }

    /// nu_j(u) = prod_alpha (u - theta_alpha - hbar nu^alpha_j), 1-based j.
    Poly<Rat> weight_poly(int j) const {
        Poly<Rat> p = Poly<Rat>::one();
        for (int a = 1; a <= L; ++a) {
            Rat root = th(a) + hbar * Rat(nu(a)[(std::size_t)j - 1]);
            p = p * Poly<Rat>(std::vector<Rat>{-root, Rat(1)});
        }
        return p;
    }
    /// Q_theta(u) = prod_alpha (u - theta_alpha).
    Poly<Rat> inhomogeneity_poly() const {
        Poly<Rat> p = Poly<Rat>::one();
        for (int a = 1; a <= L; ++a) p = p * Poly<Rat>(std::vector<Rat>{-th(a), Rat(1)});
        return p;
    }

    std::string cache_key() const {
        std::string s = "n" + std::to_string(n) + "_L" + std::to_string(L) + "_h" + rat_to_string(hbar);
        for (const auto& nu_ : weights) {
            s += "_v";
            for (long x : nu_) s += std::to_string(x) + ".";
        }
        s += "_t";
        for (const auto& t : theta) s += rat_to_string(t) + ",";
        s += "_z";
        for (const auto& v : z) s += rat_to_string(v) + ",";
        s += "_w";
        for (const auto& v : w) s += rat_to_string(v) + ",";
        return s;
    }
};

class Chain {
  public:
    explicit Chain(ChainSpec spec) : spec_(std::move(spec)) {
        spec_.validate();
        dim_ = 1;
        for (int a = 1; a <= spec_.L; ++a) {
            reps_.push_back(build_irrep(spec_.nu(a)));
            dims_.push_back(reps_.back().dim());
            dim_ *= dims_.back();
        }
    }

    const ChainSpec& spec() const { return spec_; }
    int n() const { return spec_.n; }
    int L() const { return spec_.L; }
    std::size_t dim() const { return dim_; }
    const IrrepData& rep(int alpha) const { return reps_[(std::size_t)alpha - 1]; }
    std::size_t site_dim(int alpha) const { return dims_[(std::size_t)alpha - 1]; }

    /// Global index of a per-site index tuple; site 1 is the fastest digit.
    std::size_t tuple_index(const std::vector<std::size_t>& idx) const {
        std::size_t g = 0, stride = 1;
        for (int a = 1; a <= spec_.L; ++a) {
            g += idx[(std::size_t)a - 1] * stride;
            stride *= site_dim(a);
        }
        return g;
    }
    std::vector<std::size_t> index_tuple(std::size_t g) const {
        std::vector<std::size_t> idx((std::size_t)spec_.L);
        for (int a = 1; a <= spec_.L; ++a) {
            idx[(std::size_t)a - 1] = g % site_dim(a);
            g /= site_dim(a);
        }
        return idx;
    }
    PatternTuple tuple_at(std::size_t g) const {
        auto idx = index_tuple(g);
        PatternTuple t;
        for (int a = 1; a <= spec_.L; ++a) t.push_back(rep(a).basis[idx[(std::size_t)a - 1]]);
        return t;
    }
    std::size_t tuple_to_index(const PatternTuple& t) const {
        std::vector<std::size_t> idx;
        for (int a = 1; a <= spec_.L; ++a) idx.push_back(detail::pattern_index(rep(a).basis, t[(std::size_t)a - 1]));
        return tuple_index(idx);
    }

    /// Embeds a one-site operator into the chain: identity on every other site.
    Mat<Rat> site_op(int alpha, const Mat<Rat>& A) const {
        // kron(I_L, ..., A_alpha, ..., I_1): site 1 fastest.
        Mat<Rat> acc = Mat<Rat>::identity(1);
        for (int a = spec_.L; a >= 1; --a) {
            const Mat<Rat>& factor = (a == alpha) ? A : Mat<Rat>::identity(site_dim(a));
            acc = kron(acc, factor);
        }
        return acc;
    }

    /// Global gl(n) generator: sum over sites of the embedded E_{ij}.
    Mat<Rat> global_E(int i, int j) const {
        Mat<Rat> m(dim_, dim_);
        for (int a = 1; a <= spec_.L; ++a) m += site_op(a, rep(a).E(i, j));
        return m;
    }

    /// Covector of the GT vacuum: every site at its minimal pattern.
    std::vector<Rat> vacuum_covector() const {
        std::vector<Rat> v(dim_, Rat(0));
        std::vector<std::size_t> idx((std::size_t)spec_.L, 0);  // minimal pattern is index 0 per canonical order
        v[tuple_index(idx)] = Rat(1);
        return v;
    }

  private:
    ChainSpec spec_;
    std::vector<IrrepData> reps_;
    std::vector<std::size_t> dims_;
    std::size_t dim_ = 0;
};

/// Separated coordinate x^alpha_{kj} = theta_alpha + hbar (mu^alpha_{kj} - j + 1).
inline Rat sep_coordinate(const ChainSpec& spec, const GTPattern& p, int alpha, int k, int j) {
    return spec.th(alpha) + spec.hbar * Rat(p.mu(k)[(std::size_t)j - 1] - j + 1);
}

/// Boundary scalar X^alpha_{j,j+1} = theta_alpha + hbar (nu^alpha_{j+1} - j), j = 0..n-1.
inline Rat boundary_coordinate(const ChainSpec& spec, int alpha, int j) {
    return spec.th(alpha) + spec.hbar * Rat(spec.nu(alpha)[(std::size_t)j] - j);
}

struct CoordKey {
    int alpha, k, j;
    bool operator<(const CoordKey& o) const {
        if (alpha != o.alpha) return alpha < o.alpha;
        if (k != o.k) return k < o.k;
        return j < o.j;
    }
};

/// All x^alpha_{kj} for a tuple, plus the raw list used for eigenvalue products.
inline std::map<CoordKey, Rat> sep_coordinates(const ChainSpec& spec, const PatternTuple& t) {
    std::map<CoordKey, Rat> out;
    for (int alpha = 1; alpha <= spec.L; ++alpha)
        for (int k = 1; k <= spec.n - 1; ++k)
            for (int j = 1; j <= k; ++j)
                out[{alpha, k, j}] = sep_coordinate(spec, t[(std::size_t)alpha - 1], alpha, k, j);
    return out;
}

}  // namespace sovlab
