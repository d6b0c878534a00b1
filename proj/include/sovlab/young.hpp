/**
 * @file young.hpp
 * @brief Young diagrams, semi-standard tableaux (decreasing convention),
 *        Gelfand-Tsetlin patterns, and dual-diagonal coordinates.
 *
 * Tableau entries weakly decrease along rows and strictly decrease down
 * columns. The maps to the common increasing convention are provided for
 * cross-checking against external dimension tables.
 */
#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace sovlab {

struct YoungDiagram {
    std::vector<long> rows;  // weakly decreasing, trailing zeros allowed

    YoungDiagram() = default;
    explicit YoungDiagram(std::vector<long> r) : rows(std::move(r)) {
        if (!weakly_decreasing_nonneg()) throw std::invalid_argument("YoungDiagram: rows must weakly decrease, >= 0");
    }

    bool weakly_decreasing_nonneg() const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i] < 0) return false;
            if (i + 1 < rows.size() && rows[i] < rows[i + 1]) return false;
        }
        return true;
    }

    long row(std::size_t i) const { return i < rows.size() ? rows[i] : 0; }  // 0-based
    long width() const { return rows.empty() ? 0 : rows[0]; }
    long height() const {
        long h = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i] > 0) h = (long)i + 1;
        return h;
    }
    long boxes() const {
        long b = 0;
        for (long r : rows) b += r;
        return b;
    }
    bool empty() const { return boxes() == 0; }

    /// Height of column j (1-based).
    long column_height(long j) const {
        long h = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i] >= j) h = (long)i + 1;
        return h;
    }

    YoungDiagram transpose() const {
        std::vector<long> t((std::size_t)std::max<long>(width(), 0), 0);
        for (long j = 1; j <= width(); ++j) t[(std::size_t)j - 1] = column_height(j);
        return YoungDiagram(std::move(t));
    }

    bool contains(const YoungDiagram& o) const {
        for (std::size_t i = 0; i < o.rows.size(); ++i)
            if (o.rows[i] > row(i)) return false;
        return true;
    }

    /// Subdiagram formed by the first w columns.
    YoungDiagram first_columns(long w) const {
        std::vector<long> r;
        for (long v : rows) r.push_back(std::min(v, w));
        return YoungDiagram(std::move(r));
    }

    std::vector<long> normalized() const {
        std::vector<long> r = rows;
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    bool operator==(const YoungDiagram& o) const { return normalized() == o.normalized(); }
    bool operator!=(const YoungDiagram& o) const { return !(*this == o); }
};

/// Row-wise gluing aligned on top: row i of the result is a_i + b_i.
inline YoungDiagram glue(const YoungDiagram& a, const YoungDiagram& b) {
    std::size_t h = std::max(a.rows.size(), b.rows.size());
    std::vector<long> r(h, 0);
    for (std::size_t i = 0; i < h; ++i) r[i] = a.row(i) + b.row(i);
    return YoungDiagram(std::move(r));
}

/// All Young diagrams with at most `boxes` boxes and height <= max_height.
inline std::vector<YoungDiagram> diagrams_up_to(long boxes, long max_height) {
    std::vector<YoungDiagram> out;
    std::vector<long> cur;
    auto rec = [&](auto&& self, long remaining, long max_row) -> void {
        if ((long)cur.size() <= max_height) out.push_back(YoungDiagram(cur));
        if ((long)cur.size() == max_height) return;
        for (long r = std::min(remaining, max_row); r >= 1; --r) {
            cur.push_back(r);
            self(self, remaining - r, r);
            cur.pop_back();
        }
    };
    rec(rec, boxes, boxes);
    // dedupe (empty diagram appears once; recursion is already duplicate-free)
    return out;
}

// ---------------------------------------------------------------- tableaux

struct SSYT {
    YoungDiagram shape;
    std::vector<std::vector<int>> entries;  // entries[r][c], decreasing convention
};

/**
 * Exhaustive enumeration in lexicographic order of the row-major reading
 * word. Rows weakly decrease, columns strictly decrease, entries in
 * 1..max_entry.
 */
inline std::vector<SSYT> enumerate_ssyt(const YoungDiagram& shape, int max_entry) {
    std::vector<SSYT> out;
    long h = shape.height();
    if (shape.boxes() == 0) {
        out.push_back(SSYT{shape, {}});
        return out;
    }
    if (max_entry <= 0) return out;
    std::vector<std::vector<int>> fill((std::size_t)h);
    for (long r = 0; r < h; ++r) fill[(std::size_t)r].assign((std::size_t)shape.row((std::size_t)r), 0);

    auto rec = [&](auto&& self, long r, long c) -> void {
        if (r == h) {
            out.push_back(SSYT{shape, fill});
            return;
        }
        long nr = r, nc = c + 1;
        if (nc >= shape.row((std::size_t)r)) {
            nr = r + 1;
            nc = 0;
        }
        int hi = max_entry;
        if (c > 0) hi = fill[(std::size_t)r][(std::size_t)c - 1];                // weak along the row
        if (r > 0 && c < shape.row((std::size_t)r - 1)) hi = std::min(hi, fill[(std::size_t)r - 1][(std::size_t)c] - 1);  // strict down the column
        for (int v = hi; v >= 1; --v) {  // descending value = ascending lex after convention flip
            fill[(std::size_t)r][(std::size_t)c] = v;
            self(self, nr, nc);
        }
        fill[(std::size_t)r][(std::size_t)c] = 0;
    };
    rec(rec, 0, 0);
    return out;
}

/// Maps a decreasing-convention tableau to the common increasing one (entry -> max+1-entry).
inline SSYT to_increasing_convention(const SSYT& t, int max_entry) {
    SSYT r = t;
    for (auto& row : r.entries)
        for (auto& v : row) v = max_entry + 1 - v;
    return r;
}

// ---------------------------------------------------------- GT patterns

struct GTPattern {
    int n = 0;
    // row_[a-1] holds row a (length a), a = 1..n; row n is the fixed weight.
    std::vector<std::vector<long>> row_;

    GTPattern() = default;
    GTPattern(int n_, std::vector<std::vector<long>> rows) : n(n_), row_(std::move(rows)) {
        if ((int)row_.size() != n) throw std::invalid_argument("GTPattern: need n rows");
        for (int a = 1; a <= n; ++a)
            if ((int)row_[(std::size_t)a - 1].size() != a) throw std::invalid_argument("GTPattern: row length mismatch");
    }

    long node(int a, int j) const { return row_[(std::size_t)a - 1][(std::size_t)j - 1]; }  // a = 1..n, j = 1..a
    long& node(int a, int j) { return row_[(std::size_t)a - 1][(std::size_t)j - 1]; }
    const std::vector<long>& top() const { return row_[(std::size_t)n - 1]; }

    bool valid() const {
        for (int a = 1; a < n; ++a)
            for (int j = 1; j <= a; ++j)
                if (!(node(a + 1, j) >= node(a, j) && node(a, j) >= node(a + 1, j + 1))) return false;
        return true;
    }

    /// Node minimum under the branching rules: nu_{j+n-a}.
    long node_min(int a, int j) const { return top()[(std::size_t)(j + n - a) - 1]; }
    long node_max(int a, int j) const { return top()[(std::size_t)j - 1]; }

    long excitation() const {
        long e = 0;
        for (int a = 1; a < n; ++a)
            for (int j = 1; j <= a; ++j) e += node(a, j) - node_min(a, j);
        return e;
    }

    /// Flattened top row first; the canonical serialization and lex key.
    std::vector<long> serialize() const {
        std::vector<long> s;
        for (int a = n; a >= 1; --a)
            for (int j = 1; j <= a; ++j) s.push_back(node(a, j));
        return s;
    }

    /// Dual diagonal mu_k (k = 1..n-1): mu_{kj} = lambda_{n-k+j-1, j}.
    std::vector<long> mu(int k) const {
        std::vector<long> m((std::size_t)k);
        for (int j = 1; j <= k; ++j) m[(std::size_t)j - 1] = node(n - k + j - 1, j);
        return m;
    }
    /// Excitation of the dual diagonal above its minimum: mubar_{kj} = mu_{kj} - nu_{k+1}.
    YoungDiagram mubar(int k) const {
        std::vector<long> m = mu(k);
        long base = top()[(std::size_t)k];
        for (auto& v : m) v -= base;
        return YoungDiagram(std::move(m));
    }

    static GTPattern minimal(const std::vector<long>& nu) {
        int n = (int)nu.size();
        std::vector<std::vector<long>> rows((std::size_t)n);
        for (int a = 1; a <= n; ++a) {
            rows[(std::size_t)a - 1].resize((std::size_t)a);
            for (int j = 1; j <= a; ++j) rows[(std::size_t)a - 1][(std::size_t)j - 1] = nu[(std::size_t)(j + n - a) - 1];
        }
        return GTPattern(n, std::move(rows));
    }

    /// Rebuilds the pattern from its dual diagonals (inverse of mu()).
    static GTPattern from_dual(const std::vector<long>& nu, const std::vector<std::vector<long>>& mus) {
        int n = (int)nu.size();
        GTPattern p = minimal(nu);
        for (int k = 1; k <= n - 1; ++k)
            for (int j = 1; j <= k; ++j) p.node(n - k + j - 1, j) = mus[(std::size_t)k - 1][(std::size_t)j - 1];
        p.row_[(std::size_t)n - 1] = nu;
        return p;
    }

    bool operator==(const GTPattern& o) const { return n == o.n && row_ == o.row_; }
    bool operator!=(const GTPattern& o) const { return !(*this == o); }
};

/**
 * All patterns with top row nu, ordered by (total excitation, lexicographic
 * on the top-row-first serialization). The minimal pattern comes first.
 */
inline std::vector<GTPattern> enumerate_gt_patterns(const std::vector<long>& nu) {
    int n = (int)nu.size();
    for (std::size_t i = 0; i + 1 < nu.size(); ++i)
        if (nu[i] < nu[i + 1]) throw std::invalid_argument("enumerate_gt_patterns: weight must weakly decrease");
    std::vector<GTPattern> out;
    std::vector<std::vector<long>> rows((std::size_t)n);
    rows[(std::size_t)n - 1] = nu;

    auto rec = [&](auto&& self, int a) -> void {  // fill row a given row a+1
        if (a == 0) {
            out.push_back(GTPattern(n, rows));
            return;
        }
        const auto& above = rows[(std::size_t)a];
        std::vector<long>& cur = rows[(std::size_t)a - 1];
        cur.assign((std::size_t)a, 0);
        auto fill = [&](auto&& fs, int j) -> void {
            if (j > a) {
                self(self, a - 1);
                return;
            }
            long lo = above[(std::size_t)j], hi = above[(std::size_t)j - 1];
            for (long v = lo; v <= hi; ++v) {
                cur[(std::size_t)j - 1] = v;
                fs(fs, j + 1);
            }
        };
        fill(fill, 1);
    };
    rec(rec, n - 1);

    std::sort(out.begin(), out.end(), [](const GTPattern& a, const GTPattern& b) {
        long ea = a.excitation(), eb = b.excitation();
        if (ea != eb) return ea < eb;
        return a.serialize() < b.serialize();
    });
    return out;
}

using PatternTuple = std::vector<GTPattern>;

/**
 * The glued rectangular region of a reduced weight: the first nubar_{k-1}
 * columns of nubar, with nubar_0 read as nubar_1 (k = 1 keeps everything).
 */
inline YoungDiagram split_rectangles(const YoungDiagram& nubar, int k) {
    if (k < 1) throw std::invalid_argument("split_rectangles: k must be >= 1");
    if (!nubar.rows.empty() && nubar.rows.back() != 0 && nubar.height() == (long)nubar.rows.size())
        throw std::invalid_argument("split_rectangles: weight must be reduced (last entry 0)");
    long w = (k == 1) ? nubar.row(0) : nubar.row((std::size_t)k - 2);
    return nubar.first_columns(w);
}

}  // namespace sovlab
