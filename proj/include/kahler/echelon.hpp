#pragma once

#include "kahler/error.hpp"
#include "kahler/rational.hpp"
#include "kahler/series.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <iterator>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kahler {

/// Valuations achieved by a k-subspace of k((t)) modulo t^N.
struct value_set {
    int window_floor = 0;
    int truncation = 0;
    std::vector<int> achieved; // sorted
    /// Least T with every integer in [T, N) achieved, set only once that run is certified.
    std::optional<int> tail_from;
    bool stable = false;

    bool contains(int v) const
    {
        if (tail_from && v >= *tail_from) {
            return true;
        }
        return std::binary_search(achieved.begin(), achieved.end(), v);
    }

    /// Integers in [from, tail_from) that are not achieved.
    std::vector<int> gaps(int from) const
    {
        if (!tail_from) {
            throw error(errc::uncertified_tail, "value set has no certified tail");
        }
        std::vector<int> out;
        for (int v = from; v < *tail_from; ++v) {
            if (!std::binary_search(achieved.begin(), achieved.end(), v)) {
                out.push_back(v);
            }
        }
        return out;
    }
};

/// Valuation-indexed, fully reduced basis of a subspace of k((t)) modulo t^N.
/**
 * Each stored row is monic, has valuation equal to its key and vanishes at
 * every other pivot valuation. The span is exactly the k-span of the rows
 * inside k[t^floor, ...]/(t^N).
 */
class echelon_basis
{
public:
    echelon_basis() = default;
    echelon_basis(int window_floor, int truncation) : floor_(window_floor), truncation_(truncation) {}

    int window_floor() const { return floor_; }
    int truncation() const { return truncation_; }
    std::size_t size() const { return pivots_.size(); }
    bool empty() const { return pivots_.empty(); }
    const std::map<int, truncated_series>& pivots() const { return pivots_; }
    bool has_pivot(int v) const { return pivots_.count(v) != 0; }

    std::vector<int> pivot_valuations() const
    {
        std::vector<int> out;
        out.reserve(pivots_.size());
        for (const auto& [v, row] : pivots_) {
            out.push_back(v);
        }
        return out;
    }

    std::vector<truncated_series> rows() const
    {
        std::vector<truncated_series> out;
        out.reserve(pivots_.size());
        for (const auto& [v, row] : pivots_) {
            out.push_back(row);
        }
        return out;
    }

    /// f minus a combination of rows; vanishes at every pivot valuation below the working limit.
    /**
     * The limit is min(bound, N, truncation of f); the result is known modulo t^limit.
     */
    truncated_series reduce(const truncated_series& f, int bound = exact) const
    {
        const int limit = std::min({bound, truncation_, f.truncation()});
        if (f.is_zero() || f.valuation() >= limit) {
            return truncated_series::zero(limit);
        }
        const int lo = f.valuation();
        // buf covers [lo, hi]; entries above hi are zero, so pivots past hi are skipped.
        int hi = std::min(f.degree(), limit - 1);
        std::vector<rational> buf(static_cast<std::size_t>(hi - lo + 1));
        for (int e = lo; e <= hi; ++e) {
            buf[static_cast<std::size_t>(e - lo)] = f.coeff_or_zero(e);
        }
        rational tmp;
        for (auto it = pivots_.lower_bound(lo); it != pivots_.end() && it->first <= hi; ++it) {
            const rational a = buf[static_cast<std::size_t>(it->first - lo)];
            if (a == 0) {
                continue;
            }
            const truncated_series& row = it->second;
            const auto& rc = row.coeffs();
            const int top = std::min(row.degree(), limit - 1);
            if (top > hi) {
                hi = top;
                buf.resize(static_cast<std::size_t>(hi - lo + 1));
            }
            for (int e = row.offset(); e <= top; ++e) {
                const rational& c = rc[static_cast<std::size_t>(e - row.offset())];
                if (c == 0) {
                    continue;
                }
                mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), c.get_mpq_t());
                rational& slot = buf[static_cast<std::size_t>(e - lo)];
                mpq_sub(slot.get_mpq_t(), slot.get_mpq_t(), tmp.get_mpq_t());
            }
        }
        return truncated_series(lo, std::move(buf), limit);
    }

    /// Adds f to the span; returns true iff the span grew. Full reduction is restored.
    bool insert(const truncated_series& f)
    {
        truncated_series r = reduce(f);
        if (r.is_zero()) {
            return false;
        }
        r = r.monic().truncated(truncation_);
        const int k = r.valuation();
        floor_ = std::min(floor_, k);
        for (auto& [key, row] : pivots_) {
            if (key >= k) {
                break;
            }
            const rational a = row.coeff_or_zero(k);
            if (a != 0) {
                row = row - a * r;
            }
        }
        pivots_.emplace(k, std::move(r));
        return true;
    }

    /// Projection to k((t))/(t^n) for n <= N; stays fully reduced.
    echelon_basis truncated(int n) const
    {
        if (n >= truncation_) {
            return *this;
        }
        echelon_basis b(floor_, n);
        for (const auto& [v, row] : pivots_) {
            if (v >= n) {
                break;
            }
            b.pivots_.emplace(v, row.truncated(n));
        }
        return b;
    }

    /// Value set, with tail_from set only when the final run of achieved valuations has length >= min_run.
    value_set values(int min_run) const
    {
        value_set vs;
        vs.window_floor = floor_;
        vs.truncation = truncation_;
        vs.achieved = pivot_valuations();
        int t = truncation_;
        for (auto it = vs.achieved.rbegin(); it != vs.achieved.rend() && *it == t - 1; ++it) {
            --t;
        }
        if (truncation_ - t >= std::max(min_run, 1)) {
            vs.tail_from = t;
        }
        return vs;
    }

    friend bool operator==(const echelon_basis& a, const echelon_basis& b)
    {
        return a.truncation_ == b.truncation_ && a.pivots_ == b.pivots_;
    }

private:
    friend echelon_basis close_under(std::span<const truncated_series>, std::span<const truncated_series>, int);

    // Echelon insertion without back-reduction; rows are never modified afterwards.
    const truncated_series* insert_unreduced(const truncated_series& f)
    {
        truncated_series r = reduce(f);
        if (r.is_zero()) {
            return nullptr;
        }
        r = r.monic().truncated(truncation_);
        const int k = r.valuation();
        floor_ = std::min(floor_, k);
        return &pivots_.emplace(k, std::move(r)).first->second;
    }

    // Back-substitution from the highest pivot down.
    void make_fully_reduced()
    {
        if (pivots_.empty()) {
            return;
        }
        const int lo = pivots_.begin()->first;
        std::vector<char> is_pivot(static_cast<std::size_t>(truncation_ - lo), 0);
        for (const auto& [v, row] : pivots_) {
            is_pivot[static_cast<std::size_t>(v - lo)] = 1;
        }
        auto pivot_at = [&](int e) { return is_pivot[static_cast<std::size_t>(e - lo)] != 0; };
        rational tmp;
        for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
            const int p = it->first;
            truncated_series& row = it->second;
            bool dirty = false;
            for (int e = p + 1; e <= row.degree() && !dirty; ++e) {
                dirty = pivot_at(e) && row.coeff_or_zero(e) != 0;
            }
            if (!dirty) {
                continue;
            }
            std::vector<rational> buf(static_cast<std::size_t>(truncation_ - p));
            std::copy(row.coeffs().begin(), row.coeffs().end(), buf.begin());
            for (int q = p + 1; q < truncation_; ++q) {
                const rational a = buf[static_cast<std::size_t>(q - p)];
                if (a == 0 || !pivot_at(q)) {
                    continue;
                }
                const truncated_series& other = pivots_.at(q);
                const auto& oc = other.coeffs();
                for (int e = q; e <= other.degree(); ++e) {
                    const rational& c = oc[static_cast<std::size_t>(e - q)];
                    if (c == 0) {
                        continue;
                    }
                    mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), c.get_mpq_t());
                    rational& slot = buf[static_cast<std::size_t>(e - p)];
                    mpq_sub(slot.get_mpq_t(), slot.get_mpq_t(), tmp.get_mpq_t());
                }
            }
            row = truncated_series(p, std::move(buf), truncation_);
        }
    }

    int floor_ = 0;
    int truncation_ = 0;
    std::map<int, truncated_series> pivots_;
};

/// Smallest fully reduced basis containing `seed` and closed under multiplication by every multiplier.
/**
 * Worklist fixpoint: each new row r enqueues r*m for every multiplier m.
 * The basis truncation is min(n, truncation of every seed); multipliers must
 * have valuation >= 1 and be known well enough that products do not lose
 * precision below that truncation.
 */
inline echelon_basis close_under(std::span<const truncated_series> seed,
                                 std::span<const truncated_series> multipliers, int n)
{
    int floor = n;
    int trunc = n;
    for (const auto& s : seed) {
        trunc = std::min(trunc, s.truncation());
        if (!s.is_zero()) {
            floor = std::min(floor, s.valuation());
        }
    }
    std::vector<const truncated_series*> mults;
    for (const auto& m : multipliers) {
        if (m.is_zero()) {
            continue;
        }
        if (m.valuation() <= 0) {
            throw error(errc::non_positive_multiplier_valuation,
                        "multiplier " + m.to_string() + " has valuation " + std::to_string(m.valuation())
                            + "; closure requires valuation >= 1");
        }
        mults.push_back(&m);
    }
    echelon_basis b(std::min(floor, trunc), trunc);
    std::deque<truncated_series> work(seed.begin(), seed.end());
    while (!work.empty()) {
        truncated_series f = std::move(work.front());
        work.pop_front();
        const truncated_series* row = b.insert_unreduced(f);
        if (row == nullptr) {
            continue;
        }
        for (const truncated_series* m : mults) {
            truncated_series p = *row * *m;
            if (p.truncation() < trunc) {
                throw error(errc::insufficient_truncation,
                            "product with multiplier " + m->to_string() + " is known only modulo t^"
                                + std::to_string(p.truncation()) + ", below the working truncation "
                                + std::to_string(trunc));
            }
            p = p.truncated(trunc);
            if (!p.is_zero()) {
                work.push_back(std::move(p));
            }
        }
    }
    b.make_fully_reduced();
    return b;
}

inline echelon_basis close_under(const std::vector<truncated_series>& seed,
                                 const std::vector<truncated_series>& multipliers, int n)
{
    return close_under(std::span<const truncated_series>(seed), std::span<const truncated_series>(multipliers), n);
}

/// f mod t^bound lies in span(B) mod t^bound.
inline bool member(const truncated_series& f, const echelon_basis& b, int bound)
{
    if (f.truncation() < bound || b.truncation() < bound) {
        throw error(errc::insufficient_truncation,
                    "membership threshold t^" + std::to_string(bound) + " exceeds known precision (element mod t^"
                        + std::to_string(f.truncation()) + ", basis mod t^" + std::to_string(b.truncation()) + ")");
    }
    return b.reduce(f, bound).is_zero();
}

/// dim span(big)/span(small), compared at their common truncation.
/**
 * Both tails must be certified by a run of achieved valuations of length >= min_run
 * (for R-modules, the multiplicity of R) and small must lie inside big.
 */
inline int quotient_dim(const echelon_basis& big, const echelon_basis& small, int min_run)
{
    const int n = std::min(big.truncation(), small.truncation());
    const echelon_basis b = big.truncated(n);
    const echelon_basis s = small.truncated(n);
    if (!b.values(min_run).tail_from || !s.values(min_run).tail_from) {
        throw error(errc::uncertified_tail, "quotient dimension needs certified tails modulo t^" + std::to_string(n));
    }
    for (const auto& [v, row] : s.pivots()) {
        if (!b.reduce(row).is_zero()) {
            throw error(errc::not_nested, "subspace element of valuation " + std::to_string(v)
                                              + " is not contained in the larger space");
        }
    }
    return static_cast<int>(b.size()) - static_cast<int>(s.size());
}

/// A solution of A x = b over Q with every free variable set to zero, or nullopt if inconsistent.
inline std::optional<std::vector<rational>> solve_linear(std::vector<std::vector<rational>> a, std::vector<rational> b)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a.front().size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        const rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) {
            a[r][j] *= inv;
        }
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) {
                continue;
            }
            const rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) {
                if (a[r][j] != 0) {
                    a[i][j] -= f * a[r][j];
                }
            }
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (b[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<rational> x(cols);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        x[pivot_col[i]] = b[i];
    }
    return x;
}

} // namespace kahler
