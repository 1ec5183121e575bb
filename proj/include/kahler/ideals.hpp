#pragma once

#include "kahler/branch.hpp"
#include "kahler/echelon.hpp"
#include "kahler/error.hpp"
#include "kahler/series.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kahler {

/// Finitely generated R-submodule of k((t)), held as its R-span modulo t^N.
struct fractional_ideal {
    ring_ptr ring;
    std::vector<truncated_series> generators;
    echelon_basis basis;
    int vmin = 0;
    value_set values;
    /// f is in the ideal iff f mod t^membership_bound lies in the span (t^{c+vmin} k[[t]] is inside).
    int membership_bound = 0;

    bool contains(const truncated_series& f) const { return member(f, basis, membership_bound); }
};

struct inverse_data {
    int v_inverse = 0;
    truncated_series realizer;
    fractional_ideal inverse_ideal;
};

/// Truncation at which an ideal with least valuation vmin has a certified tail and room for m*I.
inline int ideal_truncation(const ring_data& ring, int vmin)
{
    return std::max(ring.truncation, ring.conductor + vmin + 2 * ring.multiplicity + ring.guard());
}

/// R-span of the generators; the truncation defaults to ideal_truncation.
inline fractional_ideal from_generators(ring_ptr ring, std::vector<truncated_series> gens,
                                        std::optional<int> truncation = {})
{
    if (gens.empty()) {
        throw error(errc::invalid_input, "a fractional ideal needs at least one generator");
    }
    int vmin = infinite_valuation;
    int known = exact;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].is_zero()) {
            throw error(errc::invalid_input, "ideal generator " + std::to_string(i + 1) + " is zero");
        }
        vmin = std::min(vmin, gens[i].valuation());
        known = std::min(known, gens[i].truncation());
    }
    const int c = ring->conductor;
    const int e = ring->multiplicity;
    const int n = std::min(truncation.value_or(ideal_truncation(*ring, vmin)), known);
    if (n < c + vmin + e) {
        throw error(errc::insufficient_truncation, "ideal generators known only modulo t^" + std::to_string(n)
                                                       + "; at least t^" + std::to_string(c + vmin + e)
                                                       + " is needed");
    }
    fractional_ideal I;
    I.basis = close_under(gens, ring->generators, n);
    I.ring = std::move(ring);
    I.generators = std::move(gens);
    I.vmin = vmin;
    I.membership_bound = c + vmin;
    I.values = I.basis.values(e);
    if (!I.values.tail_from || *I.values.tail_from > I.membership_bound) {
        throw error(errc::internal_inconsistency, "ideal value set has no tail at t^" + std::to_string(c + vmin));
    }
    return I;
}

inline fractional_ideal unit_ideal(ring_ptr ring)
{
    return from_generators(std::move(ring), {truncated_series::monomial(0)});
}

/// The conductor t^c k[[t]], generated over R by t^c, ..., t^{c+e-1}.
inline fractional_ideal conductor_ideal(ring_ptr ring)
{
    std::vector<truncated_series> gens;
    for (int j = 0; j < ring->multiplicity; ++j) {
        gens.push_back(truncated_series::monomial(ring->conductor + j));
    }
    return from_generators(std::move(ring), std::move(gens));
}

inline fractional_ideal maximal_ideal(ring_ptr ring)
{
    std::vector<truncated_series> gens = ring->generators;
    return from_generators(std::move(ring), std::move(gens));
}

/// alpha * I.
inline fractional_ideal scaled(const fractional_ideal& I, const truncated_series& alpha)
{
    std::vector<truncated_series> gens;
    for (const auto& g : I.generators) {
        gens.push_back(alpha * g);
    }
    return from_generators(I.ring, std::move(gens));
}

namespace detail {

// Constraint columns for alpha I in R: column p holds the reductions of t^p g_i modulo R below t^c.
struct inverse_system {
    int lo = 0; // -vmin
    int hi = 0; // c - vmin; t^hi I lies in R
    std::size_t rows = 0;
    std::vector<std::vector<std::pair<std::size_t, rational>>> columns; // indexed by p - lo

    std::vector<rational> dense(int p) const
    {
        std::vector<rational> v(rows);
        for (const auto& [r, a] : columns[static_cast<std::size_t>(p - lo)]) {
            v[r] = a;
        }
        return v;
    }
};

inline inverse_system build_inverse_system(const fractional_ideal& I)
{
    const ring_data& ring = *I.ring;
    const int c = ring.conductor;
    inverse_system sys;
    sys.lo = -I.vmin;
    sys.hi = c - I.vmin;
    std::map<std::pair<std::size_t, int>, std::size_t> coord;
    for (int p = sys.lo; p < sys.hi; ++p) {
        std::vector<std::pair<std::size_t, rational>> col;
        for (std::size_t i = 0; i < I.generators.size(); ++i) {
            const truncated_series shifted = I.generators[i].shifted(p);
            if (shifted.truncation() < c) {
                throw error(errc::insufficient_truncation, "ideal generator known too coarsely for the inverse scan");
            }
            const truncated_series r = ring.ring_basis.reduce(shifted, c);
            for (std::size_t j = 0; j < r.coeffs().size(); ++j) {
                if (r.coeffs()[j] == 0) {
                    continue;
                }
                const auto key = std::make_pair(i, r.offset() + static_cast<int>(j));
                auto [it, fresh] = coord.emplace(key, coord.size());
                col.emplace_back(it->second, r.coeffs()[j]);
            }
        }
        sys.columns.push_back(std::move(col));
    }
    sys.rows = coord.size();
    return sys;
}

// Realizer t^m + (higher terms) with free coefficients zero, if one multiplies I into R.
inline std::optional<truncated_series> solve_at(const inverse_system& sys, int m)
{
    const std::size_t unknowns = static_cast<std::size_t>(sys.hi - m - 1);
    std::vector<std::vector<rational>> a(sys.rows, std::vector<rational>(unknowns));
    for (std::size_t j = 0; j < unknowns; ++j) {
        for (const auto& [r, v] : sys.columns[static_cast<std::size_t>(m + 1 + static_cast<int>(j) - sys.lo)]) {
            a[r][j] = v;
        }
    }
    std::vector<rational> b = sys.dense(m);
    for (auto& x : b) {
        x = -x;
    }
    auto sol = solve_linear(std::move(a), std::move(b));
    if (!sol) {
        return std::nullopt;
    }
    std::vector<rational> coeffs{1};
    coeffs.insert(coeffs.end(), sol->begin(), sol->end());
    return truncated_series(m, std::move(coeffs));
}

// Ascending scan: first m for which t^m + (higher terms) multiplies I into R. One solve per m.
inline std::pair<int, truncated_series> scan_inverse(const inverse_system& sys)
{
    for (int m = sys.lo; m < sys.hi; ++m) {
        if (auto alpha = solve_at(sys, m)) {
            return {m, std::move(*alpha)};
        }
    }
    return {sys.hi, truncated_series::monomial(sys.hi)};
}

struct elimination {
    int least = 0;                           // least m whose column lies in the span of the later ones
    std::vector<truncated_series> relations; // one element of R :_K I per such m, leading term t^m
};

// Descending elimination over columns, tracking combinations of exponents.
/**
 * Column m reduces to zero exactly when t^m + (higher terms) multiplies I
 * into R; the tracked combination is such an element.
 */
inline elimination eliminate(const inverse_system& sys)
{
    struct row {
        std::vector<std::pair<std::size_t, rational>> vec; // sparse, ascending row index
        std::vector<rational> combo;                       // indexed by p - lo
    };
    const std::size_t width = static_cast<std::size_t>(sys.hi - sys.lo);
    std::vector<std::optional<row>> by_pivot(sys.rows);
    elimination out;
    out.least = sys.hi;
    std::vector<rational> dense(sys.rows);
    std::vector<char> touched(sys.rows, 0);
    std::vector<std::size_t> support;
    rational tmp;
    for (int m = sys.hi - 1; m >= sys.lo; --m) {
        std::vector<rational> combo(width);
        combo[static_cast<std::size_t>(m - sys.lo)] = 1;
        support.clear();
        for (const auto& [r, a] : sys.columns[static_cast<std::size_t>(m - sys.lo)]) {
            dense[r] = a;
            touched[r] = 1;
            support.push_back(r);
        }
        // Pivots are leading row indices, so eliminating in ascending order is final.
        std::make_heap(support.begin(), support.end(), std::greater<>());
        std::optional<std::size_t> lead;
        while (!support.empty()) {
            std::pop_heap(support.begin(), support.end(), std::greater<>());
            const std::size_t k = support.back();
            support.pop_back();
            touched[k] = 0;
            if (dense[k] == 0) {
                continue;
            }
            if (!by_pivot[k]) {
                lead = k;
                break;
            }
            const rational a = dense[k];
            for (const auto& [j, x] : by_pivot[k]->vec) {
                mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), x.get_mpq_t());
                mpq_sub(dense[j].get_mpq_t(), dense[j].get_mpq_t(), tmp.get_mpq_t());
                if (!touched[j]) {
                    touched[j] = 1;
                    support.push_back(j);
                    std::push_heap(support.begin(), support.end(), std::greater<>());
                }
            }
            const auto& pc = by_pivot[k]->combo;
            for (std::size_t j = 0; j < width; ++j) {
                if (pc[j] != 0) {
                    mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), pc[j].get_mpq_t());
                    mpq_sub(combo[j].get_mpq_t(), combo[j].get_mpq_t(), tmp.get_mpq_t());
                }
            }
        }
        if (!lead) {
            out.relations.emplace_back(sys.lo, std::move(combo));
            out.least = m;
            continue;
        }
        // Collect the remaining support of the reduced column, normalized at its lead.
        row cur;
        const rational inv = 1 / dense[*lead];
        cur.vec.emplace_back(*lead, rational(1));
        dense[*lead] = 0;
        std::sort(support.begin(), support.end());
        for (std::size_t j : support) {
            touched[j] = 0;
            if (dense[j] != 0) {
                cur.vec.emplace_back(j, dense[j] * inv);
                dense[j] = 0;
            }
        }
        for (auto& x : combo) {
            x *= inv;
        }
        cur.combo = std::move(combo);
        by_pivot[*lead] = std::move(cur);
    }
    return out;
}

} // namespace detail

/// v(I^{-1}) = min { v(alpha) : alpha I in R }, with a realizing alpha.
inline std::pair<int, truncated_series> inverse_valuation(const fractional_ideal& I)
{
    const auto sys = detail::build_inverse_system(I);
    const int v = detail::eliminate(sys).least;
    if (v == sys.hi) {
        return {v, truncated_series::monomial(v)};
    }
    auto alpha = detail::solve_at(sys, v);
    if (!alpha) {
        throw error(errc::internal_inconsistency, "no realizer at the eliminated inverse valuation");
    }
    return {v, std::move(*alpha)};
}

/// I^{-1} = R :_K I, its least valuation and a realizer.
/**
 * alpha I lies in R iff alpha g_i does for every generator, and that depends
 * only on alpha mod t^{c - vmin}. The ideal is assembled from one solution per
 * attainable leading exponent in [v(I^{-1}), c - vmin) plus t^{c-vmin} k[[t]].
 */
inline inverse_data inverse(const fractional_ideal& I)
{
    const ring_data& ring = *I.ring;
    const auto sys = detail::build_inverse_system(I);
    detail::elimination elim = detail::eliminate(sys);
    const int v = elim.least;
    truncated_series realizer = truncated_series::monomial(v);
    if (v < sys.hi) {
        auto alpha = detail::solve_at(sys, v);
        if (!alpha) {
            throw error(errc::internal_inconsistency, "no realizer at the eliminated inverse valuation");
        }
        realizer = std::move(*alpha);
    }
    for (const auto& g : I.generators) {
        if (!member(realizer * g, ring.ring_basis, ring.conductor)) {
            throw error(errc::internal_inconsistency, "inverse realizer does not multiply the ideal into R");
        }
    }
    std::vector<truncated_series> gens = std::move(elim.relations);
    for (int j = 0; j < ring.multiplicity; ++j) {
        gens.push_back(truncated_series::monomial(sys.hi + j));
    }
    inverse_data out;
    out.v_inverse = v;
    out.realizer = std::move(realizer);
    out.inverse_ideal = from_generators(I.ring, std::move(gens));
    if (out.inverse_ideal.vmin != v) {
        throw error(errc::internal_inconsistency, "inverse ideal has unexpected least valuation");
    }
    return out;
}

/// R-span of all pairwise generator products.
inline fractional_ideal product(const fractional_ideal& I, const fractional_ideal& J)
{
    if (I.ring != J.ring) {
        throw error(errc::ring_mismatch, "ideals belong to different rings");
    }
    std::vector<truncated_series> gens;
    for (const auto& a : I.generators) {
        for (const auto& b : J.generators) {
            gens.push_back(a * b);
        }
    }
    return from_generators(I.ring, std::move(gens));
}

/// tr(I) = I * I^{-1}.
inline fractional_ideal trace(const fractional_ideal& I, const inverse_data& inv)
{
    fractional_ideal t = product(I, inv.inverse_ideal);
    if (t.vmin != I.vmin + inv.v_inverse) {
        throw error(errc::internal_inconsistency, "v(I I^-1) differs from v(I) + v(I^-1)");
    }
    return t;
}

inline fractional_ideal trace(const fractional_ideal& I) { return trace(I, inverse(I)); }

/// lambda(k[[t]]/I) for I inside k[[t]]: the missing nonnegative valuations.
inline int colength_in_normalization(const fractional_ideal& I)
{
    if (I.vmin < 0) {
        throw error(errc::not_in_normalization,
                    "ideal has an element of valuation " + std::to_string(I.vmin) + " and is not inside k[[t]]");
    }
    return static_cast<int>(I.values.gaps(0).size());
}

/// t^{-vmin} I.
inline fractional_ideal normalized(const fractional_ideal& I)
{
    if (I.vmin == 0) {
        return I;
    }
    std::vector<truncated_series> gens;
    for (const auto& g : I.generators) {
        gens.push_back(g.shifted(-I.vmin));
    }
    return from_generators(I.ring, std::move(gens));
}

/// h(I) = lambda(k[[t]]/J) - delta + v(J^{-1}) for the normalized copy J = t^{-vmin} I.
inline int h_invariant(const fractional_ideal& I)
{
    const fractional_ideal j = normalized(I);
    return colength_in_normalization(j) - j.ring->delta + inverse_valuation(j).first;
}

/// mu(I) = dim I / mI.
inline int min_generators(const fractional_ideal& I)
{
    std::vector<truncated_series> seeds;
    for (const auto& x : I.ring->generators) {
        for (const auto& g : I.generators) {
            seeds.push_back(x * g);
        }
    }
    const echelon_basis m_i = close_under(seeds, I.ring->generators, I.basis.truncation());
    return quotient_dim(I.basis, m_i, I.ring->multiplicity);
}

inline bool is_integral(const fractional_ideal& I)
{
    if (I.vmin < 0) {
        return false;
    }
    for (const auto& g : I.generators) {
        if (!member(g, I.ring->ring_basis, I.ring->conductor)) {
            return false;
        }
    }
    return true;
}

/// For I inside R: h(I) = lambda(R/I), which holds iff v(I^{-1}) = 0.
inline bool realizes_itself(const fractional_ideal& I)
{
    if (!is_integral(I)) {
        throw error(errc::not_an_integral_ideal, "realizes_itself needs an ideal of R");
    }
    return inverse_valuation(I).first == 0;
}

/// lambda(R/I) for an integral ideal, by counting basis rows at a common truncation.
inline int colength_in_ring(const fractional_ideal& I)
{
    const echelon_basis r = I.ring->ring_basis_at(I.basis.truncation());
    return quotient_dim(r, I.basis, I.ring->multiplicity);
}

} // namespace kahler
