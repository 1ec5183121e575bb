#pragma once

#include "kahler/branch.hpp"
#include "kahler/echelon.hpp"
#include "kahler/error.hpp"
#include "kahler/ideals.hpp"
#include "kahler/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kahler {

struct differential_data {
    ring_ptr ring;
    fractional_ideal D;
    int lambda_D = 0; // lambda(k[[t]]/D)
    int v_D = 0;
    int v_Dinv = 0;
    truncated_series alpha;
    fractional_ideal D_inverse;
    fractional_ideal trace_D;
    bool trace_is_maximal_ideal = false;
    int colength_tcD = 0; // lambda(R/t^c D)
    fractional_ideal J_min;
    int h_omega = 0;
    bool maximal_torsion = false;
    std::optional<bool> in_ms; // absent for a regular branch
    int mu_Jmin = 0;
    std::optional<int> mu_msJ; // present only when J_min lies in m^s
};

/// D = R x_1'(t) + ... + R x_n'(t).
inline fractional_ideal derivative_module(const ring_ptr& ring)
{
    std::vector<truncated_series> gens;
    for (const auto& x : ring->generators) {
        gens.push_back(x.derivative());
    }
    return from_generators(ring, std::move(gens));
}

namespace detail {

inline void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw error(errc::internal_inconsistency, what);
    }
}

// Fully reduced bases are canonical, so equal spans give equal rows.
inline bool same_span(const echelon_basis& a, const echelon_basis& b)
{
    const int n = std::min(a.truncation(), b.truncation());
    return a.truncated(n) == b.truncated(n);
}

} // namespace detail

/// h(Omega) = lambda(k[[t]]/D) - delta + v(D^{-1}), cross-checked against lambda(R/t^c D) - c + v(D^{-1}).
inline differential_data compute(const ring_ptr& ring)
{
    const ring_data& r = *ring;
    const int c = r.conductor;
    const int e = r.multiplicity;

    differential_data d;
    d.ring = ring;
    d.D = derivative_module(ring);
    d.v_D = d.D.vmin;
    detail::require(d.v_D == e - 1, "v(D) = " + std::to_string(d.v_D) + " differs from e - 1 = " + std::to_string(e - 1));
    d.lambda_D = colength_in_normalization(d.D);

    inverse_data inv = inverse(d.D);
    d.v_Dinv = inv.v_inverse;
    d.alpha = inv.realizer;
    d.D_inverse = std::move(inv.inverse_ideal);
    d.trace_D = product(d.D, d.D_inverse);
    detail::require(d.trace_D.vmin == d.v_D + d.v_Dinv, "v(tr D) differs from v(D) + v(D^-1)");
    if (r.embdim >= 2) {
        d.trace_is_maximal_ideal = detail::same_span(d.trace_D.basis, r.maximal_powers.at(1));
    }

    const int h1 = d.lambda_D - r.delta + d.v_Dinv;
    std::vector<truncated_series> shifted;
    for (const auto& g : d.D.generators) {
        shifted.push_back(g.shifted(c));
    }
    const fractional_ideal tcD = from_generators(ring, std::move(shifted));
    d.colength_tcD = quotient_dim(r.ring_basis_at(tcD.basis.truncation()), tcD.basis, e);
    const int h2 = d.colength_tcD - c + d.v_Dinv;
    detail::require(h1 == h2, "h from colengths over k[[t]] (" + std::to_string(h1) + ") and over R ("
                                  + std::to_string(h2) + ") disagree");
    d.h_omega = h1;
    detail::require(d.h_omega >= 0, "negative h");
    detail::require(d.lambda_D <= r.delta, "lambda(k[[t]]/D) exceeds delta");
    detail::require(d.h_omega <= d.v_Dinv, "h exceeds v(D^-1)");
    detail::require(d.colength_tcD <= c, "lambda(R/t^c D) exceeds c");
    d.maximal_torsion = d.lambda_D == r.delta;

    d.J_min = scaled(d.D, d.alpha);
    detail::require(is_integral(d.J_min), "alpha D is not inside R");
    detail::require(colength_in_ring(d.J_min) == d.h_omega, "lambda(R/alpha D) differs from h");
    d.mu_Jmin = min_generators(d.J_min);

    if (r.order_s) {
        const int s = *r.order_s;
        const echelon_basis& ms = r.maximal_powers.at(static_cast<std::size_t>(s));
        const auto tail = ms.values(e).tail_from;
        detail::require(tail.has_value(), "m^s has no certified tail");
        bool inside = true;
        for (const auto& g : d.J_min.generators) {
            if (!member(g, ms, *tail)) {
                inside = false;
                break;
            }
        }
        d.in_ms = inside;
        if (inside) {
            std::vector<truncated_series> seeds = d.J_min.generators;
            for (const auto& row : r.maximal_powers.at(static_cast<std::size_t>(s + 1)).rows()) {
                seeds.push_back(row);
            }
            const echelon_basis sum = close_under(seeds, r.generators, ms.truncation());
            d.mu_msJ = quotient_dim(ms, sum, e);
        }
    }
    return d;
}

} // namespace kahler
