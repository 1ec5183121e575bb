#pragma once

#include "kahler/echelon.hpp"
#include "kahler/error.hpp"
#include "kahler/poly_parser.hpp"
#include "kahler/series.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kahler {

/// Parametrization x_1(t), ..., x_n(t) of a branch R = k[[x_1(t), ..., x_n(t)]].
struct branch_spec {
    std::string name;
    std::vector<poly_expr> generators;
    std::vector<std::string> labels;

    static branch_spec from_strings(const std::vector<std::string>& gens, std::string name = {})
    {
        branch_spec spec;
        spec.name = std::move(name);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            try {
                spec.generators.push_back(parse_poly(gens[i]));
            } catch (const error& e) {
                throw error(e.code(), "generator " + std::to_string(i + 1) + " (\"" + gens[i] + "\"): " + e.what());
            }
        }
        return spec;
    }

    std::string label(std::size_t i) const
    {
        return i < labels.size() && !labels[i].empty() ? labels[i] : "x" + std::to_string(i + 1);
    }
};

struct analyze_options {
    std::optional<int> initial_truncation;
    int max_truncation = 4096;
    bool verify_stability = true;
};

/// Invariants of an analyzed branch, all exact.
struct ring_data {
    branch_spec spec;
    std::vector<truncated_series> generators;
    int truncation = 0;
    echelon_basis ring_basis; // R mod t^N
    int conductor = 0;
    int delta = 0;
    std::vector<int> gaps;
    int multiplicity = 0; // least positive value of the semigroup
    int max_degree = 0;
    int embdim = 0;
    std::optional<int> order_s; // absent for a regular branch
    bool gorenstein = true;
    bool stable = false;
    /// maximal_powers[d] spans m^d mod t^N for d = 0, ..., s+2 (index 0 is R itself; d = 0, 1, 2 when regular).
    std::vector<echelon_basis> maximal_powers;

    int guard() const { return max_degree + 1; }

    bool in_semigroup(int v) const
    {
        return v >= conductor || (v >= 0 && !std::binary_search(gaps.begin(), gaps.end(), v));
    }

    /// R mod t^n, recomputed when n exceeds the analysis truncation.
    echelon_basis ring_basis_at(int n) const
    {
        if (n <= truncation) {
            return ring_basis.truncated(n);
        }
        const std::vector<truncated_series> one{truncated_series::monomial(0)};
        return close_under(one, generators, n);
    }
};

using ring_ptr = std::shared_ptr<const ring_data>;

namespace detail {

inline bool symmetric_about_conductor(const std::vector<int>& gaps, int c)
{
    auto in_s = [&](int v) { return !std::binary_search(gaps.begin(), gaps.end(), v); };
    for (int z = 0; z < c; ++z) {
        if (in_s(z) == in_s(c - 1 - z)) {
            return false;
        }
    }
    return true;
}

// Generators of m^{d+1} from those of m^d, pruned to a k-independent set modulo t^n.
inline std::vector<truncated_series> next_power_seeds(const std::vector<truncated_series>& seeds,
                                                      const std::vector<truncated_series>& gens, int n)
{
    echelon_basis seen(0, n);
    std::vector<truncated_series> out;
    for (const auto& s : seeds) {
        for (const auto& g : gens) {
            truncated_series p = (s * g).truncated(n);
            if (seen.insert(p)) {
                out.push_back(std::move(p));
            }
        }
    }
    return out;
}

enum class attempt_status { ok, conductor_uncertified, order_uncertified, imprimitive };

struct attempt {
    attempt_status status = attempt_status::ok;
    int gcd = 1;
    ring_data ring;
};

inline attempt analyze_at(const branch_spec& spec, const std::vector<truncated_series>& gens, int n, int e, int maxdeg)
{
    attempt a;
    ring_data& r = a.ring;
    r.spec = spec;
    r.generators = gens;
    r.truncation = n;
    r.multiplicity = e;
    r.max_degree = maxdeg;

    const std::vector<truncated_series> one{truncated_series::monomial(0)};
    r.ring_basis = close_under(one, gens, n);
    const std::vector<int> achieved = r.ring_basis.pivot_valuations();

    int g = 0;
    for (int v : achieved) {
        g = std::gcd(g, v);
    }
    a.gcd = g;
    if (g != 1) {
        a.status = attempt_status::imprimitive;
        return a;
    }

    int last_gap = -1;
    for (int v = n - 1; v >= 0; --v) {
        if (!r.ring_basis.has_pivot(v)) {
            last_gap = v;
            break;
        }
    }
    r.conductor = last_gap + 1;
    if (n - r.conductor < std::max(e, r.guard())) {
        a.status = attempt_status::conductor_uncertified;
        return a;
    }
    for (int v = 0; v < r.conductor; ++v) {
        if (!r.ring_basis.has_pivot(v)) {
            r.gaps.push_back(v);
        }
    }
    r.delta = static_cast<int>(r.gaps.size());
    r.gorenstein = symmetric_about_conductor(r.gaps, r.conductor);

    // m is R without its unit row; rows of positive valuation vanish at 0 already.
    echelon_basis m(e, n);
    {
        std::vector<truncated_series> rows;
        for (const auto& [v, row] : r.ring_basis.pivots()) {
            if (v > 0) {
                rows.push_back(row);
            }
        }
        m = close_under(rows, std::vector<truncated_series>{}, n);
    }
    r.maximal_powers = {r.ring_basis, m};
    std::vector<truncated_series> seeds = next_power_seeds(one, gens, n);

    try {
        auto next_power = [&]() {
            seeds = next_power_seeds(seeds, gens, n);
            r.maximal_powers.push_back(close_under(seeds, gens, n));
        };
        next_power();
        r.embdim = quotient_dim(r.maximal_powers[1], r.maximal_powers[2], e);
        if (r.embdim == 1) {
            if (r.delta != 0) {
                throw error(errc::internal_inconsistency, "embedding dimension 1 with nonzero delta");
            }
            return a;
        }
        for (int d = 2;; ++d) {
            next_power();
            const int dim = quotient_dim(r.maximal_powers[static_cast<std::size_t>(d)],
                                         r.maximal_powers[static_cast<std::size_t>(d + 1)], e);
            const integer expected = binomial(static_cast<unsigned long>(r.embdim + d - 1), static_cast<unsigned long>(d));
            if (dim != expected) {
                r.order_s = d - 1;
                break;
            }
        }
    } catch (const error& err) {
        if (err.code() != errc::uncertified_tail) {
            throw;
        }
        a.status = attempt_status::order_uncertified;
    }
    return a;
}

} // namespace detail

/// Checks generator valuations; returns the exact generator series.
inline std::vector<truncated_series> validate(const branch_spec& spec)
{
    if (spec.generators.empty()) {
        throw error(errc::invalid_input, "a branch needs at least one generator");
    }
    std::vector<truncated_series> gens;
    for (std::size_t i = 0; i < spec.generators.size(); ++i) {
        truncated_series g = evaluate(spec.generators[i]);
        if (g.is_zero()) {
            throw error(errc::non_positive_valuation_generator,
                        "generator " + std::to_string(i + 1) + " (" + spec.label(i) + ") is identically zero");
        }
        if (g.valuation() < 1) {
            throw error(errc::non_positive_valuation_generator,
                        "generator " + std::to_string(i + 1) + " (" + spec.label(i) + " = " + g.to_string()
                            + ") has valuation " + std::to_string(g.valuation())
                            + "; generators must have no constant term");
        }
        gens.push_back(std::move(g));
    }
    return gens;
}

/// Analyzes the branch at the least truncation that certifies c, n and s.
/**
 * Starts at max(64, 4*maxdeg + 16) (or the requested truncation) and doubles
 * up to options.max_truncation. With verify_stability the whole analysis is
 * repeated at 2N and must agree.
 */
inline ring_ptr analyze(const branch_spec& spec, const analyze_options& options = {})
{
    const std::vector<truncated_series> gens = validate(spec);
    int e = infinite_valuation;
    int maxdeg = 0;
    for (const auto& g : gens) {
        e = std::min(e, g.valuation());
        maxdeg = std::max(maxdeg, g.degree());
    }
    int n = options.initial_truncation.value_or(std::max(64, 4 * maxdeg + 16));
    const int cap = std::max(options.max_truncation, n);
    int previous_gcd = 1;
    for (;;) {
        detail::attempt a = detail::analyze_at(spec, gens, n, e, maxdeg);
        if (a.status == detail::attempt_status::imprimitive && previous_gcd > 1) {
            throw error(errc::imprimitive_parametrization,
                        "the value semigroup has gcd " + std::to_string(a.gcd)
                            + "; the parametrization is not primitive (substitute u = t^" + std::to_string(a.gcd)
                            + " and re-express the generators)");
        }
        previous_gcd = a.gcd;
        if (a.status == detail::attempt_status::ok) {
            if (options.verify_stability) {
                const detail::attempt b = detail::analyze_at(spec, gens, 2 * n, e, maxdeg);
                if (b.status != detail::attempt_status::ok || b.ring.gaps != a.ring.gaps
                    || b.ring.embdim != a.ring.embdim || b.ring.order_s != a.ring.order_s
                    || b.ring.gorenstein != a.ring.gorenstein) {
                    throw error(errc::internal_inconsistency,
                                "analysis at truncation " + std::to_string(2 * n) + " disagrees with truncation "
                                    + std::to_string(n));
                }
                a.ring.stable = true;
            }
            return std::make_shared<const ring_data>(std::move(a.ring));
        }
        if (2L * n > cap) {
            if (a.status == detail::attempt_status::imprimitive) {
                throw error(errc::imprimitive_parametrization,
                            "the value semigroup has gcd " + std::to_string(a.gcd) + " up to truncation "
                                + std::to_string(n) + "; the parametrization is not primitive");
            }
            if (a.status == detail::attempt_status::order_uncertified) {
                throw error(errc::order_undetectable, "maximal-ideal power filtration not certified below t^"
                                                          + std::to_string(n) + " (raise --max-truncation)");
            }
            throw error(errc::truncation_exhausted,
                        "no certified conductor below truncation " + std::to_string(n) + " (raise --max-truncation)");
        }
        n *= 2;
    }
}

/// dim m/m^2.
inline int embedding_dimension(const ring_data& ring)
{
    return quotient_dim(ring.maximal_powers.at(1), ring.maximal_powers.at(2), ring.multiplicity);
}

/// Largest s with dim m^d/m^{d+1} = C(n+d-1, d) for 1 <= d <= s.
inline int order_s(const ring_data& ring)
{
    const int n = embedding_dimension(ring);
    if (n < 2) {
        throw error(errc::domain_error, "order s is defined only for embedding dimension >= 2");
    }
    int s = 1;
    for (std::size_t d = 2; d + 1 < ring.maximal_powers.size(); ++d) {
        const int dim = quotient_dim(ring.maximal_powers[d], ring.maximal_powers[d + 1], ring.multiplicity);
        if (dim != binomial(static_cast<unsigned long>(n) + d - 1, d)) {
            break;
        }
        s = static_cast<int>(d);
    }
    return s;
}

/// Semigroup symmetry: z in S exactly when c-1-z is not, for all 0 <= z < c.
inline bool is_gorenstein(const ring_data& ring) { return detail::symmetric_about_conductor(ring.gaps, ring.conductor); }

} // namespace kahler
