#pragma once

#include "kahler/differentials.hpp"
#include "kahler/error.hpp"
#include "kahler/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kahler {

enum class verdict_status { regular, torsion_proven, inconclusive };

inline std::string_view status_name(verdict_status s)
{
    switch (s) {
    case verdict_status::regular: return "Regular";
    case verdict_status::torsion_proven: return "TorsionProven";
    case verdict_status::inconclusive: return "Inconclusive";
    }
    return "?";
}

enum class rule_basis { proved, literature };

struct rule_info {
    std::string_view id;
    rule_basis basis;
    std::string_view text;
};

/// Rules in evaluation order; the first that holds decides the verdict.
/// The main bound is tried before maximal torsion so a proved bound is cited when both hold.
inline constexpr std::array<rule_info, 9> rules{{
    {"R0", rule_basis::proved, "embedding dimension 1: the branch is regular"},
    {"R1", rule_basis::literature, "h = 0"},
    {"R3", rule_basis::proved, "main bound: h < C(n+s, s) s/(s+1)"},
    {"R2", rule_basis::literature, "maximal torsion: delta = lambda(k[[t]]/D)"},
    {"R4", rule_basis::proved, "small h: h in {1, 2}"},
    {"R5", rule_basis::proved, "Gorenstein with h in {1, 2, 3}"},
    {"R6", rule_basis::proved, "J_min is not contained in m^s"},
    {"R7", rule_basis::proved, "mu(J_min) < n"},
    {"R8", rule_basis::proved,
     "refined bound with mu(m^s/J_min) (evaluated for the reported J_min = alpha D; another realizer may give a different mu)"},
}};

inline const rule_info& find_rule(std::string_view id)
{
    for (const auto& r : rules) {
        if (r.id == id) {
            return r;
        }
    }
    throw error(errc::domain_error, "unknown rule " + std::string(id));
}

/// C(n+s, s) s/(s+1).
inline rational main_bound(int n, int s)
{
    if (n < 2 || s < 1) {
        throw error(errc::domain_error, "main bound needs n >= 2 and s >= 1");
    }
    rational b(binomial(static_cast<unsigned long>(n + s), static_cast<unsigned long>(s)));
    b *= make_rational(s, s + 1);
    b.canonicalize();
    return b;
}

/// C(n+s-1, s-1) (s^2 + s(n-1) - 1)/(s(s+1)) + 1 + mu/n.
inline rational refined_bound(int n, int s, int mu_msJ)
{
    if (n < 2 || s < 1 || mu_msJ < 0) {
        throw error(errc::domain_error, "refined bound needs n >= 2, s >= 1 and mu >= 0");
    }
    rational b(binomial(static_cast<unsigned long>(n + s - 1), static_cast<unsigned long>(s - 1)));
    b *= make_rational(s * s + s * (n - 1) - 1, s * (s + 1));
    b += 1;
    b += make_rational(mu_msJ, n);
    b.canonicalize();
    return b;
}

/// Every quantity a rule looked at; absent means not computed for this branch.
struct verdict_bounds {
    int h = 0;
    int n = 0;
    std::optional<int> s;
    int delta = 0;
    int lambda_D = 0;
    int v_Dinv = 0;
    int conductor = 0;
    bool gorenstein = true;
    bool maximal_torsion = false;
    std::optional<rational> main_bound;
    std::optional<rational> refined_bound;
    std::optional<bool> in_ms;
    int mu_Jmin = 0;
    std::optional<int> mu_msJ;
};

struct verdict {
    verdict_status status = verdict_status::inconclusive;
    std::optional<std::string> rule; // set iff torsion_proven
    std::vector<std::string> satisfied; // every rule that holds, in evaluation order
    std::string explanation;
    verdict_bounds bounds;
};

/// Whether rule `id` holds for the given bounds (R0 included).
inline bool rule_holds(std::string_view id, const verdict_bounds& b)
{
    const rational h(b.h);
    if (id == "R0") {
        return b.n == 1;
    }
    if (b.n == 1) {
        return false;
    }
    if (id == "R1") {
        return b.h == 0;
    }
    if (id == "R2") {
        return b.maximal_torsion;
    }
    if (id == "R3") {
        return b.main_bound && h < *b.main_bound;
    }
    if (id == "R4") {
        return b.h == 1 || b.h == 2;
    }
    if (id == "R5") {
        return b.gorenstein && b.h >= 1 && b.h <= 3;
    }
    if (id == "R6") {
        return b.in_ms && !*b.in_ms;
    }
    if (id == "R7") {
        return b.mu_Jmin < b.n;
    }
    if (id == "R8") {
        return b.in_ms && *b.in_ms && b.refined_bound && h < *b.refined_bound;
    }
    throw error(errc::domain_error, "unknown rule " + std::string(id));
}

namespace detail {

inline std::string explain(std::string_view id, const verdict_bounds& b)
{
    const std::string hs = std::to_string(b.h);
    if (id == "R0") {
        return "regular branch (n = 1)";
    }
    if (id == "R1") {
        return "h = 0";
    }
    if (id == "R2") {
        return "maximal torsion: delta = lambda_D = " + std::to_string(b.delta);
    }
    if (id == "R3") {
        return "main bound: h=" + hs + " < " + b.main_bound->get_str();
    }
    if (id == "R4") {
        return "h=" + hs + " in {1, 2}";
    }
    if (id == "R5") {
        return "Gorenstein and h=" + hs + " in {1, 2, 3}";
    }
    if (id == "R6") {
        return "J_min not contained in m^" + std::to_string(*b.s);
    }
    if (id == "R7") {
        return "mu(J_min)=" + std::to_string(b.mu_Jmin) + " < n=" + std::to_string(b.n);
    }
    return "refined bound: h=" + hs + " < " + b.refined_bound->get_str() + " (for the reported J_min)";
}

} // namespace detail

inline verdict evaluate_verdict(const differential_data& d)
{
    const ring_data& r = *d.ring;
    verdict v;
    verdict_bounds& b = v.bounds;
    b.h = d.h_omega;
    b.n = r.embdim;
    b.s = r.order_s;
    b.delta = r.delta;
    b.lambda_D = d.lambda_D;
    b.v_Dinv = d.v_Dinv;
    b.conductor = r.conductor;
    b.gorenstein = r.gorenstein;
    b.maximal_torsion = d.maximal_torsion;
    b.in_ms = d.in_ms;
    b.mu_Jmin = d.mu_Jmin;
    b.mu_msJ = d.mu_msJ;
    if (b.n >= 2 && b.s) {
        b.main_bound = main_bound(b.n, *b.s);
        if (b.mu_msJ) {
            b.refined_bound = refined_bound(b.n, *b.s, *b.mu_msJ);
        }
    }

    for (const auto& info : rules) {
        if (rule_holds(info.id, b)) {
            v.satisfied.emplace_back(info.id);
        }
    }
    if (v.satisfied.empty()) {
        v.explanation = "no criterion applies";
        return v;
    }
    const std::string& first = v.satisfied.front();
    v.status = first == "R0" ? verdict_status::regular : verdict_status::torsion_proven;
    if (v.status == verdict_status::torsion_proven) {
        v.rule = first;
    }
    v.explanation = detail::explain(first, b);
    return v;
}

} // namespace kahler
