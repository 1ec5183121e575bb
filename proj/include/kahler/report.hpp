#pragma once

#include "kahler/berger.hpp"
#include "kahler/branch.hpp"
#include "kahler/differentials.hpp"
#include "kahler/ideals.hpp"
#include "kahler/semigroup.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace kahler {

inline constexpr const char* report_version = "1.0.0";
inline constexpr const char* report_schema = "kahler-report/1";

/// Invariants of a user-supplied fractional ideal over the analyzed ring.
struct ideal_report {
    std::vector<truncated_series> generators;
    int vmin = 0;
    int h = 0;
    int v_inverse = 0;
    truncated_series realizer;
    value_set trace_values;
    std::optional<bool> realizes_itself; // only for ideals inside R
};

struct report {
    ring_ptr ring;
    differential_data diff;
    verdict result;
    std::optional<ideal_report> ideal;
};

inline ideal_report analyze_ideal(const ring_ptr& ring, std::vector<truncated_series> gens)
{
    const fractional_ideal I = from_generators(ring, std::move(gens));
    const inverse_data inv = inverse(I);
    const fractional_ideal tr = trace(I, inv);
    ideal_report out;
    out.generators = I.generators;
    out.vmin = I.vmin;
    out.h = h_invariant(I);
    out.v_inverse = inv.v_inverse;
    out.realizer = inv.realizer;
    out.trace_values = tr.values;
    if (is_integral(I)) {
        out.realizes_itself = inv.v_inverse == 0;
    }
    return out;
}

inline report make_report(const branch_spec& spec, const analyze_options& options,
                          std::optional<std::vector<truncated_series>> ideal_gens = {})
{
    report r;
    r.ring = analyze(spec, options);
    r.diff = compute(r.ring);
    r.result = evaluate_verdict(r.diff);
    if (ideal_gens) {
        r.ideal = analyze_ideal(r.ring, std::move(*ideal_gens));
    }
    return r;
}

namespace detail {

inline nlohmann::json integer_json(const integer& z)
{
    if (z.fits_slong_p()) {
        return z.get_si();
    }
    return z.get_str();
}

} // namespace detail

inline nlohmann::json rational_json(const rational& q)
{
    return {{"num", detail::integer_json(q.get_num())}, {"den", detail::integer_json(q.get_den())}};
}

inline nlohmann::json series_json(const truncated_series& f)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : f.coeffs()) {
        coeffs.push_back(rational_json(c));
    }
    return {{"valuation", f.is_zero() ? nlohmann::json(nullptr) : nlohmann::json(f.valuation())},
            {"coeffs", coeffs},
            {"text", f.to_string()}};
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline nlohmann::json to_json(const verdict& v)
{
    const verdict_bounds& b = v.bounds;
    nlohmann::json bounds = {
        {"h", b.h},
        {"n", b.n},
        {"s", optional_json(b.s)},
        {"delta", b.delta},
        {"lambda_D", b.lambda_D},
        {"v_Dinv", b.v_Dinv},
        {"conductor", b.conductor},
        {"gorenstein", b.gorenstein},
        {"maximal_torsion", b.maximal_torsion},
        {"main_bound", b.main_bound ? rational_json(*b.main_bound) : nlohmann::json(nullptr)},
        {"refined_bound", b.refined_bound ? rational_json(*b.refined_bound) : nlohmann::json(nullptr)},
        {"in_ms", optional_json(b.in_ms)},
        {"mu_Jmin", b.mu_Jmin},
        {"mu_msJ", optional_json(b.mu_msJ)},
    };
    nlohmann::json j = {{"status", std::string(status_name(v.status))},
                        {"rule", optional_json(v.rule)},
                        {"satisfied_rules", v.satisfied},
                        {"explanation", v.explanation},
                        {"bounds", bounds}};
    const rule_info& info = find_rule(v.rule.value_or("R0"));
    if (v.status == verdict_status::inconclusive) {
        j["rule_basis"] = nullptr;
        j["rule_text"] = nullptr;
    } else {
        j["rule_basis"] = info.basis == rule_basis::proved ? "proved" : "literature";
        j["rule_text"] = std::string(info.text);
    }
    return j;
}

inline nlohmann::json value_set_json(const value_set& vs)
{
    nlohmann::json j = {{"window_floor", vs.window_floor}, {"truncation", vs.truncation}};
    const int tail = vs.tail_from.value_or(vs.truncation);
    nlohmann::json below = nlohmann::json::array();
    for (int v : vs.achieved) {
        if (v < tail) {
            below.push_back(v);
        }
    }
    j["achieved_below_tail"] = below;
    j["tail_from"] = optional_json(vs.tail_from);
    return j;
}

inline nlohmann::json to_json(const ideal_report& r)
{
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : r.generators) {
        gens.push_back(g.to_string());
    }
    return {{"generators", gens},
            {"vmin", r.vmin},
            {"h", r.h},
            {"v_inverse", r.v_inverse},
            {"realizer", series_json(r.realizer)},
            {"trace_values", value_set_json(r.trace_values)},
            {"realizes_itself", optional_json(r.realizes_itself)}};
}

inline nlohmann::json to_json(const report& rep)
{
    const ring_data& r = *rep.ring;
    const differential_data& d = rep.diff;
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : r.generators) {
        gens.push_back(g.to_string());
    }
    nlohmann::json j = {
        {"schema", report_schema},
        {"version", report_version},
        {"name", r.spec.name},
        {"generators", gens},
        {"truncation", r.truncation},
        {"stable", r.stable},
        {"n", r.embdim},
        {"s", optional_json(r.order_s)},
        {"multiplicity", r.multiplicity},
        {"delta", r.delta},
        {"conductor", r.conductor},
        {"gaps", r.gaps},
        {"gorenstein", r.gorenstein},
        {"gorenstein_test", "semigroup symmetry"},
        {"vD", d.v_D},
        {"lambda_D", d.lambda_D},
        {"v_Dinv", d.v_Dinv},
        {"colength_R_tcD", d.colength_tcD},
        {"trace_valuation", d.trace_D.vmin},
        {"trace_is_maximal_ideal", d.trace_is_maximal_ideal},
        {"alpha", series_json(d.alpha)},
        {"h", d.h_omega},
        {"maximal_torsion", d.maximal_torsion},
        {"in_ms", optional_json(d.in_ms)},
        {"mu_Jmin", d.mu_Jmin},
        {"mu_msJ", optional_json(d.mu_msJ)},
        {"verdict", to_json(rep.result)},
    };
    if (rep.ideal) {
        j["ideal"] = to_json(*rep.ideal);
    }
    return j;
}

inline nlohmann::json to_json(const numerical_semigroup& sg)
{
    return {{"generators", sg.generators}, {"gaps", sg.gaps},           {"frobenius", sg.frobenius},
            {"conductor", sg.conductor},   {"delta", sg.delta},         {"symmetric", sg.symmetric}};
}

namespace detail {

inline std::string join(const std::vector<int>& v)
{
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + std::to_string(v[i]);
    }
    return s + "}";
}

} // namespace detail

inline std::string to_text(const report& rep)
{
    const ring_data& r = *rep.ring;
    const differential_data& d = rep.diff;
    const verdict& v = rep.result;
    std::ostringstream os;
    os << "branch " << (r.spec.name.empty() ? "(unnamed)" : r.spec.name) << '\n';
    for (std::size_t i = 0; i < r.generators.size(); ++i) {
        os << "  " << r.spec.label(i) << " = " << r.generators[i].to_string() << '\n';
    }
    os << "truncation        " << r.truncation << (r.stable ? " (verified at 2N)" : " (not verified)") << '\n';
    os << "n, s              " << r.embdim << ", " << (r.order_s ? std::to_string(*r.order_s) : "-") << '\n';
    os << "multiplicity      " << r.multiplicity << '\n';
    os << "conductor c       " << r.conductor << '\n';
    os << "delta             " << r.delta << '\n';
    os << "gaps              " << detail::join(r.gaps) << '\n';
    os << "Gorenstein        " << (r.gorenstein ? "yes" : "no") << " (semigroup symmetry)\n";
    os << "v(D)              " << d.v_D << '\n';
    os << "lambda(k[[t]]/D)  " << d.lambda_D << '\n';
    os << "v(D^-1)           " << d.v_Dinv << '\n';
    os << "lambda(R/t^c D)   " << d.colength_tcD << '\n';
    os << "v(tr D)           " << d.trace_D.vmin << (d.trace_is_maximal_ideal ? " (tr D = m)" : "") << '\n';
    os << "alpha             " << d.alpha.to_string() << '\n';
    os << "h                 " << d.h_omega << '\n';
    os << "maximal torsion   " << (d.maximal_torsion ? "yes" : "no") << '\n';
    os << "J_min in m^s      " << (d.in_ms ? (*d.in_ms ? "yes" : "no") : "-") << '\n';
    os << "mu(J_min)         " << d.mu_Jmin << '\n';
    os << "mu(m^s/J_min)     " << (d.mu_msJ ? std::to_string(*d.mu_msJ) : "-") << '\n';
    if (v.bounds.main_bound) {
        os << "main bound        " << v.bounds.main_bound->get_str() << '\n';
    }
    if (v.bounds.refined_bound) {
        os << "refined bound     " << v.bounds.refined_bound->get_str() << '\n';
    }
    os << "verdict           " << status_name(v.status);
    if (v.rule) {
        const rule_info& info = find_rule(*v.rule);
        os << " [" << *v.rule << (info.basis == rule_basis::literature ? ", known result" : "") << "]";
    }
    os << ": " << v.explanation << '\n';
    if (v.satisfied.size() > 1) {
        os << "also satisfied    ";
        for (std::size_t i = 1; i < v.satisfied.size(); ++i) {
            os << (i > 1 ? ", " : "") << v.satisfied[i];
        }
        os << '\n';
    }
    if (rep.ideal) {
        const ideal_report& I = *rep.ideal;
        os << "ideal\n";
        for (const auto& g : I.generators) {
            os << "  " << g.to_string() << '\n';
        }
        os << "  vmin            " << I.vmin << '\n';
        os << "  h               " << I.h << '\n';
        os << "  v(I^-1)         " << I.v_inverse << '\n';
        os << "  realizer        " << I.realizer.to_string() << '\n';
        std::vector<int> below;
        for (int x : I.trace_values.achieved) {
            if (!I.trace_values.tail_from || x < *I.trace_values.tail_from) {
                below.push_back(x);
            }
        }
        os << "  trace values    " << detail::join(below);
        if (I.trace_values.tail_from) {
            os << " and all >= " << *I.trace_values.tail_from;
        }
        os << '\n';
        os << "  realizes itself " << (I.realizes_itself ? (*I.realizes_itself ? "yes" : "no") : "- (not inside R)")
           << '\n';
    }
    return os.str();
}

inline std::string to_text(const numerical_semigroup& sg)
{
    std::ostringstream os;
    os << "semigroup  <";
    for (std::size_t i = 0; i < sg.generators.size(); ++i) {
        os << (i ? ", " : "") << sg.generators[i];
    }
    os << ">\n";
    os << "gaps       " << detail::join(sg.gaps) << '\n';
    os << "frobenius  " << sg.frobenius << '\n';
    os << "conductor  " << sg.conductor << '\n';
    os << "delta      " << sg.delta << '\n';
    os << "symmetric  " << (sg.symmetric ? "yes" : "no") << '\n';
    return os.str();
}

} // namespace kahler
