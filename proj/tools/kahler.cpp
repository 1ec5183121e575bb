// kahler: invariants of a parametrized branch and the torsion verdict for its differentials.
//
//   kahler analyze FILE... [--json] [--truncation N] [--max-truncation M] [--no-verify] [--ideal FILE]
//   kahler semigroup A B ... [--json]
//
// Exit status: 0 on success (whatever the verdict), 2 for bad input,
// 3 when no certified truncation was found, 1 for anything else.

#include "kahler/kahler.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

int exit_code(kahler::errc c)
{
    using kahler::errc;
    switch (c) {
    case errc::syntax:
    case errc::invalid_input:
    case errc::non_positive_valuation_generator:
    case errc::imprimitive_parametrization:
    case errc::gcd_not_one:
    case errc::not_an_integral_ideal:
    case errc::not_in_normalization:
    case errc::insufficient_truncation: return 2;
    case errc::truncation_exhausted:
    case errc::order_undetectable: return 3;
    default: return 1;
    }
}

struct outcome {
    int code = 0;
    std::string text;
    nlohmann::json json;
    std::string message;
};

outcome run_one(const std::string& path, const kahler::analyze_options& options,
                const std::optional<kahler::branch_file>& ideal)
{
    outcome out;
    try {
        const kahler::branch_file file = kahler::read_branch_file(path);
        kahler::branch_spec spec = kahler::to_spec(file);
        for (int line : file.line_numbers) {
            spec.labels.push_back("x" + std::to_string(spec.labels.size() + 1) + " at line " + std::to_string(line));
        }
        std::optional<std::vector<kahler::truncated_series>> gens;
        if (ideal) {
            gens = kahler::ideal_generators(*ideal);
        }
        const kahler::report rep = kahler::make_report(spec, options, std::move(gens));
        out.text = kahler::to_text(rep);
        out.json = kahler::to_json(rep);
    } catch (const kahler::error& e) {
        out.code = exit_code(e.code());
        out.message = path + ": " + std::string(kahler::errc_name(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
        out.code = 1;
        out.message = path + ": " + e.what();
    }
    return out;
}

int cmd_analyze(const std::vector<std::string>& paths, bool json, std::optional<int> truncation,
                int max_truncation, bool no_verify, const std::string& ideal_path)
{
    kahler::analyze_options options;
    options.initial_truncation = truncation;
    options.max_truncation = max_truncation;
    options.verify_stability = !no_verify;

    std::optional<kahler::branch_file> ideal;
    if (!ideal_path.empty()) {
        try {
            ideal = kahler::read_branch_file(ideal_path, true);
        } catch (const kahler::error& e) {
            std::cerr << "kahler: " << kahler::errc_name(e.code()) << ": " << e.what() << '\n';
            return exit_code(e.code());
        }
    }

    std::vector<std::future<outcome>> jobs;
    for (const auto& p : paths) {
        jobs.push_back(std::async(std::launch::async, run_one, p, options, ideal));
    }
    int code = 0;
    nlohmann::json all = nlohmann::json::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        outcome o = jobs[i].get();
        if (o.code != 0) {
            std::cerr << "kahler: " << o.message << '\n';
            if (code == 0) {
                code = o.code;
            }
            continue;
        }
        if (json) {
            all.push_back(std::move(o.json));
        } else {
            if (i > 0) {
                std::cout << '\n';
            }
            std::cout << o.text;
        }
    }
    if (json && !all.empty()) {
        std::cout << (paths.size() == 1 ? all.front() : all).dump(2) << '\n';
    }
    return code;
}

int cmd_semigroup(const std::vector<int>& gens, bool json)
{
    try {
        const kahler::numerical_semigroup sg = kahler::semigroup_sieve(gens);
        if (json) {
            std::cout << kahler::to_json(sg).dump(2) << '\n';
        } else {
            std::cout << kahler::to_text(sg);
        }
        return 0;
    } catch (const kahler::error& e) {
        std::cerr << "kahler: " << kahler::errc_name(e.code()) << ": " << e.what() << '\n';
        return exit_code(e.code());
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact invariants of curve branches and torsion of their differentials"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kahler::report_version);

    auto* analyze = app.add_subcommand("analyze", "analyze branch files");
    std::vector<std::string> paths;
    bool json = false;
    std::optional<int> truncation;
    int max_truncation = 4096;
    bool no_verify = false;
    std::string ideal_path;
    analyze->add_option("files", paths, "branch files, one generator per line")->required()->check(CLI::ExistingFile);
    analyze->add_flag("--json", json, "print a JSON report");
    analyze->add_option("--truncation", truncation, "initial truncation N")->check(CLI::PositiveNumber);
    analyze->add_option("--max-truncation", max_truncation, "largest truncation tried")->check(CLI::PositiveNumber);
    analyze->add_flag("--no-verify", no_verify, "skip the recomputation at 2N");
    analyze->add_option("--ideal", ideal_path, "fractional ideal file (may carry a 'shift: k' header)")
        ->check(CLI::ExistingFile);

    auto* semigroup = app.add_subcommand("semigroup", "gaps of a numerical semigroup by sieve");
    std::vector<int> gens;
    bool sg_json = false;
    semigroup->add_option("generators", gens, "positive integers with gcd 1")->required();
    semigroup->add_flag("--json", sg_json, "print JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (*analyze) {
        return cmd_analyze(paths, json, truncation, max_truncation, no_verify, ideal_path);
    }
    return cmd_semigroup(gens, sg_json);
}
