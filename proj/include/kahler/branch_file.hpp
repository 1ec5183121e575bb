#pragma once

// Branch files: one generator expression per line.
//
//   # comment
//   name: septic
//   shift: 3        (ideal files only; every generator is multiplied by t^-3)
//   t^8 + t^9
//   64*t^10 - 81*t^12

#include "kahler/branch.hpp"
#include "kahler/error.hpp"
#include "kahler/poly_parser.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace kahler {

struct branch_file {
    std::string name;
    int shift = 0;
    bool has_shift = false;
    std::vector<std::string> lines; // generator text as written
    std::vector<int> line_numbers;
    std::vector<poly_expr> generators;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

} // namespace detail

/// Parses file contents; `origin` prefixes error messages as "origin:line: ...".
inline branch_file parse_branch_file(std::string_view text, const std::string& origin, bool allow_shift = false)
{
    branch_file f;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    auto where = [&] { return origin + ":" + std::to_string(lineno) + ": "; };
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string_view line = detail::trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (line.starts_with("name:")) {
            f.name = std::string(detail::trim(line.substr(5)));
            continue;
        }
        if (line.starts_with("shift:")) {
            if (!allow_shift) {
                throw error(errc::invalid_input, where() + "shift header is only allowed in ideal files");
            }
            const std::string_view v = detail::trim(line.substr(6));
            int k = 0;
            const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), k);
            if (ec != std::errc{} || p != v.data() + v.size()) {
                throw error(errc::invalid_input, where() + "shift must be an integer, got '" + std::string(v) + "'");
            }
            f.shift = k;
            f.has_shift = true;
            continue;
        }
        try {
            f.generators.push_back(parse_poly(line));
        } catch (const error& e) {
            throw error(e.code(), where() + "generator \"" + std::string(line) + "\": " + e.what());
        }
        f.lines.emplace_back(line);
        f.line_numbers.push_back(lineno);
    }
    if (f.generators.empty()) {
        throw error(errc::invalid_input, origin + ": no generator lines");
    }
    return f;
}

inline branch_file read_branch_file(const std::string& path, bool allow_shift = false)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw error(errc::invalid_input, path + ": cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_branch_file(ss.str(), path, allow_shift);
}

inline branch_spec to_spec(const branch_file& f)
{
    branch_spec spec;
    spec.name = f.name;
    spec.generators = f.generators;
    return spec;
}

/// Generators of an ideal file as exact series, with the shift applied.
inline std::vector<truncated_series> ideal_generators(const branch_file& f)
{
    std::vector<truncated_series> gens;
    for (const auto& g : f.generators) {
        gens.push_back(evaluate(g).shifted(-f.shift));
    }
    return gens;
}

} // namespace kahler
