#pragma once

// Oracles and generators shared by the test binaries. Nothing here calls the
// echelon machinery.

#include "kahler/kahler.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testing {

using kahler::rational;
using kahler::truncated_series;

using sparse_poly = std::map<int, rational>;

inline sparse_poly to_sparse(const truncated_series& f)
{
    sparse_poly p;
    for (std::size_t j = 0; j < f.coeffs().size(); ++j) {
        if (f.coeffs()[j] != 0) {
            p[f.offset() + static_cast<int>(j)] = f.coeffs()[j];
        }
    }
    return p;
}

inline truncated_series from_sparse(const sparse_poly& p, int truncation = kahler::exact)
{
    if (p.empty()) {
        return truncated_series::zero(truncation);
    }
    const int lo = p.begin()->first;
    std::vector<rational> c(static_cast<std::size_t>(p.rbegin()->first - lo + 1));
    for (const auto& [e, v] : p) {
        c[static_cast<std::size_t>(e - lo)] = v;
    }
    return truncated_series(lo, std::move(c), truncation);
}

// Schoolbook convolution, dropping exponents >= cut.
inline sparse_poly convolve(const sparse_poly& a, const sparse_poly& b, int cut)
{
    sparse_poly out;
    for (const auto& [i, x] : a) {
        for (const auto& [j, y] : b) {
            if (i + j < cut) {
                out[i + j] += x * y;
            }
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

struct sieve_result {
    std::vector<int> gaps;
    int conductor = 0;
    bool symmetric = true;
};

// Brute-force membership in <a_1, ..., a_n> up to a bound that covers the Frobenius number.
inline sieve_result sieve(const std::vector<int>& gens)
{
    const int a = *std::min_element(gens.begin(), gens.end());
    const int b = *std::max_element(gens.begin(), gens.end());
    const int limit = a * b + 1; // Frobenius number < a*b
    std::vector<bool> in(static_cast<std::size_t>(limit + 1), false);
    in[0] = true;
    for (int v = 1; v <= limit; ++v) {
        for (int g : gens) {
            if (g <= v && in[static_cast<std::size_t>(v - g)]) {
                in[static_cast<std::size_t>(v)] = true;
            }
        }
    }
    sieve_result r;
    for (int v = 0; v <= limit; ++v) {
        if (!in[static_cast<std::size_t>(v)]) {
            r.gaps.push_back(v);
        }
    }
    r.conductor = r.gaps.empty() ? 0 : r.gaps.back() + 1;
    for (int z = 0; z < r.conductor; ++z) {
        if (in[static_cast<std::size_t>(z)] == in[static_cast<std::size_t>(r.conductor - 1 - z)]) {
            r.symmetric = false;
        }
    }
    return r;
}

inline rational random_rational(std::mt19937& rng, int range = 5)
{
    std::uniform_int_distribution<int> num(-range, range);
    std::uniform_int_distribution<int> den(1, 3);
    rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline truncated_series random_series(std::mt19937& rng, int lo, int hi, int truncation = kahler::exact)
{
    std::vector<rational> c(static_cast<std::size_t>(hi - lo + 1));
    for (auto& x : c) {
        x = random_rational(rng);
    }
    return truncated_series(lo, std::move(c), truncation);
}

// t^j (u_0 + u_1 t + ... ) with u_0 != 0.
inline truncated_series random_unit_multiple(std::mt19937& rng, int j, int length)
{
    std::vector<rational> c(static_cast<std::size_t>(length));
    for (auto& x : c) {
        x = random_rational(rng, 3);
    }
    if (c[0] == 0) {
        c[0] = 1;
    }
    return truncated_series(j, std::move(c));
}

// Primitive tuple of n distinct values in [2, max_value].
inline std::vector<int> random_primitive_tuple(std::mt19937& rng, int n, int max_value)
{
    std::uniform_int_distribution<int> pick(2, max_value);
    for (;;) {
        std::set<int> s;
        while (static_cast<int>(s.size()) < n) {
            s.insert(pick(rng));
        }
        std::vector<int> v(s.begin(), s.end());
        int g = 0;
        for (int x : v) {
            g = std::gcd(g, x);
        }
        if (g == 1) {
            std::shuffle(v.begin(), v.end(), rng);
            return v;
        }
    }
}

inline std::vector<int> range_values(int lo, int hi)
{
    std::vector<int> v(static_cast<std::size_t>(hi - lo));
    std::iota(v.begin(), v.end(), lo);
    return v;
}

inline kahler::branch_spec spec_of(const std::vector<std::string>& gens, std::string name = {})
{
    return kahler::branch_spec::from_strings(gens, std::move(name));
}

inline const std::vector<std::string> septic7{"t^8+t^9",  "64*t^10-81*t^12", "8*t^12-9*t^13", "t^14",
                                              "t^15",     "t^16",            "t^17"};
inline const std::vector<std::string> quartic4{"t^9", "t^14+t^15", "t^17", "t^29"};
inline const std::vector<std::string> plane_4_9{"t^4+t^5", "t^9"};
inline const std::vector<std::string> cusp{"t^2", "t^3"};

// Branches mixing monomial semigroups with higher-order perturbations.
inline std::vector<kahler::branch_spec> branch_corpus(std::size_t count, unsigned seed)
{
    std::vector<kahler::branch_spec> out;
    out.push_back(spec_of(cusp, "cusp"));
    out.push_back(spec_of(plane_4_9, "plane_4_9"));
    out.push_back(spec_of(septic7, "septic7"));
    out.push_back(spec_of(quartic4, "quartic4"));
    out.push_back(spec_of({"t^5", "t^6", "t^14"}, "space_5_6_14"));
    out.push_back(spec_of({"t^3", "t^4", "t^5"}, "space_3_4_5"));
    out.push_back(spec_of({"t^3+t^4", "t^5"}, "plane_3_5"));
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> ncount(2, 3);
    std::uniform_int_distribution<int> coin(0, 2);
    std::uniform_int_distribution<int> lift(1, 4);
    std::uniform_int_distribution<int> small(-3, 3);
    while (out.size() < count) {
        const int n = ncount(rng);
        const std::vector<int> a = random_primitive_tuple(rng, n, 11);
        kahler::branch_spec spec;
        spec.name = "random" + std::to_string(out.size());
        for (int ai : a) {
            std::string g = "t^" + std::to_string(ai);
            if (coin(rng) == 0) {
                int k = small(rng);
                if (k == 0) {
                    k = 1;
                }
                g += (k > 0 ? "+" : "-") + std::to_string(std::abs(k)) + "*t^" + std::to_string(ai + lift(rng));
            }
            spec.generators.push_back(kahler::parse_poly(g));
        }
        out.push_back(std::move(spec));
    }
    return out;
}

} // namespace testing
