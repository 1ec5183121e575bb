#pragma once

#include "kahler/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace kahler {

/// Numerical semigroup <a_1, ..., a_n> by dynamic-programming sieve.
struct numerical_semigroup {
    std::vector<int> generators;
    std::vector<int> gaps;
    int frobenius = -1; // largest gap, -1 when there is none
    int conductor = 0;
    int delta = 0;
    bool symmetric = true;
};

inline numerical_semigroup semigroup_sieve(std::vector<int> gens)
{
    if (gens.empty()) {
        throw error(errc::invalid_input, "semigroup needs at least one generator");
    }
    int g = 0;
    for (int a : gens) {
        if (a <= 0) {
            throw error(errc::invalid_input, "semigroup generators must be positive, got " + std::to_string(a));
        }
        g = std::gcd(g, a);
    }
    if (g != 1) {
        throw error(errc::gcd_not_one, "generators have gcd " + std::to_string(g));
    }
    numerical_semigroup sg;
    sg.generators = gens;
    std::sort(gens.begin(), gens.end());
    const int smallest = gens.front();
    // Once `smallest` consecutive values are reachable every larger value is too.
    std::vector<char> reach{1};
    int run = 1;
    for (int v = 1; run < smallest; ++v) {
        char r = 0;
        for (int a : gens) {
            if (a <= v && reach[static_cast<std::size_t>(v - a)]) {
                r = 1;
                break;
            }
        }
        reach.push_back(r);
        if (r) {
            ++run;
        } else {
            run = 0;
            sg.gaps.push_back(v);
        }
    }
    sg.delta = static_cast<int>(sg.gaps.size());
    sg.frobenius = sg.gaps.empty() ? -1 : sg.gaps.back();
    sg.conductor = sg.frobenius + 1;
    for (int z = 0; z < sg.conductor; ++z) {
        if (static_cast<bool>(reach[static_cast<std::size_t>(z)])
            == static_cast<bool>(reach[static_cast<std::size_t>(sg.conductor - 1 - z)])) {
            sg.symmetric = false;
            break;
        }
    }
    return sg;
}

} // namespace kahler
