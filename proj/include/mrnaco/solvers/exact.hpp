#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "mrnaco/error.hpp"
#include "mrnaco/qubo.hpp"
#include "mrnaco/solvers/solve_result.hpp"

namespace mrnaco {

inline constexpr std::size_t kExactMaxVars = 25;

/// Global minimum by exhaustive enumeration. Ties go to the lexicographically
/// smallest bitstring (variable 0 most significant).
inline SolveResult solve_exact(const QuboModel& qubo) {
    const std::size_t n = qubo.num_vars();
    if (n > kExactMaxVars) {
        throw SolverError("exact solver supports at most " + std::to_string(kExactMaxVars) +
                          " variables, model has " + std::to_string(n));
    }
    // Depth-first in lexicographic order, 0 before 1. field[k] is the energy
    // change of setting x_k = 1 given the already-fixed prefix.
    std::vector<std::vector<std::pair<std::size_t, double>>> later(n);
    for (const auto& t : qubo.quadratic()) later[t.i].push_back({t.j, t.coeff});
    std::vector<double> field = qubo.linear();

    Bits x(n, 0), best;
    double best_e = std::numeric_limits<double>::infinity();
    SolveResult res;

    auto better = [&](double e) {
        return best.empty() || e < best_e - 1e-9 * std::max(1.0, std::abs(best_e));
    };

    auto dfs = [&](auto&& self, std::size_t k, double e) -> void {
        if (k == n) {
            ++res.samples;
            if (better(e)) {
                best_e = e;
                best = x;
                res.trace.push_back(e);
            }
            return;
        }
        self(self, k + 1, e);
        x[k] = 1;
        for (const auto& [j, c] : later[k]) field[j] += c;
        self(self, k + 1, e + field[k]);
        for (const auto& [j, c] : later[k]) field[j] -= c;
        x[k] = 0;
    };
    dfs(dfs, 0, qubo.offset());

    res.best = best;
    res.energy = qubo.energy(best);
    res.feasible = qubo.feasible(best);
    return res;
}

}  // namespace mrnaco
