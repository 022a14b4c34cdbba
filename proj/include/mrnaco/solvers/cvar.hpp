#pragma once

// CVaR variational sampling: the ansatz angles are tuned so that the mean of
// the lowest beta-fraction of sampled QUBO energies decreases. The answer is
// the best feasible bitstring seen in any batch of shots.
//
// Every evaluation reuses one sampling seed (common random numbers), so two
// nearby angle vectors are compared on the same uniforms rather than on
// independent noise. The angles move by compass search: each sweep tries
// +step and -step on every coordinate, and a sweep without improvement halves
// the step.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "mrnaco/error.hpp"
#include "mrnaco/qubo.hpp"
#include "mrnaco/random.hpp"
#include "mrnaco/solvers/solve_result.hpp"
#include "mrnaco/solvers/statevector.hpp"

namespace mrnaco {

/// Mean of the ceil(beta * N) smallest energies.
inline double cvar_value(std::vector<double> energies, double beta) {
    if (energies.empty()) throw ValidationError("CVaR of an empty sample");
    if (!(beta > 0.0 && beta <= 1.0)) throw ValidationError("beta must lie in (0, 1]");
    const auto n = energies.size();
    auto k = static_cast<std::size_t>(std::ceil(beta * static_cast<double>(n) - 1e-9));
    k = std::clamp<std::size_t>(k, 1, n);
    std::partial_sort(energies.begin(), energies.begin() + static_cast<std::ptrdiff_t>(k), energies.end());
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += energies[i];
    return s / static_cast<double>(k);
}

struct CvarConfig {
    double beta = 0.25;
    std::size_t shots = 8192;
    int depth = 1;
    std::uint64_t seed = 1;
    int max_iterations = 100;   ///< compass sweeps
    double initial_step = 1.0;  ///< radians
    double min_step = 1e-3;     ///< stop once the step falls below this

    void validate() const {
        if (!(beta > 0.0 && beta <= 1.0)) throw ValidationError("beta must lie in (0, 1]");
        if (shots < 1) throw ValidationError("shots must be >= 1");
        if (depth < 1) throw ValidationError("ansatz depth must be >= 1");
        if (max_iterations < 0) throw ValidationError("max_iterations must be >= 0");
        if (!(initial_step > 0.0)) throw ValidationError("initial_step must be positive");
        if (!(min_step > 0.0)) throw ValidationError("min_step must be positive");
    }
};

/// Energy and feasibility of every basis state, indexed like the statevector.
struct EnergyTable {
    std::vector<double> energy;
    std::vector<std::uint8_t> feasible;
};

inline EnergyTable build_energy_table(const QuboModel& qubo) {
    const std::size_t n = qubo.num_vars();
    if (n > kStatevectorMaxQubits) {
        throw SolverError("energy table supports at most " + std::to_string(kStatevectorMaxQubits) +
                          " variables");
    }
    std::vector<std::vector<std::pair<std::size_t, double>>> lower(n);
    for (const auto& t : qubo.quadratic()) lower[t.j].push_back({t.i, t.coeff});
    std::vector<std::uint64_t> conflict_mask(n, 0);
    for (const auto& [a, b] : qubo.penalty_pairs()) conflict_mask[b] |= std::uint64_t{1} << a;

    const std::uint64_t states = std::uint64_t{1} << n;
    EnergyTable t;
    t.energy.resize(states);
    t.feasible.resize(states);
    t.energy[0] = qubo.offset();
    t.feasible[0] = 1;
    for (std::uint64_t x = 1; x < states; ++x) {
        const auto h = static_cast<std::size_t>(std::bit_width(x) - 1);
        const std::uint64_t rest = x ^ (std::uint64_t{1} << h);
        double e = t.energy[rest] + qubo.linear()[h];
        for (const auto& [j, c] : lower[h]) {
            if ((rest >> j) & 1U) e += c;
        }
        t.energy[x] = e;
        t.feasible[x] = t.feasible[rest] && !(rest & conflict_mask[h]);
    }
    return t;
}

inline SolveResult solve_cvar_variational(const QuboModel& qubo, const CvarConfig& cfg = {}) {
    cfg.validate();
    const std::size_t n = qubo.num_vars();
    if (n > kStatevectorMaxQubits) {
        throw SolverError("CVaR sampler supports at most " + std::to_string(kStatevectorMaxQubits) +
                          " variables, model has " + std::to_string(n));
    }
    SolveResult res;
    if (n == 0) {
        res.energy = qubo.offset();
        res.feasible = true;
        res.trace.push_back(res.energy);
        return res;
    }
    const EnergyTable table = build_energy_table(qubo);

    // All-zeros (empty structure) is always feasible; it seeds the incumbent.
    std::uint64_t best_index = 0;
    double best_e = table.energy[0];

    auto consider = [&](std::uint64_t s) {
        if (table.feasible[s] && table.energy[s] < best_e) {
            best_e = table.energy[s];
            best_index = s;
        }
    };

    const std::uint64_t sampling_seed = derive_seed(cfg.seed, 1);
    auto objective = [&](const std::vector<double>& angles) {
        const auto psi = simulate_ansatz(angles, n, cfg.depth);
        const auto shots = sample_bitstrings(psi, cfg.shots, sampling_seed);
        std::vector<double> energies;
        energies.reserve(shots.size());
        for (auto s : shots) {
            energies.push_back(table.energy[s]);
            consider(s);
        }
        res.samples += shots.size();
        ++res.evaluations;
        res.trace.push_back(best_e);
        return cvar_value(std::move(energies), cfg.beta);
    };

    // Start near the uniform superposition: RY(pi/2) on every qubit, then
    // near-identity layers.
    Rng init(derive_seed(cfg.seed, 0));
    std::vector<double> x(ansatz_parameter_count(n, cfg.depth));
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double jitter = 0.2 * (uniform01(init) - 0.5);
        x[k] = (k < n ? std::numbers::pi / 2 : 0.0) + jitter;
    }

    double fx = objective(x);
    double step = cfg.initial_step;
    while (res.iterations < cfg.max_iterations && step >= cfg.min_step) {
        ++res.iterations;
        bool improved = false;
        for (std::size_t k = 0; k < x.size(); ++k) {
            for (double d : {step, -step}) {
                auto y = x;
                y[k] += d;
                const double fy = objective(y);
                if (fy < fx) {
                    x = std::move(y);
                    fx = fy;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    res.parameters = x;

    // Distribution at the final angles (histogram export).
    const auto psi = simulate_ansatz(x, n, cfg.depth);
    std::map<std::uint64_t, std::size_t> counts;
    for (auto s : sample_bitstrings(psi, cfg.shots, derive_seed(cfg.seed, ~std::uint64_t{0}))) {
        ++counts[s];
        consider(s);
    }
    res.samples += cfg.shots;
    for (const auto& [s, c] : counts) {
        res.final_distribution.push_back({bits_from_index(s, n), c, table.energy[s], table.feasible[s] != 0});
    }
    std::stable_sort(res.final_distribution.begin(), res.final_distribution.end(),
                     [](const SampleCount& a, const SampleCount& b) { return a.energy < b.energy; });
    res.trace.push_back(best_e);

    res.best = bits_from_index(best_index, n);
    res.energy = qubo.energy(res.best);
    res.feasible = qubo.feasible(res.best);
    if (!res.feasible) throw SolverError("CVaR sampler produced no feasible sample");
    return res;
}

}  // namespace mrnaco
