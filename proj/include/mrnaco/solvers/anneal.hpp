#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "mrnaco/error.hpp"
#include "mrnaco/qubo.hpp"
#include "mrnaco/random.hpp"
#include "mrnaco/solvers/solve_result.hpp"

namespace mrnaco {

struct SaConfig {
    int sweeps = 1000;
    int restarts = 20;
    std::uint64_t seed = 1;
    double t_hot = 0.0;   ///< 0 = derive from coefficients
    double t_cold = 0.0;  ///< 0 = derive from coefficients
};

namespace detail {
// Largest single-flip energy change ignoring the constraint penalty.
inline double objective_scale(const QuboModel& qubo) {
    std::set<VarPair> penalized(qubo.penalty_pairs().begin(), qubo.penalty_pairs().end());
    std::vector<double> mass(qubo.num_vars(), 0.0);
    for (std::size_t k = 0; k < qubo.num_vars(); ++k) mass[k] = std::abs(qubo.linear()[k]);
    for (const auto& t : qubo.quadratic()) {
        const double c = penalized.count({t.i, t.j}) ? t.coeff - qubo.penalty_weight() : t.coeff;
        mass[t.i] += std::abs(c);
        mass[t.j] += std::abs(c);
    }
    const double m = mass.empty() ? 0.0 : *std::max_element(mass.begin(), mass.end());
    return m > 0.0 ? m : 1.0;
}
}  // namespace detail

/// Single-flip Metropolis annealing with a geometric schedule and independent
/// restarts. Deterministic for a given seed.
inline SolveResult solve_sa(const QuboModel& qubo, const SaConfig& cfg = {}) {
    if (cfg.sweeps < 1 || cfg.restarts < 1) throw ValidationError("sweeps and restarts must be >= 1");
    const std::size_t n = qubo.num_vars();
    SolveResult res;
    if (n == 0) {
        res.energy = qubo.offset();
        res.feasible = true;
        res.trace.push_back(res.energy);
        return res;
    }
    const double scale = detail::objective_scale(qubo);
    const double t_hot = cfg.t_hot > 0 ? cfg.t_hot : scale;
    const double t_cold = cfg.t_cold > 0 ? cfg.t_cold : 1e-3 * scale;
    if (t_cold > t_hot) throw ValidationError("t_cold must not exceed t_hot");
    const double ratio = cfg.sweeps > 1 ? std::pow(t_cold / t_hot, 1.0 / (cfg.sweeps - 1)) : 1.0;
    const auto& nbrs = qubo.neighbors();

    Bits best;
    double best_e = 0.0;
    for (int r = 0; r < cfg.restarts; ++r) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        Bits x(n);
        for (auto& b : x) b = static_cast<std::uint8_t>(rng() >> 63);
        // field[k] = linear_k + sum_j Q_kj x_j
        std::vector<double> field = qubo.linear();
        for (const auto& t : qubo.quadratic()) {
            if (x[t.j]) field[t.i] += t.coeff;
            if (x[t.i]) field[t.j] += t.coeff;
        }
        double e = qubo.energy(x);
        Bits run_best = x;
        double run_best_e = e;
        double temp = t_hot;
        for (int s = 0; s < cfg.sweeps; ++s, temp *= ratio) {
            for (std::size_t k = 0; k < n; ++k) {
                const double delta = x[k] ? -field[k] : field[k];
                if (delta > 0 && uniform01(rng) >= std::exp(-delta / temp)) continue;
                x[k] ^= 1U;
                e += delta;
                const double sign = x[k] ? 1.0 : -1.0;
                for (const auto& [j, c] : nbrs[k]) field[j] += sign * c;
                if (e < run_best_e) {
                    run_best_e = e;
                    run_best = x;
                }
            }
            res.samples += n;
        }
        const double exact_e = qubo.energy(run_best);
        if (best.empty() || exact_e < best_e) {
            best_e = exact_e;
            best = run_best;
        }
        res.trace.push_back(best_e);
    }
    res.best = best;
    res.energy = qubo.energy(best);
    res.feasible = qubo.feasible(best);
    return res;
}

}  // namespace mrnaco
