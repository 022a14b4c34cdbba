#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mrnaco/qubo.hpp"

namespace mrnaco {

struct SampleCount {
    Bits bits;
    std::size_t count = 0;
    double energy = 0.0;
    bool feasible = false;
};

struct SolveResult {
    Bits best;
    double energy = 0.0;  ///< qubo.energy(best)
    bool feasible = false;
    std::size_t samples = 0;          ///< states or shots examined
    std::vector<double> trace;        ///< best-so-far energy, nonincreasing
    int iterations = 0;               ///< optimizer iterations (CVaR only)
    int evaluations = 0;              ///< objective evaluations (CVaR only)
    std::vector<double> parameters;   ///< final ansatz angles (CVaR only)
    std::vector<SampleCount> final_distribution;  ///< shots at final angles (CVaR only)
};

}  // namespace mrnaco
