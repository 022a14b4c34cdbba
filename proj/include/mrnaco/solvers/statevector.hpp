#pragma once

// Statevector simulation of a layered hardware-efficient ansatz:
//   [RY layer, CZ chain] x depth, then a final RY layer.
// Qubit k is bit k of the basis-state index. RY and CZ have real matrices
// and the circuit starts in |0...0>, so amplitudes stay real throughout.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mrnaco/error.hpp"
#include "mrnaco/random.hpp"

namespace mrnaco {

using Amplitudes = std::vector<double>;

inline constexpr std::size_t kStatevectorMaxQubits = 22;

inline std::size_t ansatz_parameter_count(std::size_t num_qubits, int depth) {
    return num_qubits * static_cast<std::size_t>(depth + 1);
}

inline void apply_ry(Amplitudes& psi, std::size_t qubit, double angle) {
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < psi.size(); base += 2 * bit) {
        for (std::size_t x = base; x < base + bit; ++x) {
            const double a0 = psi[x], a1 = psi[x + bit];
            psi[x] = c * a0 - s * a1;
            psi[x + bit] = s * a0 + c * a1;
        }
    }
}

/// CZ on every neighbouring pair (k, k+1).
inline void apply_cz_chain(Amplitudes& psi) {
    for (std::uint64_t x = 0; x < psi.size(); ++x) {
        if (std::popcount(x & (x >> 1)) & 1) psi[x] = -psi[x];
    }
}

inline double norm_squared(const Amplitudes& psi) {
    double s = 0.0;
    for (double a : psi) s += a * a;
    return s;
}

/// RY(angles[k]) on qubit k applied to |0...0>, written out as a product state.
inline Amplitudes product_state(std::span<const double> angles) {
    Amplitudes psi{1.0};
    psi.reserve(std::size_t{1} << angles.size());
    for (double a : angles) {
        const double c = std::cos(a / 2), s = std::sin(a / 2);
        const std::size_t half = psi.size();
        psi.resize(2 * half);
        for (std::size_t x = 0; x < half; ++x) {
            psi[x + half] = s * psi[x];
            psi[x] *= c;
        }
    }
    return psi;
}

/// `angles` holds depth + 1 rotation layers of num_qubits angles each.
inline Amplitudes simulate_ansatz(std::span<const double> angles, std::size_t num_qubits, int depth) {
    if (num_qubits > kStatevectorMaxQubits) {
        throw SolverError("statevector simulation supports at most " +
                          std::to_string(kStatevectorMaxQubits) + " qubits, requested " +
                          std::to_string(num_qubits));
    }
    if (depth < 1) throw ValidationError("ansatz depth must be >= 1");
    if (angles.size() != ansatz_parameter_count(num_qubits, depth)) {
        throw ValidationError("expected " + std::to_string(ansatz_parameter_count(num_qubits, depth)) +
                              " ansatz angles, got " + std::to_string(angles.size()));
    }
    Amplitudes psi = product_state(angles.first(num_qubits));
    for (int layer = 1; layer <= depth; ++layer) {
        if (num_qubits > 1) apply_cz_chain(psi);
        for (std::size_t q = 0; q < num_qubits; ++q) {
            apply_ry(psi, q, angles[static_cast<std::size_t>(layer) * num_qubits + q]);
        }
    }
    return psi;
}

/// `shots` i.i.d. basis-state indices drawn from |psi|^2.
inline std::vector<std::uint64_t> sample_bitstrings(const Amplitudes& psi, std::size_t shots,
                                                    std::uint64_t seed) {
    if (psi.empty()) throw ValidationError("empty statevector");
    std::vector<double> cdf(psi.size());
    double acc = 0.0;
    for (std::size_t x = 0; x < psi.size(); ++x) {
        acc += psi[x] * psi[x];
        cdf[x] = acc;
    }
    if (std::abs(acc - 1.0) > 1e-6) throw ValidationError("statevector is not normalized");
    Rng rng(seed);
    std::vector<std::uint64_t> out(shots);
    for (auto& o : out) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        o = static_cast<std::uint64_t>(it - cdf.begin());
    }
    return out;
}

}  // namespace mrnaco
