#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mrnaco/error.hpp"

namespace mrnaco {

/// One 0/1 entry per variable; variable k is character k of the string form.
using Bits = std::vector<std::uint8_t>;

inline std::string bits_to_string(const Bits& bits) {
    std::string s(bits.size(), '0');
    for (std::size_t k = 0; k < bits.size(); ++k) s[k] = bits[k] ? '1' : '0';
    return s;
}

inline Bits bits_from_string(std::string_view s) {
    Bits bits(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] != '0' && s[k] != '1') throw ValidationError("bitstring must be over {0,1}");
        bits[k] = s[k] == '1';
    }
    return bits;
}

/// Variable k <-> bit k of the basis-state index.
inline Bits bits_from_index(std::uint64_t index, std::size_t n) {
    Bits bits(n);
    for (std::size_t k = 0; k < n; ++k) bits[k] = (index >> k) & 1U;
    return bits;
}

inline std::uint64_t index_from_bits(const Bits& bits) {
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k]) index |= std::uint64_t{1} << k;
    }
    return index;
}

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct QuadTerm {
    std::size_t i = 0;  ///< i < j
    std::size_t j = 0;
    double coeff = 0.0;
};

using VarPair = std::pair<std::size_t, std::size_t>;

/// E(x) = offset + sum_i linear_i x_i + sum_{i<j} Q_ij x_i x_j.
/// Penalty pairs are the constraint pairs folded in with weight `penalty_weight`;
/// a state is feasible when no penalty pair is fully selected.
class QuboModel {
   public:
    QuboModel() = default;

    QuboModel(std::vector<double> linear, const std::map<VarPair, double>& quadratic, double offset,
              double penalty_weight = 0.0, std::vector<VarPair> penalty_pairs = {})
        : linear_(std::move(linear)),
          offset_(offset),
          penalty_weight_(penalty_weight),
          penalty_pairs_(std::move(penalty_pairs)) {
        const std::size_t n = linear_.size();
        neighbors_.resize(n);
        for (const auto& [key, c] : quadratic) {
            auto [i, j] = key;
            if (i == j || i >= n || j >= n) {
                throw ValidationError("quadratic term must index two distinct variables in range");
            }
            if (i > j) std::swap(i, j);
            quadratic_.push_back({i, j, c});
            neighbors_[i].push_back({j, c});
            neighbors_[j].push_back({i, c});
        }
        for (auto& [i, j] : penalty_pairs_) {
            if (i > j) std::swap(i, j);
        }
    }

    std::size_t num_vars() const { return linear_.size(); }
    const std::vector<double>& linear() const { return linear_; }
    const std::vector<QuadTerm>& quadratic() const { return quadratic_; }
    double offset() const { return offset_; }
    double penalty_weight() const { return penalty_weight_; }
    const std::vector<VarPair>& penalty_pairs() const { return penalty_pairs_; }
    /// (neighbour, coefficient) per variable.
    const std::vector<std::vector<std::pair<std::size_t, double>>>& neighbors() const {
        return neighbors_;
    }

    double energy(const Bits& x) const {
        check(x);
        double e = offset_;
        for (std::size_t k = 0; k < linear_.size(); ++k) {
            if (x[k]) e += linear_[k];
        }
        for (const auto& t : quadratic_) {
            if (x[t.i] && x[t.j]) e += t.coeff;
        }
        return e;
    }

    double energy_of_index(std::uint64_t index) const {
        return energy(bits_from_index(index, num_vars()));
    }

    bool feasible(const Bits& x) const {
        check(x);
        for (const auto& [i, j] : penalty_pairs_) {
            if (x[i] && x[j]) return false;
        }
        return true;
    }

    /// Text export:
    ///   vars <N> offset <c>
    ///   lin <i> <coeff>
    ///   quad <i> <j> <coeff>
    void write(std::ostream& out) const {
        out << "vars " << num_vars() << " offset " << format_double(offset_) << '\n';
        for (std::size_t k = 0; k < linear_.size(); ++k) {
            out << "lin " << k << ' ' << format_double(linear_[k]) << '\n';
        }
        for (const auto& t : quadratic_) {
            out << "quad " << t.i << ' ' << t.j << ' ' << format_double(t.coeff) << '\n';
        }
    }

    /// Reads the export format back; penalty metadata is not part of it.
    static QuboModel read(std::istream& in) {
        std::string line, key;
        if (!std::getline(in, line)) throw ValidationError("empty QUBO text");
        std::istringstream head(line);
        std::size_t n = 0;
        double offset = 0.0;
        std::string offset_key;
        if (!(head >> key >> n >> offset_key >> offset) || key != "vars" || offset_key != "offset") {
            throw ValidationError("QUBO header must be 'vars <N> offset <c>'");
        }
        std::vector<double> linear(n, 0.0);
        std::map<VarPair, double> quad;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            if (!(ls >> key)) continue;
            if (key == "lin") {
                std::size_t i = 0;
                double c = 0.0;
                if (!(ls >> i >> c) || i >= n) throw ValidationError("bad lin line: " + line);
                linear[i] += c;
            } else if (key == "quad") {
                std::size_t i = 0, j = 0;
                double c = 0.0;
                if (!(ls >> i >> j >> c) || i >= n || j >= n || i == j) {
                    throw ValidationError("bad quad line: " + line);
                }
                quad[{std::min(i, j), std::max(i, j)}] += c;
            } else {
                throw ValidationError("unknown QUBO record: " + line);
            }
        }
        return QuboModel(std::move(linear), quad, offset);
    }

   private:
    void check(const Bits& x) const {
        if (x.size() != linear_.size()) {
            throw ValidationError("bitstring length " + std::to_string(x.size()) + " != " +
                                  std::to_string(linear_.size()) + " variables");
        }
    }

    std::vector<double> linear_;
    std::vector<QuadTerm> quadratic_;
    double offset_ = 0.0;
    double penalty_weight_ = 0.0;
    std::vector<VarPair> penalty_pairs_;
    std::vector<std::vector<std::pair<std::size_t, double>>> neighbors_;
};

}  // namespace mrnaco
