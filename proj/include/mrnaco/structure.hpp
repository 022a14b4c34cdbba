#pragma once

// Quartet (stacked-pair) binary model of secondary structure.
//
// A quartet q = (i, j, i+1, j-1) is selected when both pairs (i, j) and
// (i+1, j-1) form. The objective over selected quartets is
//
//   sum_q e_q q  +  r * sum_q sum_{q' in QS(q)} q q'  +  p * sum_q sum_{u in QUA} q (1 - u)
//
// where QS(q) is the quartet stacked directly inside q and QUA are the
// quartets with an A-U / U-A terminal pair. Conflicting quartets (shared base
// with different partners, or crossing pairs) may not both be selected.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mrnaco/energy.hpp"
#include "mrnaco/error.hpp"
#include "mrnaco/qubo.hpp"
#include "mrnaco/seq.hpp"

namespace mrnaco {

struct Quartet {
    int i = 0;  ///< outer pair (i, j); inner pair (i + 1, j - 1); 1-indexed
    int j = 0;
    char outer5 = 'N', outer3 = 'N', inner5 = 'N', inner3 = 'N';
    double energy = 0.0;  ///< stack free energy, kcal/mol

    BasePair outer() const { return {i, j}; }
    BasePair inner() const { return {i + 1, j - 1}; }
    friend bool operator==(const Quartet& a, const Quartet& b) { return a.i == b.i && a.j == b.j; }
};

/// Which quartets carry the U-A terminal term.
enum class UaRule {
    outer_pair,           ///< outer pair is A-U or U-A
    outer_or_inner_pair,  ///< either pair is A-U or U-A
};

struct StructureParams {
    double stack_reward = -1.0;  ///< r, per pair of stacked quartets
    double ua_penalty = 0.5;     ///< p
    int min_loop = 3;            ///< minimum unpaired bases in a hairpin
    int min_helix = 3;           ///< keep quartets that can lie in a helix of at least this many pairs
    UaRule ua_rule = UaRule::outer_pair;
};

/// All quartets of `seq`, sorted by (i, j). A quartet needs valid outer and
/// inner pairs and j - i >= min_loop + 3. With min_helix >= 3 a quartet is kept
/// only if a stacking neighbour (shifted by one position inward or outward)
/// is itself a quartet; min_helix = 2 keeps every quartet.
inline std::vector<Quartet> enumerate_quartets(const NucleotideSeq& seq, const EnergyParams& params,
                                               int min_loop = 3, int min_helix = 3) {
    if (min_loop < 0) throw ValidationError("min_loop must be non-negative");
    if (min_helix < 2 || min_helix > 3) throw ValidationError("min_helix must be 2 or 3");
    const int n = static_cast<int>(seq.size());
    auto is_quartet = [&](int i, int j) {
        return i >= 1 && j <= n && j - i >= min_loop + 3 && valid_pair(seq.at(i), seq.at(j)) &&
               valid_pair(seq.at(i + 1), seq.at(j - 1));
    };
    std::vector<Quartet> out;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + min_loop + 3; j <= n; ++j) {
            if (!is_quartet(i, j)) continue;
            if (min_helix >= 3 && !is_quartet(i + 1, j - 1) && !is_quartet(i - 1, j + 1)) continue;
            Quartet q;
            q.i = i;
            q.j = j;
            q.outer5 = seq.at(i);
            q.outer3 = seq.at(j);
            q.inner5 = seq.at(i + 1);
            q.inner3 = seq.at(j - 1);
            q.energy = stack_energy(q.outer5, q.outer3, q.inner5, q.inner3, params);
            out.push_back(q);
        }
    }
    return out;
}

/// True when the four pairs of the two quartets give a base two partners or
/// contain a crossing. Sharing an identical pair (a stack) is not a conflict.
inline bool quartets_conflict(const Quartet& a, const Quartet& b) {
    const BasePair pairs[4] = {a.outer(), a.inner(), b.outer(), b.inner()};
    for (int x = 0; x < 4; ++x) {
        for (int y = x + 1; y < 4; ++y) {
            const auto& p = pairs[x];
            const auto& q = pairs[y];
            if (p == q) continue;
            if (p.i == q.i || p.i == q.j || p.j == q.i || p.j == q.j) return true;
            if (pairs_cross(p, q)) return true;
        }
    }
    return false;
}

/// Indices of quartets stacked directly inside Q[index]: (i+1, j-1, i+2, j-2).
inline std::vector<std::size_t> stacking_partners(std::size_t index, const std::vector<Quartet>& quartets) {
    const auto& q = quartets.at(index);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < quartets.size(); ++k) {
        if (quartets[k].i == q.i + 1 && quartets[k].j == q.j - 1) out.push_back(k);
    }
    return out;
}

inline bool is_ua(char a, char b) { return (a == 'A' && b == 'U') || (a == 'U' && b == 'A'); }

inline std::vector<std::size_t> ua_terminal_set(const std::vector<Quartet>& quartets,
                                                UaRule rule = UaRule::outer_pair) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < quartets.size(); ++k) {
        const auto& q = quartets[k];
        const bool outer = is_ua(q.outer5, q.outer3);
        const bool inner = is_ua(q.inner5, q.inner3);
        if (outer || (rule == UaRule::outer_or_inner_pair && inner)) out.push_back(k);
    }
    return out;
}

struct QuartetUniverse {
    std::size_t length = 0;  ///< nucleotide count
    std::vector<Quartet> quartets;
    std::vector<VarPair> conflicts;                 ///< (a, b), a < b
    std::vector<std::vector<std::size_t>> stacking; ///< QS per quartet
    std::vector<std::size_t> ua_terminal;           ///< QUA

    std::size_t size() const { return quartets.size(); }

    bool in_conflict(std::size_t a, std::size_t b) const {
        if (a > b) std::swap(a, b);
        return std::binary_search(conflicts.begin(), conflicts.end(), VarPair{a, b});
    }
};

inline QuartetUniverse build_universe(const NucleotideSeq& seq, const EnergyParams& energy,
                                      const StructureParams& sp = {}) {
    QuartetUniverse u;
    u.length = seq.size();
    u.quartets = enumerate_quartets(seq, energy, sp.min_loop, sp.min_helix);
    const std::size_t m = u.quartets.size();
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            if (quartets_conflict(u.quartets[a], u.quartets[b])) u.conflicts.push_back({a, b});
        }
    }
    u.stacking.resize(m);
    for (std::size_t a = 0; a < m; ++a) u.stacking[a] = stacking_partners(a, u.quartets);
    u.ua_terminal = ua_terminal_set(u.quartets, sp.ua_rule);
    return u;
}

/// Quadratic objective with explicit pairwise constraints.
class StructureModel {
   public:
    StructureModel(QuartetUniverse universe, StructureParams params)
        : universe_(std::move(universe)), params_(params) {
        const std::size_t m = universe_.size();
        linear_.assign(m, 0.0);
        for (std::size_t a = 0; a < m; ++a) linear_[a] = universe_.quartets[a].energy;
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b : universe_.stacking[a]) add_quad(a, b, params_.stack_reward);
        }
        // p * q_a * (1 - q_u) = p q_a - p q_a q_u, with q_a q_a = q_a on the diagonal
        const double p = params_.ua_penalty;
        if (p != 0.0) {
            for (std::size_t a = 0; a < m; ++a) {
                for (std::size_t u : universe_.ua_terminal) {
                    linear_[a] += p;
                    if (u == a) {
                        linear_[a] -= p;
                    } else {
                        add_quad(a, u, -p);
                    }
                }
            }
        }
    }

    const QuartetUniverse& universe() const { return universe_; }
    const StructureParams& params() const { return params_; }
    std::size_t num_vars() const { return linear_.size(); }
    const std::vector<double>& linear() const { return linear_; }
    const std::map<VarPair, double>& quadratic() const { return quadratic_; }
    const std::vector<VarPair>& constraints() const { return universe_.conflicts; }
    double offset() const { return 0.0; }

    double objective(const Bits& x) const {
        if (x.size() != num_vars()) throw ValidationError("bitstring length does not match model");
        double e = offset();
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (x[k]) e += linear_[k];
        }
        for (const auto& [key, c] : quadratic_) {
            if (x[key.first] && x[key.second]) e += c;
        }
        return e;
    }

    bool feasible(const Bits& x) const {
        for (const auto& [a, b] : constraints()) {
            if (x.at(a) && x.at(b)) return false;
        }
        return true;
    }

    /// Sum of |linear| + |quadratic| coefficients.
    double coefficient_mass() const {
        double s = 0.0;
        for (double v : linear_) s += std::abs(v);
        for (const auto& [key, c] : quadratic_) s += std::abs(c);
        return s;
    }

   private:
    void add_quad(std::size_t a, std::size_t b, double c) {
        if (a > b) std::swap(a, b);
        quadratic_[{a, b}] += c;
    }

    QuartetUniverse universe_;
    StructureParams params_;
    std::vector<double> linear_;
    std::map<VarPair, double> quadratic_;
};

inline StructureModel build_model(const NucleotideSeq& seq, const EnergyParams& energy,
                                  const StructureParams& sp = {}) {
    return StructureModel(build_universe(seq, energy, sp), sp);
}

/// The objective summed term by term as written, without the expansion used
/// by StructureModel. Used to cross-check coefficient assembly.
inline double direct_objective(const QuartetUniverse& u, const StructureParams& sp, const Bits& x) {
    double e = 0.0;
    for (std::size_t a = 0; a < u.size(); ++a) e += u.quartets[a].energy * x[a];
    for (std::size_t a = 0; a < u.size(); ++a) {
        for (std::size_t b : u.stacking[a]) e += sp.stack_reward * x[a] * x[b];
    }
    for (std::size_t a = 0; a < u.size(); ++a) {
        for (std::size_t ua : u.ua_terminal) e += sp.ua_penalty * x[a] * (1 - x[ua]);
    }
    return e;
}

/// Default penalty weight: exceeds the full range of the objective.
inline double default_penalty_weight(const StructureModel& model) {
    return 1.0 + 2.0 * model.coefficient_mass();
}

/// Folds each constraint pair into the objective as lambda * q_a * q_b.
inline QuboModel to_penalty_qubo(const StructureModel& model, std::optional<double> lambda = std::nullopt) {
    const double weight = lambda.value_or(default_penalty_weight(model));
    if (!(weight > 0.0)) throw ValidationError("penalty weight must be positive");
    auto quad = model.quadratic();
    for (const auto& pair : model.constraints()) quad[pair] += weight;
    return QuboModel(model.linear(), quad, model.offset(), weight, model.constraints());
}

struct DecodeResult {
    bool feasible = false;
    PairSet pairs;                    ///< set when feasible
    std::vector<VarPair> violations;  ///< selected conflicting quartets
};

inline DecodeResult decode(const Bits& x, const QuartetUniverse& u) {
    if (x.size() != u.size()) {
        throw ValidationError("bitstring length " + std::to_string(x.size()) + " != " +
                              std::to_string(u.size()) + " quartets");
    }
    DecodeResult out;
    for (const auto& [a, b] : u.conflicts) {
        if (x[a] && x[b]) out.violations.push_back({a, b});
    }
    if (!out.violations.empty()) return out;
    std::set<BasePair> pairs;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!x[k]) continue;
        pairs.insert(u.quartets[k].outer());
        pairs.insert(u.quartets[k].inner());
    }
    out.feasible = true;
    out.pairs = PairSet(u.length, std::vector<BasePair>(pairs.begin(), pairs.end()));
    return out;
}

}  // namespace mrnaco
