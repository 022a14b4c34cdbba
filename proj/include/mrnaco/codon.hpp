#pragma once

// Codon usage tables, the three codon scoring terms (GC content, rarity,
// adjacent-codon repeats), CAI, and the exact codon-selection solver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mrnaco/data/bundled.hpp"
#include "mrnaco/error.hpp"
#include "mrnaco/seq.hpp"

namespace mrnaco {

struct CodonEntry {
    std::string codon;
    double frequency = 0.0;  ///< fraction among synonymous codons, (0, 1]
    double weight = 0.0;     ///< frequency / max synonymous frequency
    double rarity = 0.0;     ///< -ln(frequency)
    int gc = 0;
};

inline int gc_count(std::string_view codon) {
    return static_cast<int>(std::count_if(codon.begin(), codon.end(),
                                          [](char c) { return c == 'G' || c == 'C'; }));
}

class CodonTable {
   public:
    /// Parses `AA,codon,frequency` lines; '#' starts a comment.
    static CodonTable parse(std::string_view text) {
        CodonTable table;
        std::istringstream in{std::string(text)};
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            line.erase(std::remove_if(line.begin(), line.end(),
                                      [](unsigned char c) { return std::isspace(c); }),
                       line.end());
            if (line.empty()) continue;
            table.add_row(line, line_no);
        }
        table.finalize();
        return table;
    }

    static CodonTable load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open codon table: " + path.string());
        std::stringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

    /// H. sapiens usage shipped with the library.
    static const CodonTable& bundled_human() {
        static const CodonTable table = parse(bundled::kHumanCodonTable);
        return table;
    }

    /// Synonymous codons of `aa`, sorted by codon string.
    const std::vector<CodonEntry>& codons(char aa) const {
        auto it = entries_.find(aa);
        if (it == entries_.end()) {
            throw ValidationError("amino acid '" + std::string(1, aa) + "' not in codon table");
        }
        return it->second;
    }

    /// (amino acid, entry) for a codon, or nullopt.
    std::optional<std::pair<char, const CodonEntry*>> find(std::string_view codon) const {
        auto it = index_.find(std::string(codon));
        if (it == index_.end()) return std::nullopt;
        return std::make_pair(it->second.first, &entries_.at(it->second.first)[it->second.second]);
    }

    const std::map<char, std::vector<CodonEntry>>& entries() const { return entries_; }

   private:
    void add_row(const std::string& line, int line_no) {
        auto fail = [&](const std::string& why) {
            throw ValidationError("codon table line " + std::to_string(line_no) + ": " + why +
                                  " ('" + line + "')");
        };
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        if (fields.size() != 3) fail("expected AA,codon,frequency");
        if (fields[0].size() != 1) fail("amino acid must be one letter");
        const char aa = static_cast<char>(std::toupper(static_cast<unsigned char>(fields[0][0])));
        if (!is_amino_acid(aa)) fail("unknown amino acid");
        std::string codon = fields[1];
        for (char& c : codon) {
            c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            if (c == 'T') c = 'U';
        }
        if (codon.size() != 3 || !std::all_of(codon.begin(), codon.end(), is_rna_base)) {
            fail("malformed codon");
        }
        double freq = 0.0;
        try {
            std::size_t used = 0;
            freq = std::stod(fields[2], &used);
            if (used != fields[2].size()) fail("malformed frequency");
        } catch (const std::logic_error&) {
            fail("malformed frequency");
        }
        if (!(freq > 0.0) || freq > 1.0) fail("frequency must lie in (0, 1]");
        if (index_.count(codon)) fail("duplicate codon");
        auto& list = entries_[aa];
        index_[codon] = {aa, list.size()};
        list.push_back({codon, freq, 0.0, 0.0, gc_count(codon)});
    }

    void finalize() {
        for (char aa : kAminoAcids) {
            if (!entries_.count(aa)) {
                throw ValidationError("codon table missing amino acid '" + std::string(1, aa) + "'");
            }
        }
        index_.clear();
        for (auto& [aa, list] : entries_) {
            if (list.size() > 6) {
                throw ValidationError("amino acid '" + std::string(1, aa) + "' has more than 6 codons");
            }
            std::sort(list.begin(), list.end(),
                      [](const CodonEntry& a, const CodonEntry& b) { return a.codon < b.codon; });
            double total = 0.0, best = 0.0;
            for (const auto& e : list) {
                total += e.frequency;
                best = std::max(best, e.frequency);
            }
            if (std::abs(total - 1.0) > 0.02) {
                throw ValidationError("frequencies for '" + std::string(1, aa) + "' sum to " +
                                      std::to_string(total) + ", expected 1 +/- 0.02");
            }
            for (std::size_t k = 0; k < list.size(); ++k) {
                list[k].weight = list[k].frequency / best;
                list[k].rarity = -std::log(list[k].frequency);
                index_[list[k].codon] = {aa, k};
            }
        }
    }

    std::map<char, std::vector<CodonEntry>> entries_;
    std::unordered_map<std::string, std::pair<char, std::size_t>> index_;
};

inline double rarity(std::string_view codon, const CodonTable& table) {
    auto hit = table.find(codon);
    if (!hit) throw ValidationError("codon " + std::string(codon) + " not in table");
    return hit->second->rarity;
}

inline AminoAcidSeq translate(const NucleotideSeq& nt, const CodonTable& table) {
    if (nt.size() % 3 != 0) {
        throw ValidationError("sequence length " + std::to_string(nt.size()) +
                              " is not a multiple of 3");
    }
    std::string aa;
    for (std::size_t k = 0; k < nt.size(); k += 3) {
        const std::string_view codon(nt.str().data() + k, 3);
        auto hit = table.find(codon);
        if (!hit) {
            throw ValidationError("unknown codon " + std::string(codon) + " at position " +
                                  std::to_string(k + 1));
        }
        aa.push_back(hit->first);
    }
    return AminoAcidSeq::parse(aa);
}

/// Codon adaptation index: geometric mean of the relative-adaptiveness weights.
inline double cai(const NucleotideSeq& nt, const CodonTable& table) {
    if (nt.size() == 0 || nt.size() % 3 != 0) {
        throw ValidationError("sequence length " + std::to_string(nt.size()) +
                              " is not a positive multiple of 3");
    }
    double log_sum = 0.0;
    const std::size_t n = nt.size() / 3;
    for (std::size_t k = 0; k < n; ++k) {
        const std::string_view codon(nt.str().data() + 3 * k, 3);
        auto hit = table.find(codon);
        if (!hit) throw ValidationError("unknown codon " + std::string(codon));
        log_sum += std::log(hit->second->weight);
    }
    return std::exp(log_sum / static_cast<double>(n));
}

// Adjacent-codon repeat penalty. m is the longest run of one base in the
// six-base string formed by the two codons.
enum class RepeatRule {
    run_minus_one_squared,  ///< (m - 1)^2
    run_squared_minus_one,  ///< m^2 - 1
};

inline int longest_run(std::string_view s) {
    int best = 0, run = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        run = (k > 0 && s[k] == s[k - 1]) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

inline int repeat_score(std::string_view a, std::string_view b,
                        RepeatRule rule = RepeatRule::run_minus_one_squared) {
    std::string joined;
    joined.reserve(a.size() + b.size());
    joined.append(a).append(b);
    const int m = longest_run(joined);
    return rule == RepeatRule::run_minus_one_squared ? (m - 1) * (m - 1) : m * m - 1;
}

// Sign of the rarity term in the codon objective. negative_log uses
// p_j = -ln f_j so that rare codons are penalized under minimization.
enum class RaritySign { negative_log, positive_log };

struct Theta {
    double gc = 0.0;
    double rarity = 0.0;
    double repeat = 0.0;

    std::vector<double> to_vector() const { return {gc, rarity, repeat}; }
    static Theta from_vector(const std::vector<double>& v) { return {v.at(0), v.at(1), v.at(2)}; }
    friend bool operator==(const Theta&, const Theta&) = default;
};

struct CodonOptions {
    RepeatRule repeat_rule = RepeatRule::run_minus_one_squared;
    RaritySign rarity_sign = RaritySign::negative_log;
};

using CodonAssignment = std::vector<std::size_t>;

/// One codon per position minimizing
///   theta.gc * sum gc + theta.rarity * sum p + theta.repeat * sum r(adjacent).
/// The repeat term only couples neighbours, so the instance is a layered chain.
class CodonProblem {
   public:
    CodonProblem(AminoAcidSeq aa, const CodonTable& table, Theta theta, CodonOptions options = {})
        : aa_(std::move(aa)), table_(&table), theta_(theta), options_(options) {
        if (!std::isfinite(theta.gc) || !std::isfinite(theta.rarity) ||
            !std::isfinite(theta.repeat)) {
            throw ValidationError("theta components must be finite");
        }
        const std::size_t n = aa_.size();
        choices_.reserve(n);
        for (char a : aa_) choices_.push_back(&table.codons(a));
        node_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& e : *choices_[i]) {
                node_[i].push_back(theta_.gc * e.gc + theta_.rarity * signed_rarity(e));
            }
        }
        edge_.resize(n > 0 ? n - 1 : 0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const auto& left = *choices_[i];
            const auto& right = *choices_[i + 1];
            edge_[i].resize(left.size() * right.size());
            for (std::size_t k = 0; k < left.size(); ++k) {
                for (std::size_t l = 0; l < right.size(); ++l) {
                    edge_[i][k * right.size() + l] =
                        theta_.repeat * repeat_score(left[k].codon, right[l].codon,
                                                     options_.repeat_rule);
                }
            }
        }
    }

    const AminoAcidSeq& amino_acids() const { return aa_; }
    const CodonTable& table() const { return *table_; }
    const Theta& theta() const { return theta_; }
    const CodonOptions& options() const { return options_; }
    std::size_t size() const { return aa_.size(); }
    const std::vector<CodonEntry>& choices(std::size_t i) const { return *choices_[i]; }

    double node_cost(std::size_t i, std::size_t k) const { return node_[i][k]; }
    /// Cost between codon k at position i and codon l at position i + 1.
    double edge_cost(std::size_t i, std::size_t k, std::size_t l) const {
        return edge_[i][k * choices_[i + 1]->size() + l];
    }

    double signed_rarity(const CodonEntry& e) const {
        return options_.rarity_sign == RaritySign::negative_log ? e.rarity : -e.rarity;
    }

    NucleotideSeq sequence_of(const CodonAssignment& assignment) const {
        check(assignment);
        std::string nt;
        for (std::size_t i = 0; i < size(); ++i) nt += choices(i)[assignment[i]].codon;
        return NucleotideSeq::parse(nt);
    }

    void check(const CodonAssignment& assignment) const {
        if (assignment.size() != size()) {
            throw ValidationError("assignment length " + std::to_string(assignment.size()) +
                                  " != sequence length " + std::to_string(size()));
        }
        for (std::size_t i = 0; i < size(); ++i) {
            if (assignment[i] >= choices(i).size()) {
                throw ValidationError("codon index " + std::to_string(assignment[i]) +
                                      " out of range at position " + std::to_string(i + 1));
            }
        }
    }

   private:
    AminoAcidSeq aa_;
    const CodonTable* table_;
    Theta theta_;
    CodonOptions options_;
    std::vector<const std::vector<CodonEntry>*> choices_;
    std::vector<std::vector<double>> node_;
    std::vector<std::vector<double>> edge_;
};

inline double objective_value(const CodonProblem& problem, const CodonAssignment& assignment) {
    problem.check(assignment);
    double gc = 0.0, rare = 0.0, rep = 0.0;
    for (std::size_t i = 0; i < problem.size(); ++i) {
        const auto& e = problem.choices(i)[assignment[i]];
        gc += e.gc;
        rare += problem.signed_rarity(e);
        if (i + 1 < problem.size()) {
            rep += repeat_score(e.codon, problem.choices(i + 1)[assignment[i + 1]].codon,
                                problem.options().repeat_rule);
        }
    }
    const auto& t = problem.theta();
    return t.gc * gc + t.rarity * rare + t.repeat * rep;
}

struct CodonSolution {
    NucleotideSeq sequence;
    CodonAssignment assignment;
    double objective = 0.0;
};

namespace detail {
inline bool nearly_equal(double a, double b) {
    return std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)});
}
}  // namespace detail

/// Exact minimum by dynamic programming over the codon chain. Among optimal
/// assignments the lexicographically smallest (by codon index) is returned.
inline CodonSolution solve_codon(const CodonProblem& problem) {
    const std::size_t n = problem.size();
    // cost_to_go[i][k]: best cost of positions i..n-1 given codon k at i
    std::vector<std::vector<double>> cost_to_go(n);
    for (std::size_t ii = n; ii-- > 0;) {
        const std::size_t m = problem.choices(ii).size();
        cost_to_go[ii].assign(m, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            double tail = 0.0;
            if (ii + 1 < n) {
                tail = std::numeric_limits<double>::infinity();
                for (std::size_t l = 0; l < problem.choices(ii + 1).size(); ++l) {
                    tail = std::min(tail, problem.edge_cost(ii, k, l) + cost_to_go[ii + 1][l]);
                }
            }
            cost_to_go[ii][k] = problem.node_cost(ii, k) + tail;
        }
    }

    CodonAssignment assignment(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = problem.choices(i).size();
        std::vector<double> value(m);
        for (std::size_t k = 0; k < m; ++k) {
            value[k] = cost_to_go[i][k] + (i > 0 ? problem.edge_cost(i - 1, assignment[i - 1], k) : 0.0);
        }
        const double best = *std::min_element(value.begin(), value.end());
        std::size_t pick = 0;
        while (!detail::nearly_equal(value[pick], best)) ++pick;
        assignment[i] = pick;
    }
    return {problem.sequence_of(assignment), assignment, objective_value(problem, assignment)};
}

inline constexpr double kBruteForceLimit = 1e7;

/// Exhaustive minimum in lexicographic assignment order. Test oracle.
inline CodonSolution solve_codon_brute_force(const CodonProblem& problem) {
    const std::size_t n = problem.size();
    double space = 1.0;
    for (std::size_t i = 0; i < n; ++i) space *= static_cast<double>(problem.choices(i).size());
    if (space > kBruteForceLimit) {
        throw SolverError("brute force over " + std::to_string(space) + " assignments exceeds limit");
    }
    CodonAssignment current(n, 0), best;
    double best_value = std::numeric_limits<double>::infinity();
    while (true) {
        const double v = objective_value(problem, current);
        if (best.empty() || (v < best_value && !detail::nearly_equal(v, best_value))) {
            best_value = v;
            best = current;
        }
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++current[pos] < problem.choices(pos).size()) break;
            current[pos] = 0;
            if (pos == 0) {
                return {problem.sequence_of(best), best, best_value};
            }
        }
        if (n == 0) break;
    }
    return {problem.sequence_of(best), best, best_value};
}

}  // namespace mrnaco
