#pragma once

// Nearest-neighbor free energy of a (sequence, structure) pair.
//
// Model: stacked pairs from a 6x6 pair-type table, hairpin/bulge/internal
// initiation by loop size (logarithmic extrapolation past 30), a penalty for
// every helix end closed by A-U or G-U, and a constant per multiloop.
// No dangles, mismatches or special loops.

#include <array>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mrnaco/data/bundled.hpp"
#include "mrnaco/error.hpp"
#include "mrnaco/seq.hpp"

namespace mrnaco {

enum class PairType : int { CG = 0, GC, GU, UG, AU, UA };

inline constexpr int kPairTypes = 6;

inline std::optional<PairType> pair_type(char five, char three) {
    switch (five) {
        case 'C':
            if (three == 'G') return PairType::CG;
            break;
        case 'G':
            if (three == 'C') return PairType::GC;
            if (three == 'U') return PairType::GU;
            break;
        case 'U':
            if (three == 'G') return PairType::UG;
            if (three == 'A') return PairType::UA;
            break;
        case 'A':
            if (three == 'U') return PairType::AU;
            break;
        default:
            break;
    }
    return std::nullopt;
}

/// Watson-Crick or G-U wobble.
inline bool valid_pair(char b1, char b2) { return pair_type(b1, b2).has_value(); }

inline bool is_au_or_gu(char five, char three) {
    auto t = pair_type(five, three);
    return t && *t != PairType::CG && *t != PairType::GC;
}

class EnergyParams {
   public:
    static constexpr int kTableMaxLoop = 30;
    static constexpr double kRT = 0.616;  // kcal/mol at 37 C

    /// Parses the text format:
    ///   stack XY ZW e      5'XY3'/3'ZW5', outer pair X-Z, inner pair Y-W
    ///   hairpin|bulge|internal <size> e
    ///   special_hairpin <closing pair and loop bases> e
    ///   terminal_au e
    ///   multiloop e
    static EnergyParams parse(std::string_view text) {
        EnergyParams p;
        std::array<std::array<bool, kPairTypes>, kPairTypes> seen{};
        bool have_terminal = false;
        std::istringstream in{std::string(text)};
        std::string line;
        int line_no = 0;
        std::size_t records = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::string key;
            if (!(ls >> key)) continue;
            auto fail = [&](const std::string& why) {
                throw ValidationError("energy parameter line " + std::to_string(line_no) + ": " + why);
            };
            auto read_value = [&]() {
                double v = 0.0;
                if (!(ls >> v)) fail("missing or malformed value");
                std::string extra;
                if (ls >> extra) fail("trailing token '" + extra + "'");
                return v;
            };
            ++records;
            if (key == "stack") {
                std::string top, bottom;
                if (!(ls >> top >> bottom) || top.size() != 2 || bottom.size() != 2) {
                    fail("expected 'stack XY ZW value'");
                }
                auto outer = pair_type(top[0], bottom[0]);
                auto inner = pair_type(top[1], bottom[1]);
                if (!outer || !inner) fail("stack " + top + "/" + bottom + " is not two valid pairs");
                const double v = read_value();
                p.stack_[static_cast<int>(*outer)][static_cast<int>(*inner)] = v;
                seen[static_cast<int>(*outer)][static_cast<int>(*inner)] = true;
            } else if (key == "hairpin" || key == "bulge" || key == "internal") {
                int size = 0;
                if (!(ls >> size) || size < 1) fail("expected '" + key + " <size> value'");
                const double v = read_value();
                (key == "hairpin" ? p.hairpin_ : key == "bulge" ? p.bulge_ : p.internal_)[size] = v;
            } else if (key == "special_hairpin") {
                std::string bases;
                if (!(ls >> bases) || bases.size() < 5 ||
                    !std::all_of(bases.begin(), bases.end(), is_rna_base) ||
                    !valid_pair(bases.front(), bases.back())) {
                    fail("expected 'special_hairpin <bases> value' closed by a valid pair");
                }
                p.special_hairpin_[bases] = read_value();
            } else if (key == "terminal_au") {
                p.terminal_au_ = read_value();
                have_terminal = true;
            } else if (key == "multiloop") {
                p.multiloop_ = read_value();
            } else {
                fail("unknown record '" + key + "'");
            }
        }
        if (records == 0) throw ValidationError("energy parameter file has no entries");
        static constexpr std::array<std::string_view, kPairTypes> names{"CG", "GC", "GU", "UG", "AU", "UA"};
        for (int a = 0; a < kPairTypes; ++a) {
            for (int b = 0; b < kPairTypes; ++b) {
                if (!seen[a][b]) {
                    throw ValidationError("missing stack entry for outer " + std::string(names[a]) +
                                          " inner " + std::string(names[b]));
                }
            }
        }
        require_sizes(p.hairpin_, "hairpin", 3);
        require_sizes(p.bulge_, "bulge", 1);
        require_sizes(p.internal_, "internal", 2);
        if (!have_terminal) throw ValidationError("missing terminal_au entry");
        return p;
    }

    static EnergyParams load(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open energy parameter file: " + path.string());
        std::stringstream buf;
        buf << in.rdbuf();
        return parse(buf.str());
    }

    static const EnergyParams& bundled_turner2004() {
        static const EnergyParams params = parse(bundled::kTurner2004Params);
        return params;
    }

    double stack(PairType outer, PairType inner) const {
        return stack_[static_cast<int>(outer)][static_cast<int>(inner)];
    }
    double hairpin(int size) const { return lookup(hairpin_, size, "hairpin"); }
    double bulge(int size) const { return lookup(bulge_, size, "bulge"); }
    double internal(int size) const { return lookup(internal_, size, "internal"); }
    /// Tabulated total energy of a hairpin given its closing pair and loop
    /// bases, replacing initiation and terminal penalty.
    std::optional<double> special_hairpin(std::string_view bases) const {
        auto it = special_hairpin_.find(std::string(bases));
        if (it == special_hairpin_.end()) return std::nullopt;
        return it->second;
    }
    double terminal_au() const { return terminal_au_; }
    double multiloop() const { return multiloop_; }
    void set_multiloop(double v) { multiloop_ = v; }

   private:
    static void require_sizes(const std::map<int, double>& m, const std::string& what, int from) {
        for (int s = from; s <= kTableMaxLoop; ++s) {
            if (!m.count(s)) {
                throw ValidationError("missing " + what + " entry for size " + std::to_string(s));
            }
        }
    }

    static double lookup(const std::map<int, double>& m, int size, const char* what) {
        if (size > kTableMaxLoop) {
            return m.at(kTableMaxLoop) +
                   1.75 * kRT * std::log(static_cast<double>(size) / kTableMaxLoop);
        }
        auto it = m.find(size);
        if (it == m.end()) {
            throw ValidationError(std::string(what) + " loop of size " + std::to_string(size) +
                                  " has no parameter");
        }
        return it->second;
    }

    std::array<std::array<double, kPairTypes>, kPairTypes> stack_{};
    std::map<int, double> hairpin_, bulge_, internal_;
    std::map<std::string, double, std::less<>> special_hairpin_;
    double terminal_au_ = 0.0;
    double multiloop_ = 0.0;
};

/// Energy of outer pair (i, j) stacked on inner pair (i+1, j-1), given as
/// base identities: outer = (s[i], s[j]), inner = (s[i+1], s[j-1]).
inline double stack_energy(char outer5, char outer3, char inner5, char inner3,
                           const EnergyParams& params) {
    auto outer = pair_type(outer5, outer3);
    auto inner = pair_type(inner5, inner3);
    if (!outer || !inner) {
        throw ValidationError(std::string("invalid pair in stack ") + outer5 + inner5 + "/" +
                              outer3 + inner3);
    }
    return params.stack(*outer, *inner);
}

enum class LoopKind { hairpin, stack, bulge, internal, multiloop, exterior };

inline std::string_view loop_kind_name(LoopKind k) {
    switch (k) {
        case LoopKind::hairpin: return "hairpin";
        case LoopKind::stack: return "stack";
        case LoopKind::bulge: return "bulge";
        case LoopKind::internal: return "internal";
        case LoopKind::multiloop: return "multiloop";
        case LoopKind::exterior: return "exterior";
    }
    return "?";
}

struct Loop {
    LoopKind kind = LoopKind::exterior;
    std::optional<BasePair> closing;  ///< absent for the exterior loop
    std::vector<BasePair> branches;   ///< pairs directly enclosed by this loop
    int unpaired = 0;
};

using LoopDecomposition = std::vector<Loop>;

/// One loop per pair (the loop it closes) plus the exterior loop, in order of
/// closing pair with the exterior loop first.
inline LoopDecomposition decompose_loops(const NucleotideSeq& seq, const PairSet& pairs) {
    if (pairs.length() != seq.size()) {
        throw ValidationError("structure length " + std::to_string(pairs.length()) +
                              " != sequence length " + std::to_string(seq.size()));
    }
    const auto partner = pairs.partner_table();
    const int n = static_cast<int>(seq.size());

    // Scans (from, to) inclusive, jumping over enclosed pairs.
    auto scan = [&](int from, int to, Loop& loop) {
        for (int k = from; k <= to;) {
            if (partner[k] > k) {
                loop.branches.push_back({k, partner[k]});
                k = partner[k] + 1;
            } else {
                ++loop.unpaired;
                ++k;
            }
        }
    };

    LoopDecomposition out;
    Loop exterior;
    scan(1, n, exterior);
    out.push_back(std::move(exterior));

    for (const auto& p : pairs.pairs()) {
        Loop loop;
        loop.closing = p;
        scan(p.i + 1, p.j - 1, loop);
        if (loop.branches.empty()) {
            loop.kind = LoopKind::hairpin;
        } else if (loop.branches.size() == 1) {
            const auto& in = loop.branches.front();
            const int left = in.i - p.i - 1;
            const int right = p.j - in.j - 1;
            if (left == 0 && right == 0) {
                loop.kind = LoopKind::stack;
            } else if (left == 0 || right == 0) {
                loop.kind = LoopKind::bulge;
            } else {
                loop.kind = LoopKind::internal;
            }
        } else {
            loop.kind = LoopKind::multiloop;
        }
        out.push_back(std::move(loop));
    }
    return out;
}

struct LoopEnergy {
    Loop loop;
    double energy = 0.0;
};

namespace detail {
inline double terminal(const NucleotideSeq& seq, const BasePair& p, const EnergyParams& params) {
    return is_au_or_gu(seq.at(p.i), seq.at(p.j)) ? params.terminal_au() : 0.0;
}
}  // namespace detail

inline double loop_energy(const NucleotideSeq& seq, const Loop& loop, const EnergyParams& params) {
    auto outer_stack = [&](const BasePair& o, const BasePair& in) {
        return stack_energy(seq.at(o.i), seq.at(o.j), seq.at(in.i), seq.at(in.j), params);
    };
    if (loop.closing && !valid_pair(seq.at(loop.closing->i), seq.at(loop.closing->j))) {
        throw ValidationError("non-canonical pair (" + std::to_string(loop.closing->i) + "," +
                              std::to_string(loop.closing->j) + ")");
    }
    switch (loop.kind) {
        case LoopKind::exterior: {
            double e = 0.0;
            for (const auto& b : loop.branches) e += detail::terminal(seq, b, params);
            return e;
        }
        case LoopKind::hairpin:
            if (loop.unpaired < 3) {
                throw ValidationError("hairpin closed by (" + std::to_string(loop.closing->i) + "," +
                                      std::to_string(loop.closing->j) + ") has fewer than 3 unpaired bases");
            }
            if (auto special = params.special_hairpin(std::string_view(seq.str()).substr(
                    static_cast<std::size_t>(loop.closing->i - 1),
                    static_cast<std::size_t>(loop.closing->j - loop.closing->i + 1)))) {
                return *special;
            }
            return params.hairpin(loop.unpaired) + detail::terminal(seq, *loop.closing, params);
        case LoopKind::stack:
            return outer_stack(*loop.closing, loop.branches.front());
        case LoopKind::bulge:
            if (loop.unpaired == 1) {
                // single-base bulges keep the stacking of the flanking pairs
                return params.bulge(1) + outer_stack(*loop.closing, loop.branches.front());
            }
            return params.bulge(loop.unpaired) + detail::terminal(seq, *loop.closing, params) +
                   detail::terminal(seq, loop.branches.front(), params);
        case LoopKind::internal:
            return params.internal(loop.unpaired) + detail::terminal(seq, *loop.closing, params) +
                   detail::terminal(seq, loop.branches.front(), params);
        case LoopKind::multiloop: {
            double e = params.multiloop() + detail::terminal(seq, *loop.closing, params);
            for (const auto& b : loop.branches) e += detail::terminal(seq, b, params);
            return e;
        }
    }
    return 0.0;
}

/// Per-loop energy breakdown (exterior loop first).
inline std::vector<LoopEnergy> energy_breakdown(const NucleotideSeq& seq, const PairSet& pairs,
                                                const EnergyParams& params) {
    std::vector<LoopEnergy> out;
    for (auto& loop : decompose_loops(seq, pairs)) {
        const double e = loop_energy(seq, loop, params);
        out.push_back({std::move(loop), e});
    }
    return out;
}

/// Free energy (kcal/mol) of `pairs` on `seq`.
inline double mfe_eval(const NucleotideSeq& seq, const PairSet& pairs, const EnergyParams& params) {
    double total = 0.0;
    for (const auto& le : energy_breakdown(seq, pairs, params)) total += le.energy;
    return total;
}

}  // namespace mrnaco
