#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mrnaco/mrnaco.hpp"
#include "support.hpp"

using namespace mrnaco;
using testing_support::random_amino;
using testing_support::random_rna;
using testing_support::random_theta;

namespace {

const CodonTable& human() { return CodonTable::bundled_human(); }
const EnergyParams& turner() { return EnergyParams::bundled_turner2004(); }

/// Random planar structure on n positions, built by nesting and concatenation.
std::string random_structure(std::mt19937_64& rng, std::size_t n) {
    std::string s(n, '.');
    auto fill = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
        std::uniform_real_distribution<double> u(0, 1);
        std::size_t i = lo;
        while (i + 1 < hi) {
            if (u(rng) < 0.35) {
                std::uniform_int_distribution<std::size_t> pick(i + 1, hi - 1);
                const std::size_t j = pick(rng);
                s[i] = '(';
                s[j] = ')';
                self(self, i + 1, j);
                i = j + 1;
            } else {
                ++i;
            }
        }
    };
    fill(fill, 0, n);
    return s;
}

/// A sequence carrying one helix of `stem` pairs around a hairpin of `loop`
/// bases, with unpaired flanks; the structure string is returned alongside.
std::pair<std::string, std::string> random_single_helix(std::mt19937_64& rng) {
    static const char* pairs[] = {"GC", "CG", "AU", "UA", "GU", "UG"};
    std::uniform_int_distribution<int> stem_d(2, 8), loop_d(3, 9), flank_d(0, 4), pair_d(0, 5);
    const int stem = stem_d(rng), loop = loop_d(rng), left = flank_d(rng), right = flank_d(rng);
    std::string five, three;
    for (int k = 0; k < stem; ++k) {
        const char* p = pairs[pair_d(rng)];
        five += p[0];
        three.insert(three.begin(), p[1]);
    }
    const std::string seq = random_rna(rng, static_cast<std::size_t>(left)) + five +
                            random_rna(rng, static_cast<std::size_t>(loop)) + three +
                            random_rna(rng, static_cast<std::size_t>(right));
    const std::string db = std::string(left, '.') + std::string(stem, '(') + std::string(loop, '.') +
                           std::string(stem, ')') + std::string(right, '.');
    return {seq, db};
}

/// Nearest-neighbour energy of a single helix walked pair by pair from the
/// outside in, straight from the parameter tables.
double helix_walk_energy(const std::string& seq, const std::string& db, const EnergyParams& p) {
    const auto first = db.find('(');
    const auto last_open = db.rfind('(');
    const auto first_close = db.find(')');
    const auto last = db.rfind(')');
    const auto au = [&](char a, char b) { return is_au_or_gu(a, b) ? p.terminal_au() : 0.0; };
    double e = au(seq[first], seq[last]);
    for (std::size_t i = first, j = last; i < last_open; ++i, --j) {
        e += p.stack(*pair_type(seq[i], seq[j]), *pair_type(seq[i + 1], seq[j - 1]));
    }
    const std::string hp = seq.substr(last_open, first_close - last_open + 1);
    if (auto special = p.special_hairpin(hp)) return e + *special;
    return e + p.hairpin(static_cast<int>(first_close - last_open - 1)) + au(seq[last_open], seq[first_close]);
}

}  // namespace

TEST(Properties, DotBracketRoundTrip) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = random_structure(rng, 1 + trial % 60);
        EXPECT_EQ(render_dot_bracket(parse_dot_bracket(s)), s);
    }
}

TEST(Properties, SolvedSequenceTranslatesBack) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 200; ++trial) {
        const auto aa = AminoAcidSeq::parse(random_amino(rng, 1 + trial % 30));
        const CodonProblem problem(aa, human(), random_theta(rng));
        EXPECT_EQ(translate(solve_codon(problem).sequence, human()).str(), aa.str());
    }
}

TEST(Properties, DynamicProgramMatchesBruteForce) {
    std::mt19937_64 rng(3);
    for (int s = 0; s < 20; ++s) {
        const auto aa = AminoAcidSeq::parse(random_amino(rng, 1 + s % 6));
        for (int t = 0; t < 20; ++t) {
            for (auto rule : {RepeatRule::run_minus_one_squared, RepeatRule::run_squared_minus_one}) {
                CodonOptions opt;
                opt.repeat_rule = rule;
                const CodonProblem problem(aa, human(), random_theta(rng), opt);
                const auto dp = solve_codon(problem);
                const auto bf = solve_codon_brute_force(problem);
                EXPECT_NEAR(dp.objective, bf.objective, 1e-9 * std::max(1.0, std::abs(bf.objective)));
                EXPECT_EQ(dp.assignment, bf.assignment);
            }
        }
    }
}

TEST(Properties, CaiIgnoresCodonOrder) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        const auto aa = AminoAcidSeq::parse(random_amino(rng, 2 + trial % 12));
        const auto nt = solve_codon(CodonProblem(aa, human(), random_theta(rng))).sequence.str();
        std::vector<std::string> codons;
        for (std::size_t k = 0; k < nt.size(); k += 3) codons.push_back(nt.substr(k, 3));
        std::shuffle(codons.begin(), codons.end(), rng);
        const std::string shuffled = std::accumulate(codons.begin(), codons.end(), std::string{});
        EXPECT_NEAR(cai(NucleotideSeq::parse(nt), human()), cai(NucleotideSeq::parse(shuffled), human()), 1e-12);
    }
}

TEST(Properties, WithoutRepeatTermPositionsDecouple) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto aa = AminoAcidSeq::parse(random_amino(rng, 1 + trial % 15));
        Theta th = random_theta(rng);
        th.repeat = 0.0;
        const CodonProblem problem(aa, human(), th);
        const auto sol = solve_codon(problem);
        for (std::size_t i = 0; i < problem.size(); ++i) {
            double best = INFINITY;
            std::size_t pick = 0;
            for (std::size_t k = 0; k < problem.choices(i).size(); ++k) {
                if (problem.node_cost(i, k) < best - 1e-12) {
                    best = problem.node_cost(i, k);
                    pick = k;
                }
            }
            EXPECT_EQ(sol.assignment[i], pick);
        }
    }
}

TEST(Properties, ObjectiveIsLinearInTheta) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const auto aa = AminoAcidSeq::parse(random_amino(rng, 1 + trial % 10));
        const Theta a = random_theta(rng), b = random_theta(rng);
        const Theta sum{a.gc + b.gc, a.rarity + b.rarity, a.repeat + b.repeat};
        const auto assignment = solve_codon(CodonProblem(aa, human(), random_theta(rng))).assignment;
        const double fa = objective_value(CodonProblem(aa, human(), a), assignment);
        const double fb = objective_value(CodonProblem(aa, human(), b), assignment);
        const double fs = objective_value(CodonProblem(aa, human(), sum), assignment);
        EXPECT_NEAR(fs, fa + fb, 1e-9 * std::max(1.0, std::abs(fs)));
    }
}

TEST(Properties, ConflictsAndStackingAreDisjoint) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const auto u = build_universe(NucleotideSeq::parse(random_rna(rng, 10 + trial % 40)), turner());
        for (std::size_t a = 0; a < u.size(); ++a) {
            for (std::size_t b : u.stacking[a]) EXPECT_FALSE(u.in_conflict(a, b));
        }
    }
}

TEST(Properties, FeasibleSelectionsDecodeToPlanarStructures) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto seq = NucleotideSeq::parse(random_rna(rng, 20 + trial % 30));
        const auto u = build_universe(seq, turner());
        // Greedy random independent set of the conflict graph.
        std::vector<std::size_t> order(u.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        Bits x(u.size(), 0);
        for (std::size_t a : order) {
            bool ok = true;
            for (std::size_t b = 0; b < u.size(); ++b) ok = ok && !(x[b] && u.in_conflict(a, b));
            if (ok) x[a] = 1;
        }
        const auto d = decode(x, u);
        ASSERT_TRUE(d.feasible);
        const auto s = render_dot_bracket(d.pairs);
        EXPECT_EQ(render_dot_bracket(parse_dot_bracket(s)), s);
        for (const auto& p : d.pairs.pairs()) EXPECT_TRUE(valid_pair(seq.at(p.i), seq.at(p.j)));
    }
}

TEST(Properties, PenaltyQuboKeepsTheConstrainedMinimum) {
    std::mt19937_64 rng(9);
    int checked = 0;
    while (checked < 30) {
        const auto model = build_model(NucleotideSeq::parse(random_rna(rng, 12 + checked % 9)), turner());
        if (model.num_vars() == 0 || model.num_vars() > 16) continue;
        ++checked;
        const auto qubo = to_penalty_qubo(model);
        double best = INFINITY;
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << model.num_vars()); ++s) {
            const auto x = bits_from_index(s, model.num_vars());
            if (model.feasible(x)) best = std::min(best, model.objective(x));
        }
        const auto r = solve_exact(qubo);
        EXPECT_TRUE(r.feasible);
        EXPECT_NEAR(r.energy, best, 1e-9);
    }
}

TEST(Properties, QuboEqualsDirectObjectivePlusPenalty) {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 40; ++trial) {
        const auto seq = NucleotideSeq::parse(random_rna(rng, 14 + trial % 10));
        const auto model = build_model(seq, turner());
        if (model.num_vars() == 0 || model.num_vars() > 14) continue;
        const auto qubo = to_penalty_qubo(model);
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << model.num_vars()); ++s) {
            const auto x = bits_from_index(s, model.num_vars());
            const auto violations = decode(x, model.universe()).violations.size();
            const double direct = direct_objective(model.universe(), model.params(), x);
            EXPECT_NEAR(qubo.energy(x) - qubo.penalty_weight() * static_cast<double>(violations), direct, 1e-9);
        }
    }
}

TEST(Properties, CvarGrowsWithBeta) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> e(1 + trial * 7);
        for (auto& v : e) v = g(rng);
        double prev = -INFINITY;
        for (double beta = 0.05; beta <= 1.0 + 1e-12; beta += 0.05) {
            const double c = cvar_value(e, std::min(beta, 1.0));
            EXPECT_GE(c, prev - 1e-12);
            prev = c;
        }
        EXPECT_NEAR(prev, std::accumulate(e.begin(), e.end(), 0.0) / static_cast<double>(e.size()), 1e-9);
    }
}

TEST(Properties, EvaluatorMatchesHelixWalk) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const auto [seq, db] = random_single_helix(rng);
        const double walk = helix_walk_energy(seq, db, turner());
        EXPECT_NEAR(mfe_eval(NucleotideSeq::parse(seq), parse_dot_bracket(db), turner()), walk, 1e-9)
            << seq << " " << db;
    }
}
