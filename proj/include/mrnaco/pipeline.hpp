#pragma once

// Codon/structure co-optimization:
//   theta -> exact codon selection -> CAI
//         -> quartet model -> ground-state search -> structure -> MFE
//   f(theta) = alpha * CAI + MFE, minimized over theta by Nelder-Mead.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mrnaco/codon.hpp"
#include "mrnaco/energy.hpp"
#include "mrnaco/error.hpp"
#include "mrnaco/nelder_mead.hpp"
#include "mrnaco/random.hpp"
#include "mrnaco/seq.hpp"
#include "mrnaco/solvers/anneal.hpp"
#include "mrnaco/solvers/cvar.hpp"
#include "mrnaco/solvers/exact.hpp"
#include "mrnaco/structure.hpp"

namespace mrnaco {

enum class SolverKind { exact, sa, cvar };

inline std::string_view solver_name(SolverKind k) {
    switch (k) {
        case SolverKind::exact: return "exact";
        case SolverKind::sa: return "sa";
        case SolverKind::cvar: return "cvar";
    }
    return "?";
}

inline SolverKind parse_solver(std::string_view s) {
    if (s == "exact") return SolverKind::exact;
    if (s == "sa") return SolverKind::sa;
    if (s == "cvar") return SolverKind::cvar;
    throw ValidationError("unknown solver '" + std::string(s) + "' (expected exact|sa|cvar)");
}

struct FoldConfig {
    StructureParams structure;
    std::optional<double> penalty_weight;
    SolverKind solver = SolverKind::cvar;
    CvarConfig cvar;
    SaConfig sa;
};

struct FoldResult {
    PairSet pairs;
    std::string structure;
    double mfe = 0.0;           ///< nearest-neighbor energy of `pairs`, kcal/mol
    double model_energy = 0.0;  ///< quartet-model objective of the selected bitstring
    std::size_t num_variables = 0;
    SolveResult solve;
};

/// Secondary structure of `seq` from the quartet model. `seed` overrides the
/// seeds in cfg.cvar / cfg.sa.
inline FoldResult fold(const NucleotideSeq& seq, const EnergyParams& energy, const FoldConfig& cfg,
                       std::uint64_t seed) {
    const StructureModel model = build_model(seq, energy, cfg.structure);
    const QuboModel qubo = to_penalty_qubo(model, cfg.penalty_weight);
    FoldResult out;
    out.num_variables = model.num_vars();
    switch (cfg.solver) {
        case SolverKind::exact:
            out.solve = solve_exact(qubo);
            break;
        case SolverKind::sa: {
            SaConfig sa = cfg.sa;
            sa.seed = seed;
            out.solve = solve_sa(qubo, sa);
            break;
        }
        case SolverKind::cvar: {
            CvarConfig cv = cfg.cvar;
            cv.seed = seed;
            out.solve = solve_cvar_variational(qubo, cv);
            break;
        }
    }
    const DecodeResult decoded = decode(out.solve.best, model.universe());
    if (!decoded.feasible) {
        throw SolverError(std::string(solver_name(cfg.solver)) +
                          " solver returned a bitstring violating " +
                          std::to_string(decoded.violations.size()) + " quartet constraint(s)");
    }
    out.pairs = decoded.pairs;
    out.structure = render_dot_bracket(out.pairs);
    out.mfe = mfe_eval(seq, out.pairs, energy);
    out.model_energy = model.objective(out.solve.best);
    return out;
}

struct CachedFold {
    std::string structure;
    double mfe = 0.0;
    std::size_t num_variables = 0;
    std::size_t samples = 0;
};

/// nucleotide sequence -> fold. Concurrent readers, serialized writers.
class FoldCache {
   public:
    std::optional<CachedFold> find(const std::string& nt) const {
        std::shared_lock lock(mu_);
        auto it = map_.find(nt);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    void insert(const std::string& nt, CachedFold fold) {
        std::unique_lock lock(mu_);
        map_.emplace(nt, std::move(fold));
    }

    std::size_t size() const {
        std::shared_lock lock(mu_);
        return map_.size();
    }

   private:
    mutable std::shared_mutex mu_;
    std::unordered_map<std::string, CachedFold> map_;
};

struct PipelineConfig {
    double alpha = -0.5;
    Theta theta0{};
    NelderMeadOptions nm;  ///< defaults: 1 / 2 / 0.5 / 0.5, unit simplex, 1e-6 / 1e-4, 200 iterations
    CodonOptions codon;
    FoldConfig fold;
    bool use_cache = true;
    std::uint64_t seed = 1;
};

struct EvalRecord {
    std::size_t index = 0;  ///< 0-based evaluation number
    Theta theta;
    std::string nt;
    double codon_objective = 0.0;
    double cai = 0.0;
    std::string structure;
    double mfe = 0.0;
    double alpha = 0.0;
    double objective = 0.0;  ///< alpha * cai + mfe
    std::size_t num_variables = 0;
    std::size_t solver_samples = 0;
    bool cache_hit = false;
};

inline double composite_value(double alpha, double cai_value, double mfe) {
    return alpha * cai_value + mfe;
}

/// Solver seed for a sequence: a function of the run seed and the sequence, so
/// a cached fold and a recomputed fold always agree.
inline std::uint64_t fold_seed(std::uint64_t run_seed, const std::string& nt) {
    return derive_seed(run_seed, hash_string(nt));
}

inline EvalRecord composite_objective(const AminoAcidSeq& aa, const Theta& theta,
                                      const CodonTable& table, const EnergyParams& energy,
                                      const PipelineConfig& cfg, FoldCache* cache) {
    EvalRecord rec;
    rec.theta = theta;
    rec.alpha = cfg.alpha;
    const CodonProblem problem(aa, table, theta, cfg.codon);
    const CodonSolution sol = solve_codon(problem);
    rec.nt = sol.sequence.str();
    rec.codon_objective = sol.objective;
    rec.cai = cai(sol.sequence, table);

    std::optional<CachedFold> hit = cache ? cache->find(rec.nt) : std::nullopt;
    if (hit) {
        rec.cache_hit = true;
    } else {
        const FoldResult fr = fold(sol.sequence, energy, cfg.fold, fold_seed(cfg.seed, rec.nt));
        hit = CachedFold{fr.structure, fr.mfe, fr.num_variables, fr.solve.samples};
        if (cache) cache->insert(rec.nt, *hit);
    }
    rec.structure = hit->structure;
    rec.mfe = hit->mfe;
    rec.num_variables = hit->num_variables;
    rec.solver_samples = rec.cache_hit ? 0 : hit->samples;
    rec.objective = composite_value(cfg.alpha, rec.cai, rec.mfe);
    return rec;
}

struct OptimizeReport {
    std::string aa;
    Theta theta;     ///< best theta found
    EvalRecord best;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    std::size_t cache_hits = 0;
    std::size_t cache_size = 0;
    std::vector<EvalRecord> history;  ///< every evaluation in order
    std::vector<double> best_trace;   ///< best f after each iteration
};

inline OptimizeReport optimize(const AminoAcidSeq& aa, const CodonTable& table,
                               const EnergyParams& energy, const PipelineConfig& cfg) {
    if (!std::isfinite(cfg.alpha)) throw ValidationError("alpha must be finite");
    FoldCache cache;
    OptimizeReport report;
    report.aa = aa.str();
    auto objective = [&](const std::vector<double>& x) {
        EvalRecord rec = composite_objective(aa, Theta::from_vector(x), table, energy, cfg,
                                             cfg.use_cache ? &cache : nullptr);
        rec.index = report.history.size();
        if (rec.cache_hit) ++report.cache_hits;
        report.history.push_back(rec);
        return rec.objective;
    };
    const auto nm = nelder_mead(objective, cfg.theta0.to_vector(), cfg.nm);
    report.iterations = nm.iterations;
    report.evaluations = nm.evaluations;
    report.converged = nm.converged;
    report.best_trace = nm.best_trace;
    report.cache_size = cache.size();

    report.theta = Theta::from_vector(nm.x);
    for (const auto& rec : report.history) {
        if (rec.theta == report.theta) {
            report.best = rec;
            break;
        }
    }
    return report;
}

}  // namespace mrnaco
