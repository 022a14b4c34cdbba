#pragma once

// The mrnaco command line. Kept in a header so the test suite can drive it
// in-process with its own streams.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mrnaco/mrnaco.hpp"

namespace mrnaco::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kValidation = 2, kSolver = 3, kIo = 4 };

struct Streams {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

struct CommonOptions {
    std::string codon_table;
    std::string energy_params;
    std::string format = "json";
    std::string output;
    std::uint64_t seed = 1;
};

struct FoldOptions {
    std::string solver = "cvar";
    StructureParams structure;
    std::string ua_rule = "outer";
    std::optional<double> lambda;
    CvarConfig cvar;
    SaConfig sa;
};

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Sequence text from a flag value: "-" reads stdin, "@path" reads a file.
// FASTA header lines and '#' comments are skipped and whitespace dropped.
inline std::string resolve_sequence(const std::string& value, std::istream& in) {
    std::string raw;
    if (value == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        raw = ss.str();
    } else if (!value.empty() && value.front() == '@') {
        raw = read_text_file(value.substr(1));
    } else {
        return value;
    }
    std::string seq;
    std::istringstream lines(raw);
    for (std::string line; std::getline(lines, line);) {
        if (!line.empty() && (line.front() == '>' || line.front() == '#')) continue;
        for (char c : line) {
            if (!std::isspace(static_cast<unsigned char>(c))) seq += c;
        }
    }
    return seq;
}

inline CodonTable load_codon_table(const CommonOptions& c) {
    return c.codon_table.empty() ? CodonTable::bundled_human() : CodonTable::load(c.codon_table);
}

inline EnergyParams load_energy(const CommonOptions& c) {
    return c.energy_params.empty() ? EnergyParams::bundled_turner2004()
                                   : EnergyParams::load(c.energy_params);
}

inline UaRule parse_ua_rule(const std::string& s) {
    if (s == "outer") return UaRule::outer_pair;
    if (s == "outer-or-inner") return UaRule::outer_or_inner_pair;
    throw ValidationError("unknown UA rule '" + s + "' (expected outer|outer-or-inner)");
}

inline RepeatRule parse_repeat_rule(const std::string& s) {
    if (s == "run-minus-one-squared") return RepeatRule::run_minus_one_squared;
    if (s == "run-squared-minus-one") return RepeatRule::run_squared_minus_one;
    throw ValidationError("unknown repeat rule '" + s +
                          "' (expected run-minus-one-squared|run-squared-minus-one)");
}

inline RaritySign parse_rarity_sign(const std::string& s) {
    if (s == "negative-log") return RaritySign::negative_log;
    if (s == "positive-log") return RaritySign::positive_log;
    throw ValidationError("unknown rarity sign '" + s + "' (expected negative-log|positive-log)");
}

inline FoldConfig to_fold_config(const FoldOptions& f) {
    FoldConfig cfg;
    cfg.solver = parse_solver(f.solver);
    cfg.structure = f.structure;
    cfg.structure.ua_rule = parse_ua_rule(f.ua_rule);
    cfg.penalty_weight = f.lambda;
    cfg.cvar = f.cvar;
    cfg.sa = f.sa;
    if (cfg.structure.min_loop < 0) throw ValidationError("min-loop must be >= 0");
    if (cfg.structure.min_helix < 2) throw ValidationError("min-helix must be >= 2");
    if (cfg.penalty_weight && !(*cfg.penalty_weight > 0)) throw ValidationError("lambda must be positive");
    cfg.cvar.validate();
    if (cfg.sa.sweeps < 1 || cfg.sa.restarts < 1) throw ValidationError("sweeps and restarts must be >= 1");
    return cfg;
}

inline void add_common(CLI::App* app, CommonOptions& c) {
    app->add_option("--codon-table", c.codon_table, "Codon usage CSV (AA,codon,frequency); default: bundled H. sapiens");
    app->add_option("--energy-params", c.energy_params, "Nearest-neighbor parameter file; default: bundled Turner 2004");
    app->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app->add_option("--output,-o", c.output, "Write the report to this file instead of stdout");
    app->add_option("--seed", c.seed, "Random seed for the structure solver")->capture_default_str();
}

inline void add_structure(CLI::App* app, FoldOptions& f) {
    app->add_option("--stack-reward", f.structure.stack_reward, "Reward r for each pair of stacked quartets")->capture_default_str();
    app->add_option("--ua-penalty", f.structure.ua_penalty, "Penalty p of the U-A terminal term")->capture_default_str();
    app->add_option("--min-loop", f.structure.min_loop, "Minimum unpaired bases in a hairpin")->capture_default_str();
    app->add_option("--min-helix", f.structure.min_helix, "Keep quartets that fit a helix of at least this many pairs (2 keeps all)")->capture_default_str();
    app->add_option("--ua-rule", f.ua_rule, "Quartets carrying the U-A term: outer|outer-or-inner")->capture_default_str();
    app->add_option("--lambda", f.lambda, "Constraint penalty weight; default: 1 + 2 * coefficient mass");
}

inline void add_solver(CLI::App* app, FoldOptions& f) {
    app->add_option("--solver", f.solver, "Ground-state search: exact|sa|cvar")->check(CLI::IsMember({"exact", "sa", "cvar"}))->capture_default_str();
    app->add_option("--shots", f.cvar.shots, "CVaR: shots per circuit evaluation")->capture_default_str();
    app->add_option("--beta", f.cvar.beta, "CVaR: fraction of lowest energies averaged")->capture_default_str();
    app->add_option("--depth", f.cvar.depth, "CVaR: entangling layers in the ansatz")->capture_default_str();
    app->add_option("--max-iter", f.cvar.max_iterations, "CVaR: compass-search sweeps over the ansatz angles")->capture_default_str();
    app->add_option("--initial-step", f.cvar.initial_step, "CVaR: first compass step, radians")->capture_default_str();
    app->add_option("--min-step", f.cvar.min_step, "CVaR: stop once the compass step is below this")->capture_default_str();
    app->add_option("--sweeps", f.sa.sweeps, "Annealing: sweeps per restart")->capture_default_str();
    app->add_option("--restarts", f.sa.restarts, "Annealing: independent restarts")->capture_default_str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << text;
    if (!f) throw IoError("write to '" + path + "' failed");
}

// Writes `text` to --output or the output stream.
inline void emit(const CommonOptions& c, const std::string& text, std::ostream& out) {
    if (c.output.empty()) {
        out << text;
    } else {
        write_file(c.output, text);
    }
}

// Flat objects render as "key: value" lines in text mode.
inline std::string render(const json& report, const std::string& format) {
    if (format == "json") return report.dump(2) + "\n";
    std::string s;
    for (const auto& [key, value] : report.items()) {
        if (key == "schema") continue;
        s += key + ": ";
        s += value.is_string() ? value.get<std::string>() : value.dump();
        s += "\n";
    }
    return s;
}

inline json theta_json(const Theta& t) { return json::array({t.gc, t.rarity, t.repeat}); }

/// Feasible final-distribution samples binned by energy, as `energy,count` CSV.
inline std::string histogram_csv(const SolveResult& r) {
    std::map<double, std::size_t> bins;
    for (const auto& s : r.final_distribution) {
        if (s.feasible) bins[s.energy] += s.count;
    }
    std::string csv = "energy,count\n";
    for (const auto& [e, n] : bins) csv += format_double(e) + "," + std::to_string(n) + "\n";
    return csv;
}

inline std::string history_csv(const OptimizeReport& rep) {
    std::string csv = "index,theta_gc,theta_rarity,theta_repeat,nt,cai,mfe,objective,structure,cache_hit\n";
    for (const auto& r : rep.history) {
        csv += std::to_string(r.index) + "," + format_double(r.theta.gc) + "," +
               format_double(r.theta.rarity) + "," + format_double(r.theta.repeat) + "," + r.nt + "," +
               format_double(r.cai) + "," + format_double(r.mfe) + "," + format_double(r.objective) + "," +
               r.structure + "," + (r.cache_hit ? "1" : "0") + "\n";
    }
    return csv;
}

struct OptimizeOptions {
    std::string aa;
    double alpha = -0.5;
    std::vector<double> theta0{0.0, 0.0, 0.0};
    std::string repeat_rule = "run-minus-one-squared";
    std::string rarity_sign = "negative-log";
    int nm_max_iter = 200;
    bool no_cache = false;
    std::string history;
};

inline json ansatz_json(const CvarConfig& cv) {
    return {{"depth", cv.depth}, {"rotation", "RY"}, {"entangler", "CZ chain"}, {"beta", cv.beta}, {"shots", cv.shots}};
}

inline int cmd_optimize(const CommonOptions& c, const FoldOptions& f, const OptimizeOptions& o, Streams io) {
    const AminoAcidSeq aa = AminoAcidSeq::parse(resolve_sequence(o.aa, io.in));
    PipelineConfig cfg;
    cfg.alpha = o.alpha;
    if (o.theta0.size() != 3) throw ValidationError("--theta0 takes exactly 3 values (gc rarity repeat)");
    cfg.theta0 = Theta::from_vector(o.theta0);
    cfg.codon.repeat_rule = parse_repeat_rule(o.repeat_rule);
    cfg.codon.rarity_sign = parse_rarity_sign(o.rarity_sign);
    cfg.nm.max_iterations = o.nm_max_iter;
    cfg.fold = to_fold_config(f);
    cfg.use_cache = !o.no_cache;
    cfg.seed = c.seed;
    const CodonTable table = load_codon_table(c);
    const EnergyParams energy = load_energy(c);
    const OptimizeReport rep = optimize(aa, table, energy, cfg);

    json j;
    j["schema"] = 1;
    j["aa"] = rep.aa;
    j["nt"] = rep.best.nt;
    j["cai"] = rep.best.cai;
    j["mfe"] = rep.best.mfe;
    j["structure"] = rep.best.structure;
    j["objective"] = rep.best.objective;
    j["theta"] = theta_json(rep.theta);
    j["alpha"] = cfg.alpha;
    j["iterations"] = rep.iterations;
    j["evaluations"] = rep.evaluations;
    j["converged"] = rep.converged;
    j["cache_hits"] = rep.cache_hits;
    j["solver"] = f.solver;
    if (cfg.fold.solver == SolverKind::cvar) j["ansatz"] = ansatz_json(cfg.fold.cvar);
    j["seed"] = c.seed;
    if (!o.history.empty()) write_file(o.history, history_csv(rep));
    emit(c, render(j, c.format), io.out);
    return kOk;
}

inline int cmd_fold(const CommonOptions& c, const FoldOptions& f, const std::string& seq_arg,
                    const std::string& histogram, Streams io) {
    const NucleotideSeq seq = NucleotideSeq::parse(resolve_sequence(seq_arg, io.in));
    const FoldConfig cfg = to_fold_config(f);
    if (!histogram.empty() && cfg.solver != SolverKind::cvar) {
        throw ValidationError("--histogram needs --solver cvar (the only sampling solver)");
    }
    const EnergyParams energy = load_energy(c);
    const FoldResult r = fold(seq, energy, cfg, c.seed);

    json j;
    j["schema"] = 1;
    j["seq"] = seq.str();
    j["structure"] = r.structure;
    j["mfe"] = r.mfe;
    j["model_energy"] = r.model_energy;
    j["variables"] = r.num_variables;
    j["bitstring"] = bits_to_string(r.solve.best);
    j["solver"] = f.solver;
    j["samples"] = r.solve.samples;
    if (cfg.solver == SolverKind::cvar) {
        j["iterations"] = r.solve.iterations;
        j["evaluations"] = r.solve.evaluations;
        j["ansatz"] = ansatz_json(cfg.cvar);
    }
    j["seed"] = c.seed;
    if (!histogram.empty()) write_file(histogram, histogram_csv(r.solve));
    emit(c, render(j, c.format), io.out);
    return kOk;
}

inline int cmd_score(const CommonOptions& c, const std::string& seq_arg, const std::string& structure,
                     Streams io) {
    const NucleotideSeq seq = NucleotideSeq::parse(resolve_sequence(seq_arg, io.in));
    const PairSet pairs = parse_dot_bracket(structure);
    const EnergyParams energy = load_energy(c);
    const auto loops = energy_breakdown(seq, pairs, energy);

    json j;
    j["schema"] = 1;
    j["seq"] = seq.str();
    j["structure"] = render_dot_bracket(pairs);
    double total = 0.0;
    json terms = json::array();
    for (const auto& le : loops) {
        total += le.energy;
        json t;
        t["kind"] = std::string(loop_kind_name(le.loop.kind));
        t["closing"] = le.loop.closing ? json::array({le.loop.closing->i, le.loop.closing->j})
                                       : json(nullptr);
        t["energy"] = le.energy;
        terms.push_back(t);
    }
    j["mfe"] = total;
    if (c.format == "json") {
        j["loops"] = terms;
        emit(c, j.dump(2) + "\n", io.out);
    } else {
        std::string s = render(j, c.format);
        for (const auto& t : terms) {
            s += "  " + t["kind"].get<std::string>();
            if (!t["closing"].is_null()) s += " " + t["closing"].dump();
            s += " " + format_double(t["energy"].get<double>()) + "\n";
        }
        emit(c, s, io.out);
    }
    return kOk;
}

inline int cmd_export_qubo(const CommonOptions& c, const FoldOptions& f, const std::string& seq_arg,
                           Streams io) {
    const NucleotideSeq seq = NucleotideSeq::parse(resolve_sequence(seq_arg, io.in));
    const FoldConfig cfg = to_fold_config(f);
    const EnergyParams energy = load_energy(c);
    const StructureModel model = build_model(seq, energy, cfg.structure);
    std::ostringstream ss;
    to_penalty_qubo(model, cfg.penalty_weight).write(ss);
    emit(c, ss.str(), io.out);
    return kOk;
}

inline int run(const std::vector<std::string>& args, Streams io) {
    CLI::App app{"mRNA codon and secondary-structure co-optimization"};
    app.name("mrnaco");
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key = value file; [optimize], [fold], ... sections hold subcommand options");
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.fallthrough();

    CommonOptions common;
    FoldOptions fold_opts;
    OptimizeOptions opt;
    std::string seq, structure, histogram;

    auto* optimize_cmd = app.add_subcommand("optimize", "Search codon weights for the best composite objective");
    add_common(optimize_cmd, common);
    optimize_cmd->add_option("--aa", opt.aa, "Amino-acid sequence (or - for stdin, @file)")->required();
    optimize_cmd->add_option("--alpha", opt.alpha, "Weight of CAI in f = alpha * CAI + MFE")->capture_default_str();
    optimize_cmd->add_option("--theta0", opt.theta0, "Initial codon weights: gc rarity repeat")->expected(3)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)->capture_default_str();
    optimize_cmd->add_option("--repeat-rule", opt.repeat_rule, "Repeat score from the longest run m: run-minus-one-squared|run-squared-minus-one")->capture_default_str();
    optimize_cmd->add_option("--rarity-sign", opt.rarity_sign, "Rarity term: negative-log (-ln f) or positive-log (ln f)")->capture_default_str();
    optimize_cmd->add_option("--nm-max-iter", opt.nm_max_iter, "Outer Nelder-Mead iteration cap")->capture_default_str();
    optimize_cmd->add_flag("--no-cache", opt.no_cache, "Fold every evaluated sequence, even repeats");
    optimize_cmd->add_option("--history", opt.history, "Write every evaluation as CSV to this file");
    add_structure(optimize_cmd, fold_opts);
    add_solver(optimize_cmd, fold_opts);

    auto* fold_cmd = app.add_subcommand("fold", "Predict a secondary structure from the quartet model");
    add_common(fold_cmd, common);
    fold_cmd->add_option("--seq", seq, "Nucleotide sequence (or - for stdin, @file)")->required();
    fold_cmd->add_option("--histogram", histogram, "Write feasible CVaR samples as energy,count CSV");
    add_structure(fold_cmd, fold_opts);
    add_solver(fold_cmd, fold_opts);

    auto* score_cmd = app.add_subcommand("score", "Per-loop free energy of a given structure");
    add_common(score_cmd, common);
    score_cmd->add_option("--seq", seq, "Nucleotide sequence (or - for stdin, @file)")->required();
    score_cmd->add_option("--structure", structure, "Dot-bracket structure")->required();

    auto* export_cmd = app.add_subcommand("export-qubo", "Write the penalty QUBO of a sequence");
    add_common(export_cmd, common);
    export_cmd->add_option("--seq", seq, "Nucleotide sequence (or - for stdin, @file)")->required();
    add_structure(export_cmd, fold_opts);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, io.out, io.err);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*optimize_cmd) return cmd_optimize(common, fold_opts, opt, io);
        if (*fold_cmd) return cmd_fold(common, fold_opts, seq, histogram, io);
        if (*score_cmd) return cmd_score(common, seq, structure, io);
        if (*export_cmd) return cmd_export_qubo(common, fold_opts, seq, io);
    } catch (const ValidationError& e) {
        io.err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const SolverError& e) {
        io.err << "solver error: " << e.what() << "\n";
        return kSolver;
    } catch (const IoError& e) {
        io.err << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        io.err << "error: " << e.what() << "\n";
        return 1;
    }
    return kValidation;
}

inline int run(int argc, char** argv, Streams io) {
    std::vector<std::string> args;
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    return run(args, io);
}

}  // namespace mrnaco::cli
