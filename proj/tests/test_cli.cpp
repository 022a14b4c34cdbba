#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

namespace fs = std::filesystem;
using mrnaco::cli::json;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    Outcome o;
    o.code = mrnaco::cli::run(args, {in, out, err});
    o.out = out.str();
    o.err = err.str();
    return o;
}

class TempDir {
   public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("mrnaco_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string& name) const { return path_ / name; }

   private:
    fs::path path_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Cli, FoldHairpin) {
    const auto r = run_cli({"fold", "--seq", "GGGAAACCC", "--solver", "exact"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["structure"], "(((...)))");
    EXPECT_NEAR(j["mfe"].get<double>(), -1.2, 1e-9);
    EXPECT_EQ(j["bitstring"], "11");
}

TEST(Cli, FoldWithoutPairs) {
    const auto r = run_cli({"fold", "--seq", "AAAA"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["structure"], "....");
    EXPECT_EQ(j["mfe"].get<double>(), 0.0);
}

TEST(Cli, ScoreBreakdown) {
    const auto r = run_cli({"score", "--seq", "GGGAAACCC", "--structure", "(((...)))"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    int stacks = 0, hairpins = 0;
    double total = 0.0;
    for (const auto& loop : j["loops"]) {
        stacks += loop["kind"] == "stack";
        hairpins += loop["kind"] == "hairpin";
        total += loop["energy"].get<double>();
    }
    EXPECT_EQ(stacks, 2);
    EXPECT_EQ(hairpins, 1);
    EXPECT_NEAR(total, j["mfe"].get<double>(), 1e-9);
}

TEST(Cli, ScoreRejectsBadStructures) {
    auto r = run_cli({"score", "--seq", "GGG", "--structure", "((("});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("unbalanced"), std::string::npos) << r.err;
    r = run_cli({"score", "--seq", "GGGAAACCC", "--structure", "(((...))"});
    EXPECT_EQ(r.code, 2);
    r = run_cli({"score", "--seq", "GGGGAAAACCCC", "--structure", "((..[[..))]]"});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, ExportQubo) {
    TempDir dir;
    const auto r = run_cli({"export-qubo", "--seq", "GGGAAACCC", "-o", (dir / "q.txt").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto text = slurp(dir / "q.txt");
    EXPECT_EQ(text.rfind("vars 2 ", 0), 0u) << text;
    std::istringstream in(text);
    EXPECT_EQ(mrnaco::QuboModel::read(in).num_vars(), 2u);
}

TEST(Cli, OptimizeReport) {
    const auto r = run_cli({"optimize", "--aa", "TLPKAD", "--solver", "exact", "--seed", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    for (const char* key : {"aa", "nt", "cai", "mfe", "structure", "objective", "theta", "alpha", "iterations",
                            "evaluations", "cache_hits", "solver", "seed"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["aa"], "TLPKAD");
    EXPECT_EQ(j["nt"].get<std::string>().size(), 18u);
    EXPECT_EQ(j["structure"].get<std::string>().size(), 18u);
    EXPECT_DOUBLE_EQ(j["objective"].get<double>(), -0.5 * j["cai"].get<double>() + j["mfe"].get<double>());
    EXPECT_EQ(j["theta"].size(), 3u);
}

TEST(Cli, OptimizeAlphaZero) {
    const auto r = run_cli({"optimize", "--aa", "TLPKAD", "--solver", "exact", "--alpha", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["objective"].get<double>(), j["mfe"].get<double>());
}

TEST(Cli, OptimizeEmptySequence) {
    const auto r = run_cli({"optimize", "--aa", ""});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("empty sequence"), std::string::npos) << r.err;
}

TEST(Cli, ValidationErrors) {
    EXPECT_EQ(run_cli({"optimize", "--aa", "TLXKAD"}).code, 2);
    EXPECT_EQ(run_cli({"fold", "--seq", "GGGNAACCC"}).code, 2);
    EXPECT_EQ(run_cli({"fold", "--seq", "GGGAAACCC", "--beta", "0"}).code, 2);
    EXPECT_EQ(run_cli({"fold", "--seq", "GGGAAACCC", "--solver", "qaoa"}).code, 2);
    EXPECT_EQ(run_cli({"fold", "--seq", "GGGAAACCC", "--lambda", "-1"}).code, 2);
    EXPECT_EQ(run_cli({"fold", "--seq", "GGGAAACCC", "--min-helix", "1"}).code, 2);
    EXPECT_EQ(run_cli({"optimize", "--aa", "MW", "--rarity-sign", "sideways"}).code, 2);
    EXPECT_EQ(run_cli({"transmogrify"}).code, 2);
    EXPECT_EQ(run_cli({}).code, 2);
}

TEST(Cli, SolverLimitsExitThree) {
    const std::string long_seq = "UACGACGACUGCGCUGUGAACUGGUGCUGGGUCGAGUAC";
    for (const char* solver : {"exact", "cvar"}) {
        const auto r = run_cli({"fold", "--seq", long_seq, "--solver", solver});
        EXPECT_EQ(r.code, 3) << solver;
        EXPECT_NE(r.err.find("at most"), std::string::npos) << r.err;
    }
}

TEST(Cli, IoErrorsExitFour) {
    EXPECT_EQ(run_cli({"fold", "--seq", "GGGAAACCC", "--energy-params", "/nonexistent/t.par"}).code, 4);
    EXPECT_EQ(run_cli({"optimize", "--aa", "MW", "--codon-table", "/nonexistent/t.csv"}).code, 4);
    EXPECT_EQ(run_cli({"fold", "--seq", "@/nonexistent/seq.fa"}).code, 4);
    EXPECT_EQ(run_cli({"fold", "--seq", "AAAA", "-o", "/nonexistent/dir/out.json"}).code, 4);
}

TEST(Cli, SequenceFromStdinAndFile) {
    TempDir dir;
    spit(dir / "hp.fa", ">hairpin\nGGGAAA\nCCC\n");
    const auto a = run_cli({"fold", "--seq", "-", "--solver", "exact"}, "GGGAAACCC\n");
    const auto b = run_cli({"fold", "--seq", "@" + (dir / "hp.fa").string(), "--solver", "exact"});
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json::parse(a.out)["structure"], "(((...)))");
}

TEST(Cli, TextFormat) {
    const auto r = run_cli({"fold", "--seq", "GGGAAACCC", "--solver", "exact", "--format", "text"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("structure: (((...)))"), std::string::npos) << r.out;
}

TEST(Cli, ReplayIsByteIdentical) {
    const std::vector<std::vector<std::string>> runs = {
        {"optimize", "--aa", "TLPKAD", "--solver", "sa", "--seed", "5"},
        {"optimize", "--aa", "MKV", "--solver", "cvar", "--shots", "256", "--max-iter", "5"},
        {"fold", "--seq", "GGGAAACCCUUGGGAAACCC", "--shots", "256", "--seed", "9"},
        {"score", "--seq", "GGGAAACCC", "--structure", "(((...)))"},
        {"export-qubo", "--seq", "GGGAAACCCUUGGGAAACCC"},
    };
    for (const auto& args : runs) {
        const auto a = run_cli(args), b = run_cli(args);
        EXPECT_EQ(a.code, 0) << a.err;
        EXPECT_EQ(a.out, b.out) << args[0];
    }
}

TEST(Cli, HistogramCsv) {
    TempDir dir;
    const auto path = (dir / "h.csv").string();
    const auto r = run_cli({"fold", "--seq", "GGGAAACCCUUGGGAAACCC", "--shots", "512", "--histogram", path});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(slurp(path));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "energy,count");
    std::size_t total = 0;
    double prev = -INFINITY;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        ASSERT_NE(comma, std::string::npos);
        const double e = std::stod(line.substr(0, comma));
        EXPECT_GT(e, prev);
        prev = e;
        total += std::stoul(line.substr(comma + 1));
    }
    EXPECT_GT(total, 0u);
    EXPECT_LE(total, 512u);
    EXPECT_EQ(run_cli({"fold", "--seq", "GGGAAACCC", "--solver", "exact", "--histogram", path}).code, 2);
}

TEST(Cli, HistoryCsv) {
    TempDir dir;
    const auto path = (dir / "hist.csv").string();
    const auto r = run_cli({"optimize", "--aa", "TLPKAD", "--solver", "exact", "--history", path});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto evaluations = json::parse(r.out)["evaluations"].get<std::size_t>();
    std::istringstream in(slurp(path));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("index,theta_gc,theta_rarity,theta_repeat,nt,cai,mfe,objective", 0), 0u) << line;
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, evaluations);
}

TEST(Cli, ConfigFile) {
    TempDir dir;
    spit(dir / "run.ini", "# replayable fold\n[fold]\nseq = GGGAAACCC\nsolver = exact\nformat = text\n");
    const auto cfg = (dir / "run.ini").string();
    auto r = run_cli({"fold", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("structure: (((...)))"), std::string::npos) << r.out;
    // Flags on the command line win over the file.
    r = run_cli({"fold", "--config", cfg, "--seq", "AAAA"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("structure: ...."), std::string::npos) << r.out;
}

TEST(Cli, HelpDocumentsEveryFlag) {
    std::string help = run_cli({"--help"}).out;
    for (const char* sub : {"optimize", "fold", "score", "export-qubo"}) {
        const auto r = run_cli({sub, "--help"});
        EXPECT_EQ(r.code, 0);
        help += r.out;
    }
    for (const char* flag : {"--aa", "--seq", "--structure", "--alpha", "--theta0", "--repeat-rule", "--rarity-sign",
                             "--nm-max-iter", "--no-cache", "--history", "--histogram", "--solver", "--shots",
                             "--beta", "--depth", "--max-iter", "--initial-step", "--min-step", "--seed", "--sweeps",
                             "--restarts", "--stack-reward", "--ua-penalty", "--min-loop", "--min-helix", "--ua-rule",
                             "--lambda", "--codon-table", "--energy-params", "--format", "--output", "--config"}) {
        EXPECT_NE(help.find(flag), std::string::npos) << flag;
    }
}
