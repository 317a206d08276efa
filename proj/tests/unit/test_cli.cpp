#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
    std::map<std::string, std::string> kv;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliRun r;
    r.code = subgeo::cli::run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line)) {
        if (line == "[csv]") break;
        const auto eq = line.find('=');
        if (eq != std::string::npos) r.kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return r;
}

std::string without_wall_time(const std::string& s) {
    std::istringstream in(s);
    std::string line, res;
    while (std::getline(in, line)) {
        const auto pos = line.rfind(',');
        if (line.rfind("wall_time=", 0) == 0) continue;
        // csv rows end with the wall time
        if (pos != std::string::npos && line.find('=') == std::string::npos) line = line.substr(0, pos);
        res += line + '\n';
    }
    return res;
}

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("subgeo_cli_" + name);
}

}  // namespace

TEST(Cli, SolveReportsEveryField) {
    const CliRun r = run({"solve", "--problem", "meb", "--n", "3000", "--d", "4", "--repeats", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* key :
         {"problem", "algorithm", "epsilon", "delta", "eta1", "eta2", "s", "z", "rounds", "c1", "c2",
          "c3", "inner_cap", "gamma", "seed", "repeats", "workers", "theory_mode", "size", "center",
          "covered", "excluded", "distance_evals", "points_touched", "repetitions_used",
          "best_round", "uas_fallback", "sandwich_fallback", "inner_capped", "planted_size",
          "wall_time"})
        EXPECT_TRUE(r.kv.count(key)) << key;
    EXPECT_EQ(std::stoul(r.kv.at("covered")) + std::stoul(r.kv.at("excluded")), 3000u);
    EXPECT_NE(r.out.find("[csv]\nproblem,algorithm,seed,repeats,size"), std::string::npos);
}

TEST(Cli, SolveIsDeterministic) {
    for (const char* problem : {"meb", "kcenter", "flat", "svm1", "svm2"}) {
        std::vector<std::string> args{"solve", "--problem", problem, "--n", "1500", "--d", "3",
                                      "--repeats", "2", "--seed", "9"};
        if (std::string(problem) == "flat") {
            args.insert(args.end(), {"--nu", "3", "--M", "8"});
        }
        if (std::string(problem) == "kcenter") args.insert(args.end(), {"--epsilon", "1"});
        const CliRun a = run(args);
        args.insert(args.end(), {"--workers", "1"});
        const CliRun b = run(args);
        ASSERT_EQ(a.code, 0) << problem << ": " << a.err;
        ASSERT_EQ(b.code, 0) << problem << ": " << b.err;
        // workers is echoed in the report
        std::string ao = without_wall_time(a.out), bo = without_wall_time(b.out);
        ao.replace(ao.find("workers=0"), 9, "workers=1");
        EXPECT_EQ(ao, bo) << problem;
        if (std::string(problem) != "svm2")
            EXPECT_EQ(std::stoul(a.kv.at("covered")) + std::stoul(a.kv.at("excluded")), 1500u);
    }
}

TEST(Cli, InputFileRoundTrip) {
    const auto pts = scratch("pts.bin");
    const CliRun g = run({"gen", "--kind", "meb", "--n", "500", "--d", "3", "--out", pts.string(),
                       "--format", "binary"});
    ASSERT_EQ(g.code, 0) << g.err;
    const CliRun s = run({"solve", "--problem", "meb", "--input", pts.string(), "--gamma", "0.1",
                       "--algorithm", "linear", "--repeats", "5"});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_EQ(s.kv.at("n"), "500");
    const CliRun o = run({"oracle", "--problem", "meb", "--input", pts.string()});
    EXPECT_EQ(o.code, 0) << o.err;
    std::filesystem::remove(pts);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"solve", "--bogus"}).code, 2);
    EXPECT_EQ(run({"solve", "--problem", "meb", "--epsilon", "0"}).code, 2);
    EXPECT_EQ(run({"solve", "--problem", "meb", "--input", scratch("absent").string()}).code, 2);
    EXPECT_EQ(run({"solve", "--problem", "flat", "--theory"}).code, 2);

    const CliRun budget = run({"solve", "--problem", "meb", "--theory", "--n", "1000"});
    EXPECT_EQ(budget.code, 3);
    EXPECT_TRUE(budget.kv.count("required_repeats"));

    const auto bad = scratch("bad.txt");
    std::ofstream(bad) << "GPTS 1 2 2\n0 0\n3\n";
    const CliRun fmt = run({"solve", "--problem", "meb", "--input", bad.string()});
    EXPECT_EQ(fmt.code, 2);
    EXPECT_NE(fmt.err.find("line 3"), std::string::npos);

    const auto hull = scratch("hull.txt");
    std::ofstream(hull) << "GPTS 1 2 2\n1 0\n-1 0\n";
    EXPECT_EQ(run({"solve", "--problem", "svm1", "--input", hull.string(), "--gamma", "0",
                   "--algorithm", "linear"})
                  .code,
              4);
    std::filesystem::remove(bad);
    std::filesystem::remove(hull);
}

TEST(Cli, HelpExitsCleanly) {
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({"solve", "--help"}).code, 0);
}
