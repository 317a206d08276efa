#include "app.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "subgeo/errors.hpp"
#include "subgeo/flat.hpp"
#include "subgeo/instances.hpp"
#include "subgeo/io.hpp"
#include "subgeo/kcenter.hpp"
#include "subgeo/meb_outliers.hpp"
#include "subgeo/oracles.hpp"
#include "subgeo/svm.hpp"
#include "subgeo/validate.hpp"

namespace subgeo::cli {

namespace {

constexpr std::uint64_t kConfirmThreshold = 100'000;

std::string num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string coords(PointView p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ' ';
        s += num(p[i]);
    }
    return s;
}

std::string flag(bool b) { return b ? "1" : "0"; }

/// Ordered key=value pairs followed by a one-row CSV block of `csv_keys`.
class Report {
public:
    void set(const std::string& key, std::string value) {
        for (auto& kv : kv_)
            if (kv.first == key) {
                kv.second = std::move(value);
                return;
            }
        kv_.emplace_back(key, std::move(value));
    }
    void set(const std::string& key, double v) { set(key, num(v)); }
    void set(const std::string& key, std::uint64_t v) { set(key, std::to_string(v)); }

    std::string render(const std::vector<std::string>& csv_keys) const {
        std::ostringstream os;
        for (const auto& [k, v] : kv_) os << k << '=' << v << '\n';
        if (csv_keys.empty()) return os.str();
        os << "[csv]\n";
        for (std::size_t i = 0; i < csv_keys.size(); ++i) os << (i ? "," : "") << csv_keys[i];
        os << '\n';
        for (std::size_t i = 0; i < csv_keys.size(); ++i) os << (i ? "," : "") << get(csv_keys[i]);
        os << '\n';
        return os.str();
    }

private:
    std::string get(const std::string& key) const {
        for (const auto& kv : kv_)
            if (kv.first == key) return kv.second;
        return "";
    }
    std::vector<std::pair<std::string, std::string>> kv_;
};

struct SolveConfig {
    std::string problem = "meb";
    std::string algorithm = "sublinear";
    std::string input;
    std::string input2;
    std::string report_path;
    std::size_t n = 10'000;
    std::size_t d = 10;
    std::size_t k = 2;
    double gamma = 0.1;
    double gamma2 = -1.0;  // two-class; negative means "same as gamma"
    std::string guess = "enumerate";
    double c5 = 4.0;
    std::size_t nu = 0;
    std::size_t M = 0;
    std::uint64_t seed = 1;
    bool confirm_budget = false;
    std::size_t workers = 0;
    bool serial = false;
    bool no_final_scan = false;
    bool scale_eta2 = false;
    bool flip_sign = false;
    BiCriteriaParams params;
};

void add_params(CLI::App* cmd, BiCriteriaParams& p) {
    cmd->add_option("--epsilon", p.epsilon, "approximation accuracy")->capture_default_str();
    cmd->add_option("--delta", p.delta, "outlier slack")->capture_default_str();
    cmd->add_option("--eta1", p.eta1, "uniform-adaptive failure probability")->capture_default_str();
    cmd->add_option("--eta2", p.eta2, "sandwich failure probability")->capture_default_str();
    cmd->add_option("--s", p.s, "core-set shrink factor (0: eps/(2+eps))");
    cmd->add_option("--z", p.z, "round count (0: core-set bound)");
    cmd->add_option("--c1", p.c1, "uniform-adaptive sample constant")->capture_default_str();
    cmd->add_option("--c2", p.c2, "sandwich sample constant")->capture_default_str();
    cmd->add_option("--c3", p.c3, "theory-mode repeat constant")->capture_default_str();
    cmd->add_option("--inner-cap", p.inner_cap, "cap on inner solver iterations")->capture_default_str();
}

std::vector<std::string> csv_keys() {
    return {"problem", "algorithm", "seed", "repeats", "size", "covered", "excluded",
            "distance_evals", "points_touched", "uas_fallback", "sandwich_fallback", "wall_time"};
}

void describe_config(Report& r, const SolveConfig& c, std::uint64_t required) {
    const BiCriteriaParams& p = c.params;
    r.set("problem", c.problem);
    r.set("algorithm", c.algorithm);
    r.set("input", c.input.empty() ? std::string("planted") : c.input);
    r.set("input2", c.input2.empty() ? std::string("none") : c.input2);
    r.set("report", c.report_path.empty() ? std::string("stdout") : c.report_path);
    r.set("epsilon", p.epsilon);
    r.set("delta", p.delta);
    r.set("eta1", p.eta1);
    r.set("eta2", p.eta2);
    r.set("s", p.s);
    r.set("z", p.z);
    r.set("rounds", p.rounds());
    r.set("c1", p.c1);
    r.set("c2", p.c2);
    r.set("c3", p.c3);
    r.set("inner_cap", p.inner_cap);
    r.set("gamma", c.gamma);
    r.set("gamma2", c.gamma2 < 0 ? c.gamma : c.gamma2);
    r.set("k", c.k);
    r.set("guess", c.guess);
    r.set("c5", c.c5);
    r.set("nu", c.nu);
    r.set("M", c.M);
    r.set("seed", static_cast<std::uint64_t>(c.seed));
    r.set("theory_mode", flag(p.theory_mode));
    r.set("repeats", required);
    r.set("workers", c.serial ? std::size_t{1} : c.workers);
    r.set("serial", flag(c.serial));
    r.set("final_scan", flag(!c.no_final_scan));
    r.set("scale_eta2", flag(c.scale_eta2));
    r.set("flip_sign", flag(c.flip_sign));
}

OutlierInstance load_or_plant(const SolveConfig& c) {
    if (!c.input.empty()) return OutlierInstance{read_points(c.input), c.gamma, std::nullopt};
    if (c.problem == "meb") return gen_planted_meb(c.n, c.d, c.gamma, 1.0, 10.0, c.seed);
    if (c.problem == "kcenter")
        return gen_planted_kcenter(c.n, c.d, c.k, c.gamma, 20.0, 1.0, 100.0, c.seed);
    if (c.problem == "flat") return gen_planted_line(c.n, c.d, c.gamma, 0.1, 10.0, 5.0, c.seed);
    return gen_planted_svm1(c.n, c.d, c.gamma, 0.5, 1.0, c.seed);
}

TwoClassInstance load_or_plant_two(const SolveConfig& c) {
    const double g2 = c.gamma2 < 0 ? c.gamma : c.gamma2;
    if (!c.input.empty()) {
        if (c.input2.empty()) throw InputError("svm2 needs --input2 for the second class");
        return TwoClassInstance{read_points(c.input), read_points(c.input2), c.gamma, g2,
                                std::nullopt};
    }
    TwoClassInstance inst = gen_planted_svm2(c.n, c.d, c.gamma, 2.0, 0.5, 0.0, c.seed);
    inst.gamma2 = g2;
    return inst;
}

std::uint64_t repeats_for(const SolveConfig& c, Algorithm algo, double gamma) {
    BiCriteriaParams p = c.params;
    p.budget = std::numeric_limits<std::uint64_t>::max();
    if (c.problem == "kcenter")
        return kcenter_required_repeats(c.k, algo,
                                        c.guess == "random" ? GuessMode::random : GuessMode::enumerate,
                                        gamma, p);
    return required_repeats(algo, gamma, p);
}

void put_counter(Report& r, const EvalCounter& ec) {
    r.set("distance_evals", ec.distance_evals);
    r.set("points_touched", ec.points_touched);
}

template <class T>
std::string opt(const std::optional<T>& v) {
    return v ? std::to_string(*v) : std::string("na");
}

int run_solve(SolveConfig c, std::ostream& out) {
    const bool sub = c.algorithm == "sublinear";
    const Algorithm algo = sub ? Algorithm::sublinear : Algorithm::linear;
    if (c.serial) c.workers = 1;
    c.params.validate(sub);
    if (c.problem == "flat" && c.params.theory_mode)
        throw InputError("theory mode has no repeat bound for flat fitting; use --repeats");
    std::optional<FlatParams> fp;
    if (c.problem == "flat") fp = FlatParams::make(c.params.epsilon, c.params.delta, c.c5, c.nu, c.M);
    if (c.problem == "kcenter" && c.k == 0) throw InputError("k must be positive");

    std::optional<OutlierInstance> inst;
    std::optional<TwoClassInstance> two;
    double gamma_eff = c.gamma;
    if (c.problem == "svm2") {
        two = load_or_plant_two(c);
        two->validate();
        gamma_eff = std::max(two->gamma1, two->gamma2);
    } else {
        inst = load_or_plant(c);
        inst->validate();
    }

    const std::uint64_t required = repeats_for(c, algo, gamma_eff);
    if (c.params.theory_mode) {
        out << "required_repeats=" << required << '\n';
        out.flush();
        if (required > kConfirmThreshold && !c.confirm_budget)
            throw BudgetError("theory-mode repetitions need --confirm-budget", required,
                              kConfirmThreshold);
        c.params.budget = std::numeric_limits<std::uint64_t>::max();
    }

    Report r;
    describe_config(r, c, required);
    const bool scan = !c.no_final_scan;
    bool infeasible = false;
    const auto t0 = std::chrono::steady_clock::now();

    if (c.problem == "meb") {
        const SolutionReport s =
            repeat_best(algo, *inst, c.params, c.seed, RepeatOptions{c.workers, scan, c.scale_eta2});
        r.set("n", inst->P.size());
        r.set("d", inst->P.dim());
        r.set("size_kind", std::string("radius"));
        r.set("size", s.ball.radius);
        r.set("center", coords(s.ball.center));
        r.set("covered", opt(s.covered));
        r.set("excluded", opt(s.excluded));
        put_counter(r, s.counter);
        r.set("repetitions_used", s.repetitions_used);
        r.set("best_repetition", s.repetition);
        r.set("best_round", s.round);
        r.set("uas_fallback", flag(s.uas_fallback));
        r.set("sandwich_fallback", flag(s.sandwich_fallback));
        r.set("inner_capped", flag(s.inner_capped));
    } else if (c.problem == "kcenter") {
        const GuessMode mode = c.guess == "random" ? GuessMode::random : GuessMode::enumerate;
        const KCenterReport s = kcenter_solve(*inst, c.k, c.params, algo, mode, c.seed,
                                              KCenterOptions{c.workers, scan, c.scale_eta2});
        r.set("n", inst->P.size());
        r.set("d", inst->P.dim());
        r.set("size_kind", std::string("radius"));
        r.set("size", s.radius);
        std::string cs;
        for (std::size_t j = 0; j < s.centers.size(); ++j) cs += (j ? ";" : "") + coords(s.centers[j]);
        r.set("centers", cs);
        r.set("covered", opt(s.covered));
        r.set("excluded", opt(s.excluded));
        put_counter(r, s.counter);
        r.set("repetitions_used", s.repetitions_used);
        r.set("branches", s.branches);
        r.set("best_repetition", s.repetition);
        r.set("best_round", s.round);
        r.set("uas_fallback", flag(s.uas_fallback));
        r.set("sandwich_fallback", flag(s.sandwich_fallback));
        r.set("inner_capped", flag(s.inner_capped));
    } else if (c.problem == "flat") {
        const FlatReport s = flat_fit_solve(*inst, *fp, c.params, algo, c.seed,
                                            FlatOptions{c.workers, scan});
        r.set("n", inst->P.size());
        r.set("d", inst->P.dim());
        r.set("nu", fp->nu);
        r.set("M", fp->M);
        r.set("delta0", fp->delta0);
        r.set("size_kind", std::string("width"));
        r.set("size", s.width);
        r.set("anchor", coords(s.line.anchor));
        r.set("direction", coords(s.line.basis.at(0)));
        r.set("covered", opt(s.covered));
        r.set("excluded", opt(s.excluded));
        put_counter(r, s.counter);
        r.set("repetitions_used", s.repetitions_used);
        r.set("best_repetition", s.repetition);
        r.set("adoptions", s.adoptions);
        r.set("skipped_rounds", s.skipped_rounds);
        r.set("uas_fallback", flag(s.uas_fallback));
        r.set("sandwich_fallback", flag(s.sandwich_fallback));
        r.set("inner_capped", flag(false));
    } else {
        const SvmOptions so{c.workers, scan, c.scale_eta2, c.flip_sign};
        const MarginReport s = c.problem == "svm1" ? svm1_solve(*inst, c.params, algo, c.seed, so)
                                                   : svm2_solve(*two, c.params, algo, c.seed, so);
        if (c.problem == "svm1") {
            r.set("n", inst->P.size());
            r.set("d", inst->P.dim());
        } else {
            r.set("n", two->P1.size() + two->P2.size());
            r.set("n1", two->P1.size());
            r.set("n2", two->P2.size());
            r.set("d", two->P1.dim());
        }
        r.set("size_kind", std::string("margin"));
        r.set("size", s.margin);
        r.set("direction", coords(s.direction));
        if (c.problem == "svm2") {
            r.set("s_perp", s.s_perp);
            r.set("s_top", s.s_top);
            r.set("origin", coords(s.origin));
        }
        if (scan && !s.covered.empty()) {
            std::size_t cov = 0, exc = 0;
            std::string per_cov, per_exc;
            for (std::size_t j = 0; j < s.covered.size(); ++j) {
                cov += s.covered[j];
                exc += s.excluded[j];
                per_cov += (j ? " " : "") + std::to_string(s.covered[j]);
                per_exc += (j ? " " : "") + std::to_string(s.excluded[j]);
            }
            r.set("covered", std::to_string(cov));
            r.set("excluded", std::to_string(exc));
            r.set("covered_per_class", per_cov);
            r.set("excluded_per_class", per_exc);
        } else {
            r.set("covered", std::string("na"));
            r.set("excluded", std::string("na"));
        }
        put_counter(r, s.counter);
        r.set("repetitions_used", s.repetitions_used);
        r.set("best_repetition", s.repetition);
        r.set("best_round", s.round);
        r.set("infeasible_rounds", s.infeasible_rounds);
        r.set("infeasible", flag(s.infeasible));
        r.set("uas_fallback", flag(s.uas_fallback));
        r.set("sandwich_fallback", flag(s.sandwich_fallback));
        r.set("inner_capped", flag(false));
        infeasible = s.infeasible;
    }

    if (inst && inst->truth) r.set("planted_size", inst->truth->size);
    if (two && two->truth) r.set("planted_size", two->truth->size);
    const auto t1 = std::chrono::steady_clock::now();
    r.set("wall_time", std::chrono::duration<double>(t1 - t0).count());

    const std::string text = r.render(csv_keys());
    out << text;
    if (!c.report_path.empty()) {
        std::ofstream f(c.report_path);
        if (!f) throw InputError("cannot write report to " + c.report_path);
        f << text;
    }
    return infeasible ? kInfeasible : kOk;
}

struct GenConfig {
    std::string kind = "meb";
    std::string out;
    std::string out2;
    std::string format = "text";
    std::size_t n = 1000;
    std::size_t d = 2;
    std::size_t k = 2;
    double gamma = 0.1;
    std::uint64_t seed = 1;
    double r_in = 1.0;
    double beta = 10.0;
    double separation = 20.0;
    double outlier_dist = 100.0;
    double width = 0.1;
    double length = 10.0;
    double spread = 0.5;
    double depth = 1.0;
    double margin = 2.0;
    double shift = 0.0;
    double x = 1.0;
    double y = 100.0;
};

int run_gen(const GenConfig& g, std::ostream& out) {
    if (g.out.empty()) throw InputError("gen needs --out");
    const PointFormat fmt = g.format == "binary" ? PointFormat::binary : PointFormat::text;
    Report r;
    r.set("kind", g.kind);
    r.set("seed", static_cast<std::uint64_t>(g.seed));
    r.set("gamma", g.gamma);
    r.set("out", g.out);
    r.set("format", g.format);
    const PlantedTruth* truth = nullptr;
    std::optional<OutlierInstance> inst;
    std::optional<TwoClassInstance> two;
    if (g.kind == "svm2") {
        if (g.out2.empty()) throw InputError("svm2 needs --out2 for the second class");
        two = gen_planted_svm2(g.n, g.d, g.gamma, g.margin, g.spread, g.shift, g.seed);
        write_points(g.out, two->P1, fmt);
        write_points(g.out2, two->P2, fmt);
        r.set("out2", g.out2);
        r.set("n", two->P1.size());
        r.set("d", two->P1.dim());
        truth = &*two->truth;
    } else {
        if (g.kind == "meb") inst = gen_planted_meb(g.n, g.d, g.gamma, g.r_in, g.beta, g.seed);
        else if (g.kind == "kcenter")
            inst = gen_planted_kcenter(g.n, g.d, g.k, g.gamma, g.separation, g.r_in, g.outlier_dist,
                                       g.seed);
        else if (g.kind == "line")
            inst = gen_planted_line(g.n, g.d, g.gamma, g.width, g.length, g.outlier_dist, g.seed);
        else if (g.kind == "svm1") inst = gen_planted_svm1(g.n, g.d, g.gamma, g.spread, g.depth, g.seed);
        else inst = gen_lower_bound(g.n, g.gamma, g.x, g.y);
        write_points(g.out, inst->P, fmt);
        r.set("n", inst->P.size());
        r.set("d", inst->P.dim());
        truth = &*inst->truth;
    }
    r.set("planted_size", truth->size);
    for (std::size_t j = 0; j < truth->centers.size(); ++j)
        r.set("planted_center." + std::to_string(j), coords(truth->centers[j]));
    if (truth->direction.dim()) r.set("planted_direction", coords(truth->direction));
    r.set("planted_inliers", truth->inliers.size());
    out << r.render({});
    return kOk;
}

struct OracleConfig {
    std::string problem = "meb";
    std::string input;
    double gamma = 0.0;
    std::size_t k = 2;
    double tol = 1e-9;
};

int run_oracle(const OracleConfig& o, std::ostream& out) {
    if (o.input.empty()) throw InputError("oracle needs --input");
    const PointSet P = read_points(o.input);
    Report r;
    r.set("problem", o.problem);
    r.set("input", o.input);
    r.set("n", P.size());
    r.set("d", P.dim());
    if (o.problem == "meb") {
        const Ball b = oracle_meb_reference(P, o.tol);
        r.set("radius", b.radius);
        r.set("center", coords(b.center));
        if (P.dim() <= 3) r.set("radius_exact", oracle_meb_exact_lowdim(P).radius);
    } else if (o.problem == "meb-outliers") {
        const SubsetOptimum s = oracle_meb_outliers_bruteforce(P, o.gamma);
        r.set("gamma", o.gamma);
        r.set("radius", s.radius);
        r.set("center", coords(s.ball.center));
        r.set("kept", s.kept.size());
    } else if (o.problem == "kcenter") {
        const KCenterOptimum s = oracle_kcenter_bruteforce(P, o.k, o.gamma);
        r.set("gamma", o.gamma);
        r.set("k", o.k);
        r.set("radius", s.radius);
        std::string cs;
        for (std::size_t j = 0; j < s.centers.size(); ++j) cs += (j ? ";" : "") + coords(s.centers[j]);
        r.set("centers", cs);
        std::string ol;
        for (std::size_t j = 0; j < s.outliers.size(); ++j) ol += (j ? " " : "") + std::to_string(s.outliers[j]);
        r.set("outliers", ol);
    } else {
        const PolytopeBracket b = oracle_polytope_bracket(P, o.tol);
        r.set("lower", b.lower);
        r.set("upper", b.upper);
        r.set("iterations", b.iterations);
        r.set("v", coords(b.v));
    }
    out << r.render({});
    return kOk;
}

int run_bench(const BenchConfig& cfg, const BiCriteriaParams& params, const std::string& path,
              std::ostream& out) {
    params.validate(true);
    const auto rows = bench_sweep(cfg, params);
    const std::string csv = bench_csv(rows);
    bool constant = true;
    for (const BenchRow& row : rows) constant &= row.distance_evals == rows.front().distance_evals;
    out << csv << "distance_evals_constant=" << flag(constant) << '\n';
    if (rows.size() >= 2) {
        const double ratio = rows.back().trial_seconds / rows.front().trial_seconds;
        out << "time_ratio=" << num(ratio) << '\n';
    }
    if (!path.empty()) {
        std::ofstream f(path);
        if (!f) throw InputError("cannot write " + path);
        f << csv;
    }
    return kOk;
}

int run_validate(int lemma, const std::string& family, const LemmaSuiteConfig& cfg, double margin,
                 const std::string& path, std::ostream& out) {
    const auto grid = default_lemma_grid();
    const auto rows = family == "kball" ? run_lemma_suite_kball(lemma, grid, cfg)
                                        : run_lemma_suite(lemma, grid, cfg);
    const std::string csv = lemma_csv(rows, margin);
    bool pass = true;
    for (const LemmaRow& row : rows) pass &= row.rate() >= row.bound() - margin;
    out << csv << "all_pass=" << flag(pass) << '\n';
    if (!path.empty()) {
        std::ofstream f(path);
        if (!f) throw InputError("cannot write " + path);
        f << csv;
    }
    return pass ? kOk : kFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sub-linear geometric optimization with outliers"};
    app.name("subgeo");
    app.require_subcommand(1);

    SolveConfig sc;
    CLI::App* solve = app.add_subcommand("solve", "run a solver and emit a report");
    solve->add_option("--problem", sc.problem)
        ->check(CLI::IsMember({"meb", "kcenter", "flat", "svm1", "svm2"}))
        ->capture_default_str();
    solve->add_option("--algorithm", sc.algorithm)
        ->check(CLI::IsMember({"linear", "sublinear"}))
        ->capture_default_str();
    solve->add_option("--input", sc.input, "point file (default: planted instance)");
    solve->add_option("--input2", sc.input2, "second class for svm2");
    solve->add_option("--report", sc.report_path, "also write the report here");
    solve->add_option("--n", sc.n, "planted size (per class for svm2)")->capture_default_str();
    solve->add_option("--d", sc.d, "planted dimension")->capture_default_str();
    solve->add_option("--gamma", sc.gamma, "outlier fraction")->capture_default_str();
    solve->add_option("--gamma2", sc.gamma2, "second-class outlier fraction for svm2");
    solve->add_option("--k", sc.k, "number of centers")->capture_default_str();
    solve->add_option("--guess", sc.guess)
        ->check(CLI::IsMember({"enumerate", "random"}))
        ->capture_default_str();
    solve->add_option("--c5", sc.c5, "flat round constant")->capture_default_str();
    solve->add_option("--nu", sc.nu, "flat rounds override");
    solve->add_option("--M", sc.M, "flat directions per anchor override");
    solve->add_option("--seed", sc.seed)->capture_default_str();
    solve->add_option("--repeats", sc.params.repeats)->capture_default_str();
    solve->add_flag("--theory", sc.params.theory_mode, "derive repeats from the success bound");
    solve->add_flag("--confirm-budget", sc.confirm_budget, "allow more than 1e5 theory repeats");
    solve->add_option("--workers", sc.workers, "0: all cores")->capture_default_str();
    solve->add_flag("--serial", sc.serial, "single worker");
    solve->add_flag("--no-final-scan", sc.no_final_scan, "skip the exact covered/excluded scan");
    solve->add_flag("--scale-eta2", sc.scale_eta2, "set eta2 from the repeat count");
    solve->add_flag("--flip-sign", sc.flip_sign, "svm2: step along p2 - p1");
    add_params(solve, sc.params);

    GenConfig gc;
    CLI::App* gen = app.add_subcommand("gen", "write a planted instance");
    gen->add_option("--kind", gc.kind)
        ->check(CLI::IsMember({"meb", "kcenter", "line", "svm1", "svm2", "lower_bound"}))
        ->capture_default_str();
    gen->add_option("--out", gc.out)->required();
    gen->add_option("--out2", gc.out2);
    gen->add_option("--format", gc.format)->check(CLI::IsMember({"text", "binary"}))->capture_default_str();
    gen->add_option("--n", gc.n)->capture_default_str();
    gen->add_option("--d", gc.d)->capture_default_str();
    gen->add_option("--k", gc.k)->capture_default_str();
    gen->add_option("--gamma", gc.gamma)->capture_default_str();
    gen->add_option("--seed", gc.seed)->capture_default_str();
    gen->add_option("--r-in", gc.r_in)->capture_default_str();
    gen->add_option("--beta", gc.beta)->capture_default_str();
    gen->add_option("--separation", gc.separation)->capture_default_str();
    gen->add_option("--outlier-dist", gc.outlier_dist)->capture_default_str();
    gen->add_option("--width", gc.width)->capture_default_str();
    gen->add_option("--length", gc.length)->capture_default_str();
    gen->add_option("--spread", gc.spread)->capture_default_str();
    gen->add_option("--depth", gc.depth)->capture_default_str();
    gen->add_option("--margin", gc.margin)->capture_default_str();
    gen->add_option("--shift", gc.shift)->capture_default_str();
    gen->add_option("--x", gc.x)->capture_default_str();
    gen->add_option("--y", gc.y)->capture_default_str();

    OracleConfig oc;
    CLI::App* oracle = app.add_subcommand("oracle", "brute-force and reference solvers");
    oracle->add_option("--problem", oc.problem)
        ->check(CLI::IsMember({"meb", "meb-outliers", "kcenter", "polytope"}))
        ->capture_default_str();
    oracle->add_option("--input", oc.input)->required();
    oracle->add_option("--gamma", oc.gamma)->capture_default_str();
    oracle->add_option("--k", oc.k)->capture_default_str();
    oracle->add_option("--tol", oc.tol)->capture_default_str();

    BenchConfig bc;
    BiCriteriaParams bp;
    std::string bench_out;
    CLI::App* bench = app.add_subcommand("bench", "sub-linear trial sweep over n");
    bench->add_option("--ns", bc.ns)->delimiter(',')->capture_default_str();
    bench->add_option("--d", bc.d)->capture_default_str();
    bench->add_option("--gamma", bc.gamma)->capture_default_str();
    bench->add_option("--trials", bc.trials)->capture_default_str();
    bench->add_option("--seed", bc.seed)->capture_default_str();
    bench->add_option("--out", bench_out, "also write the CSV here");
    add_params(bench, bp);

    LemmaSuiteConfig lc;
    int lemma = 1;
    std::string family = "ball";
    double margin = 0.03;
    std::string validate_out;
    CLI::App* validate = app.add_subcommand("validate", "Monte-Carlo checks of the sampling lemmas");
    validate->add_option("--lemma", lemma)->check(CLI::IsMember({1, 2}))->capture_default_str();
    validate->add_option("--family", family)->check(CLI::IsMember({"ball", "kball"}))->capture_default_str();
    validate->add_option("--trials", lc.trials, "per grid row")->capture_default_str();
    validate->add_option("--n", lc.n)->capture_default_str();
    validate->add_option("--d", lc.d)->capture_default_str();
    validate->add_option("--centers", lc.centers)->capture_default_str();
    validate->add_option("--seed", lc.seed)->capture_default_str();
    validate->add_option("--margin", margin)->capture_default_str();
    validate->add_option("--out", validate_out, "also write the CSV here");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kInputError;
    }

    try {
        if (*solve) return run_solve(sc, out);
        if (*gen) return run_gen(gc, out);
        if (*oracle) return run_oracle(oc, out);
        if (*bench) return run_bench(bc, bp, bench_out, out);
        return run_validate(lemma, family, lc, margin, validate_out, out);
    } catch (const BudgetError& e) {
        err << "budget error: " << e.what() << '\n';
        return kBudgetError;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace subgeo::cli
