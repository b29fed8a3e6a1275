// Command-line front end: solve / decide / oracle / check over plain-text
// point files. Results are printed as JSON on stdout; diagnostics and
// timings go to stderr. Exit status: 0 success or feasible, 2 infeasible
// decision, 1 error.

#include <ebst/oracle.hpp>
#include <ebst/serialize.hpp>
#include <ebst/solver.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

struct CommonArgs {
    std::string inputPath = "-";
    int k = 0;
    double tol = 1e-6;
    double epsilon = 0.1;
    int lambdaPieces = 10;
    int parallel = 1;
    long seed = 0;
    std::string svgPath;
    std::string regionsSvgPath;
    double resolution = 0.01;
    double lambda = 0.0;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool needLambda, bool hasOracleKnobs) {
    cmd->add_option("input", a.inputPath, "Instance file (one 'x y' per line; '-' = stdin)");
    cmd->add_option("--k", a.k, "Steiner point budget")->required();
    cmd->add_option("--tol", a.tol, "Relative tolerance of the bottleneck search")
        ->default_val(1e-6);
    cmd->add_option("--epsilon", a.epsilon, "Grid cell side (capped at 0.1)")->default_val(0.1);
    cmd->add_option("--lambda-pieces", a.lambdaPieces,
                    "Boundary decomposition piece count (floor 10; instrumentation only)")
        ->default_val(10);
    cmd->add_option("--parallel", a.parallel,
                    "Worker count (used by the oracle grid scan; the tree search is serial)")
        ->default_val(1);
    cmd->add_option("--seed", a.seed, "Reserved for test tooling; unused for file input");
    cmd->add_option("--svg", a.svgPath, "Write the witness tree as an SVG figure");
    cmd->add_option("--regions-svg", a.regionsSvgPath,
                    "Write the feasible regions of the winning guess as an SVG figure");
    if (needLambda)
        cmd->add_option("--lambda", a.lambda, "Decision threshold")->required();
    if (hasOracleKnobs)
        cmd->add_option("--resolution", a.resolution, "Oracle placement grid step")
            ->default_val(0.01);
}

std::vector<ebst::Point> load_points(const std::string& path) {
    if (path == "-") return ebst::read_points(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return ebst::read_points(in);
}

ebst::SolverConfig solver_config(CommonArgs& a) {
    ebst::SolverConfig cfg;
    cfg.tolRel = a.tol;
    cfg.eps = a.epsilon;
    if (a.epsilon > 0.1)
        std::cerr << "note: --epsilon capped at 0.1 (monotonicity constants require it)\n";
    if (a.lambdaPieces < 10) {
        std::cerr << "note: --lambda-pieces raised to the floor of 10\n";
        a.lambdaPieces = 10;
    }
    cfg.parallel = std::max(1, a.parallel);
    return cfg;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << content;
}

void emit_figures(const CommonArgs& a, const ebst::Instance& inst, const ebst::SolveResult& r) {
    if (!a.svgPath.empty()) write_file(a.svgPath, ebst::svg_tree(inst.points, r));
    if (!a.regionsSvgPath.empty()) write_file(a.regionsSvgPath, ebst::svg_regions(inst, r));
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

int run_solve(CommonArgs& a) {
    ebst::Instance inst{load_points(a.inputPath), a.k};
    ebst::RunReport report;
    auto t0 = std::chrono::steady_clock::now();
    report.result = ebst::optimize(inst, solver_config(a), &report.counters);
    report.solveMs = elapsed_ms(t0);
    std::cerr << "solve: " << report.solveMs << " ms, " << report.counters.decideCalls
              << " decisions\n";
    std::cout << ebst::result_to_json(report.result, report.counters).dump(2) << "\n";
    emit_figures(a, inst, report.result);
    return 0;
}

int run_decide(CommonArgs& a) {
    ebst::Instance inst{load_points(a.inputPath), a.k};
    ebst::Counters counters;
    auto cfg = solver_config(a);
    auto t0 = std::chrono::steady_clock::now();
    auto r = ebst::decide_lambda(inst, a.lambda, cfg, &counters);
    std::cerr << "decide: " << elapsed_ms(t0) << " ms\n";
    nlohmann::json j;
    j["feasible"] = r.has_value();
    j["lambda"] = ebst::round9(a.lambda);
    if (r) {
        j["result"] = ebst::result_to_json(*r, counters);
        emit_figures(a, inst, *r);
    } else {
        j["counters"] = ebst::counters_to_json(counters);
    }
    std::cout << j.dump(2) << "\n";
    return r ? 0 : 2;
}

int run_oracle(CommonArgs& a) {
    auto pts = load_points(a.inputPath);
    ebst::OracleConfig cfg;
    cfg.gridResolution = a.resolution;
    cfg.workers = std::max(1, a.parallel);
    auto t0 = std::chrono::steady_clock::now();
    double v = ebst::brute_force_opt(pts, a.k, cfg);
    std::cerr << "oracle: " << elapsed_ms(t0) << " ms\n";
    nlohmann::json j;
    j["value"] = ebst::round9(v);
    j["k"] = a.k;
    j["resolution"] = ebst::round9(a.resolution);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_check(CommonArgs& a) {
    ebst::Instance inst{load_points(a.inputPath), a.k};
    ebst::RunReport report;
    auto t0 = std::chrono::steady_clock::now();
    report.result = ebst::optimize(inst, solver_config(a), &report.counters);
    report.solveMs = elapsed_ms(t0);
    ebst::OracleConfig cfg;
    cfg.gridResolution = a.resolution;
    cfg.workers = std::max(1, a.parallel);
    auto t1 = std::chrono::steady_clock::now();
    double oracle = ebst::brute_force_opt(inst.points, a.k, cfg);
    report.oracleMs = elapsed_ms(t1);
    std::cerr << "check: solve " << report.solveMs << " ms, oracle " << report.oracleMs
              << " ms\n";
    double tolerance = 3 * a.resolution + 1e-5 * oracle;
    bool agree = std::abs(report.result.bottleneck - oracle) <= tolerance;
    nlohmann::json j;
    j["agree"] = agree;
    j["optimize"] = ebst::round9(report.result.bottleneck);
    j["oracle"] = ebst::round9(oracle);
    j["tolerance"] = ebst::round9(tolerance);
    std::cout << j.dump(2) << "\n";
    emit_figures(a, inst, report.result);
    return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact bottleneck Steiner tree solver (k Steiner points)"};
    app.require_subcommand(1);

    CommonArgs solveArgs, decideArgs, oracleArgs, checkArgs;
    CLI::App* solveCmd =
        app.add_subcommand("solve", "Minimize the bottleneck over k Steiner points");
    add_common(solveCmd, solveArgs, false, false);
    CLI::App* decideCmd =
        app.add_subcommand("decide", "Test feasibility at a fixed edge-length bound");
    add_common(decideCmd, decideArgs, true, false);
    CLI::App* oracleCmd =
        app.add_subcommand("oracle", "Brute-force grid optimum (ground truth for tests)");
    add_common(oracleCmd, oracleArgs, false, true);
    CLI::App* checkCmd =
        app.add_subcommand("check", "Run solve and oracle, report agreement");
    add_common(checkCmd, checkArgs, false, true);

    try {
        app.parse(argc, argv);
        if (solveCmd->parsed()) return run_solve(solveArgs);
        if (decideCmd->parsed()) return run_decide(decideArgs);
        if (oracleCmd->parsed()) return run_oracle(oracleArgs);
        if (checkCmd->parsed()) return run_check(checkArgs);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
