// cgs: lower bounds on the algebraic connectivity of a graph from
// connection-graph-stability scores, next to the classical Mohar/Lu bounds
// and the exact lambda2.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cgs/errors.hpp"
#include "cgs/graph.hpp"
#include "cgs/report.hpp"

namespace {

struct BoundsOptions {
    std::string input;
    std::string family;
    int n = 10;
    double p = 0.5;
    std::uint64_t seed = 0;
    std::vector<std::string> strategies;
    std::string format = "table";
    double tol = 1e-6;
    int max_iters = 200;
    bool embed_scores = false;
    std::string scores_out;
    std::string strategy_out;
};

cgs::Graph load_graph(const BoundsOptions& opt) {
    if (!opt.input.empty()) {
        if (opt.input == "-") return cgs::parse_edge_list(std::cin).graph;
        std::ifstream in(opt.input);
        if (!in) throw cgs::ParseError("cannot open input file '" + opt.input + "'", 0);
        return cgs::parse_edge_list(in).graph;
    }
    cgs::GraphFamily fam;
    fam.kind = *cgs::family_from_name(opt.family);
    fam.n = opt.n;
    fam.p = opt.p;
    fam.seed = opt.seed;
    return cgs::generate(fam);
}

cgs::StrategySelection parse_strategies(const std::vector<std::string>& names) {
    if (names.empty()) return {};
    cgs::StrategySelection sel{false, false, false};
    for (const auto& name : names) {
        if (name == "single_path") sel.single_path = true;
        else if (name == "uniform") sel.uniform = true;
        else if (name == "optimized") sel.optimized = true;
        else throw CLI::ValidationError("--strategies", "unknown strategy '" + name + "'");
    }
    return sel;
}

int run_bounds(const BoundsOptions& opt) {
    const cgs::Graph g = load_graph(opt);
    const auto sel = parse_strategies(opt.strategies);
    const auto comp = cgs::compute_bounds(g, sel, opt.tol, opt.max_iters);
    cgs::render_bounds(comp, *cgs::format_from_name(opt.format), std::cout, opt.embed_scores);
    if (!opt.scores_out.empty()) {
        std::ofstream out(opt.scores_out);
        if (!out) throw cgs::Error("cannot open '" + opt.scores_out + "' for writing");
        cgs::write_scores_csv(g, comp.best_scores, out);
    }
    if (!opt.strategy_out.empty()) {
        if (!comp.optimized)
            throw cgs::Error("--strategy-out needs the optimized strategy; include it in --strategies");
        std::ofstream out(opt.strategy_out);
        if (!out) throw cgs::Error("cannot open '" + opt.strategy_out + "' for writing");
        cgs::write_strategy_csv(*comp.optimized, out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"connection-graph-stability lower bounds on algebraic connectivity"};
    app.require_subcommand(1);
    const std::vector<std::string> family_names{"complete", "path",     "cycle",
                                               "star",     "petersen", "erdos_renyi"};

    BoundsOptions bopt;
    auto* bounds = app.add_subcommand("bounds", "bounds for one graph (file or generated family)");
    auto* in_opt = bounds->add_option("--input", bopt.input,
                                      "edge-list file, one 'u v' pair per line ('-' = stdin)");
    auto* fam_opt = bounds->add_option("--family", bopt.family, "generated family")
                        ->check(CLI::IsMember(family_names));
    in_opt->excludes(fam_opt);
    fam_opt->excludes(in_opt);
    bounds->add_option("--n", bopt.n, "family size (ignored for petersen)")
        ->check(CLI::Range(2, 2000));
    bounds->add_option("--p", bopt.p, "edge probability for erdos_renyi")
        ->check(CLI::Range(0.0, 1.0));
    bounds->add_option("--seed", bopt.seed, "seed for erdos_renyi");
    bounds->add_option("--strategies", bopt.strategies,
                       "subset of single_path,uniform,optimized (default all)")
        ->delimiter(',');
    bounds->add_option("--format", bopt.format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    bounds->add_option("--tol", bopt.tol, "optimizer relative tolerance")->check(CLI::PositiveNumber);
    bounds->add_option("--max-iters", bopt.max_iters, "optimizer pass budget")
        ->check(CLI::PositiveNumber);
    bounds->add_flag("--scores", bopt.embed_scores, "embed per-edge scores in json output");
    bounds->add_option("--scores-out", bopt.scores_out, "write per-edge scores CSV to this file");
    bounds->add_option("--strategy-out", bopt.strategy_out,
                       "write the optimized strategy CSV to this file");

    std::string t1_format = "table";
    auto* table1 = app.add_subcommand("table1", "standard families vs their closed-form values");
    table1->add_option("--format", t1_format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    cgs::BenchConfig bench_cfg;
    std::string bench_format = "csv";
    int bench_n = 0;
    double bench_p = -1.0;
    auto* bench = app.add_subcommand("bench", "random-ensemble benchmark of all bounds");
    bench->add_option("--trials", bench_cfg.trials, "number of sampled graphs")
        ->check(CLI::PositiveNumber);
    auto* n_opt = bench->add_option("--n", bench_n, "fixed graph size")->check(CLI::Range(2, 2000));
    auto* nmin_opt =
        bench->add_option("--n-min", bench_cfg.n_min, "minimum size")->check(CLI::Range(2, 2000));
    auto* nmax_opt =
        bench->add_option("--n-max", bench_cfg.n_max, "maximum size")->check(CLI::Range(2, 2000));
    n_opt->excludes(nmin_opt);
    n_opt->excludes(nmax_opt);
    auto* p_opt = bench->add_option("--p", bench_p, "fixed edge probability")
                      ->check(CLI::Range(0.0, 1.0));
    auto* pmin_opt = bench->add_option("--p-min", bench_cfg.p_min, "minimum edge probability")
                         ->check(CLI::Range(0.0, 1.0));
    auto* pmax_opt = bench->add_option("--p-max", bench_cfg.p_max, "maximum edge probability")
                         ->check(CLI::Range(0.0, 1.0));
    p_opt->excludes(pmin_opt);
    p_opt->excludes(pmax_opt);
    bench->add_option("--seed", bench_cfg.seed, "master seed for the trial stream");
    bench->add_option("--format", bench_format, "csv or json (one object per line)")
        ->check(CLI::IsMember({"csv", "json"}));
    bench->add_option("--tol", bench_cfg.tol, "optimizer relative tolerance")
        ->check(CLI::PositiveNumber);
    bench->add_option("--max-iters", bench_cfg.max_iters, "optimizer pass budget")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (bounds->parsed()) {
            if (bopt.input.empty() && bopt.family.empty())
                throw CLI::ValidationError("bounds", "one of --input or --family is required");
            return run_bounds(bopt);
        }
        if (table1->parsed()) {
            cgs::render_table1(cgs::table1_rows(), *cgs::format_from_name(t1_format), std::cout);
            return 0;
        }
        if (bench->parsed()) {
            if (bench_n > 0) bench_cfg.n_min = bench_cfg.n_max = bench_n;
            if (bench_p >= 0.0) bench_cfg.p_min = bench_cfg.p_max = bench_p;
            if (bench_cfg.n_min > bench_cfg.n_max)
                throw CLI::ValidationError("bench", "--n-min must not exceed --n-max");
            if (bench_cfg.p_min > bench_cfg.p_max)
                throw CLI::ValidationError("bench", "--p-min must not exceed --p-max");
            bench_cfg.format = *cgs::format_from_name(bench_format);
            cgs::run_bench(bench_cfg, std::cout);
            return 0;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const cgs::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cgs::SelfLoopError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cgs::TooSmallError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cgs::NotConnectedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const cgs::DisconnectedSampleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const cgs::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const cgs::InvalidFlowError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    } catch (const cgs::BenchInvariantError& e) {
        std::cerr << "error: bound invariant violated: " << e.what() << '\n';
        return 6;
    } catch (const cgs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
