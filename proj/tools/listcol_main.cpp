#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "listcol/bench.hpp"
#include "listcol/instance.hpp"
#include "listcol/oracles.hpp"
#include "listcol/pathdecomp.hpp"
#include "listcol/reduction.hpp"
#include "listcol/solver_log.hpp"
#include "listcol/solver_log2.hpp"
#include "listcol/tpw.hpp"
#include "listcol/tree.hpp"

using namespace listcol;

namespace {

Instance read_instance(const std::string& path) {
    if (path == "-") return parse_instance(std::cin);
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return parse_instance(in);
}

TreePartition read_partition(const std::string& path) {
    if (path == "-") return parse_tree_partition(std::cin);
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return parse_tree_partition(in);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw Error("cannot write " + path);
    return file;
}

struct SolveArgs {
    std::string alg;
    std::string input;
    std::string partition;
    bool witness = false;
    bool trace = false;
    bool emit_pd = false;
};

int run_solve(const SolveArgs& args) {
    Instance inst = read_instance(args.input);
    if (args.witness && args.alg != "brute" && args.alg != "dp")
        throw Error("--witness needs --alg brute or dp");
    if (args.emit_pd && args.alg != "pathwidth")
        throw Error("--emit-pd needs --alg pathwidth");
    if (!args.partition.empty() && args.alg != "tpw")
        throw Error("--partition needs --alg tpw");

    WorkspaceMeter meter(inst.graph.n);
    if (args.trace)
        meter.trace = [](const std::string& line) { std::cerr << line << "\n"; };

    bool yes = false;
    std::optional<Colouring> witness;
    if (args.alg == "brute") {
        witness = brute_force_solve(inst);
        yes = witness.has_value();
    } else if (args.alg == "dp") {
        witness = dp_solve(inst);
        yes = witness.has_value();
    } else if (args.alg == "log2") {
        yes = solve_log2(inst, meter);
    } else if (args.alg == "log") {
        std::function<void(const std::string&)> tracer;
        if (args.trace) tracer = [](const std::string& line) { std::cerr << line << "\n"; };
        yes = solve_log(inst, meter, nullptr, tracer);
    } else if (args.alg == "pathwidth") {
        RootedTree t = RootedTree::from_graph(inst.graph);
        TreeIndex idx(t);
        auto events = build_path_decomposition(idx);
        if (args.emit_pd)
            for (const auto& e : events)
                std::cout << (e.introduce ? "I " : "F ") << e.v << "\n";
        yes = solve_via_pathdecomp(inst, events, meter);
    } else if (args.alg == "tpw") {
        if (args.partition.empty()) throw Error("--alg tpw needs --partition");
        TreePartition tp = read_partition(args.partition);
        yes = solve_tpw(inst, tp, meter);
    } else {
        throw Error("unknown algorithm: " + args.alg);
    }

    std::cout << (yes ? "YES" : "NO") << "\n";
    if (yes && args.witness && witness)
        for (int v = 1; v <= inst.graph.n; ++v)
            std::cout << v << " " << (*witness)[v] << "\n";
    return yes ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"list colouring on trees and tree-partitioned graphs, "
                 "with audited workspace"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "decide one instance");
    solve->add_option("--alg", sa.alg, "brute|dp|log2|log|pathwidth|tpw")->required();
    solve->add_option("--input", sa.input, "instance file, - for stdin")->required();
    solve->add_option("--partition", sa.partition, "tree-partition file (tpw)");
    solve->add_flag("--witness", sa.witness, "print a colouring after YES (brute/dp)");
    solve->add_flag("--trace", sa.trace, "meter frames and solver transitions to stderr");
    solve->add_flag("--emit-pd", sa.emit_pd, "print I/F decomposition events (pathwidth)");

    int gen_n = 0, gen_max = 4, gen_min = 1, gen_bags = 0, gen_width = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out, gen_pout;
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("--n", gen_n, "vertex count (tree mode)");
    gen->add_option("--max-list", gen_max, "largest list size")->check(CLI::Range(0, 1000000));
    gen->add_option("--min-list", gen_min, "smallest list size");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--bags", gen_bags, "bag count (partitioned mode)");
    gen->add_option("--width", gen_width, "bag size (partitioned mode)");
    gen->add_option("--output", gen_out, "instance file, default stdout");
    gen->add_option("--partition-out", gen_pout, "partition file (partitioned mode)");

    int red_k = 0, red_class = 0;
    std::uint64_t red_seed = 0;
    std::string red_out, red_pout;
    auto* red = app.add_subcommand("reduce-clique",
                                   "build the list-colouring instance of a random "
                                   "multicoloured-clique input");
    red->add_option("--k", red_k, "class count")->required();
    red->add_option("--class-size", red_class, "vertices per class")->required();
    red->add_option("--seed", red_seed, "rng seed");
    red->add_option("--output", red_out, "instance file, default stdout");
    red->add_option("--partition-out", red_pout, "partition file");

    std::string val_input, val_partition;
    auto* val = app.add_subcommand("validate", "check an instance or partition file");
    val->add_option("--input", val_input, "instance file, - for stdin")->required();
    val->add_option("--partition", val_partition, "tree-partition file to check against");

    std::vector<std::string> bench_algs;
    std::vector<int> bench_sizes;
    int bench_reps = 1;
    std::uint64_t bench_seed = 0;
    auto* ben = app.add_subcommand("bench", "space-vs-n CSV curves to stdout");
    ben->add_option("--algs", bench_algs, "algorithms")->required()->delimiter(',');
    ben->add_option("--sizes", bench_sizes, "instance sizes")->required()->delimiter(',');
    ben->add_option("--reps", bench_reps, "runs per (algorithm, size)");
    ben->add_option("--seed", bench_seed, "seed of the sweep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return run_solve(sa);

        if (gen->parsed()) {
            std::ofstream f, pf;
            if (gen_bags > 0 || gen_width > 0) {
                if (gen_bags < 1 || gen_width < 1)
                    throw Error("partitioned mode needs --bags and --width");
                if (gen_pout.empty()) throw Error("partitioned mode needs --partition-out");
                auto [inst, tp] =
                    random_partitioned_instance(gen_bags, gen_width, gen_max, gen_seed);
                serialize_instance(inst, open_output(f, gen_out));
                serialize_tree_partition(tp, open_output(pf, gen_pout));
            } else {
                if (gen_n < 1) throw Error("gen needs --n or --bags/--width");
                auto inst = random_instance(gen_n, gen_max, gen_seed, gen_min);
                serialize_instance(inst, open_output(f, gen_out));
            }
            return 0;
        }

        if (red->parsed()) {
            auto mc = random_multicoloured_clique(red_k, red_class, red_seed);
            auto result = reduce_multicoloured_clique(mc);
            std::ofstream f, pf;
            serialize_instance(result.instance, open_output(f, red_out));
            if (!red_pout.empty())
                serialize_tree_partition(result.partition, open_output(pf, red_pout));
            return 0;
        }

        if (val->parsed()) {
            Instance inst = read_instance(val_input);
            if (!val_partition.empty()) {
                TreePartition tp = read_partition(val_partition);
                int width = validate_tree_partition(inst.graph, tp);
                std::cout << "ok, width " << width << "\n";
            } else {
                std::cout << "ok\n";
            }
            return 0;
        }

        if (ben->parsed()) {
            auto summary = bench(bench_algs, bench_sizes, bench_reps, bench_seed, std::cout);
            std::cerr << "rows: " << summary.rows << "\n";
            for (const auto& alg : bench_algs)
                if (alg == "log")
                    std::cerr << "log solver aux ratio C = " << summary.aux_ratio_c << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
