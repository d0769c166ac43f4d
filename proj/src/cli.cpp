#include "dvrp/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dvrp/approx.hpp"
#include "dvrp/binpack.hpp"
#include "dvrp/generators.hpp"
#include "dvrp/suites.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dvrp::cli {

namespace {

RoutingInstance load_instance(const std::string& path, std::istream& in) {
    if (path.empty() || path == "-") return parse_instance(in);
    std::ifstream file(path);
    if (!file) throw Error("cannot open instance file '" + path + "'");
    return parse_instance(file);
}

// Optional "# key value" hints in instance files (the lower-bound generator
// writes gamma and its certified optimum bound).
std::optional<long long> comment_hint(const std::string& path, const std::string& key) {
    if (path.empty() || path == "-") return std::nullopt;
    std::ifstream file(path);
    std::string line;
    while (std::getline(file, line)) {
        std::istringstream ss(line);
        std::string hash, word;
        if (!(ss >> hash) || hash != "#") continue;
        if (!(ss >> word) || word != key) continue;
        long long value;
        if (ss >> value) return value;
    }
    return std::nullopt;
}

bool configure_parallelism() {
    bool parallel = true;
    if (const char* env = std::getenv("DVRP_THREADS")) {
        int threads = std::atoi(env);
        if (threads == 1) parallel = false;
#ifdef _OPENMP
        if (threads >= 1) omp_set_num_threads(threads);
#endif
    }
    return parallel;
}

void print_report(std::ostream& out, const RoutingInstance& inst, const ApproxReport& report,
                  bool with_tours) {
    out << "total " << report.total_tours << "\n";
    for (std::size_t i = 0; i < report.per_component.size(); ++i) {
        const ComponentOutcome& c = report.per_component[i];
        out << "component " << i << " " << (c.leaf ? "leaf" : "internal") << " "
            << c.local_tours << "\n";
    }
    if (with_tours)
        for (const auto& tour : report.tours) {
            out << "tour";
            for (long long id : tour) out << " " << id;
            out << "\n";
        }
    (void)inst;
}

int cmd_solve(const std::string& path, const std::string& epsilon, std::optional<int> gamma,
              bool tours, const std::string& report_path, std::istream& in, std::ostream& out) {
    ApproxConfig cfg;
    cfg.epsilon = Rat::parse(epsilon);
    cfg.gamma_override = gamma;
    cfg.materialize_tours = tours;
    cfg.parallel = configure_parallelism();
    RoutingInstance inst = load_instance(path, in);
    ApproxReport report = approx_solve(inst, cfg);
    print_report(out, inst, report, tours);
    if (!report_path.empty()) {
        std::ofstream file(report_path);
        if (!file) throw Error("cannot write report to '" + report_path + "'");
        print_report(file, inst, report, tours);
    }
    return 0;
}

int cmd_exact(const std::string& path, int gamma, std::istream& in, std::ostream& out) {
    RoutingInstance inst = load_instance(path, in);
    NormalizedInstance norm = normalize(inst);
    auto result = solve_bounded(norm, gamma);
    if (result.has_value())
        out << *result << "\n";
    else
        out << "INFEASIBLE\n";
    return 0;
}

int cmd_decompose(const std::string& path, int gamma, std::istream& in, std::ostream& out) {
    RoutingInstance inst = load_instance(path, in);
    NormalizedInstance norm = normalize(inst);
    Decomposition decomp = decompose(norm, gamma);
    for (const Component& comp : decomp.components) {
        out << (comp.is_leaf() ? "leaf" : "internal") << " "
            << norm.tree.external_id[comp.root_vertex] << " ";
        if (comp.exit_vertex.has_value())
            out << norm.tree.external_id[*comp.exit_vertex];
        else
            out << "-";
        out << " " << comp.edges.size() << " " << (comp.is_big ? 1 : 0) << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& lemma, int trials, std::uint64_t seed, std::ostream& out) {
    SuiteResult result;
    if (lemma == "3.2")
        result = reduced_sum_suite(seed, trials);
    else if (lemma == "3.3")
        result = combine_suite(seed, trials);
    else if (lemma == "3.4")
        result = component_count_suite(seed, trials);
    else
        throw ContractError("unknown property suite '" + lemma + "'; expected 3.2, 3.3 or 3.4");
    if (result.ok()) {
        out << "OK " << result.trials << "/" << result.trials << "\n";
        return 0;
    }
    for (const std::string& note : result.notes) out << "FAIL " << note << "\n";
    out << "FAIL " << result.failures << "/" << result.trials << "\n";
    return 1;
}

int cmd_binpack(const std::string& path, int space, std::istream& in, std::ostream& out) {
    std::ifstream file;
    std::istream* src = &in;
    if (!path.empty() && path != "-") {
        file.open(path);
        if (!file) throw Error("cannot open item file '" + path + "'");
        src = &file;
    }
    std::vector<Rat> items;
    std::string line;
    while (std::getline(*src, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) items.push_back(Rat::parse(tok));
    }
    BinPackState state = harmonic_pack(items, space);
    for (std::size_t i = 0; i < items.size(); ++i)
        out << "item " << i << " " << items[i].str() << " bin " << state.assignment[i] << "\n";
    out << "bins " << state.bins_used() << " closed " << state.closed_bins.size() << " open "
        << state.open_bins.size() << " max-open " << state.max_open_seen << "\n";
    return 0;
}

int cmd_gen_lb(int k, int gamma, std::ostream& out) {
    LowerBoundParams params{k, gamma};
    RoutingInstance inst = gen_lower_bound(params);
    auto [alg, opt_upper] = expected_lb_behavior(params);
    out << "# lower-bound family instance\n";
    out << "# k " << k << "\n";
    out << "# gamma " << gamma << "\n";
    out << "# opt-upper " << opt_upper << "\n";
    out << "# solver-tours " << alg << "\n";
    out << serialize_instance(inst);
    return 0;
}

int cmd_gen_random(std::uint64_t seed, int n, long long max_weight, int policy,
                   std::ostream& out) {
    RandomSpec spec;
    spec.seed = seed;
    spec.terminals = n;
    spec.max_weight = max_weight;
    spec.depth_policy_halves = policy;
    out << serialize_instance(gen_random(spec));
    return 0;
}

int cmd_gen_from_binpack(long long capacity, const std::string& sizes_path, std::istream& in,
                         std::ostream& out) {
    std::ifstream file;
    std::istream* src = &in;
    if (!sizes_path.empty() && sizes_path != "-") {
        file.open(sizes_path);
        if (!file) throw Error("cannot open sizes file '" + sizes_path + "'");
        src = &file;
    }
    std::vector<long long> sizes;
    long long v;
    while (*src >> v) sizes.push_back(v);
    out << serialize_instance(binpack_to_dvrp(capacity, sizes));
    return 0;
}

int cmd_bench(const std::string& suite_path, std::istream& in, std::ostream& out) {
    std::ifstream file;
    std::istream* src = &in;
    if (!suite_path.empty() && suite_path != "-") {
        file.open(suite_path);
        if (!file) throw Error("cannot open suite file '" + suite_path + "'");
        src = &file;
    }
    struct Row {
        std::string path;
        std::string epsilon = "1/5";
        std::optional<int> gamma;
    };
    std::vector<Row> rows;
    std::string line;
    while (std::getline(*src, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        Row row;
        if (!(ss >> row.path)) continue;
        std::string tok;
        if (ss >> tok) row.epsilon = tok;
        int g;
        if (ss >> g) row.gamma = g;
        rows.push_back(row);
    }

    out << "n D gamma tours opt ratio ms\n";
    std::optional<Rat> max_ratio;
    const bool parallel = configure_parallelism();
    for (const Row& row : rows) {
        std::ifstream inst_file(row.path);
        if (!inst_file) throw Error("cannot open instance file '" + row.path + "'");
        RoutingInstance inst = parse_instance(inst_file);

        ApproxConfig cfg;
        cfg.epsilon = Rat::parse(row.epsilon);
        cfg.gamma_override = row.gamma;
        if (!cfg.gamma_override.has_value())
            if (auto hint = comment_hint(row.path, "gamma")) cfg.gamma_override = static_cast<int>(*hint);
        cfg.parallel = parallel;

        auto start = std::chrono::steady_clock::now();
        ApproxReport report = approx_solve(inst, cfg);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                              start)
                        .count();

        std::optional<long long> opt;
        if (inst.terminal_count() <= static_cast<std::size_t>(kBruteForceCap) &&
            inst.terminal_count() <= 8) {
            auto brute = brute_force_opt(inst);
            if (brute.has_value()) opt = *brute;
        } else if (auto hint = comment_hint(row.path, "opt-upper")) {
            opt = *hint;
        }

        out << inst.terminal_count() << " " << inst.distance_bound << " " << report.gamma_used
            << " " << report.total_tours << " ";
        if (opt.has_value()) {
            Rat ratio(report.total_tours, *opt);
            if (!max_ratio.has_value() || ratio > *max_ratio) max_ratio = ratio;
            out << *opt << " " << ratio.str();
        } else {
            out << "- -";
        }
        out << " " << static_cast<long long>(ms + 0.5) << "\n";
    }
    if (max_ratio.has_value()) out << "max-ratio " << max_ratio->str() << "\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Distance-constrained vehicle routing on trees"};
    app.require_subcommand(1);

    std::string instance_path, epsilon = "1/5", report_path, lemma, sizes_path, suite_path;
    std::string items_path;
    int gamma = 0;
    bool tours = false;
    int trials = 100;
    std::uint64_t seed = 1;
    int n = 4;
    long long max_weight = 5, capacity = 1;
    int policy = 6, k = 1, space = 2;

    auto* solve = app.add_subcommand("solve", "approximate tour count for an instance");
    solve->add_option("--epsilon", epsilon, "accuracy parameter, an exact rational like 1/5");
    int gamma_flag = 0;
    solve->add_option("--gamma", gamma_flag, "override the derived gamma");
    solve->add_flag("--tours", tours, "also print one tour set");
    solve->add_option("--report", report_path, "write the report to a file as well");
    solve->add_option("instance", instance_path, "instance file, '-' for stdin");

    auto* exact = app.add_subcommand("exact", "bounded exact tour count");
    exact->add_option("--gamma", gamma, "tour budget")->required();
    exact->add_option("instance", instance_path, "instance file, '-' for stdin");

    auto* decomp = app.add_subcommand("decompose", "print the component decomposition");
    decomp->add_option("--gamma", gamma, "tour budget")->required();
    decomp->add_option("instance", instance_path, "instance file, '-' for stdin");

    auto* verify = app.add_subcommand("verify", "run a randomized property suite");
    verify->add_option("--lemma", lemma, "one of 3.2, 3.3, 3.4")->required();
    verify->add_option("--trials", trials, "number of trials");
    verify->add_option("--seed", seed, "random seed");

    auto* binpack = app.add_subcommand("binpack", "bounded-space online packing of rationals");
    binpack->add_option("--space", space, "open-bin budget M")->required();
    binpack->add_option("items", items_path, "item file, '-' for stdin");

    auto* gen_lb = app.add_subcommand("gen-lb", "emit a tight lower-bound family instance");
    gen_lb->add_option("--k", k, "number of component types")->required();
    gen_lb->add_option("--gamma", gamma, "tour budget the family targets")->required();

    auto* gen_rnd = app.add_subcommand("gen-random", "emit a reproducible random instance");
    gen_rnd->add_option("--seed", seed, "random seed")->required();
    gen_rnd->add_option("--n", n, "terminal count")->required();
    gen_rnd->add_option("--max-weight", max_weight, "largest edge weight");
    gen_rnd->add_option("--d-policy", policy, "bound policy: lambda in half units, 4..8");

    auto* gen_bp = app.add_subcommand("gen-from-binpack", "emit the star instance of a packing");
    gen_bp->add_option("--capacity", capacity, "bin capacity")->required();
    gen_bp->add_option("--sizes", sizes_path, "item size file, '-' for stdin")->required();

    auto* bench = app.add_subcommand("bench", "solve a suite of instances and tabulate ratios");
    bench->add_option("suite", suite_path, "suite file: instance path, epsilon, optional gamma")
        ->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed())
            return cmd_solve(instance_path, epsilon,
                             solve->count("--gamma") ? std::optional<int>(gamma_flag)
                                                     : std::nullopt,
                             tours, report_path, in, out);
        if (exact->parsed()) return cmd_exact(instance_path, gamma, in, out);
        if (decomp->parsed()) return cmd_decompose(instance_path, gamma, in, out);
        if (verify->parsed()) return cmd_verify(lemma, trials, seed, out);
        if (binpack->parsed()) return cmd_binpack(items_path, space, in, out);
        if (gen_lb->parsed()) return cmd_gen_lb(k, gamma, out);
        if (gen_rnd->parsed()) return cmd_gen_random(seed, n, max_weight, policy, out);
        if (gen_bp->parsed()) return cmd_gen_from_binpack(capacity, sizes_path, in, out);
        if (bench->parsed()) return cmd_bench(suite_path, in, out);
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand given\n";
    return 2;
}

}  // namespace dvrp::cli
