#include "hyperlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "hyperlab/combinatorics.hpp"
#include "hyperlab/connectivity.hpp"
#include "hyperlab/error.hpp"
#include "hyperlab/experiments.hpp"
#include "hyperlab/model.hpp"
#include "hyperlab/rng.hpp"
#include "hyperlab/statistics.hpp"

#ifndef HYPERLAB_VERSION
#define HYPERLAB_VERSION "0.0.0"
#endif

namespace hyperlab::cli {

namespace {

using json = nlohmann::ordered_json;

// Raised when the oracle and the tracker disagree.
class OracleMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string format = "csv";
    std::string out_path;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t memcap = memcap_from_env();
};

struct ParamFlags {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::uint32_t j = 0;

    Params get() const {
        Params p{n, k, j};
        p.validate();
        return p;
    }
};

void add_common(CLI::App* sub, Common& common, bool with_format = true) {
    if (with_format) {
        sub->add_option("--format", common.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    }
    sub->add_option("--out", common.out_path, "Write data to PATH plus PATH.manifest.json");
    sub->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--memcap", common.memcap, "Maximum C(n,j) table entries")->check(CLI::PositiveNumber);
    sub->add_option("--config", "key=value file supplying any flag");
}

void add_params(CLI::App* sub, ParamFlags& p, bool with_n = true) {
    if (with_n) sub->add_option("--n", p.n, "Vertices (labelled 0..n-1)")->required();
    sub->add_option("--k", p.k, "Edge size")->required();
    sub->add_option("--j", p.j, "Connectivity order")->required();
}

json params_json(const Params& p) { return json{{"n", p.n}, {"k", p.k}, {"j", p.j}}; }

// A finished command: data text plus the manifest fields specific to it.
struct Output {
    std::string data;
    json manifest_params;
    json seeds;
};

Output cmd_hitting(const ParamFlags& pf, std::uint64_t trials, std::uint64_t seed, const Common& common) {
    const Params params = pf.get();
    const auto records = run_hitting_trials(params, trials, seed, common.threads, common.memcap);
    const auto est = summarize_coincidence(records);
    std::ostringstream os;
    if (common.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            rows.push_back({{"trial", i}, {"seed", r.seed}, {"tau_i", r.tau_i}, {"tau_c", r.tau_c},
                            {"equal", r.tau_i == r.tau_c}});
        }
        json doc{{"rows", rows},
                 {"summary", {{"trials", est.trials}, {"coincidences", est.coincidences},
                              {"point", est.point}, {"ci_low", est.ci_low}, {"ci_high", est.ci_high}}}};
        os << doc.dump(2) << '\n';
    } else {
        os << "trial,seed,tau_i,tau_c,equal\n";
        for (std::size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            os << fmt::format("{},{},{},{},{}\n", i, r.seed, r.tau_i, r.tau_c, r.tau_i == r.tau_c ? 1 : 0);
        }
        os << "# trials,coincidences,point,ci_low,ci_high\n";
        os << fmt::format("# {},{},{},{},{}\n", est.trials, est.coincidences, est.point, est.ci_low, est.ci_high);
    }
    json mp = params_json(params);
    mp["trials"] = trials;
    return {os.str(), mp, json{{"base_seed", seed}, {"trial_seed", "base_seed + trial"}}};
}

Output cmd_degree_dist(const ParamFlags& pf, std::uint32_t s, double c, std::uint64_t trials,
                       std::uint64_t seed, const Common& common) {
    const Params params = pf.get();
    const auto rep = sample_degree_counts(params, CnParameterization{s, c}, trials, seed, common.threads,
                                          common.memcap);
    std::ostringstream os;
    if (common.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < rep.observations.size(); ++i) {
            rows.push_back({{"trial", i}, {"D_s", rep.observations[i]}});
        }
        json doc{{"rows", rows},
                 {"summary", {{"p", rep.p}, {"mean", rep.mean}, {"exact_expectation", rep.exact_expectation},
                              {"limit_lambda", rep.limit_lambda}, {"tv_to_poisson", rep.tv_to_poisson}}}};
        os << doc.dump(2) << '\n';
    } else {
        os << "trial,D_s\n";
        for (std::size_t i = 0; i < rep.observations.size(); ++i) {
            os << fmt::format("{},{}\n", i, rep.observations[i]);
        }
        os << "# mean,exact_expectation,limit_lambda,tv_to_poisson\n";
        os << fmt::format("# {},{},{},{}\n", rep.mean, rep.exact_expectation, rep.limit_lambda, rep.tv_to_poisson);
    }
    json mp = params_json(params);
    mp["s"] = s;
    mp["c"] = c;
    mp["p"] = rep.p;
    mp["trials"] = trials;
    return {os.str(), mp, json{{"base_seed", seed}, {"trial_seed", "base_seed + trial"}}};
}

std::vector<double> c_grid(double from, double to, double step) {
    if (!(step > 0.0) || to < from) {
        throw InvalidInput(fmt::format("empty c grid: from {} to {} step {}", from, to, step));
    }
    std::vector<double> grid;
    const double slack = 1e-9 * step;
    for (std::uint64_t i = 0;; ++i) {
        const double c = from + static_cast<double>(i) * step;
        if (c > to + slack) break;
        grid.push_back(c);
    }
    return grid;
}

Output cmd_sweep(const ParamFlags& pf, double from, double to, double step, std::uint64_t trials,
                 std::uint64_t seed, const std::string& model_name, const Common& common) {
    const Params params = pf.get();
    const auto grid = c_grid(from, to, step);
    const SweepModel model = model_name == "uniform" ? SweepModel::uniform : SweepModel::binomial;
    const auto rows = threshold_sweep(params, grid, trials, seed, model, common.threads, common.memcap);
    std::ostringstream os;
    if (common.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"c", r.c}, {"trials", r.trials}, {"frac_no_isolated", r.frac_no_isolated},
                           {"frac_connected", r.frac_connected}});
        }
        os << json{{"rows", arr}}.dump(2) << '\n';
    } else {
        os << "c,trials,frac_no_isolated,frac_connected\n";
        for (const auto& r : rows) {
            os << fmt::format("{},{},{},{}\n", r.c, r.trials, r.frac_no_isolated, r.frac_connected);
        }
    }
    json mp = params_json(params);
    mp["c_from"] = from;
    mp["c_to"] = to;
    mp["c_step"] = step;
    mp["trials"] = trials;
    mp["model"] = model_name;
    return {os.str(), mp, json{{"base_seed", seed}, {"trial_seed", "base_seed + trial (same for every c)"}}};
}

Output cmd_oracle_check(std::uint64_t instances, std::uint32_t max_n, std::uint64_t seed, const Common& common) {
    if (max_n < 4) throw InvalidInput(fmt::format("--max-n {} must be at least 4", max_n));
    std::ostringstream os;
    os << "instances,mismatches\n";
    for (std::uint64_t i = 0; i < instances; ++i) {
        Rng rng(seed + i);
        const auto k = static_cast<std::uint32_t>(3 + rng.below(2));
        if (max_n < k) continue;
        const auto j = static_cast<std::uint32_t>(1 + rng.below(k - 1));
        const auto n = static_cast<std::uint32_t>(k + rng.below(max_n - k + 1));
        const Params params{n, k, j};
        const std::uint64_t m = rng.below(params.edge_universe() + 1);
        const Hypergraph h = sample_uniform(params, m, rng.next_u64());
        ComponentTracker tracker(params, common.memcap);
        for (const Rank e : h.edge_ranks()) tracker.insert_edge_rank(e);
        const auto fast = tracker.component_partition();
        const auto slow = bfs_j_components(h);
        if (!(fast == slow)) {
            throw OracleMismatch(fmt::format(
                "instance {} (n={} k={} j={} m={}) partitions differ\n# tracker\n{}# oracle\n{}", i, n, k, j, m,
                format_partition(fast), format_partition(slow)));
        }
    }
    os << fmt::format("{},0\n", instances);
    json mp{{"instances", instances}, {"max_n", max_n}, {"k_choices", {3, 4}}};
    return {os.str(), mp, json{{"base_seed", seed}, {"instance_seed", "base_seed + instance"}}};
}

Output cmd_enumerate_wc(std::uint32_t k, std::uint32_t j, std::uint32_t max_jsize, std::uint32_t budget,
                        const Common& common) {
    const auto rows = enumerate_well_constructed(k, j, max_jsize, budget);
    std::ostringstream os;
    if (common.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"jsize", r.jsize}, {"count", r.count}, {"bound", r.bound_string()}});
        }
        os << json{{"rows", arr}}.dump(2) << '\n';
    } else {
        os << "jsize,count,bound\n";
        for (const auto& r : rows) os << fmt::format("{},{},{}\n", r.jsize, r.count, r.bound_string());
    }
    for (const auto& r : rows) {
        if (!r.within_bound()) throw std::logic_error(fmt::format("count {} above bound at j-size {}", r.count, r.jsize));
    }
    json mp{{"k", k}, {"j", j}, {"max_jsize", max_jsize}, {"vertex_budget", budget}};
    return {os.str(), mp, json::object()};
}

Output cmd_component(const ParamFlags& pf, double epsilon, std::uint64_t seed, const Common& common) {
    const Params params = pf.get();
    const auto rep = supercritical_component(params, epsilon, seed, common.memcap);
    json doc{{"n", params.n},
             {"k", params.k},
             {"j", params.j},
             {"epsilon", rep.epsilon},
             {"p_star", rep.p_star},
             {"seed", rep.seed},
             {"edges", rep.edges},
             {"jset_total", rep.jset_total},
             {"largest_jsize", rep.largest_jsize},
             {"coverage_min", rep.coverage_min},
             {"coverage_max", rep.coverage_max},
             {"coverage_mean", rep.coverage_mean}};
    json mp = params_json(params);
    mp["epsilon"] = epsilon;
    return {doc.dump(2) + "\n", mp, json{{"seed", seed}}};
}

void emit(const Output& result, const std::vector<std::string>& args, const std::string& command,
          const Common& common, double wall_seconds, std::ostream& out) {
    if (common.out_path.empty()) {
        out << result.data;
        return;
    }
    {
        std::ofstream file(common.out_path, std::ios::binary);
        if (!file) throw InvalidInput(fmt::format("cannot open {} for writing", common.out_path));
        file << result.data;
    }
    json manifest{{"command_line", args},
                  {"subcommand", command},
                  {"params", result.manifest_params},
                  {"seeds", result.seeds},
                  {"threads", common.threads},
                  {"memcap", common.memcap},
                  {"format", common.format},
                  {"generator", std::string(kGeneratorIdentity)},
                  {"vertex_labels", "0-based (vertex v here is vertex v+1 in 1-based notation)"},
                  {"version", HYPERLAB_VERSION},
                  {"wall_time_seconds", wall_seconds}};
    std::ofstream side(common.out_path + ".manifest.json", std::ios::binary);
    if (!side) throw InvalidInput(fmt::format("cannot open {}.manifest.json for writing", common.out_path));
    side << manifest.dump(2) << '\n';
}

}  // namespace

std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    std::vector<std::string> kept;
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            config_path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
        } else {
            kept.push_back(args[i]);
        }
    }
    if (config_path.empty()) return kept;

    std::ifstream in(config_path);
    if (!in) throw InvalidInput(fmt::format("cannot read config file {}", config_path));
    auto has_flag = [&](const std::string& flag) {
        return std::any_of(kept.begin(), kept.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::vector<std::string> extra;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidInput(fmt::format("{}:{}: expected key=value", config_path, lineno));
        }
        std::string key = trim(line.substr(0, eq));
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        const std::string flag = "--" + key;
        if (key == "config" || has_flag(flag)) continue;
        extra.push_back(flag);
        extra.push_back(trim(line.substr(eq + 1)));
    }
    kept.insert(kept.end(), extra.begin(), extra.end());
    return kept;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"hyperlab: random k-uniform hypergraphs and high-order connectivity"};
    app.require_subcommand(1);
    app.set_version_flag("--version", HYPERLAB_VERSION);

    Common common;
    ParamFlags pf;
    std::uint64_t trials = 1;
    std::uint64_t seed = 1;

    auto* hitting = app.add_subcommand("hitting", "Hitting times tau_i, tau_c of the hypergraph process");
    add_params(hitting, pf);
    hitting->add_option("--trials", trials)->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    hitting->add_option("--seed", seed)->required();
    add_common(hitting, common);

    std::uint32_t s = 0;
    double c = 0.0;
    auto* degree = app.add_subcommand("degree-dist", "Counts D_s of degree-s j-sets in H^k(n,p)");
    add_params(degree, pf);
    degree->add_option("--s", s)->required()->check(CLI::Range(0u, kMaxDegreeParameter));
    degree->add_option("--c", c)->required();
    degree->add_option("--trials", trials)->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    degree->add_option("--seed", seed)->required();
    add_common(degree, common);

    double c_from = 0.0, c_to = 0.0, c_step = 1.0;
    std::string model = "binomial";
    auto* sweep = app.add_subcommand("sweep", "Fractions without isolated j-sets / j-connected across c");
    add_params(sweep, pf);
    sweep->add_option("--c-from", c_from)->required();
    sweep->add_option("--c-to", c_to)->required();
    sweep->add_option("--c-step", c_step)->required();
    sweep->add_option("--trials", trials)->required()->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
    sweep->add_option("--seed", seed)->required();
    sweep->add_option("--model", model)->check(CLI::IsMember({"binomial", "uniform"}))->capture_default_str();
    add_common(sweep, common);

    std::uint64_t instances = 1000;
    std::uint32_t max_n = 12;
    auto* oracle = app.add_subcommand("oracle-check", "Compare the tracker with the walk-definition oracle");
    oracle->add_option("--instances", instances)->capture_default_str();
    oracle->add_option("--max-n", max_n)->capture_default_str();
    oracle->add_option("--seed", seed)->capture_default_str();
    add_common(oracle, common, false);

    std::uint32_t max_jsize = 0;
    std::uint32_t budget = kDefaultVertexBudget;
    auto* wc = app.add_subcommand("enumerate-wc", "Count well-constructed hypergraphs up to isomorphism");
    add_params(wc, pf, false);
    wc->add_option("--max-jsize", max_jsize, "Largest j-size to report (default: largest complete)");
    wc->add_option("--vertex-budget", budget)->capture_default_str();
    add_common(wc, common);

    double epsilon = 0.0;
    auto* comp = app.add_subcommand("component", "Largest j-component of H^k(n,p*) and (j-1)-set coverage");
    add_params(comp, pf);
    comp->add_option("--epsilon", epsilon)->required();
    comp->add_option("--seed", seed)->required();
    add_common(comp, common, false);

    const auto start = std::chrono::steady_clock::now();
    try {
        const auto args = merge_config(raw_args);
        std::vector<const char*> argv;
        argv.reserve(args.size());
        for (const auto& a : args) argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? kOk : kUsage;
        }

        Output result;
        std::string command;
        if (hitting->parsed()) {
            command = "hitting";
            result = cmd_hitting(pf, trials, seed, common);
        } else if (degree->parsed()) {
            command = "degree-dist";
            result = cmd_degree_dist(pf, s, c, trials, seed, common);
        } else if (sweep->parsed()) {
            command = "sweep";
            result = cmd_sweep(pf, c_from, c_to, c_step, trials, seed, model, common);
        } else if (oracle->parsed()) {
            command = "oracle-check";
            result = cmd_oracle_check(instances, max_n, seed, common);
        } else if (wc->parsed()) {
            command = "enumerate-wc";
            if (max_jsize == 0) max_jsize = max_complete_jsize(pf.k, pf.j, budget);
            result = cmd_enumerate_wc(pf.k, pf.j, max_jsize, budget, common);
        } else {
            command = "component";
            result = cmd_component(pf, epsilon, seed, common);
        }
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        emit(result, raw_args, command, common, wall, out);
        return kOk;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << '\n';
        return kResource;
    } catch (const OracleMismatch& e) {
        err << "oracle mismatch: " << e.what();
        return kInternal;
    } catch (const OverflowError& e) {
        err << "resource limit: " << e.what() << '\n';
        return kResource;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace hyperlab::cli
