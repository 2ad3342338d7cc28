#include "randset/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "randset/cfg.hpp"
#include "randset/corpus.hpp"
#include "randset/metrics.hpp"
#include "randset/scheduler.hpp"
#include "randset/setcover.hpp"

#ifndef RANDSET_VERSION
#define RANDSET_VERSION "0.0.0"
#endif

namespace randset::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct GenTargetArgs {
    std::size_t nodes = 1;
    std::size_t max_children = 3;
    double loop_back = 0.1;
    std::uint64_t seed = 0;
    std::string out;
};

struct CampaignArgs {
    std::string cfg;
    std::string seeds;
    std::string strategy = "randset";
    std::vector<std::string> strategies{"randset", "greedy", "cullqueue", "wrandom"};
    std::string features = "frontier";
    std::size_t rounds = 200;
    std::size_t mutants = kDefaultMutantsPerRound;
    std::size_t max_steps = kDefaultMaxSteps;
    std::uint64_t seed = 0;
    std::string out;
    bool no_timing = false;
};

struct ReduceArgs {
    std::string cfg;
    std::string seeds;
    std::string features = "frontier";
    std::string algorithm = "randomized";
    std::size_t max_steps = kDefaultMaxSteps;
    std::uint64_t seed = 0;
    std::string out;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void configure_logging()
{
    static bool done = false;
    if (!done) {
        auto logger = spdlog::stderr_color_mt("randset");
        logger->set_pattern("[%l] %v");
        spdlog::set_default_logger(logger);
        done = true;
    }
    spdlog::set_level(spdlog::level::info);
    if (const char* env = std::getenv("RANDSET_LOG")) {
        const std::string level(env);
        if (level == "error") {
            spdlog::set_level(spdlog::level::err);
        } else if (level == "debug") {
            spdlog::set_level(spdlog::level::debug);
        } else if (level != "info") {
            spdlog::warn("ignoring RANDSET_LOG={} (expected error|info|debug)", level);
        }
    }
}

FeatureMode feature_mode_or_throw(const std::string& text)
{
    if (auto m = parse_feature_mode(text)) {
        return *m;
    }
    throw UsageError("unknown feature mode '" + text + "'");
}

Strategy strategy_or_throw(const std::string& text)
{
    if (auto s = parse_strategy(text)) {
        return *s;
    }
    throw UsageError("unknown strategy '" + text + "'");
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::ios_base::failure("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw std::ios_base::failure("short write to " + path.string());
    }
}

ordered_json manifest_base(const std::string& command, std::uint64_t seed)
{
    ordered_json m;
    m["tool"] = "randset";
    m["version"] = RANDSET_VERSION;
    m["command"] = command;
    m["rng_seed"] = seed;
    return m;
}

struct LoadedInputs {
    std::shared_ptr<const Cfg> cfg;
    std::vector<SeedFile> files;
};

LoadedInputs load_inputs(const std::string& cfg_path, const std::string& seeds_dir)
{
    LoadedInputs in;
    try {
        in.cfg = std::make_shared<const Cfg>(load_cfg_file(cfg_path));
    } catch (const CfgError& e) {
        throw std::ios_base::failure("malformed cfg " + cfg_path + ": " + e.what());
    }
    in.files = read_seed_dir(seeds_dir);
    if (in.files.empty()) {
        throw std::ios_base::failure("no seed files in " + seeds_dir);
    }
    spdlog::info("loaded cfg with {} nodes / {} edges and {} seed(s)", in.cfg->node_count(), in.cfg->edge_count(),
                 in.files.size());
    return in;
}

CampaignConfig campaign_config(const CampaignArgs& a, const LoadedInputs& in, Strategy strategy)
{
    CampaignConfig c;
    c.cfg = in.cfg;
    for (const auto& f : in.files) {
        c.initial_seeds.push_back(f.bytes);
    }
    c.strategy = strategy;
    c.feature_mode = feature_mode_or_throw(a.features);
    c.rounds = a.rounds;
    c.mutants_per_round = a.mutants;
    c.max_steps = a.max_steps;
    c.rng_seed = a.seed;
    return c;
}

ordered_json campaign_manifest(const std::string& command, const CampaignArgs& a)
{
    auto m = manifest_base(command, a.seed);
    m["cfg"] = a.cfg;
    m["seeds"] = a.seeds;
    if (command == "run") {
        m["strategy"] = a.strategy;
    } else {
        m["strategies"] = a.strategies;
    }
    m["features"] = a.features;
    m["rounds"] = a.rounds;
    m["mutants"] = a.mutants;
    m["max_steps"] = a.max_steps;
    m["timing"] = !a.no_timing;
    return m;
}

int cmd_gen_target(const GenTargetArgs& a)
{
    auto cfg = generate_random_cfg(a.nodes, a.max_children, a.loop_back, a.seed);
    save_cfg_file(cfg, a.out);
    spdlog::info("wrote {} ({} nodes, {} edges)", a.out, cfg.node_count(), cfg.edge_count());
    return kOk;
}

int cmd_run(const CampaignArgs& a)
{
    const auto strategy = strategy_or_throw(a.strategy);
    auto in = load_inputs(a.cfg, a.seeds);
    Campaign campaign(campaign_config(a, in, strategy));
    campaign.run();
    const auto stats = campaign.stats();

    const fs::path out(a.out);
    fs::create_directories(out);
    std::ostringstream rounds, cdf, summary;
    write_rounds_csv(rounds, stats, !a.no_timing);
    write_cdf_csv(cdf, stats);
    write_summary_header(summary);
    write_summary_row(summary, stats, !a.no_timing);
    write_text(out / "rounds.csv", rounds.str());
    write_text(out / "cdf.csv", cdf.str());
    write_text(out / "summary.csv", summary.str());
    write_text(out / "manifest.json", campaign_manifest("run", a).dump(2) + "\n");
    export_corpus(campaign.corpus(), out / "corpus");

    spdlog::info("{} rounds: edges {}, corpus {}, subset ratio {:.2f}%, unique seeds {}", stats.rounds.size(),
                 stats.final_edges.count(), campaign.corpus().size(), subset_ratio(stats), unique_seeds(stats));
    return kOk;
}

int cmd_compare(const CampaignArgs& a)
{
    if (a.strategies.empty()) {
        throw UsageError("no strategies given");
    }
    std::vector<Strategy> strategies;
    for (const auto& s : a.strategies) {
        strategies.push_back(strategy_or_throw(s));
    }
    auto in = load_inputs(a.cfg, a.seeds);

    const fs::path out(a.out);
    fs::create_directories(out);
    std::ostringstream summary;
    write_summary_header(summary);
    for (auto strategy : strategies) {
        // Every strategy gets the same seed, so its per-purpose streams
        // (shuffle, mutation, sampling) are identical across rows.
        const auto stats = run_campaign(campaign_config(a, in, strategy));
        write_summary_row(summary, stats, !a.no_timing);
        std::ostringstream rounds, cdf;
        write_rounds_csv(rounds, stats, !a.no_timing);
        write_cdf_csv(cdf, stats);
        const auto name = std::string(to_string(strategy));
        write_text(out / ("rounds_" + name + ".csv"), rounds.str());
        write_text(out / ("cdf_" + name + ".csv"), cdf.str());
        spdlog::info("{}: edges {}, unique seeds {}", name, stats.final_edges.count(), unique_seeds(stats));
    }
    write_text(out / "summary.csv", summary.str());
    write_text(out / "manifest.json", campaign_manifest("compare", a).dump(2) + "\n");
    return kOk;
}

int cmd_reduce(const ReduceArgs& a)
{
    const auto mode = feature_mode_or_throw(a.features);
    auto in = load_inputs(a.cfg, a.seeds);
    const auto corpus = import_corpus(in.cfg, in.files, a.max_steps);
    const auto instance = cover_instance(corpus, mode);

    CoverResult result;
    if (a.algorithm == "randomized") {
        auto rng = Rng::stream(a.seed, "shuffle");
        result = randomized_cover(instance, rng);
    } else if (a.algorithm == "greedy") {
        result = greedy_cover(instance);
    } else if (a.algorithm == "exact") {
        result = exact_min_cover(instance);
    } else {
        throw UsageError("unknown algorithm '" + a.algorithm + "'");
    }

    const fs::path out(a.out);
    fs::create_directories(out);
    auto chosen = result.chosen;
    std::sort(chosen.begin(), chosen.end());
    for (auto id : chosen) {
        const auto& src = in.files.at(id).path;
        fs::copy_file(src, out / src.filename(), fs::copy_options::overwrite_existing);
    }
    const double ratio = 100.0 * static_cast<double>(chosen.size()) / static_cast<double>(corpus.size());
    std::cout << fmt::format("kept {} of {} seeds, subset_ratio_pct={:.4f}\n", chosen.size(), corpus.size(), ratio);
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv)
{
    configure_logging();

    CLI::App app{"Randomized corpus reduction lab: synthetic targets, seed-scheduling campaigns and offline "
                 "corpus distillation.",
                 "randset"};
    app.require_subcommand(1);
    app.set_version_flag("--version", RANDSET_VERSION);

    GenTargetArgs gen;
    auto* gen_cmd = app.add_subcommand("gen-target", "Generate a synthetic CFG file");
    gen_cmd->add_option("--nodes", gen.nodes, "Node count")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--max-children", gen.max_children, "Maximum children per node")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--loop-back", gen.loop_back, "Per-node back-edge probability")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Output CFG path")->required();

    const std::vector<std::string> strategy_names{"randset", "greedy", "cullqueue", "wrandom"};
    const std::vector<std::string> feature_names{"frontier", "edge"};

    auto add_campaign_options = [&](CLI::App* cmd, CampaignArgs& a) {
        cmd->add_option("--cfg", a.cfg, "CFG file")->required();
        cmd->add_option("--seeds", a.seeds, "Initial seed directory")->required();
        cmd->add_option("--features", a.features, "Reduction features")
            ->capture_default_str()
            ->check(CLI::IsMember(feature_names));
        cmd->add_option("--rounds", a.rounds, "Scheduling rounds")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--mutants", a.mutants, "Mutants per round")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--max-steps", a.max_steps, "Execution step bound")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", a.seed, "RNG seed")->capture_default_str();
        cmd->add_option("--out", a.out, "Output directory")->required();
        cmd->add_flag("--no-timing", a.no_timing, "Write 0 in every timing column");
    };

    CampaignArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Run one scheduling campaign");
    add_campaign_options(run_cmd, run_args);
    run_cmd->add_option("--strategy", run_args.strategy, "Scheduling strategy")
        ->capture_default_str()
        ->check(CLI::IsMember(strategy_names));

    CampaignArgs cmp_args;
    auto* cmp_cmd = app.add_subcommand("compare", "Run several strategies on the same inputs");
    add_campaign_options(cmp_cmd, cmp_args);
    cmp_cmd->add_option("--strategies", cmp_args.strategies, "Strategies to compare")
        ->delimiter(',')
        ->capture_default_str()
        ->check(CLI::IsMember(strategy_names));

    ReduceArgs red;
    auto* red_cmd = app.add_subcommand("reduce", "Distill a seed directory offline");
    red_cmd->add_option("--cfg", red.cfg, "CFG file")->required();
    red_cmd->add_option("--seeds", red.seeds, "Seed directory")->required();
    red_cmd->add_option("--features", red.features, "Reduction features")
        ->capture_default_str()
        ->check(CLI::IsMember(feature_names));
    red_cmd->add_option("--algorithm", red.algorithm, "Cover algorithm")
        ->capture_default_str()
        ->check(CLI::IsMember({"randomized", "greedy", "exact"}));
    red_cmd->add_option("--max-steps", red.max_steps, "Execution step bound")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    red_cmd->add_option("--seed", red.seed, "RNG seed")->capture_default_str();
    red_cmd->add_option("--out", red.out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*gen_cmd) {
            return cmd_gen_target(gen);
        }
        if (*run_cmd) {
            return cmd_run(run_args);
        }
        if (*cmp_cmd) {
            return cmd_compare(cmp_args);
        }
        if (*red_cmd) {
            return cmd_reduce(red);
        }
    } catch (const UsageError& e) {
        spdlog::error("{}", e.what());
        return kUsage;
    } catch (const InstanceTooLarge& e) {
        spdlog::error("{}", e.what());
        return kUsage;
    } catch (const InfeasibleCover& e) {
        spdlog::error("{}", e.what());
        return kInfeasible;
    } catch (const std::ios_base::failure& e) {
        spdlog::error("{}", e.what());
        return kIo;
    } catch (const fs::filesystem_error& e) {
        spdlog::error("{}", e.what());
        return kIo;
    } catch (const CfgError& e) {
        spdlog::error("{}", e.what());
        return kIo;
    } catch (const std::invalid_argument& e) {
        spdlog::error("{}", e.what());
        return kUsage;
    }
    return kUsage;
}

}  // namespace randset::cli
