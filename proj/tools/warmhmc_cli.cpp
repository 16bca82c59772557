// Command-line entry point.
//
//   warmhmc run <config> [--workers N] [--seed-offset K] [--out DIR]
//   warmhmc report <dir>
//
// `run` executes the experiment named in the config, writes one CSV per arm
// plus a manifest into the output directory, and prints the criterion
// verdicts.  `report` re-verifies an existing directory without modifying it.
// Exit status: 0 all criteria pass, 1 criterion failure (or tampered
// artifacts), 2 usage or configuration error.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "warmhmc/harness/experiments.hpp"
#include "warmhmc/harness/report.hpp"

namespace {

int run_command(const std::string& config_path, long workers, long seed_offset,
                std::string out_dir) {
    warmhmc::RunContext ctx;
    ctx.config = warmhmc::KeyValueConfig::load(config_path);
    const std::vector<std::string> overridden = ctx.config.apply_env_overrides();
    for (const std::string& key : overridden)
        std::cout << "config override from environment: " << key << " = "
                  << ctx.config.get_string(key, "") << "\n";

    const std::string experiment = ctx.config.get_string("experiment", "");
    if (experiment.empty())
        throw warmhmc::ConfigError("config is missing the 'experiment' key");
    if (!ctx.config.has("seeds"))
        throw warmhmc::ConfigError("config is missing the 'seeds' key");
    ctx.seeds = ctx.config.get_long_list("seeds");
    if (ctx.seeds.empty()) throw warmhmc::ConfigError("'seeds' must list at least one seed");
    for (long& s : ctx.seeds) s += seed_offset;
    ctx.workers = workers > 0 ? workers : 1;

    if (out_dir.empty()) out_dir = ctx.config.get_string("out", "runs/" + experiment);
    std::filesystem::create_directories(out_dir);
    ctx.out_dir = out_dir;

    const warmhmc::ExperimentResult result = warmhmc::run_experiment(experiment, ctx);
    const warmhmc::Manifest manifest = warmhmc::Manifest::build(
        experiment, ctx.config, ctx.seeds, seed_offset, result.files, ctx.out_dir,
        result.criteria);
    manifest.write(ctx.out_dir);

    std::cout << "experiment " << experiment << " -> " << ctx.out_dir << " ("
              << result.files.size() << " artifacts + manifest)\n";
    for (const warmhmc::CriterionResult& c : result.criteria) {
        std::cout << "criterion " << c.name << ": " << (c.pass ? "PASS" : "FAIL") << "\n";
        for (const warmhmc::CheckLine& line : c.checks)
            std::cout << "    " << line.label << " | measured " << warmhmc::csv_format(line.measured)
                      << " | " << line.relation << " bound " << warmhmc::csv_format(line.bound)
                      << " | " << (line.ok ? "ok" : "VIOLATED") << "\n";
    }
    std::cout << "RESULT: " << (result.all_pass() ? "PASS" : "FAIL") << "\n";
    return result.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-phase warm-start HMC experiment harness"};
    app.require_subcommand(1);

    std::string config_path;
    long workers = 1;
    long seed_offset = 0;
    std::string out_dir;
    CLI::App* run = app.add_subcommand("run", "execute an experiment from a config file");
    run->add_option("config", config_path, "key = value config file")->required();
    run->add_option("--workers", workers, "worker threads for independent arms");
    run->add_option("--seed-offset", seed_offset, "added to every seed in the config");
    run->add_option("--out", out_dir, "output directory (default: config 'out' key)");

    std::string report_dir;
    CLI::App* report = app.add_subcommand("report", "verify and summarize a finished run");
    report->add_option("dir", report_dir, "run directory containing manifest.txt")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return run_command(config_path, workers, seed_offset, out_dir);
        warmhmc::ReportSummary summary = warmhmc::report_run(report_dir, std::cout);
        return summary.exit_code();
    } catch (const warmhmc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
