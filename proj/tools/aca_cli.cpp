// Command-line front end: one subcommand per experiment runner. Exit code 0
// only if every hard invariant of the executed runners held.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aca/experiments.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir = "results";
    std::int64_t seed = -1;
    int trials = -1;
    int threads = -1;
};

aca::RunnerOptions build_options(const CommonFlags& flags) {
    nlohmann::json user = nlohmann::json::object();
    if (!flags.config_path.empty()) {
        user = aca::load_config_file(flags.config_path);
    }
    nlohmann::json merged = aca::merge_config(user);
    // Precedence: flag > file > default.
    if (flags.seed >= 0) merged["seed"] = static_cast<std::uint64_t>(flags.seed);
    if (flags.trials >= 0) merged["trials"] = flags.trials;
    if (flags.threads >= 0) merged["threads"] = flags.threads;

    aca::RunnerOptions opts;
    opts.config = std::move(merged);
    opts.out_dir = flags.out_dir;
    std::filesystem::create_directories(opts.out_dir);
    return opts;
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "Config file (JSON); overrides defaults");
    cmd->add_option("--seed", flags.seed, "Master seed (overrides config)");
    cmd->add_option("--out", flags.out_dir, "Output directory");
    cmd->add_option("--trials", flags.trials, "Override the runner's primary trial count");
    cmd->add_option("--threads", flags.threads, "Worker threads");
}

int execute(const std::vector<std::pair<std::string, aca::RunnerFn>>& jobs, const CommonFlags& flags) {
    const aca::RunnerOptions opts = build_options(flags);
    bool all_ok = true;
    for (const auto& [name, fn] : jobs) {
        const aca::RunnerResult result = fn(opts);
        std::cout << (result.ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        all_ok = all_ok && result.ok;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Budget-constrained data-allocation simulator (coverage-density trade-off)"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::vector<std::pair<std::string, aca::RunnerFn>> jobs;

    for (const aca::RunnerEntry& entry : aca::runner_table()) {
        CLI::App* cmd = app.add_subcommand(entry.name, std::string("Run the ") + entry.name + " experiment");
        add_common_flags(cmd, flags);
        cmd->callback([&jobs, &entry]() { jobs.emplace_back(entry.name, entry.fn); });
    }

    CLI::App* all = app.add_subcommand("all", "Run every experiment runner");
    add_common_flags(all, flags);
    all->callback([&jobs]() {
        for (const aca::RunnerEntry& entry : aca::runner_table()) {
            jobs.emplace_back(entry.name, entry.fn);
        }
    });

    CLI::App* print_cfg = app.add_subcommand("print-config", "Print the default config schema");
    print_cfg->callback([&jobs]() {});

    CLI11_PARSE(app, argc, argv);

    if (print_cfg->parsed()) {
        std::cout << aca::default_config().dump(2) << "\n";
        return 0;
    }

    try {
        return execute(jobs, flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
