// Command-line front end: lists the bundled experiments and runs one per
// invocation. Exit status 0 when every check passes, 1 on a FAIL verdict or a
// numerical failure, 2 on usage errors.

#include "bergman/errors.hpp"
#include "bergman/experiments.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kUsage = 2;

std::vector<int> parse_sizes(const std::string& csv)
{
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const auto end = std::min(csv.find(',', pos), csv.size());
        const std::string item = csv.substr(pos, end - pos);
        int v = 0;
        const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || p != item.data() + item.size()) {
            throw bergman::ConfigError("--basis-sizes: '" + item + "' is not an integer");
        }
        out.push_back(v);
        pos = end + 1;
    }
    return out;
}

bool looks_like_file(const std::string& target)
{
    return target.ends_with(".json") || std::filesystem::is_regular_file(target);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Toeplitz operators on the Bergman space of the upper half-plane"};
    app.require_subcommand(1);

    std::string section;
    auto* list = app.add_subcommand("list", "List bundled experiments");
    list->add_option("--section", section, "Only experiments of this section (3, 4, 6, selftest)");

    std::string target;
    std::optional<std::string> out_dir;
    std::optional<std::string> sizes;
    std::optional<std::uint64_t> seed;
    std::optional<int> j;
    auto* run = app.add_subcommand("run", "Run one experiment by name or config file");
    run->add_option("target", target, "Experiment name or path to a JSON config")->required();
    run->add_option("--out", out_dir, "Output directory (default results/<experiment>)");
    run->add_option("--basis-sizes", sizes, "Comma-separated truncation sizes N");
    run->add_option("--seed", seed, "Seed for randomized checks");
    run->add_option("--j", j, "Polyanalytic level j");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (*list) {
        for (const auto* e : bergman::list_experiments(section)) {
            std::cout << e->name << "\t[" << e->section << "]\t";
            for (std::size_t i = 0; i < e->anchors.size(); ++i) {
                std::cout << (i ? "; " : "") << e->anchors[i];
            }
            std::cout << "\t" << e->description << '\n';
        }
        return 0;
    }

    bergman::ExperimentConfig config;
    try {
        if (looks_like_file(target)) {
            config = bergman::ExperimentConfig::load(target);
        } else {
            config.experiment = target;
        }
        if (!bergman::find_experiment(config.experiment)) {
            throw bergman::ConfigError("unknown experiment '" + config.experiment + "' (see 'list')");
        }
        if (sizes) {
            config.basis_sizes = parse_sizes(*sizes);
        }
        if (seed) {
            config.seed = *seed;
        }
        if (j) {
            config.j = *j;
        }
        if (out_dir) {
            config.out_dir = *out_dir;
        }
        if (config.out_dir.empty()) {
            config.out_dir = "results/" + config.experiment;
        }
        config.validate();
    } catch (const bergman::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        const auto result = bergman::run_experiment(config);
        bergman::write_artifacts(result, config.out_dir);
        std::cout << result.experiment << ": " << (result.passed ? "PASS" : "FAIL") << " (" << config.out_dir
                  << ")\n";
        for (const auto& note : result.notes) {
            std::cout << "note: " << note << '\n';
        }
        return result.passed ? 0 : 1;
    } catch (const bergman::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
