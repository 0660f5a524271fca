#pragma once

// Configuration-driven experiments: each bundled experiment builds its
// symbols, runs the numerical checks and returns a verdict together with the
// tables written by the command-line tool.

#include "bergman/measure.hpp"
#include "bergman/quadrature.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bergman {

struct ExperimentConfig {
    static constexpr int kSchemaVersion = 1;

    std::string experiment;
    std::optional<SymbolMeasure> symbol;  ///< inline or loaded from symbol_file
    std::optional<HalfInteger> k;
    double gamma = 0.5;
    std::optional<int> alpha;
    std::optional<int> beta;
    std::optional<int> j;
    std::vector<int> basis_sizes{20, 40, 80};
    QuadratureSpec quadrature;
    std::string out_dir;  ///< empty: results/<experiment>
    std::uint64_t seed = 0;

    /// Parses a config document; relative symbol_file paths resolve against
    /// base_dir. Throws ConfigError naming the offending field.
    static ExperimentConfig from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = ".");
    /// Reads and parses a config file; JSON syntax errors carry the line.
    static ExperimentConfig load(const std::filesystem::path& path);

    /// Range checks; throws ConfigError.
    void validate() const;
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct ExperimentResult {
    std::string experiment;
    std::vector<std::string> anchors;
    bool passed = false;
    nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
    Table report;
    std::optional<std::vector<double>> singular_values;
    std::optional<nlohmann::json> k_operator;
    std::vector<std::string> notes;
};

struct ExperimentInfo {
    std::string name;
    std::string section;
    std::vector<std::string> anchors;
    std::string description;
    std::function<ExperimentResult(const ExperimentConfig&)> run;
};

const std::vector<ExperimentInfo>& experiment_registry();
const ExperimentInfo* find_experiment(const std::string& name);
/// Registry entries whose section equals `section` (all when empty).
std::vector<const ExperimentInfo*> list_experiments(const std::string& section = {});

/// Validates the config and runs the named experiment; throws ConfigError
/// for unknown names.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// report.csv and summary.json always; singular_values.csv and
/// K_operator.json when present.
void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir);

/// Fixed-format number rendering shared by every CSV writer.
std::string format_number(double v);

} // namespace bergman
