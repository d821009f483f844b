// scenario.hpp: scenario documents, built-in presets, and scenario runs that
// write CSV/SVG outputs plus a checksummed run manifest.

#pragma once

#include "bathent/core_model.hpp"
#include "bathent/propagator.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bathent {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Observable { excitation, blocks, concurrence };
enum class RunMethod { exact, rk4, both };

std::string to_string(Observable observable);
std::string to_string(RunMethod method);
Observable observable_from_string(const std::string& name);
RunMethod run_method_from_string(const std::string& name);

struct PartitionScheme {
    std::string kind{"none"};  // none | centered | banded | interleaved | explicit
    Eigen::Index size_b{0};
    Eigen::Index n_blocks{0};
    std::vector<std::vector<Eigen::Index>> blocks;  // explicit, 0-based
    std::vector<std::string> labels;

    std::optional<PartitionSpec> resolve(const BathGrid& grid) const;
};

struct SuperpositionParams {
    Complex a{1.0, 0.0};
    Complex b{-1.0, 0.0};
    Complex alpha0{3.0, 0.0};
    Complex beta0{-3.0, 0.0};

    SuperpositionInit resolve() const { return normalize_superposition(a, b, alpha0, beta0); }
};

struct TimeGrid {
    double t_end{100.0};
    Eigen::Index samples{2000};
    double dt{0.01};
};

struct Scenario {
    std::string name;
    SystemConfig system;
    std::optional<SuperpositionParams> superposition;
    PartitionScheme partition;
    Observable observable{Observable::excitation};
    TimeGrid time;
    RunMethod method{RunMethod::exact};
    bool svg{false};

    // Throws std::invalid_argument if the scenario cannot be resolved.
    void validate() const;
};

// JSON round trip. Complex numbers are written as [re, im]; a bare number is
// accepted as a real value. Explicit partition indices are 1-based in JSON.
nlohmann::json to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& doc);
// A document holding either one scenario or {"scenarios": [...]}.
std::vector<Scenario> scenarios_from_json(const nlohmann::json& doc);

std::vector<std::string> preset_names();
Scenario preset(const std::string& name);

struct OutputFile {
    std::string file;
    std::string sha256;
};

struct RunManifest {
    nlohmann::json scenario;
    std::string config_hash;
    std::string tool_version{kToolVersion};
    double wall_clock_seconds{0.0};
    std::vector<OutputFile> outputs;
    nlohmann::json checks = nlohmann::json::object();
    std::vector<std::string> failures;

    bool passed() const noexcept { return failures.empty(); }
    nlohmann::json to_json() const;
};

// Trajectory on the scenario's time grid. For RunMethod::both the exact
// solution is evaluated at the rk4 sample times and `rk4` holds the
// integrator run.
struct ScenarioTrajectory {
    AmplitudeTrajectory primary;
    std::optional<AmplitudeTrajectory> rk4;
};

ScenarioTrajectory propagate_scenario(const Scenario& scenario, const GeneratorMatrix& gen);

// Rows for RunMethod::rk4: the step count is ceil(t_end / dt) and samples are
// taken every floor(steps / (samples - 1)) steps.
Eigen::Index rk4_sample_stride(const TimeGrid& time);

// Writes <name>.csv (and <name>.svg, <name>.methods.csv when requested) and
// <name>.manifest.json under out_dir. Check failures are reported through the
// manifest; IntegrationError and I/O errors propagate.
RunManifest run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir);

struct SweepConfig {
    Scenario base;
    std::vector<Eigen::Index> sizes_b;
    std::vector<double> overlaps;  // |<alpha0|beta0>| in (0, 1]
};

SweepConfig sweep_from_json(const nlohmann::json& doc);

// One concurrence CSV per (size_b, overlap) point plus index.csv. The bath
// trajectory is shared by all points.
RunManifest run_sweep(const SweepConfig& sweep, const std::filesystem::path& out_dir);

}  // namespace bathent
