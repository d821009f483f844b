// bathent: command-line front end: simulate, verify, preset, sweep.

#include "bathent/io.hpp"
#include "bathent/scenario.hpp"
#include "bathent/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;

struct Overrides {
    std::optional<std::string> method;
    std::optional<double> t_end;
    std::optional<double> dt;
    std::optional<long long> samples;
    bool svg{false};

    void apply(bathent::Scenario& s) const {
        if (method) s.method = bathent::run_method_from_string(*method);
        if (t_end) s.time.t_end = *t_end;
        if (dt) s.time.dt = *dt;
        if (samples) s.time.samples = *samples;
        if (svg) s.svg = true;
        s.validate();
    }
};

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void print_manifest(const std::string& name, const bathent::RunManifest& manifest) {
    std::cout << name << ": " << (manifest.passed() ? "ok" : "FAILED") << " ("
              << bathent::io::format_number(manifest.wall_clock_seconds, 3) << " s, " << manifest.outputs.size()
              << " files)\n";
    for (const auto& f : manifest.failures) std::cout << "  " << f << '\n';
}

void add_overrides(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--method", o.method, "exact, rk4 or both")->check(CLI::IsMember({"exact", "rk4", "both"}));
    cmd->add_option("--t-end", o.t_end, "final time in units of 1/omega0");
    cmd->add_option("--dt", o.dt, "rk4 step");
    cmd->add_option("--samples", o.samples, "output samples");
    cmd->add_flag("--svg", o.svg, "also write an SVG plot");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Central oscillator coupled to a harmonic bath: dynamics, partitions and concurrence"};
    app.set_version_flag("--version", bathent::kToolVersion);
    app.require_subcommand(1);

    std::string out_dir = "out";
    Overrides overrides;

    auto* simulate = app.add_subcommand("simulate", "run a scenario file or a built-in preset");
    std::string config_path;
    std::string preset_name;
    simulate->add_option("config", config_path, "scenario JSON file");
    simulate->add_option("--preset", preset_name, "built-in preset name");
    simulate->add_option("--out", out_dir, "output directory");
    add_overrides(simulate, overrides);

    auto* verify_cmd = app.add_subcommand("verify", "run the invariant check suite");
    std::string verify_config;
    std::string fault;
    std::optional<double> verify_t_end, verify_dt;
    std::optional<long long> verify_samples;
    std::optional<std::size_t> draws;
    verify_cmd->add_option("--config", verify_config, "scenario JSON providing system and time grid");
    verify_cmd->add_option("--inject-fault", fault, "asymmetric-generator");
    verify_cmd->add_option("--t-end", verify_t_end, "final time");
    verify_cmd->add_option("--dt", verify_dt, "rk4 step");
    verify_cmd->add_option("--samples", verify_samples, "samples on the exact trajectory");
    verify_cmd->add_option("--draws", draws, "random oracle draws");

    auto* preset_cmd = app.add_subcommand("preset", "list or print built-in presets");
    bool list = false;
    std::string dump;
    preset_cmd->add_flag("--list", list, "list preset names");
    preset_cmd->add_option("--dump", dump, "print a preset as JSON");

    auto* sweep = app.add_subcommand("sweep", "grid over partition size and overlap");
    std::string sweep_path;
    sweep->add_option("config", sweep_path, "sweep JSON file")->required();
    sweep->add_option("--out", out_dir, "output directory");
    add_overrides(sweep, overrides);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadInput;
    }

    try {
        if (*simulate) {
            if (config_path.empty() == preset_name.empty()) {
                throw std::invalid_argument("simulate: give either a config file or --preset NAME");
            }
            std::vector<bathent::Scenario> scenarios =
                preset_name.empty() ? bathent::scenarios_from_json(read_json(config_path))
                                    : std::vector<bathent::Scenario>{bathent::preset(preset_name)};
            for (auto& s : scenarios) overrides.apply(s);
            bool ok = true;
            for (const auto& s : scenarios) {
                const auto manifest = bathent::run_scenario(s, out_dir);
                print_manifest(s.name, manifest);
                ok = ok && manifest.passed();
            }
            return ok ? kExitOk : kExitCheckFailed;
        }
        if (*verify_cmd) {
            bathent::VerifyOptions options;
            if (!verify_config.empty()) {
                options = bathent::VerifyOptions::from_scenario(bathent::scenario_from_json(read_json(verify_config)));
            }
            options.fault = bathent::fault_from_string(fault);
            if (verify_t_end) options.time.t_end = *verify_t_end;
            if (verify_dt) options.time.dt = *verify_dt;
            if (verify_samples) options.time.samples = *verify_samples;
            if (draws) options.random_draws = *draws;
            if (!(options.time.t_end >= 0.0) || !(options.time.dt > 0.0) || options.time.samples < 1) {
                throw std::invalid_argument("verify: need t_end >= 0, dt > 0 and samples >= 1");
            }
            const auto report = bathent::verify(options);
            report.print(std::cout);
            return report.passed() ? kExitOk : kExitCheckFailed;
        }
        if (*preset_cmd) {
            if (list == !dump.empty()) {
                throw std::invalid_argument("preset: give either --list or --dump NAME");
            }
            if (list) {
                for (const auto& name : bathent::preset_names()) std::cout << name << '\n';
            } else {
                std::cout << bathent::to_json(bathent::preset(dump)).dump(2) << '\n';
            }
            return kExitOk;
        }
        if (*sweep) {
            bathent::SweepConfig config = bathent::sweep_from_json(read_json(sweep_path));
            overrides.apply(config.base);
            const auto manifest = bathent::run_sweep(config, out_dir);
            print_manifest(config.base.name, manifest);
            return manifest.passed() ? kExitOk : kExitCheckFailed;
        }
    } catch (const bathent::IntegrationError& e) {
        std::cerr << "integration failed: " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const bathent::io::OutputError& e) {
        std::cerr << "output error: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad input: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::domain_error& e) {
        std::cerr << "bad input: " << e.what() << '\n';
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitOk;
}
