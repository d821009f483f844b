#include "bathent/scenario.hpp"

#include "bathent/concurrence.hpp"
#include "bathent/io.hpp"
#include "bathent/observables.hpp"
#include "bathent/wootters.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

namespace bathent {

using nlohmann::json;

namespace {

constexpr double kOracleTolerance = 1e-10;
constexpr double kMethodTolerance = 1e-6;

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) {
        throw std::invalid_argument(where + ": expected an object");
    }
    for (const auto& item : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; })) {
            throw std::invalid_argument(where + ": unknown key '" + item.key() + "'");
        }
    }
}

Complex complex_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    if (j.is_object()) {
        check_keys(j, {"re", "im"}, where);
        return {j.value("re", 0.0), j.value("im", 0.0)};
    }
    throw std::invalid_argument(where + ": expected a number or [re, im]");
}

json complex_to_json(Complex c) {
    return json::array({c.real(), c.imag()});
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

struct EmitSummary {
    double final_concurrence{0.0};
    double max_oracle_residual{0.0};
};

void record_output(RunManifest& manifest, const std::filesystem::path& out_dir, const std::string& file) {
    manifest.outputs.push_back({file, io::sha256_file(out_dir / file)});
}

EmitSummary emit_outputs(const Scenario& scenario, const BathGrid& grid, const ScenarioTrajectory& run,
                         const std::filesystem::path& out_dir, RunManifest& manifest) {
    const AmplitudeTrajectory& traj = run.primary;
    const Eigen::VectorXd t = to_vector(traj.times);
    const auto partition = scenario.partition.resolve(grid);
    std::vector<io::Column> columns{{"t", t}};
    EmitSummary summary;

    auto& checks = manifest.checks[scenario.name];
    if (traj.method == Method::exact) {
        checks["norm_residual"] = norm_residual(traj);
    } else if (traj.integrator_norm_drift) {
        checks["integrator_norm_drift"] = *traj.integrator_norm_drift;
    }

    switch (scenario.observable) {
        case Observable::excitation: {
            const auto profile = excitation_profile(traj);
            columns.push_back({"xi", profile.xi});
            columns.push_back({"theta", profile.theta});
            checks["max_conservation_defect"] = ((profile.xi + profile.theta).array() - 1.0).abs().maxCoeff();
            break;
        }
        case Observable::blocks: {
            const auto profile = excitation_profile(traj, partition);
            for (Eigen::Index b = 0; b < profile.block_count(); ++b) {
                columns.push_back({"theta_" + lowercase(profile.labels[static_cast<std::size_t>(b)]),
                                   profile.theta_blocks.col(b)});
            }
            break;
        }
        case Observable::concurrence: {
            const SuperpositionInit init = scenario.superposition->resolve();
            ConcurrenceSeries series = concurrence_series(traj, init, *partition);
            summary.max_oracle_residual = attach_oracle_residuals(series, init);
            summary.final_concurrence = series.c_closed(series.sample_count() - 1);
            columns.push_back({"xi", series.xi});
            columns.push_back({"theta_b", series.theta_b});
            columns.push_back({"theta_c", series.theta_c});
            columns.push_back({"d_b", series.d_b});
            columns.push_back({"d_c", series.d_c});
            columns.push_back({"concurrence", series.c_closed});
            columns.push_back({"oracle_residual", *series.oracle_residual});
            checks["max_oracle_residual"] = summary.max_oracle_residual;
            checks["max_consistency_defect"] = series.max_consistency_defect;
            if (!(summary.max_oracle_residual <= kOracleTolerance)) {
                manifest.failures.push_back(scenario.name + ": oracle residual " +
                                            io::format_number(summary.max_oracle_residual) + " exceeds " +
                                            io::format_number(kOracleTolerance));
            }
            break;
        }
    }

    const std::string csv = scenario.name + ".csv";
    io::write_csv(out_dir / csv, columns);
    record_output(manifest, out_dir, csv);

    if (scenario.svg) {
        const std::string svg = scenario.name + ".svg";
        std::vector<io::Column> series(columns.begin() + 1, columns.end());
        if (scenario.observable == Observable::concurrence) series.pop_back();
        io::write_svg(out_dir / svg, scenario.name, t, series);
        record_output(manifest, out_dir, svg);
    }

    if (run.rk4) {
        const Eigen::VectorXd diff = (run.primary.states - run.rk4->states).cwiseAbs().colwise().maxCoeff().transpose();
        const std::string methods = scenario.name + ".methods.csv";
        io::write_csv(out_dir / methods, {{"t", t}, {"max_abs_diff", diff}});
        record_output(manifest, out_dir, methods);
        const double worst = diff.size() ? diff.maxCoeff() : 0.0;
        checks["max_method_difference"] = worst;
        if (!(worst <= kMethodTolerance)) {
            manifest.failures.push_back(scenario.name + ": exact and rk4 differ by " + io::format_number(worst));
        }
    }
    return summary;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    io::write_text(path, manifest.to_json().dump(2) + "\n");
}

}  // namespace

std::string to_string(Observable observable) {
    switch (observable) {
        case Observable::excitation: return "excitation";
        case Observable::blocks: return "blocks";
        case Observable::concurrence: return "concurrence";
    }
    return "excitation";
}

std::string to_string(RunMethod method) {
    switch (method) {
        case RunMethod::exact: return "exact";
        case RunMethod::rk4: return "rk4";
        case RunMethod::both: return "both";
    }
    return "exact";
}

Observable observable_from_string(const std::string& name) {
    if (name == "excitation") return Observable::excitation;
    if (name == "blocks") return Observable::blocks;
    if (name == "concurrence") return Observable::concurrence;
    throw std::invalid_argument("unknown observable '" + name + "'");
}

RunMethod run_method_from_string(const std::string& name) {
    if (name == "exact") return RunMethod::exact;
    if (name == "rk4") return RunMethod::rk4;
    if (name == "both") return RunMethod::both;
    throw std::invalid_argument("unknown method '" + name + "' (expected exact, rk4 or both)");
}

std::optional<PartitionSpec> PartitionScheme::resolve(const BathGrid& grid) const {
    if (kind == "none") return std::nullopt;
    if (kind == "centered") return centered_bipartition(grid, size_b);
    if (kind == "banded") return banded_blocks(grid, n_blocks);
    if (kind == "interleaved") return interleaved_bipartition(grid);
    if (kind == "explicit") {
        PartitionSpec spec{blocks, labels};
        if (spec.labels.empty()) {
            if (spec.blocks.size() == 2) {
                spec.labels = {"B", "C"};
            } else {
                for (std::size_t i = 0; i < spec.blocks.size(); ++i) spec.labels.push_back(std::to_string(i + 1));
            }
        }
        spec.validate(grid.size());
        return spec;
    }
    throw std::invalid_argument("unknown partition scheme '" + kind + "'");
}

void Scenario::validate() const {
    if (name.empty() || name.find_first_of("/\\") != std::string::npos || name == "." || name == "..") {
        throw std::invalid_argument("scenario name '" + name + "' is not a plain file stem");
    }
    system.validate();
    if (!(time.t_end >= 0.0) || !std::isfinite(time.t_end)) {
        throw std::invalid_argument(name + ": t_end must be a finite value >= 0");
    }
    if (time.samples < 1) {
        throw std::invalid_argument(name + ": samples must be >= 1");
    }
    if (!(time.dt > 0.0)) {
        throw std::invalid_argument(name + ": dt must be > 0");
    }
    const BathGrid grid = build_bath_grid(system);
    const auto partition = this->partition.resolve(grid);
    if (observable == Observable::blocks && !partition) {
        throw std::invalid_argument(name + ": observable 'blocks' needs a partition");
    }
    if (observable == Observable::concurrence) {
        if (!superposition) {
            throw std::invalid_argument(name + ": observable 'concurrence' needs a superposition");
        }
        if (!partition || !partition->is_bipartition(grid.size())) {
            throw std::invalid_argument(name + ": observable 'concurrence' needs a bipartition covering the bath");
        }
    }
    if (superposition) {
        try {
            (void)superposition->resolve();
        } catch (const std::runtime_error& e) {
            throw std::invalid_argument(name + ": " + e.what());
        }
    }
}

json to_json(const Scenario& s) {
    json system = {{"omega0", s.system.omega0},
                   {"n_bath", s.system.n_bath},
                   {"coupling_amplitude", s.system.coupling_amplitude},
                   {"band", {s.system.band_low, s.system.band_high}},
                   {"include_resonance", s.system.include_resonance}};
    if (!s.system.coupling_override.empty()) system["couplings"] = s.system.coupling_override;

    json partition = {{"scheme", s.partition.kind}};
    if (s.partition.kind == "centered") partition["size_b"] = s.partition.size_b;
    if (s.partition.kind == "banded") partition["n_blocks"] = s.partition.n_blocks;
    if (s.partition.kind == "explicit") {
        json blocks = json::array();
        for (const auto& block : s.partition.blocks) {
            json one = json::array();
            for (const Eigen::Index k : block) one.push_back(k + 1);
            blocks.push_back(one);
        }
        partition["blocks"] = blocks;
        if (!s.partition.labels.empty()) partition["labels"] = s.partition.labels;
    }

    json doc = {{"name", s.name},
                {"system", system},
                {"partition", partition},
                {"observable", to_string(s.observable)},
                {"time", {{"t_end", s.time.t_end}, {"samples", s.time.samples}, {"dt", s.time.dt}}},
                {"method", to_string(s.method)},
                {"svg", s.svg}};
    if (s.superposition) {
        doc["superposition"] = {{"a", complex_to_json(s.superposition->a)},
                                {"b", complex_to_json(s.superposition->b)},
                                {"alpha0", complex_to_json(s.superposition->alpha0)},
                                {"beta0", complex_to_json(s.superposition->beta0)}};
    }
    return doc;
}

Scenario scenario_from_json(const json& doc) {
    try {
        check_keys(doc, {"name", "system", "superposition", "partition", "observable", "time", "method", "svg"},
                   "scenario");
        Scenario s;
        s.name = doc.value("name", std::string("scenario"));
        if (doc.contains("system")) {
            const json& sys = doc["system"];
            check_keys(sys, {"omega0", "n_bath", "coupling_amplitude", "band", "include_resonance", "couplings"},
                       "system");
            s.system.omega0 = sys.value("omega0", s.system.omega0);
            if (sys.contains("n_bath")) {
                const auto n = sys["n_bath"].get<long long>();
                if (n < 1) throw std::invalid_argument("system: n_bath must be >= 1");
                s.system.n_bath = static_cast<std::size_t>(n);
            }
            s.system.coupling_amplitude = sys.value("coupling_amplitude", s.system.coupling_amplitude);
            if (sys.contains("band")) {
                const auto band = sys["band"].get<std::vector<double>>();
                if (band.size() != 2) throw std::invalid_argument("system: band must be [low, high]");
                s.system.band_low = band[0];
                s.system.band_high = band[1];
            }
            s.system.include_resonance = sys.value("include_resonance", false);
            if (sys.contains("couplings")) s.system.coupling_override = sys["couplings"].get<std::vector<double>>();
        }
        if (doc.contains("superposition") && !doc["superposition"].is_null()) {
            const json& sup = doc["superposition"];
            check_keys(sup, {"a", "b", "alpha0", "beta0"}, "superposition");
            SuperpositionParams p;
            if (sup.contains("a")) p.a = complex_from_json(sup["a"], "superposition.a");
            if (sup.contains("b")) p.b = complex_from_json(sup["b"], "superposition.b");
            if (sup.contains("alpha0")) p.alpha0 = complex_from_json(sup["alpha0"], "superposition.alpha0");
            if (sup.contains("beta0")) p.beta0 = complex_from_json(sup["beta0"], "superposition.beta0");
            s.superposition = p;
        }
        if (doc.contains("partition")) {
            const json& part = doc["partition"];
            check_keys(part, {"scheme", "size_b", "n_blocks", "blocks", "labels"}, "partition");
            s.partition.kind = part.value("scheme", std::string("none"));
            s.partition.size_b = part.value("size_b", Eigen::Index{0});
            s.partition.n_blocks = part.value("n_blocks", Eigen::Index{0});
            if (part.contains("blocks")) {
                for (const auto& block : part["blocks"]) {
                    std::vector<Eigen::Index> indices;
                    for (const auto& k : block) indices.push_back(k.get<Eigen::Index>() - 1);
                    s.partition.blocks.push_back(std::move(indices));
                }
            }
            if (part.contains("labels")) s.partition.labels = part["labels"].get<std::vector<std::string>>();
        }
        if (doc.contains("observable")) s.observable = observable_from_string(doc["observable"].get<std::string>());
        if (doc.contains("time")) {
            const json& t = doc["time"];
            check_keys(t, {"t_end", "samples", "dt"}, "time");
            s.time.t_end = t.value("t_end", s.time.t_end);
            s.time.samples = t.value("samples", s.time.samples);
            s.time.dt = t.value("dt", s.time.dt);
        }
        if (doc.contains("method")) s.method = run_method_from_string(doc["method"].get<std::string>());
        s.svg = doc.value("svg", false);
        s.validate();
        return s;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed scenario document: ") + e.what());
    }
}

std::vector<Scenario> scenarios_from_json(const json& doc) {
    std::vector<Scenario> out;
    if (doc.is_object() && doc.contains("scenarios")) {
        if (doc.size() != 1 || !doc["scenarios"].is_array()) {
            throw std::invalid_argument("batch document must be {\"scenarios\": [...]}");
        }
        std::set<std::string> names;
        for (const auto& one : doc["scenarios"]) {
            out.push_back(scenario_from_json(one));
            if (!names.insert(out.back().name).second) {
                throw std::invalid_argument("duplicate scenario name '" + out.back().name + "'");
            }
        }
    } else {
        out.push_back(scenario_from_json(doc));
    }
    return out;
}

std::vector<std::string> preset_names() {
    return {"fig3", "fig5", "fig7", "fig8", "fig9", "fig10a", "fig10b", "fig10c"};
}

Scenario preset(const std::string& name) {
    Scenario s;
    s.name = name;
    const auto centered = [&](Eigen::Index size) {
        s.partition.kind = "centered";
        s.partition.size_b = size;
    };
    if (name == "fig3") {
        s.observable = Observable::excitation;
    } else if (name == "fig5") {
        s.partition.kind = "banded";
        s.partition.n_blocks = 10;
        s.observable = Observable::blocks;
    } else if (name == "fig7" || name == "fig8" || name == "fig9") {
        centered(name == "fig7" ? 100 : name == "fig8" ? 500 : 900);
        s.observable = Observable::blocks;
    } else if (name == "fig10a" || name == "fig10b" || name == "fig10c") {
        centered(name == "fig10a" ? 100 : name == "fig10b" ? 500 : 900);
        s.superposition = SuperpositionParams{};
        s.observable = Observable::concurrence;
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return s;
}

json RunManifest::to_json() const {
    json files = json::array();
    for (const auto& f : outputs) files.push_back({{"file", f.file}, {"sha256", f.sha256}});
    return {{"scenario", scenario},
            {"config_hash", config_hash},
            {"tool_version", tool_version},
            {"wall_clock_seconds", wall_clock_seconds},
            {"outputs", files},
            {"checks", checks},
            {"status", passed() ? "ok" : "failed"},
            {"failures", failures}};
}

Eigen::Index rk4_sample_stride(const TimeGrid& time) {
    const auto steps = static_cast<Eigen::Index>(std::ceil(time.t_end / time.dt - 1e-9));
    if (steps <= 0 || time.samples <= 1) return std::max<Eigen::Index>(1, steps);
    return std::max<Eigen::Index>(1, steps / (time.samples - 1));
}

ScenarioTrajectory propagate_scenario(const Scenario& scenario, const GeneratorMatrix& gen) {
    if (scenario.method == RunMethod::exact) {
        return {evolve_exact(gen, uniform_times(scenario.time.t_end, scenario.time.samples)), std::nullopt};
    }
    Rk4Options options;
    options.t_end = scenario.time.t_end;
    options.dt = scenario.time.dt;
    options.sample_every = rk4_sample_stride(scenario.time);
    AmplitudeTrajectory rk4 = evolve_rk4(gen, options);
    if (scenario.method == RunMethod::rk4) {
        return {std::move(rk4), std::nullopt};
    }
    AmplitudeTrajectory exact = evolve_exact(gen, rk4.times);
    return {std::move(exact), std::move(rk4)};
}

RunManifest run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    scenario.validate();
    io::ensure_directory(out_dir);

    RunManifest manifest;
    manifest.scenario = to_json(scenario);
    manifest.config_hash = io::sha256_hex(manifest.scenario.dump());

    const BathGrid grid = build_bath_grid(scenario.system);
    const GeneratorMatrix gen = build_generator(grid);
    const ScenarioTrajectory run = propagate_scenario(scenario, gen);
    emit_outputs(scenario, grid, run, out_dir, manifest);

    manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(manifest, out_dir / (scenario.name + ".manifest.json"));
    return manifest;
}

SweepConfig sweep_from_json(const json& doc) {
    try {
        check_keys(doc, {"base", "size_b", "overlap"}, "sweep");
        SweepConfig sweep;
        if (!doc.contains("base")) {
            sweep.base = preset("fig10a");
            sweep.base.name = "sweep";
        } else if (doc["base"].is_string()) {
            sweep.base = preset(doc["base"].get<std::string>());
        } else {
            json base = doc["base"];
            if (!base.contains("superposition")) base["superposition"] = json::object();
            if (!base.contains("partition")) base["partition"] = {{"scheme", "centered"}, {"size_b", 1}};
            base["observable"] = "concurrence";
            sweep.base = scenario_from_json(base);
        }
        if (!sweep.base.superposition) sweep.base.superposition = SuperpositionParams{};
        sweep.sizes_b = doc.at("size_b").get<std::vector<Eigen::Index>>();
        sweep.overlaps = doc.at("overlap").get<std::vector<double>>();
        if (sweep.sizes_b.empty() || sweep.overlaps.empty()) {
            throw std::invalid_argument("sweep: size_b and overlap lists must be non-empty");
        }
        for (const double o : sweep.overlaps) (void)antipodal_amplitudes(o);
        return sweep;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed sweep document: ") + e.what());
    }
}

RunManifest run_sweep(const SweepConfig& sweep, const std::filesystem::path& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    io::ensure_directory(out_dir);

    std::vector<Scenario> points;
    for (const Eigen::Index size : sweep.sizes_b) {
        for (std::size_t j = 0; j < sweep.overlaps.size(); ++j) {
            Scenario s = sweep.base;
            s.name = sweep.base.name + "_b" + std::to_string(size) + "_o" + std::to_string(j);
            s.partition = PartitionScheme{};
            s.partition.kind = "centered";
            s.partition.size_b = size;
            s.observable = Observable::concurrence;
            const auto [alpha0, beta0] = antipodal_amplitudes(sweep.overlaps[j]);
            s.superposition->alpha0 = alpha0;
            s.superposition->beta0 = beta0;
            s.validate();
            points.push_back(std::move(s));
        }
    }

    RunManifest manifest;
    manifest.scenario = {{"base", to_json(sweep.base)}, {"size_b", sweep.sizes_b}, {"overlap", sweep.overlaps}};
    manifest.config_hash = io::sha256_hex(manifest.scenario.dump());

    const BathGrid grid = build_bath_grid(sweep.base.system);
    const GeneratorMatrix gen = build_generator(grid);
    const ScenarioTrajectory run = propagate_scenario(sweep.base, gen);

    std::string index = "point,size_b,overlap,file,final_concurrence,max_oracle_residual\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const EmitSummary summary = emit_outputs(points[i], grid, run, out_dir, manifest);
        const std::size_t j = i % sweep.overlaps.size();
        index += std::to_string(i) + ',' + std::to_string(points[i].partition.size_b) + ',' +
                 io::format_number(sweep.overlaps[j]) + ',' + points[i].name + ".csv," +
                 io::format_number(summary.final_concurrence) + ',' + io::format_number(summary.max_oracle_residual) +
                 '\n';
    }
    io::write_text(out_dir / "index.csv", index);
    record_output(manifest, out_dir, "index.csv");

    manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(manifest, out_dir / (sweep.base.name + ".sweep.manifest.json"));
    return manifest;
}

}  // namespace bathent
