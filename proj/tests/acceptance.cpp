// Acceptance suite: one line per criterion, PASS or FAIL, at the pinned
// tolerances. Exit status is 0 when every criterion passes, or when the set
// of failing criteria equals the list given with --expect-fail.

#include "bathent/concurrence.hpp"
#include "bathent/io.hpp"
#include "bathent/observables.hpp"
#include "bathent/scenario.hpp"
#include "bathent/verify.hpp"
#include "bathent/wootters.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

using namespace bathent;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    std::string id;
    bool passed;
};

std::vector<Outcome> outcomes;
std::set<std::string> expected_failures;

std::string num(double v) {
    return io::format_number(v, 6);
}

void report(const std::string& id, bool passed, const std::string& what) {
    std::cout << (passed ? "PASS " : "FAIL ") << id << "  " << what;
    if (!passed && expected_failures.count(id)) std::cout << "  [expected failure]";
    std::cout << std::endl;
    outcomes.push_back({id, passed});
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct PresetRun {
    BathGrid grid;
    GeneratorMatrix gen;
    AmplitudeTrajectory traj;
    ExcitationProfile profile;
};

PresetRun preset_run(const Scenario& s) {
    PresetRun run;
    run.grid = build_bath_grid(s.system);
    run.gen = build_generator(run.grid);
    run.traj = evolve_exact(run.gen, uniform_times(s.time.t_end, s.time.samples));
    run.profile = excitation_profile(run.traj, s.partition.resolve(run.grid));
    return run;
}

ConcurrenceSeries preset_concurrence(const PresetRun& run, const Scenario& s) {
    return concurrence_series(run.traj, s.superposition->resolve(), *s.partition.resolve(run.grid));
}

Eigen::Index first_index_at_or_after(const std::vector<double>& times, double t) {
    return static_cast<Eigen::Index>(std::lower_bound(times.begin(), times.end(), t - 1e-12) - times.begin());
}

void conservation_and_decay(const PresetRun& fig3, double runtime) {
    const ExcitationProfile& p = fig3.profile;
    const double defect = ((p.xi + p.theta).array() - 1.0).abs().maxCoeff();
    report("AC1", defect <= 1e-9 && runtime <= 60.0,
           "fig3 conservation max|xi+theta-1| = " + num(defect) + " (<= 1e-9), runtime " + num(runtime) +
               " s (<= 60 s)");

    // least squares of log xi = -gamma t over the window 0.1 <= xi <= 0.9
    double st2 = 0.0, stl = 0.0;
    double s1 = 0.0, st = 0.0, sl = 0.0;
    std::vector<Eigen::Index> window;
    for (Eigen::Index i = 0; i < p.sample_count(); ++i) {
        if (p.xi(i) < 0.1 || p.xi(i) > 0.9) continue;
        const double t = p.times[static_cast<std::size_t>(i)], l = std::log(p.xi(i));
        window.push_back(i);
        st2 += t * t;
        stl += t * l;
        s1 += 1.0;
        st += t;
        sl += l;
    }
    const double gamma = -stl / st2;
    double deviation = 0.0;
    for (const Eigen::Index i : window) {
        const double model = std::exp(-gamma * p.times[static_cast<std::size_t>(i)]);
        deviation = std::max(deviation, std::abs(p.xi(i) / model - 1.0));
    }
    const double golden = 2.0 * std::numbers::pi * 0.1 * 0.1;
    const double rate_error = std::abs(gamma - golden) / golden;
    report("AC2", deviation <= 0.10 && rate_error <= 0.15,
           "decay fit gamma = " + num(gamma) + " (golden rule " + num(golden) + ", off by " + num(100 * rate_error) +
               "% <= 15%), max relative deviation " + num(100 * deviation) + "% (<= 10%) over " +
               std::to_string(window.size()) + " samples");

    const double slope = (s1 * stl - st * sl) / (s1 * st2 - st * st);
    const double intercept = (sl - slope * st) / s1;
    double free_deviation = 0.0;
    for (const Eigen::Index i : window) {
        const double model = std::exp(intercept + slope * p.times[static_cast<std::size_t>(i)]);
        free_deviation = std::max(free_deviation, std::abs(p.xi(i) / model - 1.0));
    }
    std::cout << "     info: with a free prefactor A exp(-gamma t): gamma = " << num(-slope)
              << ", A = " << num(std::exp(intercept)) << ", max relative deviation " << num(100 * free_deviation)
              << "%" << std::endl;
}

void two_mode() {
    const double exact = two_mode_error(Method::exact);
    const double rk4 = two_mode_error(Method::rk4, 0.1, 0.01);
    report("AC3", exact <= 1e-8 && rk4 <= 1e-6,
           "two-mode max|f - cos(gamma t)| exact " + num(exact) + " (<= 1e-8), rk4 " + num(rk4) + " (<= 1e-6)");
}

void method_agreement(const PresetRun& fig3) {
    Rk4Options options;
    options.t_end = 100.0;
    options.dt = 0.01;
    const AmplitudeTrajectory rk4 = evolve_rk4(fig3.gen, options);
    const AmplitudeTrajectory exact = evolve_exact(fig3.gen, rk4.times);
    const double diff = (exact.states - rk4.states).cwiseAbs().maxCoeff();
    report("AC4", diff <= 1e-6,
           "fig3 max|u_exact - u_rk4| = " + num(diff) + " (<= 1e-6) over " + std::to_string(rk4.sample_count()) +
               " steps");
}

void oracle_equivalence(const std::vector<PresetRun>& fig10, const std::vector<Scenario>& scenarios) {
    double worst = 0.0;
    for (std::size_t i = 0; i < fig10.size(); ++i) {
        ConcurrenceSeries series = preset_concurrence(fig10[i], scenarios[i]);
        worst = std::max(worst, attach_oracle_residuals(series, scenarios[i].superposition->resolve()));
    }
    std::mt19937_64 rng(20240611);
    double random_worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const OracleDraw d = random_oracle_draw(rng);
        random_worst = std::max(random_worst, crosscheck(d.init, d.xi, d.theta_b, d.theta_c).residual);
    }
    report("AC5", worst <= 1e-10 && random_worst <= 1e-10,
           "max|closed - numeric| fig10a/b/c " + num(worst) + ", 1000 random draws " + num(random_worst) +
               " (<= 1e-10)");
}

void balanced(const PresetRun& fig3, const SuperpositionInit& init) {
    const AmplitudeTrajectory traj = evolve_exact(fig3.gen, {200.0});
    const ConcurrenceSeries s = concurrence_series(traj, init, interleaved_bipartition(fig3.grid));
    const double gap = std::abs(s.theta_b(0) - s.theta_c(0));
    report("AC6", gap <= 1e-3 && s.c_closed(0) >= 0.99,
           "interleaved split at t=200: |theta_b - theta_c| = " + num(gap) + " (<= 1e-3), C = " +
               num(s.c_closed(0)) + " (>= 0.99)");
}

void fig10_ordering(const std::vector<PresetRun>& fig10, const std::vector<Scenario>& scenarios) {
    std::vector<double> late;
    for (std::size_t i = 0; i < fig10.size(); ++i) {
        const ConcurrenceSeries s = preset_concurrence(fig10[i], scenarios[i]);
        late.push_back(s.c_closed(s.sample_count() - 1));
    }
    report("AC7", late[0] > late[1] && late[1] > late[2],
           "C(t=100): B=100 " + num(late[0]) + " > B=500 " + num(late[1]) + " > B=900 " + num(late[2]));
}

void fig5_plateau(const PresetRun& fig5) {
    const ExcitationProfile& p = fig5.profile;
    const Eigen::Index last = p.sample_count() - 1;
    bool ordered = true;
    for (Eigen::Index b = 1; b < p.block_count(); ++b) ordered = ordered && p.theta_blocks(last, b - 1) > p.theta_blocks(last, b);
    const Eigen::Index from = first_index_at_or_after(p.times, 80.0);
    double variation = 0.0;
    for (Eigen::Index b = 0; b < p.block_count(); ++b) {
        const auto tail = p.theta_blocks.col(b).tail(p.sample_count() - from);
        variation = std::max(variation, tail.maxCoeff() - tail.minCoeff());
    }
    report("AC8", ordered && variation < 2e-2,
           std::string("theta_1 > ... > theta_10 at t=100: ") + (ordered ? "yes" : "no") +
               ", max variation over [80,100] " + num(variation) + " (< 2e-2)");
}

void late_constancy(const PresetRun& fig10a, const Scenario& scenario) {
    const ConcurrenceSeries s = preset_concurrence(fig10a, scenario);
    const Eigen::Index last = s.sample_count() - 1;
    const Eigen::Index from = first_index_at_or_after(s.times, 80.0);
    double worst = 0.0;
    for (Eigen::Index i = from; i <= last; ++i) worst = std::max(worst, std::abs(s.c_closed(i) - s.c_closed(last)));
    report("AC9", worst < 5e-3,
           "fig10a max|C(t) - C(100)| over [80,100] = " + num(worst) + " (< 5e-3), C(80) = " +
               num(s.c_closed(from)) + ", C(100) = " + num(s.c_closed(last)));
}

void factorization(const PresetRun& fig7) {
    const SuperpositionInit init = SuperpositionParams{}.resolve();
    const double residual = verify_overlap_factorization(fig7.traj, init, centered_bipartition(fig7.grid, 100));
    report("AC10", residual <= 1e-10, "fig7 overlap factorization residual " + num(residual) + " (<= 1e-10)");
}

void reproducibility(const fs::path& root) {
    std::vector<std::string> mismatched;
    for (const auto& name : preset_names()) {
        const Scenario s = preset(name);
        const RunManifest a = run_scenario(s, root / "first");
        const RunManifest b = run_scenario(s, root / "second");
        if (a.outputs.empty() || io::sha256_file(root / "first" / (name + ".csv")) !=
                                     io::sha256_file(root / "second" / (name + ".csv"))) {
            mismatched.push_back(name);
        }
    }
    std::string detail = "two runs of all " + std::to_string(preset_names().size()) + " presets: ";
    detail += mismatched.empty() ? "CSV checksums identical" : std::to_string(mismatched.size()) + " differ";
    report("AC11", mismatched.empty(), detail);
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--expect-fail" && i + 1 < argc) {
            std::stringstream list(argv[++i]);
            for (std::string id; std::getline(list, id, ',');) expected_failures.insert(id);
        } else {
            std::cerr << "usage: acceptance [--expect-fail AC2,AC9]\n";
            return 2;
        }
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        const PresetRun fig3 = preset_run(preset("fig3"));
        conservation_and_decay(fig3, seconds_since(start));
        two_mode();
        method_agreement(fig3);

        std::vector<Scenario> fig10_scenarios{preset("fig10a"), preset("fig10b"), preset("fig10c")};
        std::vector<PresetRun> fig10;
        for (const auto& s : fig10_scenarios) fig10.push_back(preset_run(s));
        oracle_equivalence(fig10, fig10_scenarios);
        balanced(fig3, SuperpositionParams{}.resolve());
        fig10_ordering(fig10, fig10_scenarios);
        fig5_plateau(preset_run(preset("fig5")));
        late_constancy(fig10[0], fig10_scenarios[0]);
        factorization(preset_run(preset("fig7")));

        const fs::path root = fs::temp_directory_path() / "bathent_acceptance";
        fs::remove_all(root);
        reproducibility(root);
        fs::remove_all(root);
    } catch (const std::exception& e) {
        std::cout << "FAIL  acceptance run aborted: " << e.what() << std::endl;
        return 1;
    }

    std::set<std::string> failed;
    for (const auto& o : outcomes) {
        if (!o.passed) failed.insert(o.id);
    }
    std::cout << outcomes.size() - failed.size() << "/" << outcomes.size() << " criteria passed" << std::endl;
    if (failed.empty()) return 0;
    if (failed == expected_failures) {
        std::cout << "failures match the expected set" << std::endl;
        return 0;
    }
    for (const auto& id : expected_failures) {
        if (!failed.count(id)) std::cout << "unexpected pass: " << id << std::endl;
    }
    return 1;
}
