#include "bathent/verify.hpp"

#include "bathent/concurrence.hpp"
#include "bathent/io.hpp"
#include "bathent/observables.hpp"
#include "bathent/wootters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>

namespace bathent {

namespace {

constexpr double kNormExact = 1e-9;
constexpr double kNormRk4 = 1e-6;
constexpr double kConservation = 1e-9;
constexpr double kMethodAgreement = 1e-6;
constexpr double kFactorization = 1e-10;
constexpr double kOracle = 1e-10;
constexpr double kTwoModeExact = 1e-8;
constexpr double kTwoModeRk4 = 1e-6;

CheckResult make_check(std::string name, double value, double threshold, std::string detail = {}) {
    return {std::move(name), value, threshold, value <= threshold, std::move(detail)};
}

CheckResult failed_check(std::string name, double threshold, const std::exception& e) {
    return {std::move(name), std::numeric_limits<double>::quiet_NaN(), threshold, false, e.what()};
}

}  // namespace

Fault fault_from_string(const std::string& name) {
    if (name.empty() || name == "none") return Fault::none;
    if (name == "asymmetric-generator") return Fault::asymmetric_generator;
    throw std::invalid_argument("unknown fault '" + name + "' (expected asymmetric-generator)");
}

VerifyOptions VerifyOptions::from_scenario(const Scenario& scenario) {
    VerifyOptions options;
    options.system = scenario.system;
    if (scenario.superposition) options.superposition = *scenario.superposition;
    if (scenario.partition.kind == "centered") options.size_b = scenario.partition.size_b;
    options.size_b = std::min<Eigen::Index>(options.size_b, static_cast<Eigen::Index>(scenario.system.n_bath));
    options.time = scenario.time;
    return options;
}

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void VerifyReport::print(std::ostream& out) const {
    for (const auto& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << "  max=" << io::format_number(c.value, 6)
            << "  threshold=" << io::format_number(c.threshold, 6);
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << '\n';
    }
    out << (passed() ? "all checks passed" : "verification FAILED") << '\n';
}

void inject_fault(GeneratorMatrix& gen, Fault fault) {
    if (fault == Fault::asymmetric_generator) {
        gen.matrix.col(0).tail(gen.dimension() - 1) *= 1.5;
    }
}

OracleDraw random_oracle_draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    const double two_pi = 2.0 * std::numbers::pi;
    for (;;) {
        const Complex a{sym(rng), sym(rng)};
        const Complex b{sym(rng), sym(rng)};
        const double o0 = 0.01 + 0.98 * unit(rng);
        const Complex alpha0 = std::polar(2.0 * unit(rng), two_pi * unit(rng));
        // |<alpha|beta>| = exp(-|alpha - beta|^2 / 2)
        const Complex beta0 = alpha0 + std::polar(std::sqrt(-2.0 * std::log(o0)), two_pi * unit(rng));
        if (std::abs(a) < 1e-3 && std::abs(b) < 1e-3) continue;
        const SuperpositionInit init = normalize_superposition(a, b, alpha0, beta0);
        if (init.inverse_norm_squared() < 1e-2 * (std::norm(a) + std::norm(b))) continue;
        double cut1 = unit(rng), cut2 = unit(rng);
        if (cut1 > cut2) std::swap(cut1, cut2);
        return {init, cut1, cut2 - cut1, 1.0 - cut2};
    }
}

double two_mode_error(Method method, double gamma, double dt, Eigen::Index samples) {
    SystemConfig config;
    config.n_bath = 1;
    config.band_low = config.omega0;
    config.band_high = config.omega0;
    config.coupling_amplitude = gamma;
    const GeneratorMatrix gen = build_generator(build_bath_grid(config));
    const double t_end = 10.0 * std::numbers::pi;

    const AmplitudeTrajectory traj = [&] {
        if (method == Method::exact) return evolve_exact(gen, uniform_times(t_end, samples));
        Rk4Options options;
        options.t_end = t_end;
        options.dt = dt;
        return evolve_rk4(gen, options);
    }();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < traj.sample_count(); ++i) {
        const double t = traj.times[static_cast<std::size_t>(i)];
        worst = std::max(worst, std::abs(traj.states(0, i) - std::cos(gamma * t)));
    }
    return worst;
}

VerifyReport verify(const VerifyOptions& options) {
    VerifyReport report;
    auto& checks = report.checks;

    const BathGrid grid = build_bath_grid(options.system);
    GeneratorMatrix gen = build_generator(grid);
    inject_fault(gen, options.fault);
    const SuperpositionInit init = options.superposition.resolve();
    const PartitionSpec partition = centered_bipartition(grid, options.size_b);

    std::optional<AmplitudeTrajectory> exact;
    try {
        exact = evolve_exact(gen, uniform_times(options.time.t_end, options.time.samples));
        checks.push_back(make_check("norm_exact", norm_residual(*exact), kNormExact));
    } catch (const std::domain_error& e) {
        checks.push_back(failed_check("norm_exact", kNormExact, e));
    }

    std::optional<AmplitudeTrajectory> rk4;
    try {
        Rk4Options rk;
        rk.t_end = options.time.t_end;
        rk.dt = options.time.dt;
        rk.sample_every = rk4_sample_stride(options.time);
        rk4 = evolve_rk4(gen, rk);
        checks.push_back(make_check("norm_rk4", *rk4->integrator_norm_drift, kNormRk4));
    } catch (const IntegrationError& e) {
        checks.push_back(failed_check("norm_rk4", kNormRk4, e));
    }

    if (exact) {
        const auto profile = excitation_profile(*exact);
        checks.push_back(make_check("conservation", ((profile.xi + profile.theta).array() - 1.0).abs().maxCoeff(),
                                    kConservation));
    } else {
        checks.push_back({"conservation", std::numeric_limits<double>::quiet_NaN(), kConservation, false,
                          "no exact trajectory"});
    }

    if (exact && rk4) {
        const AmplitudeTrajectory at_rk4 = SpectralPropagator(gen).evolve(rk4->times, ground_initial_state(gen.dimension()));
        checks.push_back(make_check("method_agreement", (at_rk4.states - rk4->states).cwiseAbs().maxCoeff(),
                                    kMethodAgreement));
    } else {
        checks.push_back({"method_agreement", std::numeric_limits<double>::quiet_NaN(), kMethodAgreement, false,
                          "missing trajectory"});
    }

    if (exact) {
        checks.push_back(
            make_check("overlap_factorization", verify_overlap_factorization(*exact, init, partition), kFactorization));
        ConcurrenceSeries series = concurrence_series(*exact, init, partition);
        double worst = attach_oracle_residuals(series, init);
        std::mt19937_64 rng(options.seed);
        for (std::size_t i = 0; i < options.random_draws; ++i) {
            const OracleDraw d = random_oracle_draw(rng);
            worst = std::max(worst, crosscheck(d.init, d.xi, d.theta_b, d.theta_c).residual);
        }
        checks.push_back(make_check("oracle", worst, kOracle,
                                    std::to_string(series.sample_count()) + " samples, " +
                                        std::to_string(options.random_draws) + " random draws"));
    } else {
        checks.push_back({"overlap_factorization", std::numeric_limits<double>::quiet_NaN(), kFactorization, false,
                          "no exact trajectory"});
        checks.push_back({"oracle", std::numeric_limits<double>::quiet_NaN(), kOracle, false, "no exact trajectory"});
    }

    checks.push_back(make_check("two_mode_exact", two_mode_error(Method::exact), kTwoModeExact));
    try {
        checks.push_back(make_check("two_mode_rk4", two_mode_error(Method::rk4, 0.1, options.time.dt), kTwoModeRk4));
    } catch (const IntegrationError& e) {
        checks.push_back(failed_check("two_mode_rk4", kTwoModeRk4, e));
    }
    return report;
}

}  // namespace bathent
