#include "doctest.h"

#include "bathent/observables.hpp"
#include "bathent/propagator.hpp"
#include "frozen_values.hpp"

#include <cmath>
#include <numbers>

using namespace bathent;

namespace {

GeneratorMatrix two_mode(double gamma, double omega1 = 1.0) {
    SystemConfig c;
    c.n_bath = 1;
    c.band_low = omega1;
    c.band_high = omega1;
    c.coupling_amplitude = gamma;
    return build_generator(build_bath_grid(c));
}

const GeneratorMatrix& reference_generator() {
    static const GeneratorMatrix gen = build_generator(build_bath_grid(SystemConfig{}));
    return gen;
}

}  // namespace

TEST_CASE("generator entries") {
    const GeneratorMatrix a = two_mode(0.1);
    Eigen::Matrix2d expected;
    expected << 0, 0.1, 0.1, 0;
    CHECK(a.matrix == expected);

    SystemConfig c;
    c.n_bath = 2;
    c.band_low = 0.5;
    c.band_high = 1.5;
    c.coupling_override = {0.1, 0.1};
    Eigen::Matrix3d three;
    three << 0, 0.1, 0.1, 0.1, -0.5, 0, 0.1, 0, 0.5;
    CHECK((build_generator(build_bath_grid(c)).matrix - three).cwiseAbs().maxCoeff() < 1e-15);

    const GeneratorMatrix& ref = reference_generator();
    CHECK(ref.dimension() == 1001);
    CHECK(ref.is_symmetric());
    CHECK(ref.matrix(0, 0) == 0.0);
    CHECK((ref.matrix.row(0).tail(1000).array() - 0.1 / std::sqrt(1000.0)).abs().maxCoeff() == 0.0);
}

TEST_CASE("method names") {
    CHECK(method_from_string("rk4") == Method::rk4);
    CHECK(to_string(Method::exact) == "exact");
    CHECK_THROWS_AS(method_from_string("euler"), std::invalid_argument);
}

TEST_CASE("two-mode exact solution") {
    const GeneratorMatrix a = two_mode(0.1);
    const double t = 5 * std::numbers::pi;
    const AmplitudeTrajectory traj = evolve_exact(a, {0.0, t});
    CHECK(traj.states(0, 0) == Complex(1.0, 0.0));
    CHECK(traj.states(1, 0) == Complex(0.0, 0.0));
    CHECK(std::abs(traj.states(0, 1)) < 1e-12);
    CHECK(std::abs(traj.states(1, 1)) == doctest::Approx(1.0).epsilon(1e-12));

    const std::vector<double> times = uniform_times(10 * std::numbers::pi, 501);
    const AmplitudeTrajectory dense = evolve_exact(a, times);
    double worst_f = 0.0, worst_g = 0.0;
    for (Eigen::Index i = 0; i < dense.sample_count(); ++i) {
        const double s = times[static_cast<std::size_t>(i)];
        worst_f = std::max(worst_f, std::abs(dense.states(0, i) - std::cos(0.1 * s)));
        worst_g = std::max(worst_g, std::abs(dense.states(1, i) - Complex(0, -std::sin(0.1 * s))));
    }
    CHECK(worst_f < 1e-8);
    CHECK(worst_g < 1e-8);
}

TEST_CASE("detuned two-mode solution") {
    // omega1 = 1.2: delta = -0.1, f = e^{i delta t}(cos Wt - i delta/W sin Wt)
    const double gamma = 0.1, delta = -0.1, w = std::hypot(gamma, delta);
    const AmplitudeTrajectory traj = evolve_exact(two_mode(gamma, 1.2), uniform_times(40.0, 81));
    for (Eigen::Index i = 0; i < traj.sample_count(); ++i) {
        const double t = traj.times[static_cast<std::size_t>(i)];
        const Complex phase = std::polar(1.0, delta * t);
        const Complex f = phase * Complex(std::cos(w * t), -delta / w * std::sin(w * t));
        const Complex g = phase * Complex(0.0, -gamma / w * std::sin(w * t));
        CHECK(std::abs(traj.states(0, i) - f) < 1e-12);
        CHECK(std::abs(traj.states(1, i) - g) < 1e-12);
    }
}

TEST_CASE("reference dynamics against reference values") {
    std::vector<double> times;
    for (const auto& d : frozen::kDynamics) times.push_back(d.t);
    const AmplitudeTrajectory traj = evolve_exact(reference_generator(), times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const auto col = traj.state(static_cast<Eigen::Index>(i));
        CHECK(std::norm(col(0)) == doctest::Approx(frozen::kDynamics[i].xi).epsilon(1e-9));
        CHECK(std::abs(col(0) - frozen::kDynamics[i].f) < 1e-11);
        CHECK(col.segment(451, 100).squaredNorm() == doctest::Approx(frozen::kDynamics[i].theta_b100).epsilon(1e-9));
    }
    CHECK(std::norm(traj.states(0, 3)) < 0.01);
}

TEST_CASE("exact evolution input checks") {
    const GeneratorMatrix a = two_mode(0.1);
    CHECK_THROWS_AS(evolve_exact(a, {}), std::invalid_argument);
    CHECK_THROWS_AS(evolve_exact(a, {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(evolve_exact(a, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(evolve_exact(a, {0.0}, Eigen::VectorXcd::Ones(3)), std::invalid_argument);
    GeneratorMatrix skew = a;
    skew.matrix(0, 1) = 0.2;
    CHECK_FALSE(skew.is_symmetric());
    CHECK_THROWS_AS(evolve_exact(skew, {0.0}), std::domain_error);
}

TEST_CASE("t = 0 returns the initial state") {
    const AmplitudeTrajectory traj = evolve_exact(reference_generator(), {0.0});
    CHECK(traj.state(0) == ground_initial_state(1001));
    CHECK(norm_residual(traj) == 0.0);
}

TEST_CASE("rk4 two-mode accuracy") {
    Rk4Options options;
    options.t_end = 5 * std::numbers::pi;
    options.dt = 0.01;
    const AmplitudeTrajectory traj = evolve_rk4(two_mode(0.1), options);
    CHECK(traj.method == Method::rk4);
    CHECK(traj.times.back() == doctest::Approx(options.t_end));
    double worst = 0.0;
    for (Eigen::Index i = 0; i < traj.sample_count(); ++i) {
        worst = std::max(worst, std::abs(traj.states(0, i) - std::cos(0.1 * traj.times[static_cast<std::size_t>(i)])));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("rk4 sampling and edge cases") {
    const GeneratorMatrix a = two_mode(0.1);
    Rk4Options options;
    options.t_end = 0.0;
    const AmplitudeTrajectory zero = evolve_rk4(a, options);
    REQUIRE(zero.sample_count() == 1);
    CHECK(zero.state(0) == ground_initial_state(2));
    CHECK(norm_residual(zero) == 0.0);

    options.t_end = 1.0;
    options.dt = 0.1;
    options.sample_every = 3;
    const AmplitudeTrajectory sparse = evolve_rk4(a, options);
    const std::vector<double> expected{0.0, 0.3, 0.6, 0.9, 1.0};
    REQUIRE(sparse.times.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(sparse.times[i] == doctest::Approx(expected[i]).epsilon(1e-14));
    CHECK(sparse.times.back() == 1.0);

    options.dt = 0.0;
    CHECK_THROWS_AS(evolve_rk4(a, options), std::invalid_argument);
    options.dt = 0.1;
    options.sample_every = 0;
    CHECK_THROWS_AS(evolve_rk4(a, options), std::invalid_argument);
}

TEST_CASE("rk4 norm drift is flagged") {
    Rk4Options options;
    options.t_end = 100.0;
    options.dt = 1.0;
    CHECK(options.dt > rk4_step_guideline(reference_generator()));
    CHECK_THROWS_AS(evolve_rk4(reference_generator(), options), IntegrationError);
}

TEST_CASE("reference configuration: norms and method agreement") {
    Rk4Options options;
    options.sample_every = 50;
    const AmplitudeTrajectory rk4 = evolve_rk4(reference_generator(), options);
    const AmplitudeTrajectory exact = evolve_exact(reference_generator(), rk4.times);
    CHECK(norm_residual(exact) <= 1e-9);
    CHECK(norm_residual(rk4) <= 1e-6);
    CHECK(*rk4.integrator_norm_drift <= 1e-6);
    CHECK((exact.states - rk4.states).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("time reversal and linearity") {
    const SpectralPropagator prop(reference_generator());
    const Eigen::VectorXcd u0 = ground_initial_state(1001);
    const Eigen::VectorXcd forward = prop.propagate(u0, 37.5);
    CHECK((prop.propagate(forward, -37.5) - u0).cwiseAbs().maxCoeff() < 1e-9);

    const Complex c(0.3, -1.7);
    const std::vector<double> times{0.0, 12.5, 80.0};
    const AmplitudeTrajectory base = prop.evolve(times, u0);
    const AmplitudeTrajectory scaled = prop.evolve(times, c * u0);
    CHECK((scaled.states - c * base.states).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("uniform times") {
    CHECK(uniform_times(0.0, 2000) == std::vector<double>{0.0});
    CHECK(uniform_times(5.0, 1) == std::vector<double>{5.0});
    const auto t = uniform_times(100.0, 2000);
    CHECK(t.size() == 2000);
    CHECK(t.front() == 0.0);
    CHECK(t.back() == 100.0);
    CHECK(std::is_sorted(t.begin(), t.end()));
    CHECK_THROWS_AS(uniform_times(-1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(uniform_times(1.0, 0), std::invalid_argument);
}

TEST_CASE("norm residual of an empty trajectory") {
    CHECK_THROWS_AS(norm_residual(AmplitudeTrajectory{}), std::invalid_argument);
}
