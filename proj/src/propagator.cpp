#include "bathent/propagator.hpp"

#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bathent {

namespace {

// Time samples evaluated per dense product in SpectralPropagator::evolve.
constexpr Eigen::Index kTimeBlock = 256;

void check_times(const std::vector<double>& times) {
    if (times.empty()) {
        throw std::invalid_argument("evolve_exact: empty time list");
    }
    if (times.front() < 0.0) {
        throw std::invalid_argument("evolve_exact: times must start at t >= 0");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw std::invalid_argument("evolve_exact: times must be strictly increasing");
        }
    }
}

}  // namespace

GeneratorMatrix build_generator(const BathGrid& grid) {
    const Eigen::Index n = grid.size();
    GeneratorMatrix gen;
    gen.matrix = Eigen::MatrixXd::Zero(n + 1, n + 1);
    gen.matrix.row(0).tail(n) = grid.couplings.transpose();
    gen.matrix.col(0).tail(n) = grid.couplings;
    gen.matrix.diagonal().tail(n) = -2.0 * grid.detunings;
    return gen;
}

std::string to_string(Method method) {
    return method == Method::exact ? "exact" : "rk4";
}

Method method_from_string(const std::string& name) {
    if (name == "exact") return Method::exact;
    if (name == "rk4") return Method::rk4;
    throw std::invalid_argument("unknown method '" + name + "'");
}

Eigen::VectorXcd ground_initial_state(Eigen::Index dimension) {
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(dimension);
    u(0) = 1.0;
    return u;
}

SpectralPropagator::SpectralPropagator(const GeneratorMatrix& gen) {
    if (!gen.is_symmetric()) {
        throw std::domain_error("SpectralPropagator: generator is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gen.matrix);
    if (solver.info() != Eigen::Success) {
        throw std::domain_error("SpectralPropagator: eigendecomposition failed");
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Eigen::VectorXcd SpectralPropagator::propagate(const Eigen::VectorXcd& u, double t) const {
    const Eigen::VectorXcd coeffs = eigenvectors_.transpose() * u;
    const Eigen::ArrayXd phase = -eigenvalues_.array() * t;
    const Eigen::VectorXcd rotated =
        (coeffs.array() * (phase.cos().cast<Complex>() + Complex(0, 1) * phase.sin().cast<Complex>())).matrix();
    return eigenvectors_ * rotated;
}

AmplitudeTrajectory SpectralPropagator::evolve(const std::vector<double>& times,
                                               const Eigen::VectorXcd& initial) const {
    if (initial.size() != dimension()) {
        throw std::invalid_argument("SpectralPropagator::evolve: initial state has wrong dimension");
    }
    const Eigen::Index n = dimension();
    const auto n_times = static_cast<Eigen::Index>(times.size());
    const Eigen::VectorXcd coeffs = eigenvectors_.transpose() * initial;

    AmplitudeTrajectory traj;
    traj.method = Method::exact;
    traj.times = times;
    traj.states.resize(n, n_times);

    Eigen::MatrixXd re(n, kTimeBlock);
    Eigen::MatrixXd im(n, kTimeBlock);
    for (Eigen::Index start = 0; start < n_times; start += kTimeBlock) {
        const Eigen::Index width = std::min(kTimeBlock, n_times - start);
        for (Eigen::Index c = 0; c < width; ++c) {
            const double t = times[static_cast<std::size_t>(start + c)];
            for (Eigen::Index j = 0; j < n; ++j) {
                const Complex p = coeffs(j) * std::polar(1.0, -eigenvalues_(j) * t);
                re(j, c) = p.real();
                im(j, c) = p.imag();
            }
        }
        const Eigen::MatrixXd out_re = eigenvectors_ * re.leftCols(width);
        const Eigen::MatrixXd out_im = eigenvectors_ * im.leftCols(width);
        traj.states.middleCols(start, width).real() = out_re;
        traj.states.middleCols(start, width).imag() = out_im;
    }
    for (Eigen::Index c = 0; c < n_times; ++c) {
        if (times[static_cast<std::size_t>(c)] == 0.0) traj.states.col(c) = initial;
    }
    return traj;
}

AmplitudeTrajectory evolve_exact(const GeneratorMatrix& gen, const std::vector<double>& times) {
    return evolve_exact(gen, times, ground_initial_state(gen.dimension()));
}

AmplitudeTrajectory evolve_exact(const GeneratorMatrix& gen, const std::vector<double>& times,
                                 const Eigen::VectorXcd& initial) {
    check_times(times);
    return SpectralPropagator(gen).evolve(times, initial);
}

double rk4_step_guideline(const GeneratorMatrix& gen) {
    const double bound = gen.spectral_radius_bound();
    return bound > 0.0 ? 0.05 / bound : std::numeric_limits<double>::infinity();
}

AmplitudeTrajectory evolve_rk4(const GeneratorMatrix& gen, const Rk4Options& options) {
    return evolve_rk4(gen, options, ground_initial_state(gen.dimension()));
}

AmplitudeTrajectory evolve_rk4(const GeneratorMatrix& gen, const Rk4Options& options,
                               const Eigen::VectorXcd& initial) {
    if (!(options.dt > 0.0)) {
        throw std::invalid_argument("evolve_rk4: dt must be > 0");
    }
    if (!(options.t_end >= 0.0)) {
        throw std::invalid_argument("evolve_rk4: t_end must be >= 0");
    }
    if (options.sample_every < 1) {
        throw std::invalid_argument("evolve_rk4: sample_every must be >= 1");
    }
    if (initial.size() != gen.dimension()) {
        throw std::invalid_argument("evolve_rk4: initial state has wrong dimension");
    }

    const auto steps = static_cast<Eigen::Index>(std::ceil(options.t_end / options.dt - 1e-9));
    const double h = steps > 0 ? options.t_end / static_cast<double>(steps) : 0.0;

    // The generator is an arrow matrix; a sparse copy keeps each step O(N)
    // while still carrying every nonzero entry, symmetric or not.
    const Eigen::SparseMatrix<Complex> a = gen.matrix.cast<Complex>().sparseView();
    const Complex minus_i(0.0, -1.0);
    auto rhs = [&](const Eigen::VectorXcd& u) -> Eigen::VectorXcd { return minus_i * (a * u); };

    std::vector<Eigen::Index> sample_steps;
    for (Eigen::Index s = 0; s <= steps; s += options.sample_every) sample_steps.push_back(s);
    if (sample_steps.back() != steps) sample_steps.push_back(steps);

    AmplitudeTrajectory traj;
    traj.method = Method::rk4;
    traj.states.resize(gen.dimension(), static_cast<Eigen::Index>(sample_steps.size()));
    traj.times.reserve(sample_steps.size());

    const double norm0 = initial.squaredNorm();
    double drift = 0.0;
    Eigen::VectorXcd u = initial;
    std::size_t next = 0;
    for (Eigen::Index s = 0;; ++s) {
        if (s == sample_steps[next]) {
            traj.times.push_back(static_cast<double>(s) * h);
            traj.states.col(static_cast<Eigen::Index>(next)) = u;
            ++next;
        }
        if (s == steps) break;

        const Eigen::VectorXcd k1 = rhs(u);
        const Eigen::VectorXcd k2 = rhs(u + 0.5 * h * k1);
        const Eigen::VectorXcd k3 = rhs(u + 0.5 * h * k2);
        const Eigen::VectorXcd k4 = rhs(u + h * k3);
        u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        const double step_drift = norm0 > 0.0 ? std::abs(u.squaredNorm() / norm0 - 1.0) : 0.0;
        drift = std::max(drift, step_drift);
        if (!(step_drift <= options.max_norm_drift)) {
            throw IntegrationError("evolve_rk4: norm drift " + std::to_string(step_drift) + " exceeds " +
                                   std::to_string(options.max_norm_drift) + " at t = " +
                                   std::to_string(static_cast<double>(s + 1) * h));
        }
    }
    traj.integrator_norm_drift = drift;
    return traj;
}

double norm_residual(const AmplitudeTrajectory& traj) {
    if (traj.sample_count() == 0) {
        throw std::invalid_argument("norm_residual: empty trajectory");
    }
    return (1.0 - traj.states.colwise().squaredNorm().array()).abs().maxCoeff();
}

std::vector<double> uniform_times(double t_end, Eigen::Index samples) {
    if (!(t_end >= 0.0)) {
        throw std::invalid_argument("uniform_times: t_end must be >= 0");
    }
    if (samples < 1) {
        throw std::invalid_argument("uniform_times: need at least one sample");
    }
    if (t_end == 0.0) return {0.0};
    if (samples == 1) return {t_end};
    std::vector<double> times(static_cast<std::size_t>(samples));
    for (Eigen::Index i = 0; i < samples; ++i) {
        times[static_cast<std::size_t>(i)] = t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
    }
    return times;
}

}  // namespace bathent
