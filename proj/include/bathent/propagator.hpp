// propagator.hpp: amplitude dynamics i du/dt = A u for u = (f, g_1, ..., g_N).
//
// Amplitudes are kept in the rotating frame: the pure phase prefactors that
// turn f and g_k into the lab-frame coherent amplitudes alpha(t), lambda_k(t)
// are not applied. They cancel in |f|^2, |g_k|^2 and every overlap magnitude.

#pragma once

#include "bathent/core_model.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bathent {

// Real symmetric (N+1)x(N+1) generator: A(0,k) = A(k,0) = gamma_k,
// A(k,k) = -2 delta_k, A(0,0) = 0, zero elsewhere.
struct GeneratorMatrix {
    Eigen::MatrixXd matrix;

    Eigen::Index dimension() const noexcept { return matrix.rows(); }
    bool is_symmetric() const { return matrix == matrix.transpose(); }
    // Gershgorin bound on the spectral radius.
    double spectral_radius_bound() const { return matrix.cwiseAbs().rowwise().sum().maxCoeff(); }
};

GeneratorMatrix build_generator(const BathGrid& grid);

enum class Method { exact, rk4 };

std::string to_string(Method method);
Method method_from_string(const std::string& name);

// One column of `states` per sample time.
struct AmplitudeTrajectory {
    std::vector<double> times;
    Eigen::MatrixXcd states;
    Method method{Method::exact};
    // Largest |1 - ||u||^2| seen at any integration step (rk4 only).
    std::optional<double> integrator_norm_drift;

    Eigen::Index sample_count() const noexcept { return states.cols(); }
    Eigen::Index dimension() const noexcept { return states.rows(); }
    auto state(Eigen::Index i) const { return states.col(i); }
};

// u(0) = (1, 0, ..., 0)
Eigen::VectorXcd ground_initial_state(Eigen::Index dimension);

struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Eigendecomposition A = V diag(lambda) V^T, reused for any number of times.
class SpectralPropagator {
public:
    explicit SpectralPropagator(const GeneratorMatrix& gen);

    Eigen::Index dimension() const noexcept { return eigenvalues_.size(); }
    const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
    const Eigen::MatrixXd& eigenvectors() const noexcept { return eigenvectors_; }

    // exp(-i A t) u; t may be negative.
    Eigen::VectorXcd propagate(const Eigen::VectorXcd& u, double t) const;

    // Samples at t = 0 are the initial state verbatim.
    AmplitudeTrajectory evolve(const std::vector<double>& times, const Eigen::VectorXcd& initial) const;

private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

// Throws std::domain_error for a non-symmetric generator and
// std::invalid_argument for unordered or negative times.
AmplitudeTrajectory evolve_exact(const GeneratorMatrix& gen, const std::vector<double>& times);
AmplitudeTrajectory evolve_exact(const GeneratorMatrix& gen, const std::vector<double>& times,
                                 const Eigen::VectorXcd& initial);

struct Rk4Options {
    double t_end{100.0};
    double dt{0.01};
    Eigen::Index sample_every{1};
    double max_norm_drift{1e-4};
};

// Classical fixed-step RK4 on du/dt = -i A u. The step actually used is
// t_end / ceil(t_end / dt), which equals dt whenever dt divides t_end. The
// final time is always sampled. Throws IntegrationError once the norm drifts
// by more than max_norm_drift.
AmplitudeTrajectory evolve_rk4(const GeneratorMatrix& gen, const Rk4Options& options);
AmplitudeTrajectory evolve_rk4(const GeneratorMatrix& gen, const Rk4Options& options,
                               const Eigen::VectorXcd& initial);

// Largest step inside the documented stability guideline, 0.05 / ||A||_Gershgorin.
double rk4_step_guideline(const GeneratorMatrix& gen);

// max over samples of |1 - sum_i |u_i(t)|^2|
double norm_residual(const AmplitudeTrajectory& traj);

// Evenly spaced sample times over [0, t_end]; a single t = 0 sample if t_end == 0.
std::vector<double> uniform_times(double t_end, Eigen::Index samples);

}  // namespace bathent
