// concurrence.hpp: closed-form concurrence between two bath partitions B and C
//
//   C = 2 |a b| N^2 o0^xi sqrt(1 - o0^(2 theta_B)) sqrt(1 - o0^(2 theta_C)),
//
// with o0 = |<alpha0|beta0>| and N the superposition normalization.

#pragma once

#include "bathent/core_model.hpp"
#include "bathent/observables.hpp"
#include "bathent/propagator.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace bathent {

// sqrt(1 - o0^(2 theta_p)). Arguments must lie in [0, 1]; values within
// 1e-9 outside the range are clamped.
double distinguishability(double o0, double theta_p);
// Same, taking log(o0) so that tiny overlaps do not underflow.
double distinguishability_from_log(double log_o0, double theta_p);

double concurrence_closed_form(const SuperpositionInit& init, double xi, double theta_b, double theta_c);

// |xi + theta_b + theta_c - 1|. The closed form is well defined regardless;
// physical states have zero defect.
double consistency_defect(double xi, double theta_b, double theta_c);

// Closed form with xi = 0. Requires theta_b + theta_c <= 1 (+1e-9).
double asymptotic_concurrence(const SuperpositionInit& init, double theta_b, double theta_c);

struct ConcurrenceSeries {
    std::vector<double> times;
    Eigen::VectorXd xi;
    Eigen::VectorXd theta_b;
    Eigen::VectorXd theta_c;
    Eigen::VectorXd d_b;
    Eigen::VectorXd d_c;
    Eigen::VectorXd c_closed;
    std::optional<Eigen::VectorXd> oracle_residual;
    double max_consistency_defect{0.0};

    Eigen::Index sample_count() const noexcept { return c_closed.size(); }
};

// Requires `bipartition` to be two blocks covering the whole bath.
ConcurrenceSeries concurrence_series(const AmplitudeTrajectory& traj, const SuperpositionInit& init,
                                     const PartitionSpec& bipartition);

}  // namespace bathent
