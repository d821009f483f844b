// observables.hpp: excitation fractions and branch overlaps derived from
// amplitude trajectories.

#pragma once

#include "bathent/core_model.hpp"
#include "bathent/propagator.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace bathent {

// xi = |f|^2, theta = sum_k |g_k|^2, theta_blocks(t, i) = sum_{k in block i} |g_k|^2.
struct ExcitationProfile {
    std::vector<double> times;
    Eigen::VectorXd xi;
    Eigen::VectorXd theta;
    Eigen::MatrixXd theta_blocks;  // samples x blocks, empty without a partition
    std::vector<std::string> labels;

    Eigen::Index sample_count() const noexcept { return xi.size(); }
    Eigen::Index block_count() const noexcept { return theta_blocks.cols(); }
};

ExcitationProfile excitation_profile(const AmplitudeTrajectory& traj,
                                     const std::optional<PartitionSpec>& partition = std::nullopt);

struct MeanExcitations {
    Eigen::VectorXd main;  // |alpha0|^2 xi(t)
    Eigen::VectorXd bath;  // |alpha0|^2 theta(t)
};

MeanExcitations mean_excitations(const ExcitationProfile& profile, Complex alpha0);

// <beta(0)|alpha(0)>^e evaluated as exp(e * log), where log is the exact
// coherent-state exponent rather than a numerical logarithm of the overlap.
// A vanishing overlap therefore gives 1 at e = 0 and 0 for e > 0.
Complex overlap_power(const SuperpositionInit& init, double exponent);

// |<alpha0|beta0>|^e, same limit convention as overlap_power.
double overlap_magnitude_power(const SuperpositionInit& init, double exponent);

struct OverlapSeries {
    std::vector<double> times;
    std::vector<Complex> branch_overlap;  // <beta(t)|alpha(t)> = <beta0|alpha0>^xi(t)
    Eigen::MatrixXd block_magnitudes;     // |<lambda_P|chi_P>| = o0^theta_P(t), samples x blocks
    std::vector<std::string> labels;
};

OverlapSeries branch_overlap_series(const SuperpositionInit& init, const ExcitationProfile& profile);

// Largest |prod_{k in P} <alpha0 g_k|beta0 g_k> - <alpha0|beta0>^theta_P| over
// all samples and blocks. The left side is multiplied out oscillator by
// oscillator straight from the amplitudes.
double verify_overlap_factorization(const AmplitudeTrajectory& traj, const SuperpositionInit& init,
                                    const PartitionSpec& partition);

}  // namespace bathent
