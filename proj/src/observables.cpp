#include "bathent/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bathent {

ExcitationProfile excitation_profile(const AmplitudeTrajectory& traj, const std::optional<PartitionSpec>& partition) {
    const Eigen::Index n_bath = traj.dimension() - 1;
    if (n_bath < 1) {
        throw std::invalid_argument("excitation_profile: trajectory has no bath amplitudes");
    }

    const Eigen::MatrixXd weights = traj.states.cwiseAbs2();  // (N+1) x samples

    ExcitationProfile profile;
    profile.times = traj.times;
    profile.xi = weights.row(0).transpose();
    profile.theta = weights.bottomRows(n_bath).colwise().sum().transpose();

    if (partition) {
        partition->validate(n_bath);
        const auto n_blocks = static_cast<Eigen::Index>(partition->blocks.size());
        profile.theta_blocks = Eigen::MatrixXd::Zero(traj.sample_count(), n_blocks);
        for (Eigen::Index b = 0; b < n_blocks; ++b) {
            for (const Eigen::Index k : partition->blocks[static_cast<std::size_t>(b)]) {
                profile.theta_blocks.col(b) += weights.row(k + 1).transpose();
            }
        }
        profile.labels = partition->labels;
    }
    return profile;
}

MeanExcitations mean_excitations(const ExcitationProfile& profile, Complex alpha0) {
    const double n0 = std::norm(alpha0);
    return {n0 * profile.xi, n0 * profile.theta};
}

Complex overlap_power(const SuperpositionInit& init, double exponent) {
    if (exponent == 0.0) return {1.0, 0.0};
    // <beta0|alpha0> is the conjugate of <alpha0|beta0>.
    return std::exp(exponent * std::conj(init.log_overlap));
}

double overlap_magnitude_power(const SuperpositionInit& init, double exponent) {
    if (exponent == 0.0) return 1.0;
    return std::exp(exponent * init.log_overlap.real());
}

OverlapSeries branch_overlap_series(const SuperpositionInit& init, const ExcitationProfile& profile) {
    OverlapSeries series;
    series.times = profile.times;
    series.labels = profile.labels;
    series.branch_overlap.reserve(static_cast<std::size_t>(profile.sample_count()));
    for (Eigen::Index i = 0; i < profile.sample_count(); ++i) {
        series.branch_overlap.push_back(overlap_power(init, profile.xi(i)));
    }
    series.block_magnitudes = profile.theta_blocks.unaryExpr([&](double theta) {
        return overlap_magnitude_power(init, theta);
    });
    return series;
}

double verify_overlap_factorization(const AmplitudeTrajectory& traj, const SuperpositionInit& init,
                                    const PartitionSpec& partition) {
    const Eigen::Index n_bath = traj.dimension() - 1;
    partition.validate(n_bath);

    double worst = 0.0;
    for (Eigen::Index s = 0; s < traj.sample_count(); ++s) {
        for (const auto& block : partition.blocks) {
            Complex product{1.0, 0.0};
            double theta_p = 0.0;
            for (const Eigen::Index k : block) {
                const Complex g = traj.states(k + 1, s);
                product *= coherent_overlap(init.alpha0 * g, init.beta0 * g);
                theta_p += std::norm(g);
            }
            const Complex expected =
                theta_p == 0.0 ? Complex{1.0, 0.0} : std::exp(theta_p * init.log_overlap);
            worst = std::max(worst, std::abs(product - expected));
        }
    }
    return worst;
}

}  // namespace bathent
