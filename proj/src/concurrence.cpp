#include "bathent/concurrence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bathent {

namespace {

constexpr double kRangeSlack = 1e-9;

double checked_unit(double value, const char* what) {
    if (!(value >= -kRangeSlack && value <= 1.0 + kRangeSlack)) {
        throw std::invalid_argument(std::string(what) + " = " + std::to_string(value) + " outside [0, 1]");
    }
    return std::clamp(value, 0.0, 1.0);
}

}  // namespace

double distinguishability_from_log(double log_o0, double theta_p) {
    theta_p = checked_unit(theta_p, "theta_p");
    if (theta_p == 0.0) return 0.0;
    // 1 - o0^(2 theta) = -expm1(2 theta log o0); exact near theta -> 0.
    return std::sqrt(-std::expm1(2.0 * theta_p * log_o0));
}

double distinguishability(double o0, double theta_p) {
    o0 = checked_unit(o0, "overlap");
    return distinguishability_from_log(std::log(o0), theta_p);
}

double concurrence_closed_form(const SuperpositionInit& init, double xi, double theta_b, double theta_c) {
    xi = checked_unit(xi, "xi");
    const double log_o0 = init.log_overlap.real();
    const double d_b = distinguishability_from_log(log_o0, theta_b);
    const double d_c = distinguishability_from_log(log_o0, theta_c);
    const double branch = xi == 0.0 ? 1.0 : std::exp(xi * log_o0);
    const double n2 = init.norm_const * init.norm_const;
    return 2.0 * std::abs(init.a * init.b) * n2 * branch * d_b * d_c;
}

double consistency_defect(double xi, double theta_b, double theta_c) {
    return std::abs(xi + theta_b + theta_c - 1.0);
}

double asymptotic_concurrence(const SuperpositionInit& init, double theta_b, double theta_c) {
    if (theta_b + theta_c > 1.0 + kRangeSlack) {
        throw std::invalid_argument("asymptotic_concurrence: theta_b + theta_c exceeds 1");
    }
    return concurrence_closed_form(init, 0.0, theta_b, theta_c);
}

ConcurrenceSeries concurrence_series(const AmplitudeTrajectory& traj, const SuperpositionInit& init,
                                     const PartitionSpec& bipartition) {
    if (!bipartition.is_bipartition(traj.dimension() - 1)) {
        throw std::invalid_argument("concurrence_series: partition must be two blocks covering the bath");
    }
    const ExcitationProfile profile = excitation_profile(traj, bipartition);
    const Eigen::Index n = profile.sample_count();
    const double log_o0 = init.log_overlap.real();

    ConcurrenceSeries series;
    series.times = profile.times;
    series.xi = profile.xi;
    series.theta_b = profile.theta_blocks.col(0);
    series.theta_c = profile.theta_blocks.col(1);
    series.d_b.resize(n);
    series.d_c.resize(n);
    series.c_closed.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        series.d_b(i) = distinguishability_from_log(log_o0, series.theta_b(i));
        series.d_c(i) = distinguishability_from_log(log_o0, series.theta_c(i));
        series.c_closed(i) = concurrence_closed_form(init, series.xi(i), series.theta_b(i), series.theta_c(i));
        series.max_consistency_defect = std::max(
            series.max_consistency_defect, consistency_defect(series.xi(i), series.theta_b(i), series.theta_c(i)));
    }
    return series;
}

}  // namespace bathent
