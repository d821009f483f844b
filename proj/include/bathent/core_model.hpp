// core_model.hpp: bath spectrum, couplings, superposition initial state and
// bath partitions for a central oscillator coupled to N bath oscillators.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace bathent {

using Complex = std::complex<double>;

// Physical configuration. Frequencies are in units of omega0 (omega0 = 1 by
// convention), couplings are gamma_k = coupling_amplitude / sqrt(n_bath)
// unless coupling_override supplies one value per oscillator.
struct SystemConfig {
    double omega0{1.0};
    std::size_t n_bath{1000};
    double coupling_amplitude{0.1};
    double band_low{0.5};
    double band_high{1.5};
    // Shift the grid so that its point nearest to omega0 sits exactly on it.
    bool include_resonance{false};
    std::vector<double> coupling_override;

    // Throws std::invalid_argument on violated invariants.
    void validate() const;
};

struct BathGrid {
    double omega0{1.0};
    Eigen::VectorXd frequencies;  // omega_k, strictly increasing
    Eigen::VectorXd couplings;    // gamma_k
    Eigen::VectorXd detunings;    // delta_k = (omega0 - omega_k) / 2

    Eigen::Index size() const noexcept { return frequencies.size(); }
};

BathGrid build_bath_grid(const SystemConfig& config);

// Coherent-state overlap <alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha) beta).
template <typename Real>
std::complex<Real> coherent_log_overlap(const std::complex<Real>& alpha,
                                        const std::complex<Real>& beta) {
    using std::norm;
    return -norm(alpha) / Real(2) - norm(beta) / Real(2) + std::conj(alpha) * beta;
}

template <typename Real>
std::complex<Real> coherent_overlap(const std::complex<Real>& alpha,
                                    const std::complex<Real>& beta) {
    using std::exp;
    return exp(coherent_log_overlap(alpha, beta));
}

// Cat-state initial condition N (a|alpha0> + b|beta0>) for the main oscillator.
struct SuperpositionInit {
    Complex a;
    Complex b;
    Complex alpha0;
    Complex beta0;
    double norm_const{1.0};        // 𝒩
    Complex overlap;               // <alpha0|beta0>
    Complex log_overlap;           // exponent of <alpha0|beta0>, never underflows
    double overlap_magnitude{1.0}; // o0 = |<alpha0|beta0>|

    // |a|^2 + |b|^2 + 2 Re(conj(a) b <alpha0|beta0>)
    double inverse_norm_squared() const;
};

SuperpositionInit normalize_superposition(Complex a, Complex b, Complex alpha0, Complex beta0);

// Real amplitudes alpha0 = -beta0 = x with |<alpha0|beta0>| = overlap.
std::pair<Complex, Complex> antipodal_amplitudes(double overlap);

// Disjoint sets of 0-based bath indices (k - 1 in the 1-based convention).
struct PartitionSpec {
    std::vector<std::vector<Eigen::Index>> blocks;
    std::vector<std::string> labels;

    std::size_t block_count() const noexcept { return blocks.size(); }

    // Throws std::invalid_argument when blocks overlap or leave 0..n_bath-1.
    void validate(Eigen::Index n_bath) const;
    bool is_bipartition(Eigen::Index n_bath) const;
};

// Bath indices ordered by |omega_k - omega0| ascending, ties toward lower k.
std::vector<Eigen::Index> rank_by_detuning(const BathGrid& grid);

PartitionSpec centered_bipartition(const BathGrid& grid, Eigen::Index size_b);
PartitionSpec banded_blocks(const BathGrid& grid, Eigen::Index n_blocks);
// B = 1-based odd positions (1, 3, 5, ...), C = even positions.
PartitionSpec interleaved_bipartition(const BathGrid& grid);

}  // namespace bathent
