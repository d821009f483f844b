// wootters.hpp: two-qubit Wootters concurrence for density matrices built
// from pairs of non-orthogonal coherent branches.
//
// A pair of states {|x>, |y>} with <y|x> = o e^{i theta} spans a qubit with
// orthonormal basis
//   |1> = (|x> + e^{i theta}|y>) / (2 S+),   |0> = (-|x> + e^{i theta}|y>) / (2 S-),
//   S+- = sqrt((1 +- o) / 2),
// so that |x> = S+|1> - S-|0> and |y> = e^{-i theta}(S+|1> + S-|0>). Applied to
// both subsystems, the state
//   rho = G (p|x,x'><x,x'| + q|y,y'><y,y'| + z|x,x'><y,y'| + h.c.)
// becomes a 4x4 matrix in the ordered basis (1up, 1down, 0up, 0down).
//
// Everything here is templated on the real scalar. Taking square roots of
// the eigenvalues of rho * rho~ turns roundoff-level eigenvalues into errors of
// order sqrt(epsilon), so the cross-check against the closed form runs on
// HighPrecision; the double instantiation is fine for well-conditioned input.

#pragma once

#include "bathent/concurrence.hpp"
#include "bathent/core_model.hpp"
#include "bathent/high_precision.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <utility>

namespace bathent {

template <typename Real>
using Matrix4c = Eigen::Matrix<std::complex<Real>, 4, 4>;

template <typename Real>
struct QubitEmbedding {
    Real s_plus;
    Real s_minus;
    std::complex<Real> phase;  // e^{i theta}
};

// `overlap` is <y|x>, i.e. <beta|alpha> for the main oscillator pair. Zero
// overlap gets phase 1. Throws std::invalid_argument if |overlap| > 1.
template <typename Real>
QubitEmbedding<Real> qubit_embedding(const std::complex<Real>& overlap);

template <typename Real>
struct TwoQubitDensityMatrix {
    Matrix4c<Real> rho;
    Real g, p, q;
    std::complex<Real> z;
    Real r, v;
    std::complex<Real> u;
    // |Tr rho - 1|; above 1e-8 the parameters do not describe a normalized state.
    Real trace_defect;
};

template <typename Real>
TwoQubitDensityMatrix<Real> build_density_matrix(const Real& g, const Real& p, const Real& q,
                                                 const std::complex<Real>& z, const QubitEmbedding<Real>& first,
                                                 const QubitEmbedding<Real>& second);

// (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y)
template <typename Real>
Matrix4c<Real> spin_flip(const Matrix4c<Real>& rho);

template <typename Real>
struct WoottersSpectrum {
    std::array<Real, 4> m;  // real parts of the eigenvalues, descending
    std::array<Real, 4> l;  // square roots after clipping, descending
    Real concurrence;       // max(0, l1 - l2 - l3 - l4)
};

// Eigenvalues of the non-Hermitian product rho * rho~. Throws
// std::domain_error if an eigenvalue has |imag| > 1e-10 or real part < -1e-10;
// smaller negative parts are clipped to zero before the square root.
template <typename Real>
WoottersSpectrum<Real> wootters_spectrum(const Matrix4c<Real>& rho);

// Same l_i through the Hermitian matrix sqrt(rho) rho~ sqrt(rho).
template <typename Real>
WoottersSpectrum<Real> wootters_spectrum_hermitian(const Matrix4c<Real>& rho);

template <typename Real>
Real wootters_concurrence(const Matrix4c<Real>& rho) {
    return wootters_spectrum(rho).concurrence;
}

// m1 = 16 G^2 (S+ S- S'+ S'-)^2 (|z| - sqrt(pq))^2, m2 the same with a plus sign.
template <typename Real>
std::pair<Real, Real> factored_eigenvalues(const Real& g, const Real& p, const Real& q, const std::complex<Real>& z,
                                           const QubitEmbedding<Real>& first, const QubitEmbedding<Real>& second);

// 8 G S+ S- S'+ S'- |z|, valid when sqrt(pq) >= |z|.
template <typename Real>
Real factored_concurrence(const Real& g, const std::complex<Real>& z, const QubitEmbedding<Real>& first,
                          const QubitEmbedding<Real>& second);

// Density-matrix parameters of the bath bipartition for the superposition
// state once the main oscillator holds a fraction xi of the excitation:
//   G = N^2, p = |a|^2, q = |b|^2, z = a conj(b) <beta0|alpha0>^xi,
// with subsystem overlaps <chi_P|lambda_P> = <beta0|alpha0>^theta_P.
template <typename Real>
struct BipartitionState {
    Real g, p, q;
    std::complex<Real> z;
    std::complex<Real> overlap_b;
    std::complex<Real> overlap_c;
};

template <typename Real>
BipartitionState<Real> bipartition_state(const SuperpositionInit& init, double xi, double theta_b, double theta_c);

struct CrosscheckResult {
    double numeric;
    double closed_form;
    double residual;
};

// Full numeric pipeline (embedding, rho, spin flip, eigenvalues of rho rho~)
// in HighPrecision, compared to concurrence_closed_form.
CrosscheckResult crosscheck(const SuperpositionInit& init, double xi, double theta_b, double theta_c);

// Fills series.oracle_residual sample by sample; returns the largest residual.
double attach_oracle_residuals(ConcurrenceSeries& series, const SuperpositionInit& init);

#define BATHENT_WOOTTERS_EXTERN(Real)                                                                             \
    extern template QubitEmbedding<Real> qubit_embedding<Real>(const std::complex<Real>&);                        \
    extern template TwoQubitDensityMatrix<Real> build_density_matrix<Real>(                                        \
        const Real&, const Real&, const Real&, const std::complex<Real>&, const QubitEmbedding<Real>&,             \
        const QubitEmbedding<Real>&);                                                                              \
    extern template Matrix4c<Real> spin_flip<Real>(const Matrix4c<Real>&);                                         \
    extern template WoottersSpectrum<Real> wootters_spectrum<Real>(const Matrix4c<Real>&);                         \
    extern template WoottersSpectrum<Real> wootters_spectrum_hermitian<Real>(const Matrix4c<Real>&);               \
    extern template std::pair<Real, Real> factored_eigenvalues<Real>(                                              \
        const Real&, const Real&, const Real&, const std::complex<Real>&, const QubitEmbedding<Real>&,             \
        const QubitEmbedding<Real>&);                                                                              \
    extern template Real factored_concurrence<Real>(const Real&, const std::complex<Real>&,                       \
                                                    const QubitEmbedding<Real>&, const QubitEmbedding<Real>&);     \
    extern template BipartitionState<Real> bipartition_state<Real>(const SuperpositionInit&, double, double, double);

BATHENT_WOOTTERS_EXTERN(double)
BATHENT_WOOTTERS_EXTERN(HighPrecision)

#undef BATHENT_WOOTTERS_EXTERN

}  // namespace bathent
