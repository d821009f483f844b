#include "bathent/wootters.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace bathent {

namespace {

template <typename Real>
Real abs2(const std::complex<Real>& c) {
    return c.real() * c.real() + c.imag() * c.imag();
}

template <typename Real>
std::complex<Real> widen(const Complex& c) {
    return {Real(c.real()), Real(c.imag())};
}

template <typename Real>
void finish_spectrum(WoottersSpectrum<Real>& spectrum) {
    using std::sqrt;
    std::sort(spectrum.m.begin(), spectrum.m.end(), std::greater<>());
    for (std::size_t i = 0; i < 4; ++i) {
        spectrum.l[i] = spectrum.m[i] > Real(0) ? Real(sqrt(spectrum.m[i])) : Real(0);
    }
    const Real c = spectrum.l[0] - spectrum.l[1] - spectrum.l[2] - spectrum.l[3];
    spectrum.concurrence = c > Real(0) ? c : Real(0);
}

template <typename Real>
void check_eigenvalue(const std::complex<Real>& m) {
    using std::abs;
    const Real limit(1e-10);
    if (abs(m.imag()) > limit || m.real() < -limit) {
        throw std::domain_error("wootters_spectrum: malformed input, eigenvalue of rho*rho~ = (" +
                                std::to_string(static_cast<double>(m.real())) + ", " +
                                std::to_string(static_cast<double>(m.imag())) + ")");
    }
}

// Principal square root of a Hermitian positive semidefinite matrix; roundoff
// negatives in the spectrum are set to zero.
template <typename Real>
Matrix4c<Real> psd_sqrt(const Matrix4c<Real>& h) {
    using std::sqrt;
    Eigen::SelfAdjointEigenSolver<Matrix4c<Real>> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::domain_error("psd_sqrt: eigendecomposition failed");
    }
    Eigen::Matrix<Real, 4, 1> roots;
    for (int i = 0; i < 4; ++i) {
        const Real w = solver.eigenvalues()(i);
        roots(i) = w > Real(0) ? Real(sqrt(w)) : Real(0);
    }
    const auto& v = solver.eigenvectors();
    return v * roots.template cast<std::complex<Real>>().asDiagonal() * v.adjoint();
}

}  // namespace

template <typename Real>
QubitEmbedding<Real> qubit_embedding(const std::complex<Real>& overlap) {
    using std::abs;
    using std::sqrt;
    Real magnitude = abs(overlap);
    if (magnitude > Real(1) + Real(1e-12)) {
        throw std::invalid_argument("qubit_embedding: |overlap| = " + std::to_string(static_cast<double>(magnitude)) +
                                    " exceeds 1");
    }
    if (magnitude > Real(1)) magnitude = Real(1);
    QubitEmbedding<Real> emb;
    emb.s_plus = sqrt((Real(1) + magnitude) / Real(2));
    emb.s_minus = sqrt((Real(1) - magnitude) / Real(2));
    emb.phase = magnitude == Real(0) ? std::complex<Real>(Real(1), Real(0)) : overlap / magnitude;
    return emb;
}

template <typename Real>
TwoQubitDensityMatrix<Real> build_density_matrix(const Real& g, const Real& p, const Real& q,
                                                 const std::complex<Real>& z, const QubitEmbedding<Real>& first,
                                                 const QubitEmbedding<Real>& second) {
    using std::abs;
    using std::conj;
    const std::complex<Real> w = z * first.phase * second.phase;  // z e^{i(theta + theta')}

    TwoQubitDensityMatrix<Real> dm;
    dm.g = g;
    dm.p = p;
    dm.q = q;
    dm.z = z;
    dm.r = p + q + Real(2) * w.real();
    dm.u = std::complex<Real>(q - p, Real(2) * w.imag());
    dm.v = p + q - Real(2) * w.real();

    const Real sp = first.s_plus, sm = first.s_minus;
    const Real tp = second.s_plus, tm = second.s_minus;
    const std::complex<Real> r(dm.r), v(dm.v), u = dm.u, uc = conj(dm.u);

    Matrix4c<Real>& rho = dm.rho;
    rho(0, 0) = sp * sp * tp * tp * r;
    rho(0, 1) = sp * sp * tp * tm * u;
    rho(0, 2) = sp * sm * tp * tp * u;
    rho(0, 3) = sp * sm * tp * tm * r;

    rho(1, 0) = sp * sp * tp * tm * uc;
    rho(1, 1) = sp * sp * tm * tm * v;
    rho(1, 2) = sp * sm * tp * tm * v;
    rho(1, 3) = sp * sm * tm * tm * uc;

    rho(2, 0) = sp * sm * tp * tp * uc;
    rho(2, 1) = sp * sm * tp * tm * v;
    rho(2, 2) = sm * sm * tp * tp * v;
    rho(2, 3) = sm * sm * tp * tm * uc;

    rho(3, 0) = sp * sm * tp * tm * r;
    rho(3, 1) = sp * sm * tm * tm * u;
    rho(3, 2) = sm * sm * tp * tm * u;
    rho(3, 3) = sm * sm * tm * tm * r;

    rho *= std::complex<Real>(g);
    dm.trace_defect = abs(rho.trace().real() - Real(1));
    return dm;
}

template <typename Real>
Matrix4c<Real> spin_flip(const Matrix4c<Real>& rho) {
    Matrix4c<Real> yy = Matrix4c<Real>::Zero();
    yy(0, 3) = Real(-1);
    yy(1, 2) = Real(1);
    yy(2, 1) = Real(1);
    yy(3, 0) = Real(-1);
    return yy * rho.conjugate() * yy;
}

template <typename Real>
WoottersSpectrum<Real> wootters_spectrum(const Matrix4c<Real>& rho) {
    const Matrix4c<Real> product = rho * spin_flip(rho);
    Eigen::ComplexEigenSolver<Matrix4c<Real>> solver(product, false);
    if (solver.info() != Eigen::Success) {
        throw std::domain_error("wootters_spectrum: eigenvalue iteration did not converge");
    }
    WoottersSpectrum<Real> spectrum;
    for (int i = 0; i < 4; ++i) {
        const std::complex<Real> m = solver.eigenvalues()(i);
        check_eigenvalue(m);
        spectrum.m[static_cast<std::size_t>(i)] = m.real();
    }
    finish_spectrum(spectrum);
    return spectrum;
}

template <typename Real>
WoottersSpectrum<Real> wootters_spectrum_hermitian(const Matrix4c<Real>& rho) {
    const Matrix4c<Real> root = psd_sqrt<Real>(Real(0.5) * (rho + rho.adjoint()));
    Matrix4c<Real> h = root * spin_flip(rho) * root;
    h = (Real(0.5) * (h + h.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Matrix4c<Real>> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::domain_error("wootters_spectrum_hermitian: eigendecomposition failed");
    }
    WoottersSpectrum<Real> spectrum;
    for (int i = 0; i < 4; ++i) {
        const Real m = solver.eigenvalues()(i);
        check_eigenvalue(std::complex<Real>(m, Real(0)));
        spectrum.m[static_cast<std::size_t>(i)] = m;
    }
    finish_spectrum(spectrum);
    return spectrum;
}

template <typename Real>
std::pair<Real, Real> factored_eigenvalues(const Real& g, const Real& p, const Real& q, const std::complex<Real>& z,
                                           const QubitEmbedding<Real>& first, const QubitEmbedding<Real>& second) {
    using std::abs;
    using std::sqrt;
    const Real s = first.s_plus * first.s_minus * second.s_plus * second.s_minus;
    const Real k = Real(16) * g * g * s * s;
    const Real mod_z = abs(z);
    const Real root_pq = sqrt(p * q);
    return {k * (mod_z - root_pq) * (mod_z - root_pq), k * (mod_z + root_pq) * (mod_z + root_pq)};
}

template <typename Real>
Real factored_concurrence(const Real& g, const std::complex<Real>& z, const QubitEmbedding<Real>& first,
                          const QubitEmbedding<Real>& second) {
    using std::abs;
    return Real(8) * g * first.s_plus * first.s_minus * second.s_plus * second.s_minus * Real(abs(z));
}

template <typename Real>
BipartitionState<Real> bipartition_state(const SuperpositionInit& init, double xi, double theta_b, double theta_c) {
    using std::exp;
    const std::complex<Real> a = widen<Real>(init.a);
    const std::complex<Real> b = widen<Real>(init.b);
    const std::complex<Real> log_ab = coherent_log_overlap(widen<Real>(init.alpha0), widen<Real>(init.beta0));
    // <beta0|alpha0>^e
    const auto power = [&](double e) -> std::complex<Real> {
        if (e == 0.0) return {Real(1), Real(0)};
        return exp(Real(e) * std::conj(log_ab));
    };

    BipartitionState<Real> state;
    state.p = abs2(a);
    state.q = abs2(b);
    state.g = Real(1) / (state.p + state.q + Real(2) * (std::conj(a) * b * exp(log_ab)).real());
    state.z = a * std::conj(b) * power(xi);
    state.overlap_b = power(theta_b);
    state.overlap_c = power(theta_c);
    return state;
}

CrosscheckResult crosscheck(const SuperpositionInit& init, double xi, double theta_b, double theta_c) {
    using Real = HighPrecision;
    const auto state = bipartition_state<Real>(init, xi, theta_b, theta_c);
    const auto emb_b = qubit_embedding(state.overlap_b);
    const auto emb_c = qubit_embedding(state.overlap_c);
    const auto dm = build_density_matrix(state.g, state.p, state.q, state.z, emb_b, emb_c);

    CrosscheckResult result;
    result.numeric = static_cast<double>(wootters_concurrence(dm.rho));
    result.closed_form = concurrence_closed_form(init, xi, theta_b, theta_c);
    result.residual = std::abs(result.numeric - result.closed_form);
    return result;
}

double attach_oracle_residuals(ConcurrenceSeries& series, const SuperpositionInit& init) {
    Eigen::VectorXd residual(series.sample_count());
    for (Eigen::Index i = 0; i < series.sample_count(); ++i) {
        residual(i) = crosscheck(init, series.xi(i), series.theta_b(i), series.theta_c(i)).residual;
    }
    const double worst = residual.size() > 0 ? residual.maxCoeff() : 0.0;
    series.oracle_residual = std::move(residual);
    return worst;
}

#define BATHENT_WOOTTERS_INSTANTIATE(Real)                                                                        \
    template QubitEmbedding<Real> qubit_embedding<Real>(const std::complex<Real>&);                               \
    template TwoQubitDensityMatrix<Real> build_density_matrix<Real>(const Real&, const Real&, const Real&,         \
                                                                    const std::complex<Real>&,                     \
                                                                    const QubitEmbedding<Real>&,                   \
                                                                    const QubitEmbedding<Real>&);                  \
    template Matrix4c<Real> spin_flip<Real>(const Matrix4c<Real>&);                                                \
    template WoottersSpectrum<Real> wootters_spectrum<Real>(const Matrix4c<Real>&);                                \
    template WoottersSpectrum<Real> wootters_spectrum_hermitian<Real>(const Matrix4c<Real>&);                      \
    template std::pair<Real, Real> factored_eigenvalues<Real>(const Real&, const Real&, const Real&,               \
                                                              const std::complex<Real>&,                           \
                                                              const QubitEmbedding<Real>&,                         \
                                                              const QubitEmbedding<Real>&);                        \
    template Real factored_concurrence<Real>(const Real&, const std::complex<Real>&, const QubitEmbedding<Real>&, \
                                             const QubitEmbedding<Real>&);                                         \
    template BipartitionState<Real> bipartition_state<Real>(const SuperpositionInit&, double, double, double);

BATHENT_WOOTTERS_INSTANTIATE(double)
BATHENT_WOOTTERS_INSTANTIATE(HighPrecision)

}  // namespace bathent
