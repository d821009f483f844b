// Reference values produced by tests/oracles/generate_frozen.py.

#pragma once

#include <complex>

namespace frozen {

struct OverlapCase {
    std::complex<double> alpha, beta, overlap;
};

inline constexpr double kOverlap3m3 = 1.5229979744712628436e-8;  // e^-18

inline const OverlapCase kOverlaps[] = {
    {{3, 0}, {-3, 0}, {1.5229979744712628436e-8, 0.0}},
    {{1, 0.5}, {-0.2, 1}, {0.19484555161420867192, 0.38282467920595715836}},
    {{0, 0}, {0, 0}, {1.0, 0.0}},
    {{0, 2}, {0, 2}, {1.0, 0.0}},
    {{0.3, 0}, {0.3, 0.4}, {0.91647788059052094057, 0.1105082954104268299}},
};

struct NormCase {
    std::complex<double> a, b, alpha, beta;
    double norm_const;
};

inline const NormCase kNorms[] = {
    {{1, 0}, {-1, 0}, {3, 0}, {-3, 0}, 0.70710678657115856332},
    {{1, 0}, {0, 0.5}, {1, 0.5}, {-0.2, 1}, 1.0738572292573419892},
    {{1, 0}, {1, 0}, {0.5, 0}, {-0.5, 0}, 0.55787961568866027382},
};

// Concurrence of the reduced two-block state, from Gram-Schmidt on the
// branch overlaps at 50 digits.
struct ConcurrenceCase {
    std::complex<double> a, b, alpha, beta;
    double xi, theta_b, theta_c;
    double concurrence;
};

inline constexpr double kHalfLogTwoRoot = 0.58870501125773734551;  // |<x|-x>| = 1/2

inline const ConcurrenceCase kConcurrences[] = {
    {{1, 0}, {-1, 0}, {3, 0}, {-3, 0}, 0.0, 0.5, 0.5, 1.0},
    {{1, 0}, {-1, 0}, {3, 0}, {-3, 0}, 0.2, 0.3, 0.5, 0.027323443958754345088},
    {{1, 0}, {-1, 0}, {3, 0}, {-3, 0}, 0.9, 0.05, 0.05, 7.6906029772225898543e-8},
    {{1, 0}, {-1, 0}, {1, 0}, {-1, 0}, 0.1, 0.6, 0.3, 0.75478093336270042307},
    {{0.8, 0.1}, {-0.3, 0.5}, {1, 0.5}, {-0.2, 1}, 0.25, 0.35, 0.4, 0.60764870194740237403},
    {{1, 0}, {0, 0.5}, {0, 0.7}, {-0.4, 0}, 0.05, 0.15, 0.8, 0.18180491531137245784},
    {{1, 0}, {-1, 0}, {3, 0}, {-3, 0}, 0.0, 0.9, 0.1, 0.98624353340358073802},
    {{1, 0}, {-1, 0}, {kHalfLogTwoRoot, 0}, {-kHalfLogTwoRoot, 0}, 0.25, 0.5, 0.25, 0.64359425290558262474},
};

// Reference bath (N = 1000, band [0.5, 1.5], amplitude 0.1): xi, theta over the
// 100 oscillators nearest resonance (0-based 450..549), f.
struct DynamicsCase {
    double t, xi, theta_b100;
    std::complex<double> f;
};

inline const DynamicsCase kDynamics[] = {
    {1.0, 0.990102134209397, 0.000996615625832044, {0.9950387601542952, 0.0}},
    {10.0, 0.5519095306463955, 0.07846855302368287, {0.7429061385171046, 0.0}},
    {50.0, 0.04117708514077412, 0.5683004288373407, {0.20292137674669497, 0.0}},
    {100.0, 0.0015559499787078006, 0.6602618083526349, {0.03944553179648869, 0.0}},
};

}  // namespace frozen
