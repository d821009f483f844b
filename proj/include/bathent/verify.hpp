// verify.hpp: the cross-module check suite behind `bathent verify`.

#pragma once

#include "bathent/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace bathent {

enum class Fault { none, asymmetric_generator };

Fault fault_from_string(const std::string& name);

struct VerifyOptions {
    SystemConfig system;
    SuperpositionParams superposition;
    Eigen::Index size_b{100};
    TimeGrid time;
    std::size_t random_draws{1000};
    std::uint64_t seed{20240611};
    Fault fault{Fault::none};

    // System, superposition, centered partition size and time grid taken from
    // a scenario document.
    static VerifyOptions from_scenario(const Scenario& scenario);
};

struct CheckResult {
    std::string name;
    double value{0.0};
    double threshold{0.0};
    bool passed{false};
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const;
    void print(std::ostream& out) const;
};

// Scales A(k, 0) for k >= 1 by 1.5.
void inject_fault(GeneratorMatrix& gen, Fault fault);

// (a, b, o0, xi, theta_b, theta_c) with xi + theta_b + theta_c = 1, complex
// weights and amplitudes, and a normalization bounded away from zero.
struct OracleDraw {
    SuperpositionInit init;
    double xi{0.0};
    double theta_b{0.0};
    double theta_c{0.0};
};

OracleDraw random_oracle_draw(std::mt19937_64& rng);

// Largest |f(t) - cos(gamma t)| for a single resonant bath mode over
// [0, 10 pi], on `samples` evenly spaced times (exact) or every rk4 step.
double two_mode_error(Method method, double gamma = 0.1, double dt = 0.01, Eigen::Index samples = 2001);

VerifyReport verify(const VerifyOptions& options);

}  // namespace bathent
