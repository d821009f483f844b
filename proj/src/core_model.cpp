#include "bathent/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bathent {

namespace {

// Grid points are computed in floating point, so mirror-image detunings can
// differ in the last bit; anything closer than this counts as a tie.
constexpr double kTieTolerance = 1e-10;

}  // namespace

void SystemConfig::validate() const {
    if (n_bath < 1) {
        throw std::invalid_argument("SystemConfig: n_bath must be >= 1");
    }
    if (!(omega0 > 0.0)) {
        throw std::invalid_argument("SystemConfig: omega0 must be > 0");
    }
    if (!(coupling_amplitude > 0.0)) {
        throw std::invalid_argument("SystemConfig: coupling_amplitude must be > 0");
    }
    if (!(band_low > 0.0) || band_low > band_high) {
        throw std::invalid_argument("SystemConfig: band must satisfy 0 < low <= high");
    }
    if (n_bath > 1 && !(band_low < band_high)) {
        throw std::invalid_argument("SystemConfig: degenerate band with more than one oscillator");
    }
    if (!coupling_override.empty() && coupling_override.size() != n_bath) {
        throw std::invalid_argument("SystemConfig: coupling_override must have n_bath entries");
    }
}

BathGrid build_bath_grid(const SystemConfig& config) {
    config.validate();
    const auto n = static_cast<Eigen::Index>(config.n_bath);

    BathGrid grid;
    grid.omega0 = config.omega0;
    grid.frequencies.resize(n);
    if (n == 1) {
        grid.frequencies(0) = 0.5 * (config.band_low + config.band_high) * config.omega0;
    } else {
        const double low = config.band_low * config.omega0;
        const double step = (config.band_high - config.band_low) * config.omega0 / static_cast<double>(n - 1);
        for (Eigen::Index k = 0; k < n; ++k) {
            grid.frequencies(k) = low + static_cast<double>(k) * step;
        }
        grid.frequencies(n - 1) = config.band_high * config.omega0;
    }

    if (config.include_resonance) {
        Eigen::Index nearest = 0;
        (grid.frequencies.array() - config.omega0).abs().minCoeff(&nearest);
        const double shift = config.omega0 - grid.frequencies(nearest);
        grid.frequencies.array() += shift;
        grid.frequencies(nearest) = config.omega0;
        if (grid.frequencies(0) <= 0.0) {
            throw std::invalid_argument("SystemConfig: resonance shift moves the band below zero");
        }
    }

    if (config.coupling_override.empty()) {
        grid.couplings = Eigen::VectorXd::Constant(n, config.coupling_amplitude / std::sqrt(static_cast<double>(n)));
    } else {
        grid.couplings = Eigen::Map<const Eigen::VectorXd>(config.coupling_override.data(), n);
    }
    grid.detunings = (config.omega0 - grid.frequencies.array()) / 2.0;
    return grid;
}

double SuperpositionInit::inverse_norm_squared() const {
    return std::norm(a) + std::norm(b) + 2.0 * (std::conj(a) * b * overlap).real();
}

SuperpositionInit normalize_superposition(Complex a, Complex b, Complex alpha0, Complex beta0) {
    if (a == Complex{} && b == Complex{}) {
        throw std::invalid_argument("normalize_superposition: weights a and b are both zero");
    }
    SuperpositionInit init;
    init.a = a;
    init.b = b;
    init.alpha0 = alpha0;
    init.beta0 = beta0;
    init.log_overlap = coherent_log_overlap(alpha0, beta0);
    init.overlap = std::exp(init.log_overlap);
    init.overlap_magnitude = std::abs(init.overlap);

    const double inv = init.inverse_norm_squared();
    if (!(inv > 0.0) || !std::isfinite(inv)) {
        throw std::runtime_error("normalize_superposition: non-positive normalization " + std::to_string(inv));
    }
    init.norm_const = 1.0 / std::sqrt(inv);
    return init;
}

std::pair<Complex, Complex> antipodal_amplitudes(double overlap) {
    if (!(overlap > 0.0) || overlap > 1.0) {
        throw std::invalid_argument("antipodal_amplitudes: overlap must lie in (0, 1]");
    }
    const double x = std::sqrt(-std::log(overlap) / 2.0);
    return {Complex{x, 0.0}, Complex{-x, 0.0}};
}

void PartitionSpec::validate(Eigen::Index n_bath) const {
    if (!labels.empty() && labels.size() != blocks.size()) {
        throw std::invalid_argument("PartitionSpec: one label per block required");
    }
    std::vector<char> seen(static_cast<std::size_t>(n_bath), 0);
    for (const auto& block : blocks) {
        for (const Eigen::Index k : block) {
            if (k < 0 || k >= n_bath) {
                throw std::invalid_argument("PartitionSpec: index " + std::to_string(k + 1) + " outside 1.." +
                                            std::to_string(n_bath));
            }
            auto& flag = seen[static_cast<std::size_t>(k)];
            if (flag) {
                throw std::invalid_argument("PartitionSpec: index " + std::to_string(k + 1) +
                                            " appears in more than one block");
            }
            flag = 1;
        }
    }
}

bool PartitionSpec::is_bipartition(Eigen::Index n_bath) const {
    if (blocks.size() != 2) return false;
    validate(n_bath);
    return static_cast<Eigen::Index>(blocks[0].size() + blocks[1].size()) == n_bath;
}

std::vector<Eigen::Index> rank_by_detuning(const BathGrid& grid) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(grid.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const Eigen::VectorXd distance = (grid.frequencies.array() - grid.omega0).abs();
    const double tol = kTieTolerance * grid.omega0;
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return distance(i) < distance(j) - tol; });
    return order;
}

PartitionSpec centered_bipartition(const BathGrid& grid, Eigen::Index size_b) {
    const Eigen::Index n = grid.size();
    if (size_b < 1 || size_b > n) {
        throw std::invalid_argument("centered_bipartition: size_b must lie in 1.." + std::to_string(n));
    }
    const auto order = rank_by_detuning(grid);
    std::vector<Eigen::Index> b(order.begin(), order.begin() + size_b);
    std::vector<Eigen::Index> c(order.begin() + size_b, order.end());
    std::sort(b.begin(), b.end());
    std::sort(c.begin(), c.end());
    return PartitionSpec{{std::move(b), std::move(c)}, {"B", "C"}};
}

PartitionSpec banded_blocks(const BathGrid& grid, Eigen::Index n_blocks) {
    const Eigen::Index n = grid.size();
    if (n_blocks < 1 || n % n_blocks != 0) {
        throw std::invalid_argument("banded_blocks: " + std::to_string(n_blocks) + " does not divide " +
                                    std::to_string(n));
    }
    const auto order = rank_by_detuning(grid);
    const Eigen::Index per_block = n / n_blocks;
    PartitionSpec spec;
    for (Eigen::Index i = 0; i < n_blocks; ++i) {
        std::vector<Eigen::Index> block(order.begin() + i * per_block, order.begin() + (i + 1) * per_block);
        std::sort(block.begin(), block.end());
        spec.blocks.push_back(std::move(block));
        spec.labels.push_back(std::to_string(i + 1));
    }
    return spec;
}

PartitionSpec interleaved_bipartition(const BathGrid& grid) {
    PartitionSpec spec{{{}, {}}, {"B", "C"}};
    for (Eigen::Index k = 0; k < grid.size(); ++k) {
        spec.blocks[static_cast<std::size_t>(k % 2)].push_back(k);
    }
    return spec;
}

}  // namespace bathent
