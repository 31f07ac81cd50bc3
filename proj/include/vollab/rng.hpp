#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace vollab::rng {

// Counter-based generation: every draw is a pure function of
// (seed, path, step, stream, index), so simulated grids do not depend on how
// paths are split across workers or in which order they run.

/// Logical substreams within one (path, step) cell.
enum class Stream : std::uint32_t {
    diffusion = 0,   // price-driving normal Z (Z1 for Heston)
    jump_count = 1,  // Poisson inversion uniform
    jump_size = 2,   // log-jump-size normals
    variance = 3,    // independent normal feeding the variance correlation
};

/// Philox4x32-10 keyed block cipher (Salmon et al., SC 2011).
/// Counter layout: (index, path, step, stream); key carries the 64-bit seed.
inline std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed, std::uint32_t path,
                                               std::uint32_t step, std::uint32_t stream,
                                               std::uint32_t index) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    std::uint32_t c0 = index, c1 = path, c2 = step, c3 = stream;
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);

    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c0;
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c2;
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        c0 = hi1 ^ c1 ^ k0;
        c1 = lo1;
        c2 = hi0 ^ c3 ^ k1;
        c3 = lo0;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    return {c0, c1, c2, c3};
}

/// Uniform in (0, 1]; safe as the log argument in Box-Muller.
inline double to_unit_closed(std::uint32_t x) {
    return (static_cast<double>(x) + 1.0) * 0x1p-32;
}

/// Uniform in (0, 1), both ends excluded.
inline double to_unit_open(std::uint32_t x) {
    return (static_cast<double>(x) + 0.5) * 0x1p-32;
}

/// Strictly-open uniform for one cell. `index` selects independent draws.
inline double cell_uniform(std::uint64_t seed, std::uint32_t path, std::uint32_t step,
                           Stream stream, std::uint32_t index = 0) {
    return to_unit_open(
        philox4x32(seed, path, step, static_cast<std::uint32_t>(stream), index)[0]);
}

/// Standard-normal stream for one (seed, path, step, stream) cell.
///
/// Each Philox block feeds one Box-Muller transform producing a pair of
/// normals, consumed in order; draw count per cell is unbounded.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint32_t path, std::uint32_t step, Stream stream)
        : seed_(seed), path_(path), step_(step), stream_(static_cast<std::uint32_t>(stream)) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const auto block = philox4x32(seed_, path_, step_, stream_, block_index_++);
        const double u1 = to_unit_closed(block[0]);
        const double u2 = to_unit_closed(block[1]);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t seed_;
    std::uint32_t path_;
    std::uint32_t step_;
    std::uint32_t stream_;
    std::uint32_t block_index_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Single normal draw for cells that consume exactly one.
inline double cell_normal(std::uint64_t seed, std::uint32_t path, std::uint32_t step,
                          Stream stream) {
    return NormalStream(seed, path, step, stream).next();
}

/// Poisson count by CDF inversion of a single uniform. Monotone in `mean`,
/// which keeps per-cell jump counts stable under small intensity changes.
inline unsigned poisson_inverse(double u, double mean) {
    if (mean <= 0.0) return 0;
    double pmf = std::exp(-mean);
    double cdf = pmf;
    unsigned k = 0;
    while (u > cdf && k < 20000u) {
        ++k;
        pmf *= mean / static_cast<double>(k);
        cdf += pmf;
    }
    return k;
}

}  // namespace vollab::rng
