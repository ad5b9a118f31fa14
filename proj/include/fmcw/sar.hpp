#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fmcw/errors.hpp"
#include "fmcw/parallel.hpp"
#include "fmcw/receivers.hpp"
#include "fmcw/signal.hpp"

// Circular-aperture acquisition and global backprojection imaging.

namespace fmcw {

struct Trajectory {
    double center_x_m = 0.0;
    double center_y_m = 0.0;
    double radius_m = 0.0;
    std::vector<std::pair<double, double>> positions;
};

// Evenly spaced points on a circle, angle_n = start_angle + 2 pi n / N.
inline Trajectory circular_trajectory(double center_x_m, double center_y_m,
                                      double radius_m, std::size_t n_positions,
                                      double start_angle_rad = 0.0) {
    if (!(radius_m > 0.0))
        throw config_error("circular_trajectory: radius_m must be > 0");
    if (n_positions < 1)
        throw config_error("circular_trajectory: n_positions must be >= 1");
    Trajectory t;
    t.center_x_m = center_x_m;
    t.center_y_m = center_y_m;
    t.radius_m = radius_m;
    t.positions.reserve(n_positions);
    for (std::size_t n = 0; n < n_positions; ++n) {
        const double a = start_angle_rad + 2.0 * std::numbers::pi *
                                               static_cast<double>(n) /
                                               static_cast<double>(n_positions);
        t.positions.emplace_back(center_x_m + radius_m * std::cos(a),
                                 center_y_m + radius_m * std::sin(a));
    }
    return t;
}

struct ImageGrid {
    double x_min_m = 0.0, x_max_m = 0.0;
    double y_min_m = 0.0, y_max_m = 0.0;
    std::size_t nx = 0, ny = 0;

    double dx() const { return (x_max_m - x_min_m) / static_cast<double>(nx); }
    double dy() const { return (y_max_m - y_min_m) / static_cast<double>(ny); }
    double pixel_x(std::size_t i) const {
        return x_min_m + (static_cast<double>(i) + 0.5) * dx();
    }
    double pixel_y(std::size_t j) const {
        return y_min_m + (static_cast<double>(j) + 0.5) * dy();
    }

    void validate(double range_cell_m) const {
        if (!(x_max_m > x_min_m) || !(y_max_m > y_min_m))
            throw config_error("ImageGrid: extents must be increasing");
        if (nx < 2 || ny < 2)
            throw config_error("ImageGrid: nx and ny must be >= 2");
        if (dx() > range_cell_m || dy() > range_cell_m)
            throw config_error(
                "ImageGrid: pixel spacing exceeds the range cell C/(2W); "
                "the point response would be undersampled");
    }
};

// Real non-negative backprojection intensity, row-major [j * nx + i].
struct SarImage {
    ImageGrid grid;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const {
        return values[j * grid.nx + i];
    }
};

// Linear interpolation of a complex profile at an arbitrary range. Queries
// outside the axis return zero (nothing at that range contributes).
inline complexd interpolate_profile(const RangeProfile& prof, double range_m) {
    const auto& ax = prof.range_axis_m;
    if (ax.empty() || range_m < ax.front() || range_m > ax.back())
        return {0.0, 0.0};
    const auto it = std::upper_bound(ax.begin(), ax.end(), range_m);
    if (it == ax.begin()) return prof.values.front();
    if (it == ax.end()) return prof.values.back();
    const std::size_t hi = static_cast<std::size_t>(it - ax.begin());
    const std::size_t lo = hi - 1;
    const double span = ax[hi] - ax[lo];
    const double w = span > 0.0 ? (range_m - ax[lo]) / span : 0.0;
    return prof.values[lo] * (1.0 - w) + prof.values[hi] * w;
}

// One range profile per trajectory position through the selected receiver
// chain. Per-position noise streams are independent (seed XOR position
// index) and injected at the architecture's digitizer input: the full-rate
// signal for matched, the decimated beat for stretch, and the reconstructed
// full-rate signal for the reconstruction pipeline. A zero-power input
// (empty scene) bypasses noise injection since no SNR can be referenced.
//
// max_range_m extends every echo buffer so profiles cover at least that
// range; pass the farthest pixel-to-position distance when imaging.
inline std::vector<RangeProfile> acquire(
    const Scene& scene, const Trajectory& traj, Architecture arch,
    const ChirpParams& params, const AdcConfig& adc,
    std::optional<double> snr_in_db, std::uint64_t seed,
    double max_range_m = 0.0, int n_threads = 1) {
    const double fs = adc.high_rate_hz;
    double tau_pad = delay_for_range(max_range_m);
    for (const auto& t : scene.targets)
        for (const auto& [px, py] : traj.positions)
            tau_pad = std::max(tau_pad,
                               delay_for_range(std::hypot(px - t.x_m, py - t.y_m)));
    adc.validate_against_max_delay(params.chirp_rate, tau_pad);

    // pad to a multiple of L so decimation and spectral upsampling are exact
    const std::size_t lmult = static_cast<std::size_t>(adc.upsample_factor);
    std::size_t n_sig = static_cast<std::size_t>(
        std::llround((params.duration_s + tau_pad) * fs));
    n_sig = ((n_sig + lmult - 1) / lmult) * lmult;

    std::vector<RangeProfile> profiles(traj.positions.size());
    parallel_for(traj.positions.size(), n_threads, [&](std::size_t i) {
        const auto& [px, py] = traj.positions[i];
        const SampledSignal clean =
            scene_echo(scene, px, py, params, fs, n_sig);
        const std::uint64_t pos_seed = seed ^ static_cast<std::uint64_t>(i);

        auto maybe_noisy = [&](const SampledSignal& s) {
            if (!snr_in_db || support_power(s) <= 0.0) return s;
            return add_awgn(s, *snr_in_db, pos_seed);
        };

        switch (arch) {
            case Architecture::matched:
                profiles[i] = matched_filter_range_profile(maybe_noisy(clean), params);
                break;
            case Architecture::stretch: {
                const SampledSignal beat = stretch_dechirp(clean, params, adc);
                profiles[i] = stretch_range_profile(maybe_noisy(beat), params);
                break;
            }
            case Architecture::proposed: {
                const SampledSignal beat = stretch_dechirp(clean, params, adc);
                const SampledSignal rec = reconstruct_received(beat, params, adc);
                RangeProfile prof =
                    matched_filter_range_profile(maybe_noisy(rec), params);
                prof.architecture_tag = Architecture::proposed;
                profiles[i] = std::move(prof);
                break;
            }
        }
    });
    return profiles;
}

// Magnitude (noncoherent) backprojection: pixel = mean over positions of
// |profile_n interpolated at the pixel's distance to position n|.
// Parallelism is over pixel rows; the per-pixel position sum stays in fixed
// order, so the image is independent of the thread count.
inline SarImage gbp_image(const std::vector<RangeProfile>& profiles,
                          const Trajectory& traj, const ImageGrid& grid,
                          int n_threads = 1) {
    if (profiles.size() != traj.positions.size())
        throw config_error("gbp_image: profile count does not match trajectory");
    if (grid.nx < 2 || grid.ny < 2)
        throw config_error("gbp_image: invalid grid");

    SarImage img;
    img.grid = grid;
    img.values.assign(grid.nx * grid.ny, 0.0);
    const double inv_n = 1.0 / static_cast<double>(profiles.size());

    parallel_for(grid.ny, n_threads, [&](std::size_t j) {
        const double y = grid.pixel_y(j);
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const double x = grid.pixel_x(i);
            double acc = 0.0;
            for (std::size_t n = 0; n < profiles.size(); ++n) {
                const auto& [px, py] = traj.positions[n];
                const double d = std::hypot(x - px, y - py);
                acc += std::abs(interpolate_profile(profiles[n], d));
            }
            img.values[j * grid.nx + i] = acc * inv_n;
        }
    });
    return img;
}

}  // namespace fmcw
