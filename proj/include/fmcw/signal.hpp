#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmcw/errors.hpp"

// Complex-baseband chirp synthesis, point-target echoes and calibrated
// noise. Everything here is a pure function of its arguments (plus an
// explicit seed), so call sites are free to run these concurrently.
//
// Phase model: the transmitted chirp is A exp(j pi k t^2) on [0, T) with
// chirp rate k = W/T; a target at range R returns the same waveform delayed
// by tau = 2R/C and scaled by its complex reflectivity.

namespace fmcw {

inline constexpr double speed_of_light = 299792458.0;  // m/s, exact SI

using complexd = std::complex<double>;
using cvec = std::vector<complexd>;

// ---------------------------------------------------------------------------
// domain types

struct ChirpParams {
    double bandwidth_hz = 0.0;  // W
    double duration_s = 0.0;    // T
    double amplitude = 1.0;     // A
    double chirp_rate = 0.0;    // k = W/T, stored

    ChirpParams() = default;
    ChirpParams(double w, double t, double a)
        : bandwidth_hz(w), duration_s(t), amplitude(a) {
        if (!(w > 0.0)) throw std::invalid_argument("ChirpParams: bandwidth_hz must be > 0");
        if (!(t > 0.0)) throw std::invalid_argument("ChirpParams: duration_s must be > 0");
        if (!(a > 0.0)) throw std::invalid_argument("ChirpParams: amplitude must be > 0");
        chirp_rate = w / t;
    }
};

// Uniformly sampled complex time series; t_n = start_time_s + n / sample_rate_hz.
struct SampledSignal {
    cvec samples;
    double sample_rate_hz = 0.0;
    double start_time_s = 0.0;
};

struct PointTarget {
    double x_m = 0.0;
    double y_m = 0.0;
    complexd reflectivity{1.0, 0.0};
};

struct Scene {
    std::vector<PointTarget> targets;  // may be empty (noise-only scene)
};

// ---------------------------------------------------------------------------
// deterministic RNG helpers
//
// Seeds for independent noise draws are derived by splitmix64 so that
// per-position / per-trial streams never collide; the Gaussian transform is
// spelled out (Box-Muller) instead of std::normal_distribution to keep the
// generated sequence fixed by this code alone.

namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ splitmix64(b));
}

class GaussianSource {
  public:
    explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

    // standard normal via Box-Muller on 53-bit uniforms
    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace rng

// ---------------------------------------------------------------------------
// operations

inline double chirp_rate(double bandwidth_hz, double duration_s) {
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("chirp_rate: bandwidth_hz must be > 0");
    if (!(duration_s > 0.0))
        throw std::invalid_argument("chirp_rate: duration_s must be > 0");
    return bandwidth_hz / duration_s;
}

inline double delay_for_range(double range_m) {
    return 2.0 * range_m / speed_of_light;
}

// Baseband chirp A exp(j pi k t^2) sampled on [0, T). Requires complex
// Nyquist: sample_rate_hz >= bandwidth.
inline SampledSignal make_chirp(const ChirpParams& p, double sample_rate_hz) {
    if (!(sample_rate_hz >= p.bandwidth_hz)) {
        throw std::invalid_argument(
            "make_chirp: sample_rate_hz " + std::to_string(sample_rate_hz) +
            " would alias; minimum rate is the chirp bandwidth " +
            std::to_string(p.bandwidth_hz) + " Hz");
    }
    const std::size_t n = static_cast<std::size_t>(
        std::llround(p.duration_s * sample_rate_hz));
    SampledSignal s;
    s.sample_rate_hz = sample_rate_hz;
    s.start_time_s = 0.0;
    s.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sample_rate_hz;
        s.samples[i] = std::polar(p.amplitude,
                                  std::numbers::pi * p.chirp_rate * t * t);
    }
    return s;
}

// Echo of the chirp delayed by tau and scaled by reflectivity, evaluated
// directly on the shared t0 = 0 clock (no interpolation). The buffer covers
// [0, T + tau); min_samples can request a longer zero-padded tail.
inline SampledSignal point_target_echo(const ChirpParams& p,
                                       double sample_rate_hz, double delay_s,
                                       complexd reflectivity,
                                       std::size_t min_samples = 0) {
    if (delay_s < 0.0)
        throw std::invalid_argument("point_target_echo: delay_s must be >= 0");
    if (delay_s >= p.duration_s)
        throw std::invalid_argument(
            "point_target_echo: delay_s >= chirp duration leaves no "
            "transmit/echo overlap (out of model)");
    if (!(sample_rate_hz >= p.bandwidth_hz))
        throw std::invalid_argument("point_target_echo: undersampled");

    std::size_t n = static_cast<std::size_t>(
        std::llround((p.duration_s + delay_s) * sample_rate_hz));
    if (n < min_samples) n = min_samples;

    SampledSignal s;
    s.sample_rate_hz = sample_rate_hz;
    s.start_time_s = 0.0;
    s.samples.assign(n, complexd{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sample_rate_hz;
        const double u = t - delay_s;
        if (u >= 0.0 && u < p.duration_s) {
            s.samples[i] = reflectivity *
                           std::polar(p.amplitude,
                                      std::numbers::pi * p.chirp_rate * u * u);
        }
    }
    return s;
}

// Superposition of point-target echoes seen from one radar position.
// Empty scenes yield an all-zero chirp-length buffer.
inline SampledSignal scene_echo(const Scene& scene, double radar_x_m,
                                double radar_y_m, const ChirpParams& p,
                                double sample_rate_hz,
                                std::size_t min_samples = 0) {
    if (!(sample_rate_hz >= p.bandwidth_hz))
        throw std::invalid_argument("scene_echo: undersampled");

    double tau_max = 0.0;
    for (const auto& t : scene.targets) {
        const double d = std::hypot(radar_x_m - t.x_m, radar_y_m - t.y_m);
        tau_max = std::max(tau_max, delay_for_range(d));
    }
    std::size_t n = static_cast<std::size_t>(
        std::llround((p.duration_s + tau_max) * sample_rate_hz));
    if (n < min_samples) n = min_samples;

    SampledSignal acc;
    acc.sample_rate_hz = sample_rate_hz;
    acc.start_time_s = 0.0;
    acc.samples.assign(n, complexd{0.0, 0.0});
    for (const auto& t : scene.targets) {
        const double d = std::hypot(radar_x_m - t.x_m, radar_y_m - t.y_m);
        const SampledSignal e =
            point_target_echo(p, sample_rate_hz, delay_for_range(d),
                              t.reflectivity, n);
        for (std::size_t i = 0; i < n; ++i) acc.samples[i] += e.samples[i];
    }
    return acc;
}

// Mean power over the signal's support (its nonzero samples).
inline double support_power(const SampledSignal& s) {
    double p = 0.0;
    std::size_t n = 0;
    for (const auto& z : s.samples) {
        const double m = std::norm(z);
        if (m > 0.0) {
            p += m;
            ++n;
        }
    }
    return n == 0 ? 0.0 : p / static_cast<double>(n);
}

// Adds circularly-symmetric complex Gaussian noise with per-sample variance
// sigma^2 = P_sig / 10^(snr_in_db/10), P_sig measured over the support.
inline SampledSignal add_awgn(const SampledSignal& s, double snr_in_db,
                              std::uint64_t seed) {
    const double p_sig = support_power(s);
    if (p_sig <= 0.0)
        throw std::invalid_argument(
            "add_awgn: signal has zero power, SNR is undefined");
    const double sigma2 = p_sig / std::pow(10.0, snr_in_db / 10.0);
    const double s_per_axis = std::sqrt(sigma2 / 2.0);

    rng::GaussianSource g(rng::splitmix64(seed));
    SampledSignal out = s;
    for (auto& z : out.samples) {
        const double re = g();
        const double im = g();
        z += complexd{s_per_axis * re, s_per_axis * im};
    }
    return out;
}

}  // namespace fmcw
