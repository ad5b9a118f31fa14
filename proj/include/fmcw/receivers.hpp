#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmcw/errors.hpp"
#include "fmcw/fft.hpp"
#include "fmcw/signal.hpp"

// The three receiver chains.
//
//   stretch:  mix with the conjugate reference chirp, ideal low-pass at
//             f_low/2, decimate to the low-rate ADC clock, DFT to a range
//             profile. With s_if = rx * conj(ref), a target at delay tau
//             beats at frequency -k*tau, so range bins read the beat
//             spectrum at negative frequencies.
//   matched:  correlate the full-rate signal with a unit-energy replica of
//             the transmit chirp (fast convolution). Only fully-supported
//             correlation lags are reported so every bin has uniform noise
//             statistics.
//   reconstruction ("proposed"): upsample the beat back to the full-rate
//             clock, remodulate by exp(j pi k t^2) to undo the mixer, then
//             apply the same matched filter. Noise-free, the remodulated
//             signal equals A * s_r on the overlap window.

namespace fmcw {

enum class Architecture { stretch, matched, proposed };

inline const char* to_string(Architecture a) {
    switch (a) {
        case Architecture::stretch: return "stretch";
        case Architecture::matched: return "matched";
        case Architecture::proposed: return "proposed";
    }
    return "?";
}

inline Architecture architecture_from_string(const std::string& s) {
    if (s == "stretch") return Architecture::stretch;
    if (s == "matched") return Architecture::matched;
    if (s == "proposed") return Architecture::proposed;
    throw config_error("unknown architecture '" + s +
                       "' (expected stretch, matched or proposed)");
}

// Complex reflectivity versus range for one processed chirp.
struct RangeProfile {
    cvec values;
    std::vector<double> range_axis_m;
    Architecture architecture_tag = Architecture::stretch;
};

// Low-rate / full-rate ADC pair. f_high = L * f_low exactly.
struct AdcConfig {
    double low_rate_hz = 0.0;
    double high_rate_hz = 0.0;
    int upsample_factor = 1;

    AdcConfig() = default;
    AdcConfig(double f_high, int factor) {
        if (factor < 1)
            throw config_error("AdcConfig: upsample_factor must be an integer >= 1");
        if (!(f_high > 0.0))
            throw config_error("AdcConfig: high_rate_hz must be > 0");
        high_rate_hz = f_high;
        upsample_factor = factor;
        low_rate_hz = f_high / factor;
    }

    // f_low must cover the highest beat frequency k*tau_max with margin.
    void validate_against_max_delay(double chirp_rate, double tau_max_s,
                                    double guard = 1.25) const {
        const double needed = 2.0 * chirp_rate * tau_max_s * guard;
        if (low_rate_hz < needed) {
            throw config_error(
                "AdcConfig: low_rate_hz " + std::to_string(low_rate_hz) +
                " below the beat Nyquist requirement " + std::to_string(needed) +
                " Hz for tau_max " + std::to_string(tau_max_s) + " s");
        }
    }
};

namespace detail {

inline void require_chirp_clock(const SampledSignal& s, double rate,
                                const char* who) {
    if (std::abs(s.sample_rate_hz - rate) > 1e-9 * rate)
        throw std::invalid_argument(std::string(who) +
                                    ": signal rate does not match the ADC clock");
    if (s.start_time_s != 0.0)
        throw std::invalid_argument(std::string(who) +
                                    ": signal must start at t0 = 0 (chirp clock)");
}

}  // namespace detail

// Mix with conj(reference chirp), brickwall low-pass at f_low/2 on the
// exact-length DFT, keep every L-th sample.
inline SampledSignal stretch_dechirp(const SampledSignal& rx,
                                     const ChirpParams& p,
                                     const AdcConfig& adc) {
    detail::require_chirp_clock(rx, adc.high_rate_hz, "stretch_dechirp");
    const std::size_t n = rx.samples.size();
    const double fs = adc.high_rate_hz;
    const std::size_t chirp_len = static_cast<std::size_t>(
        std::llround(p.duration_s * fs));

    cvec mixed(n, complexd{0.0, 0.0});
    const std::size_t m = std::min(n, chirp_len);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = static_cast<double>(i) / fs;
        mixed[i] = rx.samples[i] *
                   std::polar(p.amplitude,
                              -std::numbers::pi * p.chirp_rate * t * t);
    }

    const int L = adc.upsample_factor;
    if (L > 1) {
        cvec spec = fft::forward(mixed);
        // zero every DFT bin whose frequency magnitude exceeds f_low/2
        const double cutoff = adc.low_rate_hz / 2.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double fk = (k <= n / 2)
                                  ? static_cast<double>(k) * fs / static_cast<double>(n)
                                  : (static_cast<double>(k) - static_cast<double>(n)) *
                                        fs / static_cast<double>(n);
            if (std::abs(fk) > cutoff) spec[k] = {0.0, 0.0};
        }
        mixed = fft::inverse(spec);
    }

    SampledSignal beat;
    beat.sample_rate_hz = adc.low_rate_hz;
    beat.start_time_s = 0.0;
    beat.samples.reserve((n + static_cast<std::size_t>(L) - 1) / L);
    for (std::size_t i = 0; i < n; i += static_cast<std::size_t>(L))
        beat.samples.push_back(mixed[i]);
    return beat;
}

// Windowless DFT of the beat signal, zero-padded to the next power of two.
// Bin m is the spectrum at -m * f_low / N; range r_m = C * (m f_low / N) / (2k).
inline RangeProfile stretch_range_profile(const SampledSignal& beat,
                                          const ChirpParams& p) {
    const std::size_t nfft = fft::next_pow2(std::max<std::size_t>(beat.samples.size(), 2));
    const cvec spec = fft::forward_padded(beat.samples, nfft);

    RangeProfile prof;
    prof.architecture_tag = Architecture::stretch;
    const std::size_t nbins = nfft / 2;
    prof.values.resize(nbins);
    prof.range_axis_m.resize(nbins);
    const double bin_hz = beat.sample_rate_hz / static_cast<double>(nfft);
    for (std::size_t mbin = 0; mbin < nbins; ++mbin) {
        prof.values[mbin] = spec[(nfft - mbin) % nfft];
        prof.range_axis_m[mbin] =
            speed_of_light * (static_cast<double>(mbin) * bin_hz) / (2.0 * p.chirp_rate);
    }
    return prof;
}

// Dominant beat-frequency magnitude, folding negative-frequency bins. Test
// and diagnostics helper for the beat-frequency law f_b = k*tau.
inline double dominant_beat_frequency_hz(const SampledSignal& beat) {
    const std::size_t nfft = fft::next_pow2(std::max<std::size_t>(beat.samples.size(), 2));
    const cvec spec = fft::forward_padded(beat.samples, nfft);
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t k = 0; k < nfft; ++k) {
        const double m = std::abs(spec[k]);
        if (m > best_mag) {
            best_mag = m;
            best = k;
        }
    }
    const double f = static_cast<double>(best) * beat.sample_rate_hz /
                     static_cast<double>(nfft);
    return (best <= nfft / 2) ? f : beat.sample_rate_hz - f;
}

// Cross-correlation with the unit-energy reference chirp via fast
// convolution. Lag d maps to range C*(d/fs)/2; a noise-free echo of energy E
// peaks at magnitude sqrt(E). Only lags with full replica support are kept.
inline RangeProfile matched_filter_range_profile(const SampledSignal& rx,
                                                 const ChirpParams& p) {
    const double fs = rx.sample_rate_hz;
    if (!(fs > 0.0))
        throw std::invalid_argument("matched_filter_range_profile: bad sample rate");
    const SampledSignal replica = make_chirp(p, fs);
    const std::size_t nc = replica.samples.size();
    const std::size_t ns = rx.samples.size();
    if (ns < nc)
        throw std::invalid_argument(
            "matched_filter_range_profile: signal shorter than the reference chirp");

    const double energy = p.amplitude * p.amplitude * static_cast<double>(nc);
    const double inv_norm = 1.0 / std::sqrt(energy);

    const std::size_t nfft = fft::next_pow2(ns + nc - 1);
    cvec sx = fft::forward_padded(rx.samples, nfft);
    cvec sh = fft::forward_padded(replica.samples, nfft);
    for (std::size_t i = 0; i < nfft; ++i) sx[i] *= std::conj(sh[i]);
    const cvec y = fft::inverse(sx);

    RangeProfile prof;
    prof.architecture_tag = Architecture::matched;
    const std::size_t nlag = ns - nc + 1;
    prof.values.resize(nlag);
    prof.range_axis_m.resize(nlag);
    for (std::size_t d = 0; d < nlag; ++d) {
        prof.values[d] = y[d] * inv_norm;
        prof.range_axis_m[d] =
            speed_of_light * (static_cast<double>(d) / fs) / 2.0;
    }
    return prof;
}

// Frequency-domain zero-padding interpolation by an integer factor L.
// In-band content is preserved in amplitude; original samples are recovered
// exactly at the coarse grid points.
inline SampledSignal upsample(const SampledSignal& s, int factor) {
    if (factor < 1)
        throw config_error("upsample: factor must be an integer >= 1");
    if (factor == 1) return s;
    const std::size_t n = s.samples.size();
    if (n == 0)
        throw std::invalid_argument("upsample: empty signal");

    const cvec spec = fft::forward(s.samples);
    const std::size_t nup = n * static_cast<std::size_t>(factor);
    cvec up(nup, complexd{0.0, 0.0});
    const double scale = static_cast<double>(factor);
    const std::size_t half = n / 2;
    for (std::size_t k = 0; k < half; ++k) up[k] = spec[k] * scale;
    if (n % 2 == 0) {
        // split the Nyquist bin so real inputs stay real
        up[half] = spec[half] * (scale / 2.0);
        up[nup - half] = spec[half] * (scale / 2.0);
        for (std::size_t k = half + 1; k < n; ++k)
            up[nup - n + k] = spec[k] * scale;
    } else {
        for (std::size_t k = half; k < n; ++k)
            up[nup - n + k] = spec[k] * scale;
    }

    SampledSignal out;
    out.sample_rate_hz = s.sample_rate_hz * factor;
    out.start_time_s = s.start_time_s;
    out.samples = fft::inverse(up);
    return out;
}

// Upsample the beat to the full-rate clock and remodulate by the
// unit-amplitude reference phase exp(j pi k t^2) on [0, T). Noise-free this
// approximates A * s_r on the overlap window [tau_max, T).
inline SampledSignal reconstruct_received(const SampledSignal& beat,
                                          const ChirpParams& p,
                                          const AdcConfig& adc) {
    if (std::abs(beat.sample_rate_hz - adc.low_rate_hz) > 1e-9 * adc.low_rate_hz)
        throw std::invalid_argument(
            "reconstruct_received: beat rate is not the configured low rate "
            "(clock misalignment)");
    if (beat.start_time_s != 0.0)
        throw std::invalid_argument(
            "reconstruct_received: beat must start at t0 = 0 (clock misalignment)");

    SampledSignal up = upsample(beat, adc.upsample_factor);
    const double fs = adc.high_rate_hz;
    up.sample_rate_hz = fs;
    const std::size_t chirp_len = static_cast<std::size_t>(
        std::llround(p.duration_s * fs));
    const std::size_t n = up.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i < chirp_len) {
            const double t = static_cast<double>(i) / fs;
            up.samples[i] *=
                std::polar(1.0, std::numbers::pi * p.chirp_rate * t * t);
        } else {
            up.samples[i] = {0.0, 0.0};
        }
    }
    return up;
}

// Reconstruction followed by the matched filter.
inline RangeProfile proposed_range_profile(const SampledSignal& beat,
                                           const ChirpParams& p,
                                           const AdcConfig& adc) {
    const SampledSignal rec = reconstruct_received(beat, p, adc);
    RangeProfile prof = matched_filter_range_profile(rec, p);
    prof.architecture_tag = Architecture::proposed;
    return prof;
}

}  // namespace fmcw
