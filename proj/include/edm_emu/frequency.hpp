#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "time_series.hpp"

namespace edm_emu {

struct FrequencyEstimate {
    double omega = 0.0;       ///< angular frequency
    double uncertainty = 0.0; ///< half the refined bin width
    double amplitude = 0.0;   ///< peak amplitude of the oscillating part
};

struct FrequencyOptions {
    int zero_pad = 16;               ///< frequency grid refinement over the natural 2 pi / T spacing
    double min_amplitude = 1e-10;    ///< below this (relative to 1 + |mean|) the series counts as flat
    double min_peak_to_median = 10.0;
    double min_periods = 3.0;
    double min_samples_per_period = 16.0;
};

/// Dominant angular frequency of a uniformly sampled real series.
///
/// The mean is removed and a Hann window applied; the windowed DTFT is then
/// evaluated on a grid `zero_pad` times finer than 2 pi / T, starting two
/// natural bins above DC, and the maximum is refined by a parabola through the
/// three bins around it.
inline FrequencyEstimate extract_frequency(const std::vector<double>& times, const std::vector<double>& values,
                                           const FrequencyOptions& opt = {})
{
    if (times.size() != values.size()) {
        throw ValidationError("extract_frequency: times and values differ in length");
    }
    if (times.size() < 8) {
        throw ValidationError("extract_frequency: need at least 8 samples");
    }
    validate_time_grid(times);
    const std::size_t n = times.size();
    const double dt = (times.back() - times.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs((times[i] - times[i - 1]) - dt) > 1e-6 * dt) {
            throw ValidationError("extract_frequency: time grid must be uniform");
        }
    }

    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(n);

    std::vector<double> x(n);
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - 1));
        x[i] = (values[i] - mean) * w;
        wsum += w;
    }

    const double span = dt * static_cast<double>(n);
    const double step = 2.0 * kPi / (span * opt.zero_pad);
    const std::size_t k_lo = 2 * static_cast<std::size_t>(opt.zero_pad);
    const std::size_t k_hi = n * static_cast<std::size_t>(opt.zero_pad) / 2;
    if (k_hi <= k_lo + 2) {
        throw NumericalError("no oscillation detected: series too short");
    }

    std::vector<double> mag(k_hi + 1, 0.0);
    for (std::size_t k = k_lo - 1; k <= k_hi; ++k) {
        const std::complex<double> rot = std::polar(1.0, -step * static_cast<double>(k) * dt);
        std::complex<double> phasor = 1.0;
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += x[i] * phasor;
            phasor *= rot;
        }
        mag[k] = std::abs(acc);
    }

    std::size_t peak = k_lo;
    for (std::size_t k = k_lo; k < k_hi; ++k) {
        if (mag[k] > mag[peak]) {
            peak = k;
        }
    }
    const double amplitude = 2.0 * mag[peak] / wsum;
    std::vector<double> sorted(mag.begin() + static_cast<long>(k_lo), mag.begin() + static_cast<long>(k_hi));
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
    const double median = sorted[sorted.size() / 2];
    if (amplitude < opt.min_amplitude * (1.0 + std::abs(mean)) || mag[peak] < opt.min_peak_to_median * median) {
        throw NumericalError("no oscillation detected");
    }

    const double ym = mag[peak - 1];
    const double y0 = mag[peak];
    const double yp = mag[peak + 1];
    const double denom = ym - 2.0 * y0 + yp;
    const double offset = denom != 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
    FrequencyEstimate est{(static_cast<double>(peak) + offset) * step, 0.5 * step, amplitude};

    const double periods = est.omega * span / (2.0 * kPi);
    const double per_period = 2.0 * kPi / (est.omega * dt);
    if (periods < opt.min_periods) {
        throw NumericalError("extract_frequency: series spans " + std::to_string(periods) +
                             " periods of the detected frequency, need >= " + std::to_string(opt.min_periods));
    }
    if (per_period < opt.min_samples_per_period) {
        throw NumericalError("extract_frequency: only " + std::to_string(per_period) +
                             " samples per period of the detected frequency");
    }
    return est;
}

inline FrequencyEstimate extract_frequency(const SpinTimeSeries& series, const std::string& channel,
                                           const FrequencyOptions& opt = {})
{
    return extract_frequency(series.times, series.channel(channel), opt);
}

} // namespace edm_emu
