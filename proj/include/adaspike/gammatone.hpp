// Copyright 2026 The Adaspike Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADASPIKE_GAMMATONE_HPP
#define ADASPIKE_GAMMATONE_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "adaspike/signal.hpp"

namespace adaspike {

enum class BandSpacing { kErb, kLog };

struct FilterbankConfig {
  int n_channels = 8;
  double f_low_hz = 50.0;
  double f_high_hz = 8000.0;
  int order = 4;
  BandSpacing spacing = BandSpacing::kErb;

  void validate(double rate_hz) const {
    if (n_channels < 1)
      throw std::invalid_argument("FilterbankConfig: n_channels must be >= 1");
    if (!(0.0 < f_low_hz && f_low_hz < f_high_hz))
      throw std::invalid_argument(
          "FilterbankConfig: need 0 < f_low_hz < f_high_hz");
    if (!(f_high_hz < 0.5 * rate_hz))
      throw std::invalid_argument(
          "FilterbankConfig: f_high_hz must be below the Nyquist rate");
    if (order != 4)
      throw std::invalid_argument(
          "FilterbankConfig: only the 4th-order gammatone is implemented");
  }
};

// Equivalent rectangular bandwidth at centre frequency f (Glasberg &
// Moore): ERB = 24.7 * (4.37 f/kHz + 1).
inline double erb_bandwidth_hz(double f_hz) {
  return 24.7 * (4.37e-3 * f_hz + 1.0);
}

// ERB-rate scale and its inverse.
inline double hz_to_erb_rate(double f_hz) {
  return 21.4 * std::log10(4.37e-3 * f_hz + 1.0);
}
inline double erb_rate_to_hz(double erb_rate) {
  return (std::pow(10.0, erb_rate / 21.4) - 1.0) / 4.37e-3;
}

struct BiquadSection {
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;  // numerator
  double a1 = 0.0, a2 = 0.0;            // denominator, a0 == 1
};

struct ChannelBand {
  int index = 0;
  double center_hz = 0.0;
  double bandwidth_hz = 0.0;
  double design_rate_hz = 0.0;
  std::vector<BiquadSection> sections;
};

// Centre frequencies spaced on the chosen scale with both endpoints
// included; a single channel sits at the scale midpoint.
inline std::vector<double> band_centers(const FilterbankConfig& cfg) {
  std::vector<double> centers(static_cast<std::size_t>(cfg.n_channels));
  const bool erb = cfg.spacing == BandSpacing::kErb;
  const double lo = erb ? hz_to_erb_rate(cfg.f_low_hz) : std::log(cfg.f_low_hz);
  const double hi =
      erb ? hz_to_erb_rate(cfg.f_high_hz) : std::log(cfg.f_high_hz);
  for (int k = 0; k < cfg.n_channels; ++k) {
    const double pos =
        cfg.n_channels == 1
            ? 0.5 * (lo + hi)
            : lo + (hi - lo) * static_cast<double>(k) /
                       static_cast<double>(cfg.n_channels - 1);
    centers[static_cast<std::size_t>(k)] =
        erb ? erb_rate_to_hz(pos) : std::exp(pos);
  }
  return centers;
}

namespace gammatone_detail {

inline std::complex<double> biquad_response(const BiquadSection& s,
                                            double omega) {
  const std::complex<double> z1 = std::polar(1.0, -omega);
  const std::complex<double> z2 = z1 * z1;
  return (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
}

}  // namespace gammatone_detail

// 4th-order gammatone at centre cf, realised as four second-order
// sections sharing one resonant denominator (the classic digital
// decomposition of the analogue gammatone). The cascade is normalised
// to unit gain at cf.
inline ChannelBand design_gammatone_channel(int index, double cf_hz,
                                            double rate_hz) {
  const double T = 1.0 / rate_hz;
  const double bw = erb_bandwidth_hz(cf_hz);
  const double B = 1.019 * 2.0 * M_PI * bw;
  const double arg = 2.0 * M_PI * cf_hz * T;
  const double cos_a = std::cos(arg);
  const double sin_a = std::sin(arg);
  const double decay = std::exp(-B * T);

  const double a1 = -2.0 * cos_a * decay;
  const double a2 = decay * decay;
  const double k_wide = std::sqrt(3.0 + std::pow(2.0, 1.5));
  const double k_narrow = std::sqrt(3.0 - std::pow(2.0, 1.5));

  ChannelBand band;
  band.index = index;
  band.center_hz = cf_hz;
  band.bandwidth_hz = bw;
  band.design_rate_hz = rate_hz;
  band.sections.resize(4);
  const double zeros[4] = {cos_a + k_wide * sin_a, cos_a - k_wide * sin_a,
                           cos_a + k_narrow * sin_a, cos_a - k_narrow * sin_a};
  for (int s = 0; s < 4; ++s) {
    auto& sec = band.sections[static_cast<std::size_t>(s)];
    sec.b0 = T;
    sec.b1 = -T * zeros[s] * decay;
    sec.b2 = 0.0;
    sec.a1 = a1;
    sec.a2 = a2;
  }

  std::complex<double> h(1.0, 0.0);
  for (const auto& sec : band.sections)
    h *= gammatone_detail::biquad_response(sec, arg);
  const double gain = std::abs(h);
  if (!(gain > 0.0))
    throw std::runtime_error("design_gammatone_channel: degenerate gain");
  band.sections[0].b0 /= gain;
  band.sections[0].b1 /= gain;
  return band;
}

inline std::vector<ChannelBand> design_gammatone_bank(
    const FilterbankConfig& cfg, double rate_hz) {
  cfg.validate(rate_hz);
  const auto centers = band_centers(cfg);
  std::vector<ChannelBand> bank;
  bank.reserve(centers.size());
  for (std::size_t k = 0; k < centers.size(); ++k)
    bank.push_back(
        design_gammatone_channel(static_cast<int>(k), centers[k], rate_hz));
  return bank;
}

// Runs one band over a sample sequence (direct form II transposed).
inline std::vector<double> filter_band(const ChannelBand& band,
                                       const std::vector<double>& x) {
  std::vector<double> y = x;
  for (const auto& sec : band.sections) {
    double s1 = 0.0, s2 = 0.0;
    for (double& v : y) {
      const double in = v;
      const double out = sec.b0 * in + s1;
      s1 = sec.b1 * in - sec.a1 * out + s2;
      s2 = sec.b2 * in - sec.a2 * out;
      v = out;
    }
  }
  return y;
}

inline AudioSignal apply_band(const ChannelBand& band, const AudioSignal& sig) {
  if (std::abs(band.design_rate_hz - sig.sample_rate_hz) >
      1e-9 * band.design_rate_hz)
    throw std::invalid_argument(
        "apply_band: signal rate does not match the bank design rate");
  AudioSignal out;
  out.sample_rate_hz = sig.sample_rate_hz;
  out.t0_s = sig.t0_s;
  out.samples = filter_band(band, sig.samples);
  return out;
}

inline std::vector<AudioSignal> apply_filterbank(
    const std::vector<ChannelBand>& bank, const AudioSignal& sig) {
  sig.validate();
  std::vector<AudioSignal> out;
  out.reserve(bank.size());
  for (const auto& band : bank) out.push_back(apply_band(band, sig));
  return out;
}

// Complex frequency response of one band at f_hz.
inline std::complex<double> band_response(const ChannelBand& band,
                                          double f_hz) {
  const double omega = 2.0 * M_PI * f_hz / band.design_rate_hz;
  std::complex<double> h(1.0, 0.0);
  for (const auto& sec : band.sections)
    h *= gammatone_detail::biquad_response(sec, omega);
  return h;
}

// Impulse response of one band, for characterisation and tests.
inline std::vector<double> impulse_response(const ChannelBand& band,
                                            std::size_t n) {
  std::vector<double> x(n, 0.0);
  if (!x.empty()) x[0] = 1.0;
  return filter_band(band, x);
}

}  // namespace adaspike

#endif  // ADASPIKE_GAMMATONE_HPP
