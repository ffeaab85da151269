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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "adaspike/gammatone.hpp"
#include "adaspike/signal.hpp"

namespace {

using adaspike::AudioSignal;
using adaspike::ChannelBand;
using adaspike::FilterbankConfig;

// Iterative radix-2 FFT, test-local oracle for spectral peaks.
void fft(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const auto u = a[i + k];
        const auto v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

double spectral_peak_hz(const std::vector<double>& h, double rate) {
  std::size_t n = 1;
  while (n < h.size()) n <<= 1;
  std::vector<std::complex<double>> a(n, 0.0);
  for (std::size_t i = 0; i < h.size(); ++i) a[i] = h[i];
  fft(a);
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double mag = std::abs(a[k]);
    if (mag > best_mag) {
      best_mag = mag;
      best = k;
    }
  }
  return static_cast<double>(best) * rate / static_cast<double>(n);
}

TEST(GammatoneBank, MidChannelCenterMatchesReference) {
  FilterbankConfig cfg;  // 8 channels, 50 Hz .. 8 kHz, ERB spacing
  const auto centers = adaspike::band_centers(cfg);
  ASSERT_EQ(centers.size(), 8u);
  // Channel 2 of the default bank lands at 504.6 Hz on the ERB-rate
  // scale with inclusive endpoints.
  EXPECT_NEAR(centers[2], 504.6, 0.05 * 504.6);
  EXPECT_NEAR(centers[2], 504.6, 0.005 * 504.6);
  EXPECT_NEAR(centers[0], 50.0, 1e-6 * 50.0);
  EXPECT_NEAR(centers[7], 8000.0, 1e-6 * 8000.0);
  for (std::size_t k = 1; k < centers.size(); ++k)
    EXPECT_GT(centers[k], centers[k - 1]);
}

TEST(GammatoneBank, SingleChannelSitsAtScaleMidpoint) {
  FilterbankConfig cfg;
  cfg.n_channels = 1;
  const auto centers = adaspike::band_centers(cfg);
  ASSERT_EQ(centers.size(), 1u);
  const double expected = adaspike::erb_rate_to_hz(
      0.5 * (adaspike::hz_to_erb_rate(50.0) + adaspike::hz_to_erb_rate(8000.0)));
  EXPECT_NEAR(centers[0], expected, 1e-9 * expected);
}

TEST(GammatoneBank, ImpulseResponsePeaksAtDesignCenters) {
  FilterbankConfig cfg;
  const double rate = 40000.0;
  const auto bank = adaspike::design_gammatone_bank(cfg, rate);
  for (const auto& band : bank) {
    const auto h = adaspike::impulse_response(band, 1 << 18);
    const double peak = spectral_peak_hz(h, rate);
    EXPECT_NEAR(peak, band.center_hz, 0.03 * band.center_hz)
        << "channel " << band.index;
  }
}

TEST(GammatoneBank, UnitGainAtCenter) {
  const auto band = adaspike::design_gammatone_channel(0, 504.6, 40000.0);
  EXPECT_NEAR(std::abs(adaspike::band_response(band, 504.6)), 1.0, 1e-12);
}

TEST(ApplyFilterbank, ZeroInputGivesZeroOutput) {
  FilterbankConfig cfg;
  const double rate = 40000.0;
  const auto bank = adaspike::design_gammatone_bank(cfg, rate);
  AudioSignal zeros;
  zeros.sample_rate_hz = rate;
  zeros.samples.assign(4000, 0.0);
  const auto bands = adaspike::apply_filterbank(bank, zeros);
  ASSERT_EQ(bands.size(), 8u);
  for (const auto& b : bands) {
    ASSERT_EQ(b.samples.size(), zeros.samples.size());
    for (double v : b.samples) EXPECT_DOUBLE_EQ(v, 0.0);
  }
}

TEST(ApplyFilterbank, Linearity) {
  FilterbankConfig cfg;
  cfg.n_channels = 4;
  const double rate = 40000.0;
  const auto bank = adaspike::design_gammatone_bank(cfg, rate);
  AudioSignal noise;
  noise.sample_rate_hz = rate;
  noise.samples.resize(8000);
  std::mt19937_64 rng(3);
  for (double& v : noise.samples) v = adaspike::uniform01(rng()) - 0.5;
  AudioSignal scaled = noise;
  const double a = 3.7;
  for (double& v : scaled.samples) v *= a;

  const auto y1 = adaspike::apply_filterbank(bank, noise);
  const auto y2 = adaspike::apply_filterbank(bank, scaled);
  for (std::size_t ch = 0; ch < y1.size(); ++ch) {
    double max_abs = 0.0;
    for (double v : y2[ch].samples) max_abs = std::max(max_abs, std::abs(v));
    for (std::size_t i = 0; i < y1[ch].samples.size(); ++i)
      EXPECT_NEAR(y2[ch].samples[i], a * y1[ch].samples[i], 1e-9 * max_abs);
  }
}

TEST(ApplyFilterbank, ToneAtCenterDominatesItsChannel) {
  FilterbankConfig cfg;
  const double rate = 40000.0;
  const auto bank = adaspike::design_gammatone_bank(cfg, rate);
  const double f = bank[3].center_hz;
  adaspike::SignalSpec spec;
  spec.amplitude_vpp = 1.0;
  spec.frequency_hz = f;
  const AudioSignal tone = adaspike::synth_sine(spec, 0.5, rate);
  const auto bands = adaspike::apply_filterbank(bank, tone);
  std::vector<double> rms(bands.size(), 0.0);
  for (std::size_t ch = 0; ch < bands.size(); ++ch) {
    // Skip the onset transient.
    for (std::size_t i = bands[ch].samples.size() / 2;
         i < bands[ch].samples.size(); ++i)
      rms[ch] += bands[ch].samples[i] * bands[ch].samples[i];
    rms[ch] = std::sqrt(rms[ch]);
  }
  for (std::size_t ch = 0; ch < rms.size(); ++ch) {
    if (ch != 3) EXPECT_GT(rms[3], rms[ch]);
  }
}

TEST(GammatoneBank, EnvelopeDecaysAfterPeak) {
  const auto band = adaspike::design_gammatone_channel(0, 504.6, 40000.0);
  const auto h = adaspike::impulse_response(band, 1 << 15);
  // Collect local maxima of |h|; after the global peak they must be
  // nonincreasing.
  std::vector<double> peaks;
  std::size_t global_at = 0;
  double global = 0.0;
  for (std::size_t i = 1; i + 1 < h.size(); ++i) {
    const double m = std::abs(h[i]);
    if (m >= std::abs(h[i - 1]) && m >= std::abs(h[i + 1]) && m > 0.0) {
      peaks.push_back(m);
      if (m > global) {
        global = m;
        global_at = peaks.size() - 1;
      }
    }
  }
  ASSERT_GT(peaks.size(), global_at + 3);
  for (std::size_t k = global_at + 1; k < peaks.size(); ++k)
    EXPECT_LE(peaks[k], peaks[k - 1] * (1.0 + 1e-9));
}

TEST(GammatoneBank, RejectsBadConfigs) {
  FilterbankConfig cfg;
  EXPECT_THROW(adaspike::design_gammatone_bank(cfg, 12000.0),
               std::invalid_argument);  // f_high at/above Nyquist
  cfg.n_channels = 0;
  EXPECT_THROW(adaspike::design_gammatone_bank(cfg, 40000.0),
               std::invalid_argument);
  cfg = FilterbankConfig{};
  cfg.f_low_hz = 9000.0;
  EXPECT_THROW(adaspike::design_gammatone_bank(cfg, 40000.0),
               std::invalid_argument);
}

TEST(ApplyFilterbank, RejectsRateMismatch) {
  FilterbankConfig cfg;
  const auto bank = adaspike::design_gammatone_bank(cfg, 40000.0);
  AudioSignal sig;
  sig.sample_rate_hz = 16000.0;
  sig.samples.assign(100, 0.0);
  EXPECT_THROW(adaspike::apply_filterbank(bank, sig), std::invalid_argument);
}

}  // namespace
