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
#include <random>
#include <vector>

#include "adaspike/metrics.hpp"
#include "adaspike/signal.hpp"

namespace {

using adaspike::AudioSignal;
using adaspike::SignalSpec;
using adaspike::SpikeEvent;

TEST(SpikeRate, UniformTrain) {
  std::vector<SpikeEvent> events;
  for (int k = 0; k < 100; ++k)
    events.push_back({static_cast<std::uint64_t>(k) * 1000000u, 0, 1});
  const auto series = adaspike::spike_rate(events, 0.01, 0.0, 0.1);
  ASSERT_EQ(series.values.size(), 10u);
  for (double r : series.values) EXPECT_DOUBLE_EQ(r, 1000.0);
}

TEST(SpikeRate, NoEvents) {
  const auto series = adaspike::spike_rate({}, 0.01, 0.0, 0.05);
  ASSERT_EQ(series.values.size(), 5u);
  for (double r : series.values) EXPECT_DOUBLE_EQ(r, 0.0);
}

TEST(SpikeRate, MeanMatchesTotalCount) {
  std::mt19937_64 rng(3);
  std::vector<SpikeEvent> events;
  for (int k = 0; k < 5000; ++k)
    events.push_back(
        {static_cast<std::uint64_t>(adaspike::uniform01(rng()) * 1e9), 0, 1});
  std::sort(events.begin(), events.end(),
            [](const SpikeEvent& a, const SpikeEvent& b) {
              return a.t_ns < b.t_ns;
            });
  const auto series = adaspike::spike_rate(events, 0.001, 0.0, 1.0);
  double total = 0.0;
  for (double r : series.values) total += r * series.window_s;
  EXPECT_NEAR(total, 5000.0, 1e-9);
}

TEST(PearsonR, IdenticalAndNegated) {
  const std::vector<double> x = {0.1, 0.5, 0.2, 0.9, 0.4};
  std::vector<double> neg = x;
  for (double& v : neg) v = -v;
  const auto same = adaspike::pearson_r(x, x);
  ASSERT_TRUE(same.defined);
  EXPECT_NEAR(same.r, 1.0, 1e-12);
  const auto opposite = adaspike::pearson_r(x, neg);
  ASSERT_TRUE(opposite.defined);
  EXPECT_NEAR(opposite.r, -1.0, 1e-12);
}

TEST(PearsonR, AffineInvariance) {
  std::mt19937_64 rng(9);
  std::vector<double> x(256), y(256);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = adaspike::uniform01(rng());
    y[i] = 0.4 * x[i] + 0.3 * adaspike::uniform01(rng());
  }
  const auto base = adaspike::pearson_r(x, y);
  std::vector<double> ax = x;
  for (double& v : ax) v = 3.7 * v + 11.0;
  const auto scaled = adaspike::pearson_r(ax, y);
  ASSERT_TRUE(base.defined && scaled.defined);
  EXPECT_NEAR(scaled.r, base.r, 1e-12);
}

TEST(PearsonR, ZeroVarianceIsFlagged) {
  const std::vector<double> flat(8, 2.0);
  const std::vector<double> vary = {1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_FALSE(adaspike::pearson_r(flat, vary).defined);
  EXPECT_FALSE(adaspike::pearson_r(vary, flat).defined);
  const std::vector<double> one = {1.0};
  EXPECT_THROW(adaspike::pearson_r(one, one), std::invalid_argument);
}

TEST(RmsEnvelope, ConstantSignal) {
  AudioSignal sig;
  sig.sample_rate_hz = 1000.0;
  sig.samples.assign(1000, -0.3);
  const auto env = adaspike::rms_envelope(sig, 0.01);
  for (double v : env.values) EXPECT_NEAR(v, 0.3, 1e-12);
}

TEST(RmsEnvelope, SineRmsIsAmplitudeOverSqrt2) {
  SignalSpec spec;
  spec.amplitude_vpp = 1.0;  // A = 0.5
  spec.frequency_hz = 1000.0;
  const AudioSignal sig = adaspike::synth_sine(spec, 0.5, 1e5);
  const auto env = adaspike::rms_envelope(sig, 0.1);  // 100 periods/window
  for (double v : env.values) EXPECT_NEAR(v, 0.5 / std::sqrt(2.0), 0.01 * v);
}

TEST(RmsEnvelope, BurstPeaksAlignWithBurstWindows) {
  SignalSpec spec;
  spec.kind = adaspike::StimulusKind::kBurstTrain;
  spec.amplitude_vpp = 0.4;
  spec.frequency_hz = 500.0;
  spec.offset_v = 0.0;
  spec.n_bursts = 2;
  spec.burst_s = 0.1;
  spec.gap_s = 0.2;
  spec.lead_in_s = 0.05;
  spec.decay_tau_s = 0.0;
  const AudioSignal sig = adaspike::synth_burst_train(spec, 5e4);
  const auto env = adaspike::rms_envelope(sig, 0.01);
  const auto onsets = adaspike::burst_onsets(spec);
  // Energy-per-window comparison: burst windows dominate gap windows.
  double burst_min = 1e9, gap_max = 0.0;
  for (std::size_t k = 0; k < env.values.size(); ++k) {
    const double t = env.t_centers_s[k];
    bool inside = false;
    for (double on : onsets)
      if (t > on + 0.02 && t < on + spec.burst_s - 0.02) inside = true;
    bool in_gap = true;
    for (double on : onsets)
      if (t > on - 0.01 && t < on + spec.burst_s + 0.01) in_gap = false;
    if (inside) burst_min = std::min(burst_min, env.values[k]);
    if (in_gap) gap_max = std::max(gap_max, env.values[k]);
  }
  EXPECT_GT(burst_min, 10.0 * gap_max);
}

TEST(MatchedBudget, RampBoundary) {
  AudioSignal ramp;
  ramp.sample_rate_hz = 1e5;
  ramp.samples.resize(100001);
  for (std::size_t i = 0; i < ramp.samples.size(); ++i)
    ramp.samples[i] = static_cast<double>(i) / 100000.0;
  const auto result = adaspike::matched_budget_delta(ramp, 10);
  EXPECT_EQ(result.count, 10u);
  // Just below the returned threshold the count exceeds the target.
  EXPECT_GT(adaspike::ideal_adm_count(ramp, result.delta_v * (1.0 - 1e-6)),
            10u);
  EXPECT_NEAR(result.delta_v, 1.0 / 11.0, 1e-3);
}

TEST(MatchedBudget, ZeroTargetSitsJustAboveSpan) {
  AudioSignal ramp;
  ramp.sample_rate_hz = 1e4;
  ramp.samples.resize(10001);
  for (std::size_t i = 0; i < ramp.samples.size(); ++i)
    ramp.samples[i] = 0.5 * static_cast<double>(i) / 10000.0;
  const auto result = adaspike::matched_budget_delta(ramp, 0);
  EXPECT_EQ(result.count, 0u);
  EXPECT_NEAR(result.delta_v, 0.5, 0.01 * 0.5);
}

TEST(MatchedBudget, UnachievableTargetThrows) {
  AudioSignal ramp;
  ramp.sample_rate_hz = 1e4;
  ramp.samples.resize(1001);
  for (std::size_t i = 0; i < ramp.samples.size(); ++i)
    ramp.samples[i] = static_cast<double>(i) / 1000.0;
  EXPECT_THROW(adaspike::matched_budget_delta(ramp, 100000000),
               std::invalid_argument);
}

TEST(MatchedBudget, RoundTripOnGenericSignal) {
  SignalSpec spec;
  spec.amplitude_vpp = 0.8;
  spec.frequency_hz = 313.0;
  const AudioSignal sig = adaspike::synth_sine(spec, 0.4, 1e5);
  for (std::size_t target : {50u, 137u, 600u}) {
    const auto result = adaspike::matched_budget_delta(sig, target);
    EXPECT_EQ(adaspike::ideal_adm_count(sig, result.delta_v), result.count);
    EXPECT_LE(result.count > target ? result.count - target
                                    : target - result.count,
              2u)
        << "target " << target;
  }
}

TEST(CochleagramTest, SingleChannelEvents) {
  std::vector<SpikeEvent> events;
  for (int k = 0; k < 50; ++k)
    events.push_back({static_cast<std::uint64_t>(k) * 2000000u, 2, 1});
  const auto coch = adaspike::cochleagram(events, 4, 0.01, 0.0, 0.1);
  ASSERT_EQ(coch.rows.size(), 4u);
  for (int ch = 0; ch < 4; ++ch) {
    double sum = 0.0;
    for (double v : coch.rows[static_cast<std::size_t>(ch)]) sum += v;
    if (ch == 2)
      EXPECT_GT(sum, 0.0);
    else
      EXPECT_DOUBLE_EQ(sum, 0.0);
  }
}

TEST(CochleagramTest, AllZeroStaysZero) {
  const auto coch = adaspike::cochleagram({}, 3, 0.01, 0.0, 0.05);
  for (const auto& row : coch.rows)
    for (double v : row) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(CochleagramTest, NonzeroRowsPeakAtOne) {
  std::mt19937_64 rng(13);
  std::vector<SpikeEvent> events;
  for (int k = 0; k < 500; ++k)
    events.push_back(
        {static_cast<std::uint64_t>(adaspike::uniform01(rng()) * 1e8),
         static_cast<int>(rng() % 3), 1});
  adaspike::sort_events(events);
  const auto coch = adaspike::cochleagram(events, 3, 0.005, 0.0, 0.1);
  for (const auto& row : coch.rows) {
    const double mx = *std::max_element(row.begin(), row.end());
    EXPECT_DOUBLE_EQ(mx, 1.0);
    for (double v : row) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(StaStepResponse, BoundaryValues) {
  adaspike::AdaptationModelParams p;
  p.rho = 3.0;
  p.tau_s = 0.02;
  const auto y = adaspike::sta_step_response(p, {0.0, 0.02, 10.0});
  EXPECT_DOUBLE_EQ(y[0], 3.0);                       // y(0) = rho
  EXPECT_NEAR(y[1], 1.0 + 2.0 * std::exp(-1.0), 1e-12);
  EXPECT_NEAR(y[2], 1.0, 1e-10);                     // y(inf) -> 1
  EXPECT_NEAR(y[1], 1.7358, 1e-4);
}

TEST(StaStepResponse, MatchesNumericalIntegration) {
  // Oracle: RK4 on the state-space form y = rho*u + w,
  // tau*w' + w = (1 - rho)*u, with a unit step input.
  adaspike::AdaptationModelParams p;
  p.rho = 2.6;
  p.tau_s = 0.035;
  const double dt = p.tau_s / 1000.0;
  const int n = 8000;
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) grid[static_cast<std::size_t>(k)] = k * dt;
  const auto closed = adaspike::sta_step_response(p, grid);

  double w = 0.0;
  const auto f = [&](double wv) { return ((1.0 - p.rho) - wv) / p.tau_s; };
  double max_err = 0.0;
  for (int k = 0; k < n; ++k) {
    const double y = p.rho + w;
    max_err = std::max(max_err,
                       std::abs(y - closed[static_cast<std::size_t>(k)]));
    const double k1 = f(w);
    const double k2 = f(w + 0.5 * dt * k1);
    const double k3 = f(w + 0.5 * dt * k2);
    const double k4 = f(w + dt * k3);
    w += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  EXPECT_LT(max_err, 1e-6);
}

TEST(StaStepResponse, RejectsBadParams) {
  adaspike::AdaptationModelParams p;
  p.rho = 0.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.rho = 2.0;
  p.tau_s = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(TheoreticalRate, Arithmetic) {
  EXPECT_DOUBLE_EQ(adaspike::theoretical_rate(0.2, 1000.0, 0.1), 8000.0);
  EXPECT_DOUBLE_EQ(adaspike::theoretical_rate(0.0, 1000.0, 0.1), 0.0);
  EXPECT_THROW(adaspike::theoretical_rate(0.2, 1000.0, 0.0),
               std::invalid_argument);
}

}  // namespace
