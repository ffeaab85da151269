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

#ifndef ADASPIKE_METRICS_HPP
#define ADASPIKE_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "adaspike/frontend.hpp"
#include "adaspike/signal.hpp"

namespace adaspike {

// Windowed series over the record: spike rates, RMS envelopes and the
// like share this shape so they can be correlated directly.
struct WindowSeries {
  double window_s = 0.0;
  std::vector<double> t_centers_s;
  std::vector<double> values;
};

using RateSeries = WindowSeries;

inline std::size_t window_count(double duration_s, double window_s) {
  return static_cast<std::size_t>(
      std::ceil(duration_s / window_s - 1e-9));
}

// Spikes per second in fixed windows tiling [t0, t0 + duration).
inline RateSeries spike_rate(const std::vector<SpikeEvent>& events,
                             double window_s, double t0_s,
                             double duration_s) {
  if (!(window_s > 0.0))
    throw std::invalid_argument("spike_rate: window_s must be > 0");
  RateSeries out;
  out.window_s = window_s;
  const std::size_t n = window_count(duration_s, window_s);
  out.t_centers_s.resize(n);
  out.values.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    out.t_centers_s[k] = t0_s + (static_cast<double>(k) + 0.5) * window_s;
  if (n == 0) return out;
  const auto t0_ns =
      static_cast<std::int64_t>(std::llround(t0_s * 1e9));
  const auto win_ns =
      static_cast<std::int64_t>(std::llround(window_s * 1e9));
  for (const auto& ev : events) {
    const std::int64_t rel = static_cast<std::int64_t>(ev.t_ns) - t0_ns;
    if (rel < 0) continue;
    auto idx = static_cast<std::size_t>(rel / win_ns);
    if (idx >= n) idx = n - 1;  // boundary rounding at the record end
    out.values[idx] += 1.0;
  }
  for (double& v : out.values) v /= window_s;
  return out;
}

// Per-window RMS of the signal, tiled like spike_rate.
inline WindowSeries rms_envelope(const AudioSignal& sig, double window_s) {
  if (!(window_s > 0.0))
    throw std::invalid_argument("rms_envelope: window_s must be > 0");
  sig.validate();
  WindowSeries out;
  out.window_s = window_s;
  const std::size_t n = window_count(sig.duration_s(), window_s);
  out.t_centers_s.resize(n);
  out.values.assign(n, 0.0);
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t k = 0; k < n; ++k)
    out.t_centers_s[k] = sig.t0_s + (static_cast<double>(k) + 0.5) * window_s;
  for (std::size_t i = 0; i < sig.samples.size(); ++i) {
    const double t = static_cast<double>(i) / sig.sample_rate_hz;
    auto idx = static_cast<std::size_t>(t / window_s);
    if (idx >= n) idx = n - 1;
    out.values[idx] += sig.samples[i] * sig.samples[i];
    ++counts[idx];
  }
  for (std::size_t k = 0; k < n; ++k)
    out.values[k] = counts[k] > 0 ? std::sqrt(out.values[k] /
                                              static_cast<double>(counts[k]))
                                  : 0.0;
  return out;
}

struct PearsonResult {
  double r = 0.0;
  bool defined = false;  // false when either series has zero variance
};

inline PearsonResult pearson_r(const std::vector<double>& a,
                               const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument(
        "pearson_r: series must have equal length >= 2");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) return {0.0, false};
  return {sab / std::sqrt(saa * sbb), true};
}

inline PearsonResult pearson_r(const WindowSeries& a, const WindowSeries& b) {
  return pearson_r(a.values, b.values);
}

struct MatchedBudget {
  double delta_v = 0.0;
  std::size_t count = 0;
};

// Bisection over a monotone-nonincreasing count function: brackets the
// count jump nearest the target; of the two bracket ends the one with
// the smaller count error wins, with ties going to the count <= target
// side.
template <class CountFn>
MatchedBudget matched_budget_delta_fn(CountFn&& count_at,
                                      std::size_t target_count,
                                      double delta_lo, double delta_hi) {
  if (!(delta_lo > 0.0 && delta_lo < delta_hi))
    throw std::invalid_argument("matched_budget_delta: bad bracket");
  std::size_t count_lo = count_at(delta_lo);
  std::size_t count_hi = count_at(delta_hi);
  if (count_lo < target_count || count_hi > target_count)
    throw std::invalid_argument(
        "matched_budget_delta: target count not achievable in bracket");
  if (count_lo <= target_count) return {delta_lo, count_lo};

  double lo = delta_lo, hi = delta_hi;
  for (int iter = 0; iter < 100 && (hi - lo) > 1e-15 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const std::size_t c = count_at(mid);
    if (c <= target_count) {
      hi = mid;
      count_hi = c;
    } else {
      lo = mid;
      count_lo = c;
    }
  }
  const auto err = [target_count](std::size_t c) {
    return c > target_count ? c - target_count : target_count - c;
  };
  if (err(count_lo) < err(count_hi)) return {lo, count_lo};
  return {hi, count_hi};
}

// Calibrates the fixed threshold of the ideal encoder so that its total
// spike count matches the target.
inline MatchedBudget matched_budget_delta(const AudioSignal& sig,
                                          std::size_t target_count,
                                          double delta_lo = 1e-4,
                                          double delta_hi = 0.0) {
  sig.validate();
  if (delta_hi <= 0.0) {
    const auto [mn, mx] =
        std::minmax_element(sig.samples.begin(), sig.samples.end());
    const double span = sig.samples.empty() ? 0.0 : *mx - *mn;
    delta_hi = span > 0.0 ? span * (1.0 + 1e-9) : 1.0;
  }
  return matched_budget_delta_fn(
      [&sig](double d) { return ideal_adm_count(sig, d); }, target_count,
      delta_lo, delta_hi);
}

// Time-by-channel map of spike rates, normalised to [0, 1] per channel;
// silent channels stay all zero.
struct Cochleagram {
  double window_s = 0.0;
  int n_channels = 0;
  std::vector<double> t_centers_s;
  std::vector<std::vector<double>> rows;  // [channel][window]
};

inline Cochleagram cochleagram(const std::vector<SpikeEvent>& events,
                               int n_channels, double window_s, double t0_s,
                               double duration_s) {
  if (n_channels < 1)
    throw std::invalid_argument("cochleagram: n_channels must be >= 1");
  if (!(window_s > 0.0))
    throw std::invalid_argument("cochleagram: window_s must be > 0");
  Cochleagram out;
  out.window_s = window_s;
  out.n_channels = n_channels;
  const std::size_t n = window_count(duration_s, window_s);
  out.rows.assign(static_cast<std::size_t>(n_channels),
                  std::vector<double>(n, 0.0));
  out.t_centers_s.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    out.t_centers_s[k] = t0_s + (static_cast<double>(k) + 0.5) * window_s;
  if (n == 0) return out;
  const auto t0_ns = static_cast<std::int64_t>(std::llround(t0_s * 1e9));
  const auto win_ns = static_cast<std::int64_t>(std::llround(window_s * 1e9));
  for (const auto& ev : events) {
    if (ev.channel < 0 || ev.channel >= n_channels)
      throw std::invalid_argument("cochleagram: event channel out of range");
    const std::int64_t rel = static_cast<std::int64_t>(ev.t_ns) - t0_ns;
    if (rel < 0) continue;
    auto idx = static_cast<std::size_t>(rel / win_ns);
    if (idx >= n) idx = n - 1;
    out.rows[static_cast<std::size_t>(ev.channel)][idx] += 1.0;
  }
  for (auto& row : out.rows) {
    const double mx = *std::max_element(row.begin(), row.end());
    if (mx > 0.0)
      for (double& v : row) v /= mx;
  }
  return out;
}

// Reference short-term adaptation model: first-order high-shelf with
// onset gain rho and decay constant tau.
struct AdaptationModelParams {
  double rho = 2.0;
  double tau_s = 0.05;

  void validate() const {
    if (!(rho >= 1.0))
      throw std::invalid_argument("AdaptationModelParams: rho must be >= 1");
    if (!(tau_s > 0.0))
      throw std::invalid_argument("AdaptationModelParams: tau_s must be > 0");
  }
};

// Unit-step response: y(t) = 1 + (rho - 1) e^(-t/tau); y(0) = rho and
// y -> 1 as t -> infinity.
inline std::vector<double> sta_step_response(const AdaptationModelParams& p,
                                             const std::vector<double>& t_grid) {
  p.validate();
  std::vector<double> y(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0.0)
      throw std::invalid_argument("sta_step_response: t_grid must be >= 0");
    y[i] = 1.0 + (p.rho - 1.0) * std::exp(-t_grid[i] / p.tau_s);
  }
  return y;
}

// Ideal delta-modulator spike rate for a pure tone.
inline double theoretical_rate(double amplitude_v, double f_in_hz,
                               double delta_v) {
  if (!(delta_v > 0.0))
    throw std::invalid_argument("theoretical_rate: delta_v must be > 0");
  return 4.0 * amplitude_v * f_in_hz / delta_v;
}

}  // namespace adaspike

#endif  // ADASPIKE_METRICS_HPP
