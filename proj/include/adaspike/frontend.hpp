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

#ifndef ADASPIKE_FRONTEND_HPP
#define ADASPIKE_FRONTEND_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "adaspike/rng.hpp"
#include "adaspike/signal.hpp"

namespace adaspike {

// Current-mirror transimpedance threshold generator. The memristor read
// current maps onto a symmetric comparator threshold pair around v_cm
// with gain g_tia = beta * r_th, linear up to i_linear_max and clipped
// into [delta_min, delta_max].
struct ThresholdGenConfig {
  double g_tia_ohms = 3.0e5;
  double beta = 10.0;
  double r_th_ohms = 3.0e4;
  double v_cm = 0.82;
  double i_linear_max_a = 1.5e-6;
  double delta_min_v = 5e-3;
  double delta_max_v = 0.4;

  void validate() const {
    if (std::abs(g_tia_ohms - beta * r_th_ohms) > 1e-9 * g_tia_ohms)
      throw std::invalid_argument(
          "ThresholdGenConfig: g_tia_ohms must equal beta * r_th_ohms");
    if (!(delta_min_v > 0.0 && delta_min_v < delta_max_v))
      throw std::invalid_argument(
          "ThresholdGenConfig: need 0 < delta_min_v < delta_max_v");
    if (!(i_linear_max_a > 0.0))
      throw std::invalid_argument(
          "ThresholdGenConfig: i_linear_max_a must be > 0");
    if (!(v_cm > delta_max_v))
      throw std::invalid_argument(
          "ThresholdGenConfig: v_cm must exceed delta_max_v");
  }
};

struct ThresholdLevels {
  double v_th_p = 0.0;
  double v_th_n = 0.0;
  double delta_v = 0.0;
};

inline ThresholdLevels threshold_from_current(const ThresholdGenConfig& cfg,
                                              double i_m_a) {
  if (i_m_a < 0.0)
    throw std::invalid_argument("threshold_from_current: negative current");
  const double delta =
      std::clamp(cfg.g_tia_ohms * std::min(i_m_a, cfg.i_linear_max_a),
                 cfg.delta_min_v, cfg.delta_max_v);
  ThresholdLevels out;
  out.delta_v = delta;
  out.v_th_p = cfg.v_cm + delta;
  // Sterbenz: 2*v_cm - v_th_p is exact here, so VthP + VthN == 2*Vcm
  // holds bit-for-bit.
  out.v_th_n = 2.0 * cfg.v_cm - out.v_th_p;
  return out;
}

// Asynchronous output atom. Per-channel timestamps are strictly
// increasing; consecutive same-channel events are at least 10 ns apart
// for the hardware encoder.
struct SpikeEvent {
  std::uint64_t t_ns = 0;
  int channel = 0;
  int polarity = 0;  // +1 or -1

  friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
};

struct AdmConfig {
  int channel = 0;
  double divider_gain = 0.75;  // C1/(C1+C2) with C1:C2 = 3:1
  double dead_time_s = 10e-9;
  double spike_pulse_width_s = 100e-9;
  double threshold_jitter_sigma_v = 0.0;
  std::uint64_t jitter_seed = 0;

  void validate() const {
    if (!(divider_gain > 0.0 && divider_gain <= 1.0))
      throw std::invalid_argument("AdmConfig: divider_gain must be in (0, 1]");
    if (dead_time_s < 0.0)
      throw std::invalid_argument("AdmConfig: dead_time_s must be >= 0");
    if (spike_pulse_width_s < 10e-9 || spike_pulse_width_s > 500e-9)
      throw std::invalid_argument(
          "AdmConfig: spike_pulse_width_s must be in [10 ns, 500 ns]");
    if (threshold_jitter_sigma_v < 0.0)
      throw std::invalid_argument("AdmConfig: jitter sigma must be >= 0");
  }
};

// Feedback-and-reset delta modulator walking a piecewise-linear input.
// An event fires whenever the divided input moves by the threshold
// since the last reset; the crossing time is found analytically inside
// the sample interval, so several events per interval are possible.
// State persists across encode_span calls, which lets a caller drive
// the encoder in closed-loop segments.
class AdmChannel {
 public:
  explicit AdmChannel(const AdmConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

  const AdmConfig& config() const { return cfg_; }
  double v_track() const { return v_track_; }

  // Encodes sig over [t_begin, t_end). delta_at(t) supplies the divided
  // node threshold (volts); emit(event, delta_eff) receives each spike
  // together with the input-referred step at the event.
  template <class DeltaFn, class EmitFn>
  void encode_span(const AudioSignal& sig, double t_begin, double t_end,
                   DeltaFn&& delta_at, EmitFn&& emit) {
    const double rate = sig.sample_rate_hz;
    if (!(rate > 0.0))
      throw std::invalid_argument("AdmChannel: signal has no sample rate");
    if (!started_) {
      cursor_s_ = t_begin;
      v_track_ = sig.value_at(t_begin);
      started_ = true;
    }
    const double t_sig_end = sig.end_time_s();
    const std::size_t n = sig.samples.size();

    while (cursor_s_ < t_end) {
      double delta = delta_at(cursor_s_);
      if (cfg_.threshold_jitter_sigma_v > 0.0)
        delta += cfg_.threshold_jitter_sigma_v * next_jitter();
      delta = std::max(delta, 1e-12);
      const double delta_eff = delta / cfg_.divider_gain;

      const double v_c = sig.value_at(cursor_s_);
      const double u = v_c - v_track_;
      if (u >= delta_eff) {
        emit_event(+1, cursor_s_, v_c, delta_eff, emit);
        continue;
      }
      if (u <= -delta_eff) {
        emit_event(-1, cursor_s_, v_c, delta_eff, emit);
        continue;
      }

      if (cursor_s_ >= t_sig_end || n < 2) {
        cursor_s_ = t_end;  // constant tail, no further crossings
        break;
      }
      if (cursor_s_ < sig.t0_s) {
        cursor_s_ = std::min(sig.t0_s, t_end);  // constant head
        continue;
      }
      std::size_t i = static_cast<std::size_t>(
          std::max(0.0, (cursor_s_ - sig.t0_s) * rate));
      i = std::max(i, seg_hint_);
      if (i >= n - 1) {
        cursor_s_ = t_end;
        break;
      }
      const double seg_end =
          sig.t0_s + static_cast<double>(i + 1) / rate;
      const double stop = std::min(seg_end, t_end);
      const double slope = (sig.samples[i + 1] - sig.samples[i]) * rate;
      // Crossings are decided on voltage, not time: a rounded crossing
      // instant must not push a reached level past the segment end.
      bool crossed = false;
      if (slope > 0.0) {
        const double target = v_track_ + delta_eff;
        const double v_stop = stop == seg_end
                                  ? sig.samples[i + 1]
                                  : v_c + slope * (stop - cursor_s_);
        if (v_stop >= target) {
          const double t_x = std::clamp(
              cursor_s_ + (target - v_c) / slope, cursor_s_, stop);
          emit_event(+1, t_x, target, delta_eff, emit);
          crossed = true;
        }
      } else if (slope < 0.0) {
        const double target = v_track_ - delta_eff;
        const double v_stop = stop == seg_end
                                  ? sig.samples[i + 1]
                                  : v_c + slope * (stop - cursor_s_);
        if (v_stop <= target) {
          const double t_x = std::clamp(
              cursor_s_ + (target - v_c) / slope, cursor_s_, stop);
          emit_event(-1, t_x, target, delta_eff, emit);
          crossed = true;
        }
      }
      if (!crossed) {
        cursor_s_ = stop;
        if (stop == seg_end) seg_hint_ = i + 1;  // never revisit a segment
      }
    }
  }

 private:
  template <class EmitFn>
  void emit_event(int polarity, double t_s, double v_at_event,
                  double delta_eff, EmitFn&& emit) {
    auto t_ns = static_cast<std::uint64_t>(
        std::llround(std::max(0.0, t_s) * 1e9));
    if (any_event_ && t_ns <= last_t_ns_) t_ns = last_t_ns_ + 1;
    last_t_ns_ = t_ns;
    any_event_ = true;
    v_track_ = v_at_event;
    cursor_s_ = t_s + cfg_.dead_time_s;
    emit(SpikeEvent{t_ns, cfg_.channel, polarity}, delta_eff);
  }

  double next_jitter() {
    const std::uint64_t k = jitter_counter_++;
    double u1 = uniform01(mix64(cfg_.jitter_seed, 2 * k));
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform01(mix64(cfg_.jitter_seed, 2 * k + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  AdmConfig cfg_;
  bool started_ = false;
  double cursor_s_ = 0.0;
  double v_track_ = 0.0;
  std::size_t seg_hint_ = 0;
  std::uint64_t last_t_ns_ = 0;
  bool any_event_ = false;
  std::uint64_t jitter_counter_ = 0;
};

struct EncodeResult {
  std::vector<SpikeEvent> events;
  std::vector<double> delta_eff_at_event;  // input-referred step per event
};

// One-shot hardware-channel encode over the whole signal with a
// time-varying threshold source.
template <class DeltaFn>
EncodeResult adm_encode(const AdmConfig& cfg, const AudioSignal& sig,
                        DeltaFn&& delta_at) {
  sig.validate();
  AdmChannel channel(cfg);
  EncodeResult result;
  channel.encode_span(sig, sig.t0_s, sig.end_time_s(), delta_at,
                      [&](const SpikeEvent& ev, double de) {
                        result.events.push_back(ev);
                        result.delta_eff_at_event.push_back(de);
                      });
  return result;
}

inline EncodeResult adm_encode(const AdmConfig& cfg, const AudioSignal& sig,
                               const std::function<double(double)>& delta_at) {
  return adm_encode<const std::function<double(double)>&>(cfg, sig, delta_at);
}

inline AdmConfig ideal_adm_config(int channel = 0) {
  AdmConfig cfg;
  cfg.channel = channel;
  cfg.divider_gain = 1.0;
  cfg.dead_time_s = 0.0;
  return cfg;
}

// Fixed-threshold ideal delta modulator: unit divider, no dead time.
// This is the simulation baseline used for matched-budget comparisons.
inline std::vector<SpikeEvent> ideal_adm_encode(const AudioSignal& sig,
                                                double delta_v,
                                                int channel = 0) {
  if (!(delta_v > 0.0))
    throw std::invalid_argument("ideal_adm_encode: delta_v must be > 0");
  return adm_encode(ideal_adm_config(channel), sig,
                    [delta_v](double) { return delta_v; })
      .events;
}

// Event count of the ideal encoder without storing the events.
inline std::size_t ideal_adm_count(const AudioSignal& sig, double delta_v) {
  if (!(delta_v > 0.0))
    throw std::invalid_argument("ideal_adm_count: delta_v must be > 0");
  sig.validate();
  AdmChannel channel(ideal_adm_config());
  std::size_t count = 0;
  channel.encode_span(sig, sig.t0_s, sig.end_time_s(),
                      [delta_v](double) { return delta_v; },
                      [&](const SpikeEvent&, double) { ++count; });
  return count;
}

// Staircase reconstruction: v0 plus the running sum of signed steps,
// sampled uniformly. step_v[i] is the input-referred step of events[i].
inline AudioSignal reconstruct(const std::vector<SpikeEvent>& events,
                               const std::vector<double>& step_v, double v0,
                               double rate_hz, double duration_s,
                               double t0_s = 0.0) {
  if (step_v.size() != events.size())
    throw std::invalid_argument("reconstruct: one step per event required");
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].t_ns < events[i - 1].t_ns)
      throw std::invalid_argument("reconstruct: events must be sorted");
  }
  if (!(rate_hz > 0.0) || !(duration_s >= 0.0))
    throw std::invalid_argument("reconstruct: bad rate or duration");
  AudioSignal out;
  out.sample_rate_hz = rate_hz;
  out.t0_s = t0_s;
  const auto n = static_cast<std::size_t>(std::llround(duration_s * rate_hz));
  out.samples.resize(n);
  double level = v0;
  std::size_t next = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = t0_s + static_cast<double>(k) / rate_hz;
    const auto t_ns =
        static_cast<std::uint64_t>(std::llround(std::max(0.0, t) * 1e9));
    while (next < events.size() && events[next].t_ns <= t_ns) {
      level += static_cast<double>(events[next].polarity) * step_v[next];
      ++next;
    }
    out.samples[k] = level;
  }
  return out;
}

inline AudioSignal reconstruct(const std::vector<SpikeEvent>& events,
                               double step_v, double v0, double rate_hz,
                               double duration_s, double t0_s = 0.0) {
  return reconstruct(events, std::vector<double>(events.size(), step_v), v0,
                     rate_hz, duration_s, t0_s);
}

inline void sort_events(std::vector<SpikeEvent>& events) {
  std::stable_sort(events.begin(), events.end(),
                   [](const SpikeEvent& a, const SpikeEvent& b) {
                     return a.t_ns != b.t_ns ? a.t_ns < b.t_ns
                                             : a.channel < b.channel;
                   });
}

}  // namespace adaspike

#endif  // ADASPIKE_FRONTEND_HPP
