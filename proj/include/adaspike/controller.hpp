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

#ifndef ADASPIKE_CONTROLLER_HPP
#define ADASPIKE_CONTROLLER_HPP

#include <cmath>
#include <future>
#include <stdexcept>
#include <vector>

#include "adaspike/frontend.hpp"
#include "adaspike/memristor.hpp"
#include "adaspike/signal.hpp"

namespace adaspike {

enum class CountPolarity { kBoth, kPositiveOnly };

struct ControllerConfig {
  double cmp_clk_hz = 100.0;
  int thr_hit = 50;
  double v_sti = 2.5;
  double pw_s = 5e-3;
  double switch_guard_s = 10e-6;
  CountPolarity count_polarity = CountPolarity::kBoth;
  double phase_s = 0.0;  // offset of the first CMP_CLK edge

  void validate() const {
    if (!(cmp_clk_hz > 0.0))
      throw std::invalid_argument("ControllerConfig: cmp_clk_hz must be > 0");
    if (thr_hit < 1)
      throw std::invalid_argument("ControllerConfig: thr_hit must be >= 1");
    if (!(pw_s > 0.0))
      throw std::invalid_argument("ControllerConfig: pw_s must be > 0");
    if (switch_guard_s < 0.0)
      throw std::invalid_argument(
          "ControllerConfig: switch_guard_s must be >= 0");
    if (phase_s < 0.0)
      throw std::invalid_argument("ControllerConfig: phase_s must be >= 0");
  }
};

struct ProgrammingEvent {
  double t_start_s = 0.0;  // trigger edge; threshold frozen from here
  double t_end_s = 0.0;    // reconnect; equals t_start + pw + 2*guard
  int channel = 0;
  double v_sti = 0.0;
  double pw_s = 0.0;
  double i_before_a = 0.0;
  double i_after_a = 0.0;
  double gain = 1.0;
};

struct DroppedTrigger {
  double t_s = 0.0;
  int channel = 0;
  int count = 0;
};

enum class SwitchAction {
  kS1Open,   // hold the threshold bias
  kS2Open,   // disconnect device from the encoder
  kS3Close,  // connect device to the pulse driver
  kPulse,
  kS3Open,
  kS2Close,
  kS1Close
};

struct SwitchStep {
  double t_s = 0.0;
  SwitchAction action = SwitchAction::kS1Open;
};

struct SwitchSchedule {
  double t_start_s = 0.0;
  double t_pulse_on_s = 0.0;
  double t_pulse_off_s = 0.0;
  double t_end_s = 0.0;
  std::vector<SwitchStep> steps;
};

// Switch choreography around one programming pulse. The opening steps
// fit inside one guard interval before the pulse and are mirrored after
// it, so the whole disconnect window is pw + 2 * guard.
inline SwitchSchedule sequence_switches(double t_s,
                                        const ControllerConfig& cfg) {
  SwitchSchedule s;
  const double g = cfg.switch_guard_s;
  s.t_start_s = t_s;
  s.t_pulse_on_s = t_s + g;
  s.t_pulse_off_s = s.t_pulse_on_s + cfg.pw_s;
  s.t_end_s = s.t_pulse_off_s + g;
  s.steps = {{t_s, SwitchAction::kS1Open},
             {t_s + 0.5 * g, SwitchAction::kS2Open},
             {s.t_pulse_on_s, SwitchAction::kS3Close},
             {s.t_pulse_on_s, SwitchAction::kPulse},
             {s.t_pulse_off_s, SwitchAction::kS3Open},
             {s.t_pulse_off_s + 0.5 * g, SwitchAction::kS2Close},
             {s.t_end_s, SwitchAction::kS1Close}};
  return s;
}

// Counter evaluation at a CMP_CLK edge: returns the channels at or
// above the hit threshold and resets every counter.
inline std::vector<int> evaluate_counters(std::vector<int>& counts,
                                          const ControllerConfig& cfg) {
  std::vector<int> hits;
  for (std::size_t ch = 0; ch < counts.size(); ++ch) {
    if (counts[ch] >= cfg.thr_hit) hits.push_back(static_cast<int>(ch));
    counts[ch] = 0;
  }
  return hits;
}

struct DeltaTrace {
  double t0_s = 0.0;
  double dt_s = 0.0;
  std::vector<double> delta_v;
};

struct ChannelSetup {
  AudioSignal signal;
  DeviceState device;
  AdmConfig adm;
};

struct ChannelRunResult {
  std::vector<SpikeEvent> events;
  std::vector<double> delta_eff_at_event;
  std::vector<ProgrammingEvent> programming;
  std::vector<DroppedTrigger> dropped;
  std::vector<int> window_counts;  // per CMP window, trailing partial last
  DeltaTrace trace;
  DeviceState device;  // final state
};

struct AdaptiveRunResult {
  std::vector<ChannelRunResult> channels;
  std::vector<SpikeEvent> merged_events;  // ordered by (t_ns, channel)
};

namespace controller_detail {

inline int counted(const SpikeEvent& ev, CountPolarity polarity) {
  return polarity == CountPolarity::kBoth || ev.polarity > 0 ? 1 : 0;
}

}  // namespace controller_detail

// Closed-loop simulation of one channel. The encoder runs continuously;
// the threshold follows the device current except inside a programming
// window, where it is sampled-and-held. Spike counters are evaluated
// and reset at every CMP_CLK edge; a hit while the device is already
// disconnected is dropped and logged.
inline ChannelRunResult run_adaptive_channel(const ChannelSetup& setup,
                                             const ControllerConfig& cfg,
                                             const ThresholdGenConfig& thr_cfg,
                                             int trace_decimation = 100) {
  cfg.validate();
  thr_cfg.validate();
  setup.signal.validate();
  if (trace_decimation < 1)
    throw std::invalid_argument("run_adaptive_channel: trace_decimation >= 1");

  ChannelRunResult out;
  out.device = setup.device;
  DeviceState& dev = out.device;
  AdmChannel encoder(setup.adm);

  const double t0 = setup.signal.t0_s;
  const double t_end = setup.signal.end_time_s();
  const double t_clk = 1.0 / cfg.cmp_clk_hz;

  bool hold_active = false;
  double held_delta_v = 0.0;
  double disconnect_until = t0;

  const auto delta_at = [&](double t) {
    if (hold_active && t < disconnect_until) return held_delta_v;
    return threshold_from_current(thr_cfg, dev.read_current(t)).delta_v;
  };

  out.trace.t0_s = t0;
  out.trace.dt_s =
      static_cast<double>(trace_decimation) / setup.signal.sample_rate_hz;
  std::size_t next_trace = 0;

  double window_start = t0;
  int window_count = 0;
  int edge_index = 1;

  while (window_start < t_end) {
    double edge = t0 + cfg.phase_s + edge_index * t_clk;
    const bool is_clk_edge = edge <= t_end;
    if (!is_clk_edge) edge = t_end;

    // Record trace points that fall inside this window before the
    // device state can change at the edge.
    while (out.trace.t0_s + static_cast<double>(next_trace) * out.trace.dt_s <
           edge - 1e-15) {
      const double t =
          out.trace.t0_s + static_cast<double>(next_trace) * out.trace.dt_s;
      out.trace.delta_v.push_back(delta_at(t));
      ++next_trace;
    }

    encoder.encode_span(setup.signal, window_start, edge, delta_at,
                        [&](const SpikeEvent& ev, double de) {
                          out.events.push_back(ev);
                          out.delta_eff_at_event.push_back(de);
                          window_count += controller_detail::counted(
                              ev, cfg.count_polarity);
                        });
    out.window_counts.push_back(window_count);

    if (is_clk_edge && window_count >= cfg.thr_hit) {
      if (edge >= disconnect_until) {
        const double i_before = dev.read_current(edge);
        held_delta_v = threshold_from_current(thr_cfg, i_before).delta_v;
        hold_active = true;
        const SwitchSchedule seq = sequence_switches(edge, cfg);
        disconnect_until = seq.t_end_s;
        dev.apply_pulse(seq.t_pulse_on_s, cfg.v_sti, cfg.pw_s);
        const double i_after = dev.read_current(seq.t_end_s);
        out.programming.push_back({edge, seq.t_end_s, setup.adm.channel,
                                   cfg.v_sti, cfg.pw_s, i_before, i_after,
                                   onset_gain(i_before, i_after)});
      } else {
        out.dropped.push_back({edge, setup.adm.channel, window_count});
      }
    }
    window_count = 0;
    window_start = edge;
    ++edge_index;
  }
  return out;
}

// Runs every channel of the closed loop. Channels are independent, so
// the result does not depend on the number of worker threads.
inline AdaptiveRunResult run_adaptive(const std::vector<ChannelSetup>& channels,
                                      const ControllerConfig& cfg,
                                      const ThresholdGenConfig& thr_cfg,
                                      int trace_decimation = 100,
                                      int threads = 1) {
  AdaptiveRunResult result;
  result.channels.resize(channels.size());
  if (threads > 1 && channels.size() > 1) {
    std::vector<std::future<ChannelRunResult>> futures;
    futures.reserve(channels.size());
    for (const auto& setup : channels) {
      futures.push_back(std::async(std::launch::async, [&setup, &cfg, &thr_cfg,
                                                        trace_decimation]() {
        return run_adaptive_channel(setup, cfg, thr_cfg, trace_decimation);
      }));
    }
    for (std::size_t i = 0; i < futures.size(); ++i)
      result.channels[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < channels.size(); ++i)
      result.channels[i] =
          run_adaptive_channel(channels[i], cfg, thr_cfg, trace_decimation);
  }
  for (const auto& ch : result.channels)
    result.merged_events.insert(result.merged_events.end(), ch.events.begin(),
                                ch.events.end());
  sort_events(result.merged_events);
  return result;
}

}  // namespace adaspike

#endif  // ADASPIKE_CONTROLLER_HPP
