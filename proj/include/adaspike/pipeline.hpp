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

#ifndef ADASPIKE_PIPELINE_HPP
#define ADASPIKE_PIPELINE_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "adaspike/config.hpp"
#include "adaspike/controller.hpp"
#include "adaspike/event_io.hpp"
#include "adaspike/frontend.hpp"
#include "adaspike/gammatone.hpp"
#include "adaspike/memristor.hpp"
#include "adaspike/metrics.hpp"
#include "adaspike/signal.hpp"
#include "adaspike/version.hpp"
#include "adaspike/wav.hpp"

namespace adaspike {

inline AudioSignal make_stimulus(const RunConfig& cfg) {
  if (cfg.stimulus.spec.kind == StimulusKind::kFile)
    return load_wav(cfg.stimulus.spec.path);
  SignalSpec spec = cfg.stimulus.spec;
  spec.variant_seed = mix64(cfg.seed, 0xB0);
  return synthesize(spec, cfg.stimulus.duration_s, cfg.stimulus.rate_hz);
}

// Band decomposition followed by the per-band level convention: each
// non-silent band is normalised to the target span and recentred on the
// encoder common-mode voltage. With the filterbank disabled the raw
// stimulus is the single channel.
inline std::vector<AudioSignal> make_channel_signals(const RunConfig& cfg,
                                                     const AudioSignal& sig) {
  if (!cfg.filterbank.enabled) return {sig};
  const auto bank =
      design_gammatone_bank(cfg.filterbank.cfg, sig.sample_rate_hz);
  auto bands = apply_filterbank(bank, sig);
  for (auto& band : bands) {
    const auto [mn, mx] =
        std::minmax_element(band.samples.begin(), band.samples.end());
    if (*mx > *mn)
      band = normalize_pp(band, cfg.filterbank.band_target_vpp);
    band = recenter_midrange(band, cfg.filterbank.band_center_v);
  }
  return bands;
}

inline std::vector<DeviceParams> make_devices(const RunConfig& cfg,
                                              int n_channels) {
  const DeviceParams base = cfg.device.resolved_params();
  if (!cfg.population.enabled)
    return std::vector<DeviceParams>(static_cast<std::size_t>(n_channels),
                                     base);
  PopulationSpec spec;
  spec.n_devices = n_channels;
  spec.base = base;
  spec.i_hrs_median_a = base.i_hrs_a;
  spec.tau1_median_s = base.tau1_s;
  spec.tau2_median_s = base.tau2_s;
  spec.i_hrs_sigma = cfg.population.i_hrs_sigma;
  spec.tau1_sigma = cfg.population.tau1_sigma;
  spec.tau2_sigma = cfg.population.tau2_sigma;
  spec.rng_seed = mix64(cfg.seed, 0xD0);
  return sample_population(spec);
}

inline AdmConfig make_adm_config(const RunConfig& cfg, int channel) {
  AdmConfig adm;
  adm.channel = channel;
  adm.divider_gain = cfg.frontend.divider_gain;
  adm.dead_time_s = cfg.frontend.dead_time_s;
  adm.spike_pulse_width_s = cfg.frontend.spike_pulse_width_s;
  adm.threshold_jitter_sigma_v = cfg.frontend.threshold_jitter_sigma_v;
  adm.jitter_seed =
      mix64(cfg.seed, 0xA0 + static_cast<std::uint64_t>(channel));
  return adm;
}

struct EncodeArtifacts {
  AudioSignal stimulus;
  std::vector<AudioSignal> channel_signals;
  std::vector<DeviceParams> devices;
  AdaptiveRunResult run;
  std::vector<RateSeries> rates;  // display windows, per channel
  Cochleagram coch;
};

inline EncodeArtifacts run_encode_pipeline(const RunConfig& cfg,
                                           int threads = 1) {
  EncodeArtifacts art;
  art.stimulus = make_stimulus(cfg);
  art.channel_signals = make_channel_signals(cfg, art.stimulus);
  const int n_channels = static_cast<int>(art.channel_signals.size());
  art.devices = make_devices(cfg, n_channels);

  std::vector<ChannelSetup> setups;
  setups.reserve(art.channel_signals.size());
  for (int ch = 0; ch < n_channels; ++ch) {
    ChannelSetup setup;
    setup.signal = art.channel_signals[static_cast<std::size_t>(ch)];
    setup.device =
        DeviceState(art.devices[static_cast<std::size_t>(ch)]);
    setup.adm = make_adm_config(cfg, ch);
    setups.push_back(std::move(setup));
  }
  art.run = run_adaptive(setups, cfg.controller, cfg.frontend.thr,
                         cfg.trace_decimation, threads);

  const double t0 = art.stimulus.t0_s;
  const double duration = art.stimulus.duration_s();
  art.rates.reserve(art.run.channels.size());
  for (const auto& ch : art.run.channels)
    art.rates.push_back(
        spike_rate(ch.events, cfg.metrics.rate_window_s, t0, duration));
  art.coch = cochleagram(art.run.merged_events, n_channels,
                         cfg.metrics.cochleagram_window_s, t0, duration);
  return art;
}

inline void write_manifest(const RunConfig& cfg, const std::string& command,
                           const std::filesystem::path& out_dir) {
  nlohmann::json manifest;
  manifest["tool"] = "adaspike";
  manifest["version"] = kVersion;
  manifest["command"] = command;
  manifest["config"] = to_json(cfg);
  std::ofstream os(out_dir / "manifest.json", std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot write manifest in " + out_dir.string());
  os << manifest.dump(2) << '\n';
}

inline void write_encode_artifacts(const RunConfig& cfg,
                                   const EncodeArtifacts& art,
                                   const std::string& out) {
  namespace fs = std::filesystem;
  const fs::path dir(out);
  fs::create_directories(dir);
  write_manifest(cfg, "encode", dir);
  write_events_csv((dir / "events.csv").string(), art.run.merged_events);
  write_events_binary((dir / "events.bin").string(), art.run.merged_events);

  std::vector<ProgrammingEvent> programming;
  std::vector<DroppedTrigger> dropped;
  std::vector<WindowSeries> rate_columns;
  std::vector<std::string> rate_names;
  for (std::size_t ch = 0; ch < art.run.channels.size(); ++ch) {
    const auto& lane = art.run.channels[ch];
    write_events_csv(
        (dir / ("events_ch" + std::to_string(ch) + ".csv")).string(),
        lane.events);
    write_delta_trace_csv(
        (dir / ("delta_ch" + std::to_string(ch) + ".csv")).string(),
        lane.trace);
    programming.insert(programming.end(), lane.programming.begin(),
                       lane.programming.end());
    dropped.insert(dropped.end(), lane.dropped.begin(), lane.dropped.end());
    rate_columns.push_back(art.rates[ch]);
    rate_names.push_back("ch" + std::to_string(ch));
  }
  std::sort(programming.begin(), programming.end(),
            [](const ProgrammingEvent& a, const ProgrammingEvent& b) {
              return a.t_start_s != b.t_start_s ? a.t_start_s < b.t_start_s
                                                : a.channel < b.channel;
            });
  std::sort(dropped.begin(), dropped.end(),
            [](const DroppedTrigger& a, const DroppedTrigger& b) {
              return a.t_s != b.t_s ? a.t_s < b.t_s : a.channel < b.channel;
            });
  write_programming_log_csv((dir / "programming_log.csv").string(),
                            programming);
  write_dropped_triggers_csv((dir / "dropped_triggers.csv").string(), dropped);
  write_window_series_csv((dir / "rates.csv").string(), rate_columns,
                          rate_names);
  write_cochleagram_csv((dir / "cochleagram.csv").string(), art.coch);
  write_population_csv((dir / "population.csv").string(), art.devices);
}

struct OnsetComparison {
  double onset_s = 0.0;
  std::size_t adaptive_count = 0;
  std::size_t baseline_count = 0;
};

struct ChannelPearson {
  PearsonResult adaptive_full;
  PearsonResult baseline_full;
  PearsonResult adaptive_onset;   // restricted to the onset period
  PearsonResult baseline_onset;
};

struct CompareArtifacts {
  EncodeArtifacts adaptive;
  bool degenerate = false;  // no adaptive spikes, nothing to match
  double baseline_delta_v = 0.0;
  std::size_t adaptive_total = 0;
  std::size_t baseline_total = 0;
  std::vector<std::vector<SpikeEvent>> baseline_channel_events;
  std::vector<SpikeEvent> baseline_events;  // merged
  std::vector<ChannelPearson> pearson;
  std::vector<OnsetComparison> onsets;
  bool totals_matched = false;       // within one spike
  bool onset_salience = false;       // counts >= everywhere, > somewhere
  bool pearson_ordering = false;     // adaptive r >= baseline r, all channels
};

// Adaptive run against the matched-budget fixed-threshold ideal
// baseline: one global threshold is calibrated so the baseline's total
// spike count matches the adaptive total, then both runs are compared
// on rate-envelope correlation and per-onset spike counts.
inline CompareArtifacts run_compare_pipeline(const RunConfig& cfg,
                                             int threads = 1) {
  CompareArtifacts art;
  art.adaptive = run_encode_pipeline(cfg, threads);
  const auto& channels = art.adaptive.channel_signals;
  art.adaptive_total = art.adaptive.run.merged_events.size();

  if (art.adaptive_total == 0) {
    art.degenerate = true;
    return art;
  }

  const auto total_count = [&channels](double delta) {
    std::size_t total = 0;
    for (const auto& sig : channels) total += ideal_adm_count(sig, delta);
    return total;
  };
  double span = 0.0;
  for (const auto& sig : channels) {
    const auto [mn, mx] =
        std::minmax_element(sig.samples.begin(), sig.samples.end());
    span = std::max(span, *mx - *mn);
  }
  const auto budget = matched_budget_delta_fn(
      total_count, art.adaptive_total, 0.25 * cfg.frontend.thr.delta_min_v,
      span > 0.0 ? span * (1.0 + 1e-9) : 1.0);
  art.baseline_delta_v = budget.delta_v;
  art.baseline_total = budget.count;
  art.totals_matched =
      (art.baseline_total > art.adaptive_total
           ? art.baseline_total - art.adaptive_total
           : art.adaptive_total - art.baseline_total) <= 1;

  art.baseline_channel_events.resize(channels.size());
  for (std::size_t ch = 0; ch < channels.size(); ++ch) {
    art.baseline_channel_events[ch] = ideal_adm_encode(
        channels[ch], art.baseline_delta_v, static_cast<int>(ch));
    art.baseline_events.insert(art.baseline_events.end(),
                               art.baseline_channel_events[ch].begin(),
                               art.baseline_channel_events[ch].end());
  }
  sort_events(art.baseline_events);

  const double t0 = art.adaptive.stimulus.t0_s;
  const double duration = art.adaptive.stimulus.duration_s();
  const double w = cfg.metrics.pearson_window_s;
  const std::size_t onset_windows = static_cast<std::size_t>(
      std::max(2.0, std::floor(cfg.metrics.onset_period_s / w)));
  art.pearson.resize(channels.size());
  bool ordering = true;
  for (std::size_t ch = 0; ch < channels.size(); ++ch) {
    const auto env = rms_envelope(channels[ch], w);
    const auto rate_a =
        spike_rate(art.adaptive.run.channels[ch].events, w, t0, duration);
    const auto rate_b =
        spike_rate(art.baseline_channel_events[ch], w, t0, duration);
    auto& pr = art.pearson[ch];
    pr.adaptive_full = pearson_r(rate_a.values, env.values);
    pr.baseline_full = pearson_r(rate_b.values, env.values);
    const std::size_t n_onset = std::min(onset_windows, env.values.size());
    if (n_onset >= 2) {
      const auto head = [n_onset](const std::vector<double>& v) {
        return std::vector<double>(v.begin(),
                                   v.begin() + static_cast<long>(n_onset));
      };
      pr.adaptive_onset = pearson_r(head(rate_a.values), head(env.values));
      pr.baseline_onset = pearson_r(head(rate_b.values), head(env.values));
    }
    if (pr.adaptive_full.defined && pr.baseline_full.defined &&
        pr.adaptive_full.r < pr.baseline_full.r)
      ordering = false;
  }
  art.pearson_ordering = ordering;

  if (cfg.stimulus.spec.kind == StimulusKind::kBurstTrain) {
    const auto count_in = [](const std::vector<SpikeEvent>& events, double a,
                             double b) {
      std::size_t n = 0;
      for (const auto& ev : events) {
        const double t = static_cast<double>(ev.t_ns) * 1e-9;
        if (t >= a && t < b) ++n;
      }
      return n;
    };
    bool all_ge = true, any_gt = false;
    for (double onset : burst_onsets(cfg.stimulus.spec)) {
      OnsetComparison cmp;
      cmp.onset_s = onset;
      cmp.adaptive_count = count_in(art.adaptive.run.merged_events, onset,
                                    onset + cfg.metrics.onset_window_s);
      cmp.baseline_count = count_in(art.baseline_events, onset,
                                    onset + cfg.metrics.onset_window_s);
      all_ge = all_ge && cmp.adaptive_count >= cmp.baseline_count;
      any_gt = any_gt || cmp.adaptive_count > cmp.baseline_count;
      art.onsets.push_back(cmp);
    }
    art.onset_salience = all_ge && any_gt;
  }
  return art;
}

inline void write_compare_artifacts(const RunConfig& cfg,
                                    const CompareArtifacts& art,
                                    const std::string& out) {
  namespace fs = std::filesystem;
  const fs::path dir(out);
  fs::create_directories(dir);
  write_manifest(cfg, "compare", dir);
  write_events_csv((dir / "events_adaptive.csv").string(),
                   art.adaptive.run.merged_events);

  nlohmann::json report;
  report["degenerate"] = art.degenerate;
  report["adaptive_total"] = art.adaptive_total;
  if (!art.degenerate) {
    write_events_csv((dir / "events_baseline.csv").string(),
                     art.baseline_events);
    report["baseline_total"] = art.baseline_total;
    report["baseline_delta_v"] = art.baseline_delta_v;
    report["totals_matched_within_one"] = art.totals_matched;
    report["pearson_ordering_ok"] = art.pearson_ordering;
    auto& channels = report["channels"];
    channels = nlohmann::json::array();
    for (std::size_t ch = 0; ch < art.pearson.size(); ++ch) {
      const auto& pr = art.pearson[ch];
      nlohmann::json row;
      row["channel"] = ch;
      row["r_full_adaptive"] =
          pr.adaptive_full.defined ? nlohmann::json(pr.adaptive_full.r)
                                   : nlohmann::json();
      row["r_full_baseline"] =
          pr.baseline_full.defined ? nlohmann::json(pr.baseline_full.r)
                                   : nlohmann::json();
      row["r_onset_adaptive"] =
          pr.adaptive_onset.defined ? nlohmann::json(pr.adaptive_onset.r)
                                    : nlohmann::json();
      row["r_onset_baseline"] =
          pr.baseline_onset.defined ? nlohmann::json(pr.baseline_onset.r)
                                    : nlohmann::json();
      channels.push_back(row);
    }
    if (!art.onsets.empty()) {
      report["onset_salience_ok"] = art.onset_salience;
      auto& onsets = report["onsets"];
      onsets = nlohmann::json::array();
      for (const auto& o : art.onsets) {
        nlohmann::json row;
        row["onset_s"] = o.onset_s;
        row["adaptive_count"] = o.adaptive_count;
        row["baseline_count"] = o.baseline_count;
        onsets.push_back(row);
      }
      std::ofstream csv(dir / "onsets.csv", std::ios::binary);
      csv << "onset_s,adaptive_count,baseline_count\n";
      for (const auto& o : art.onsets)
        csv << format_double(o.onset_s) << ',' << o.adaptive_count << ','
            << o.baseline_count << '\n';
    }

    const double t0 = art.adaptive.stimulus.t0_s;
    const double duration = art.adaptive.stimulus.duration_s();
    const double w = cfg.metrics.pearson_window_s;
    std::vector<WindowSeries> cols;
    std::vector<std::string> names;
    for (std::size_t ch = 0; ch < art.adaptive.channel_signals.size(); ++ch) {
      cols.push_back(
          spike_rate(art.adaptive.run.channels[ch].events, w, t0, duration));
      names.push_back("adaptive_ch" + std::to_string(ch));
      cols.push_back(
          spike_rate(art.baseline_channel_events[ch], w, t0, duration));
      names.push_back("baseline_ch" + std::to_string(ch));
      cols.push_back(rms_envelope(art.adaptive.channel_signals[ch], w));
      names.push_back("envelope_ch" + std::to_string(ch));
    }
    write_window_series_csv((dir / "rates_compare.csv").string(), cols,
                            names);
  }
  std::ofstream os(dir / "report.json", std::ios::binary);
  os << report.dump(2) << '\n';
}

struct SweepRow {
  double i_a = 0.0;
  double delta_v = 0.0;
  double delta_eff_v = 0.0;
  std::size_t count = 0;
  double window_count = 0.0;  // per 10 ms, the measured-figure convention
  double measured_rate_hz = 0.0;
  double theoretical_rate_hz = 0.0;
  double rel_error = 0.0;
};

// Fixed-tone sweep of the device read current through the threshold
// transfer: one encode per current, tabulated against 4*A*f/delta_eff.
inline std::vector<SweepRow> run_sweep_pipeline(const RunConfig& cfg) {
  const auto& sw = cfg.sweep;
  SignalSpec spec;
  spec.amplitude_vpp = sw.amplitude_vpp;
  spec.frequency_hz = sw.frequency_hz;
  spec.offset_v = sw.offset_v;
  const AudioSignal tone = synth_sine(spec, sw.duration_s, sw.rate_hz);
  const double amplitude = 0.5 * sw.amplitude_vpp;

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(sw.n_points));
  for (int k = 0; k < sw.n_points; ++k) {
    const double frac =
        sw.n_points == 1 ? 0.0
                         : static_cast<double>(k) /
                               static_cast<double>(sw.n_points - 1);
    const double i = sw.log_scale
                         ? sw.i_min_a * std::pow(sw.i_max_a / sw.i_min_a, frac)
                         : sw.i_min_a + (sw.i_max_a - sw.i_min_a) * frac;
    SweepRow row;
    row.i_a = i;
    row.delta_v = threshold_from_current(cfg.frontend.thr, i).delta_v;
    if (sw.use_ideal) {
      row.delta_eff_v = row.delta_v;
      row.count = ideal_adm_count(tone, row.delta_v);
    } else {
      AdmConfig adm = make_adm_config(cfg, 0);
      row.delta_eff_v = row.delta_v / adm.divider_gain;
      const double delta = row.delta_v;
      row.count =
          adm_encode(adm, tone, [delta](double) { return delta; })
              .events.size();
    }
    row.measured_rate_hz = static_cast<double>(row.count) / sw.duration_s;
    row.window_count = row.measured_rate_hz * 0.01;
    row.theoretical_rate_hz =
        theoretical_rate(amplitude, sw.frequency_hz, row.delta_eff_v);
    row.rel_error = (row.measured_rate_hz - row.theoretical_rate_hz) /
                    row.theoretical_rate_hz;
    rows.push_back(row);
  }
  return rows;
}

inline void write_sweep_artifacts(const RunConfig& cfg,
                                  const std::vector<SweepRow>& rows,
                                  const std::string& out) {
  namespace fs = std::filesystem;
  const fs::path dir(out);
  fs::create_directories(dir);
  write_manifest(cfg, "rate-sweep", dir);
  std::ofstream os(dir / "sweep.csv", std::ios::binary);
  os << "i_a,delta_v,delta_eff_v,count,window_count,measured_rate_hz,"
        "theoretical_rate_hz,rel_error\n";
  for (const auto& r : rows) {
    os << format_double(r.i_a) << ',' << format_double(r.delta_v) << ','
       << format_double(r.delta_eff_v) << ',' << r.count << ','
       << format_double(r.window_count) << ','
       << format_double(r.measured_rate_hz) << ','
       << format_double(r.theoretical_rate_hz) << ','
       << format_double(r.rel_error) << '\n';
  }
}

struct PulseReport {
  double t_start_s = 0.0;
  double v_sti = 0.0;
  double pw_s = 0.0;
  double delta_i_a = 0.0;
  double i_before_a = 0.0;
  double i_after_a = 0.0;
  double gain = 1.0;
};

struct CharacterizeArtifacts {
  std::vector<PulseReport> pulses;
  std::vector<double> sample_t_s;
  std::vector<double> sample_i_a;
  BiexpFit fit;
  bool fitted = false;
};

// Pulse train characterisation: applies the configured pulses, samples
// the read current between and after them, and fits the terminal decay.
inline CharacterizeArtifacts run_characterize_pipeline(const RunConfig& cfg) {
  CharacterizeArtifacts art;
  DeviceState dev(cfg.device.resolved_params());
  const auto& ch = cfg.characterize;

  const double total =
      static_cast<double>(ch.n_pulses) * ch.spacing_s + ch.tail_s;
  double last_onset = 0.0;
  int next_pulse = 0;
  const auto n_samples =
      static_cast<std::size_t>(std::floor(total / ch.sample_dt_s)) + 1;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double t = static_cast<double>(k) * ch.sample_dt_s;
    while (next_pulse < ch.n_pulses &&
           static_cast<double>(next_pulse) * ch.spacing_s <= t) {
      const double t_start = static_cast<double>(next_pulse) * ch.spacing_s;
      PulseReport rep;
      rep.t_start_s = t_start;
      rep.v_sti = ch.v_sti;
      rep.pw_s = ch.pw_s;
      rep.i_before_a = dev.read_current(t_start);
      const auto result = dev.apply_pulse(t_start, ch.v_sti, ch.pw_s);
      rep.delta_i_a = result.delta_i_a;
      rep.i_after_a = dev.read_current(t_start + ch.pw_s);
      rep.gain = onset_gain(rep.i_before_a, rep.i_after_a);
      art.pulses.push_back(rep);
      last_onset = t_start + ch.pw_s;
      ++next_pulse;
    }
    if (t < last_onset) continue;  // inside a programming window
    art.sample_t_s.push_back(t);
    art.sample_i_a.push_back(dev.read_current(t));
  }

  // Fit the decay after the final pulse; residual components share the
  // same constants, so the tail is still bi-exponential.
  std::vector<double> t_fit, i_fit;
  for (std::size_t k = 0; k < art.sample_t_s.size(); ++k) {
    if (art.sample_t_s[k] >= last_onset) {
      t_fit.push_back(art.sample_t_s[k] - last_onset);
      i_fit.push_back(art.sample_i_a[k]);
    }
  }
  if (t_fit.size() >= 5) {
    art.fit = fit_biexponential(t_fit, i_fit);
    art.fitted = true;
  }
  return art;
}

inline void write_characterize_artifacts(const RunConfig& cfg,
                                         const CharacterizeArtifacts& art,
                                         const std::string& out) {
  namespace fs = std::filesystem;
  const fs::path dir(out);
  fs::create_directories(dir);
  write_manifest(cfg, "characterize-device", dir);

  std::ofstream decay(dir / "decay.csv", std::ios::binary);
  decay << "t_s,i_a\n";
  for (std::size_t k = 0; k < art.sample_t_s.size(); ++k)
    decay << format_double(art.sample_t_s[k]) << ','
          << format_double(art.sample_i_a[k]) << '\n';

  std::ofstream pulses(dir / "pulses.csv", std::ios::binary);
  pulses << "t_start_s,v_sti,pw_s,delta_i_a,i_before_a,i_after_a,gain\n";
  for (const auto& p : art.pulses)
    pulses << format_double(p.t_start_s) << ',' << format_double(p.v_sti)
           << ',' << format_double(p.pw_s) << ','
           << format_double(p.delta_i_a) << ','
           << format_double(p.i_before_a) << ','
           << format_double(p.i_after_a) << ',' << format_double(p.gain)
           << '\n';

  nlohmann::json fit;
  fit["fitted"] = art.fitted;
  if (art.fitted) {
    fit["converged"] = art.fit.converged;
    fit["i_inf_a"] = art.fit.i_inf_a;
    fit["a1_a"] = art.fit.a1;
    fit["tau1_s"] = art.fit.tau1_s;
    fit["a2_a"] = art.fit.a2;
    fit["tau2_s"] = art.fit.tau2_s;
    fit["residual_rms_a"] = art.fit.residual_rms;
  }
  std::ofstream os(dir / "fit.json", std::ios::binary);
  os << fit.dump(2) << '\n';
}

}  // namespace adaspike

#endif  // ADASPIKE_PIPELINE_HPP
