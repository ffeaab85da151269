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

#ifndef ADASPIKE_CONFIG_HPP
#define ADASPIKE_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "adaspike/controller.hpp"
#include "adaspike/frontend.hpp"
#include "adaspike/gammatone.hpp"
#include "adaspike/memristor.hpp"
#include "adaspike/signal.hpp"

namespace adaspike {

// Configuration problem with the offending field path attached; the
// CLI maps this onto its own exit code.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct StimulusConfig {
  SignalSpec spec;      // offset_v resolves to frontend v_cm when unset
  double duration_s = 1.0;
  double rate_hz = 1e5;
};

struct FilterbankSection {
  bool enabled = true;
  FilterbankConfig cfg;
  double band_target_vpp = 0.4;
  double band_center_v = 0.82;  // defaults to frontend v_cm
};

struct DeviceSection {
  DeviceParams params;
  std::optional<std::string> surface_csv;
  double delta_i_at_op_a = 1e-7;
  double v_on = 1.0;
  double exp_v = 2.0;
  double exp_pw = 0.5;

  DeviceParams resolved_params() const {
    DeviceParams p = params;
    p.surface = surface_csv ? DeltaISurface::from_csv(*surface_csv)
                            : DeltaISurface::parametric(delta_i_at_op_a, 2.5,
                                                        5e-3, v_on, exp_v,
                                                        exp_pw);
    return p;
  }
};

struct PopulationSection {
  bool enabled = false;
  double i_hrs_sigma = 0.1;
  double tau1_sigma = 0.1;
  double tau2_sigma = 0.1;
};

struct FrontendSection {
  ThresholdGenConfig thr;
  double divider_gain = 0.75;
  double dead_time_s = 10e-9;
  double spike_pulse_width_s = 100e-9;
  double threshold_jitter_sigma_v = 0.0;
};

struct MetricsSection {
  double rate_window_s = 1e-3;
  double pearson_window_s = 1e-2;
  double onset_window_s = 0.02;
  double onset_period_s = 0.5;  // onset-restricted correlation span
  double cochleagram_window_s = 1e-2;
};

struct SweepSection {
  double i_min_a = 0.066e-6;
  double i_max_a = 0.99e-6;
  int n_points = 16;
  bool log_scale = true;
  double duration_s = 1.0;
  double rate_hz = 1e6;
  double amplitude_vpp = 1.5;
  double frequency_hz = 200.0;
  double offset_v = 0.75;
  bool use_ideal = false;
};

struct CharacterizeSection {
  int n_pulses = 5;
  double v_sti = 2.5;
  double pw_s = 5e-3;
  double spacing_s = 1.0;
  double sample_dt_s = 1e-3;
  double tail_s = 0.3;
};

struct RunConfig {
  std::uint64_t seed = 1;
  int trace_decimation = 100;
  StimulusConfig stimulus;
  FilterbankSection filterbank;
  DeviceSection device;
  PopulationSection population;
  FrontendSection frontend;
  ControllerConfig controller;
  MetricsSection metrics;
  SweepSection sweep;
  CharacterizeSection characterize;
};

namespace config_detail {

using json = nlohmann::json;

inline void reject_unknown(const json& j, const std::string& path,
                           const std::set<std::string>& allowed) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key()))
      throw ConfigError(path.empty() ? item.key() : path + "." + item.key(),
                        "unknown field");
  }
}

inline const json* find(const json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

inline double get_number(const json& j, const std::string& path,
                         const char* key, double fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number())
    throw ConfigError(path + "." + key, "expected a number");
  return v->get<double>();
}

inline int get_int(const json& j, const std::string& path, const char* key,
                   int fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_number_integer())
    throw ConfigError(path + "." + key, "expected an integer");
  return v->get<int>();
}

inline bool get_bool(const json& j, const std::string& path, const char* key,
                     bool fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_boolean())
    throw ConfigError(path + "." + key, "expected a boolean");
  return v->get<bool>();
}

inline std::string get_string(const json& j, const std::string& path,
                              const char* key, const std::string& fallback) {
  const json* v = find(j, key);
  if (!v) return fallback;
  if (!v->is_string())
    throw ConfigError(path + "." + key, "expected a string");
  return v->get<std::string>();
}

inline void require(bool ok, const std::string& path,
                    const std::string& message) {
  if (!ok) throw ConfigError(path, message);
}

}  // namespace config_detail

inline RunConfig parse_run_config(const nlohmann::json& root) {
  using namespace config_detail;
  if (!root.is_object())
    throw ConfigError("", "config root must be a JSON object");

  // A manifest wraps the config; accept either form.
  const json& top = root.contains("config") && root["config"].is_object()
                        ? root["config"]
                        : root;
  if (&top == &root) {
    reject_unknown(root, "",
                   {"seed", "trace_decimation", "stimulus", "filterbank",
                    "device", "population", "frontend", "controller",
                    "metrics", "sweep", "characterize"});
  }

  RunConfig cfg;
  {
    const json* v = find(top, "seed");
    if (v) {
      if (!v->is_number_integer() || v->get<std::int64_t>() < 0)
        throw ConfigError("seed", "expected a nonnegative integer");
      cfg.seed = v->get<std::uint64_t>();
    }
  }
  cfg.trace_decimation = get_int(top, "", "trace_decimation", 100);
  require(cfg.trace_decimation >= 1, "trace_decimation", "must be >= 1");

  if (const json* f = find(top, "frontend")) {
    const std::string p = "frontend";
    reject_unknown(*f, p,
                   {"g_tia_ohms", "beta", "r_th_ohms", "v_cm",
                    "i_linear_max_a", "delta_min_v", "delta_max_v",
                    "divider_gain", "dead_time_s", "spike_pulse_width_s",
                    "threshold_jitter_sigma_v"});
    auto& fe = cfg.frontend;
    fe.thr.g_tia_ohms = get_number(*f, p, "g_tia_ohms", fe.thr.g_tia_ohms);
    fe.thr.beta = get_number(*f, p, "beta", fe.thr.beta);
    fe.thr.r_th_ohms = get_number(*f, p, "r_th_ohms", fe.thr.r_th_ohms);
    fe.thr.v_cm = get_number(*f, p, "v_cm", fe.thr.v_cm);
    fe.thr.i_linear_max_a =
        get_number(*f, p, "i_linear_max_a", fe.thr.i_linear_max_a);
    fe.thr.delta_min_v = get_number(*f, p, "delta_min_v", fe.thr.delta_min_v);
    fe.thr.delta_max_v = get_number(*f, p, "delta_max_v", fe.thr.delta_max_v);
    fe.divider_gain = get_number(*f, p, "divider_gain", fe.divider_gain);
    fe.dead_time_s = get_number(*f, p, "dead_time_s", fe.dead_time_s);
    fe.spike_pulse_width_s =
        get_number(*f, p, "spike_pulse_width_s", fe.spike_pulse_width_s);
    fe.threshold_jitter_sigma_v = get_number(
        *f, p, "threshold_jitter_sigma_v", fe.threshold_jitter_sigma_v);
    try {
      fe.thr.validate();
      AdmConfig adm;
      adm.divider_gain = fe.divider_gain;
      adm.dead_time_s = fe.dead_time_s;
      adm.spike_pulse_width_s = fe.spike_pulse_width_s;
      adm.threshold_jitter_sigma_v = fe.threshold_jitter_sigma_v;
      adm.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(p, e.what());
    }
  }

  if (const json* s = find(top, "stimulus")) {
    const std::string p = "stimulus";
    reject_unknown(*s, p,
                   {"kind", "path", "amplitude_vpp", "frequency_hz",
                    "offset_v", "duration_s", "rate_hz", "n_bursts",
                    "burst_s", "gap_s", "lead_in_s", "attack_s",
                    "decay_tau_s", "sustain_level", "amp_jitter",
                    "freq_jitter"});
    auto& st = cfg.stimulus;
    const std::string kind = get_string(*s, p, "kind", "sine");
    if (kind == "sine")
      st.spec.kind = StimulusKind::kSine;
    else if (kind == "burst_train")
      st.spec.kind = StimulusKind::kBurstTrain;
    else if (kind == "file")
      st.spec.kind = StimulusKind::kFile;
    else
      throw ConfigError(p + ".kind",
                        "expected one of sine, burst_train, file");
    st.spec.path = get_string(*s, p, "path", "");
    st.spec.amplitude_vpp =
        get_number(*s, p, "amplitude_vpp", st.spec.amplitude_vpp);
    st.spec.frequency_hz =
        get_number(*s, p, "frequency_hz", st.spec.frequency_hz);
    if (find(*s, "offset_v"))
      st.spec.offset_v = get_number(*s, p, "offset_v", 0.0);
    else
      st.spec.offset_v = cfg.frontend.thr.v_cm;
    st.duration_s = get_number(*s, p, "duration_s", st.duration_s);
    st.rate_hz = get_number(*s, p, "rate_hz", st.rate_hz);
    st.spec.n_bursts = get_int(*s, p, "n_bursts", st.spec.n_bursts);
    st.spec.burst_s = get_number(*s, p, "burst_s", st.spec.burst_s);
    st.spec.gap_s = get_number(*s, p, "gap_s", st.spec.gap_s);
    st.spec.lead_in_s = get_number(*s, p, "lead_in_s", st.spec.lead_in_s);
    st.spec.attack_s = get_number(*s, p, "attack_s", st.spec.attack_s);
    st.spec.decay_tau_s =
        get_number(*s, p, "decay_tau_s", st.spec.decay_tau_s);
    st.spec.amp_jitter = get_number(*s, p, "amp_jitter", st.spec.amp_jitter);
    st.spec.freq_jitter =
        get_number(*s, p, "freq_jitter", st.spec.freq_jitter);

    require(st.rate_hz > 0.0, p + ".rate_hz", "must be > 0");
    require(st.duration_s > 0.0, p + ".duration_s", "must be > 0");
    if (st.spec.kind != StimulusKind::kFile)
      require(st.rate_hz >= 10.0 * st.spec.frequency_hz, p + ".rate_hz",
              "must be >= 10x stimulus.frequency_hz");
    if (st.spec.kind == StimulusKind::kFile)
      require(!st.spec.path.empty(), p + ".path",
              "required for a file stimulus");
    try {
      st.spec.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(p, e.what());
    }
  } else {
    cfg.stimulus.spec.offset_v = cfg.frontend.thr.v_cm;
    cfg.stimulus.spec.amplitude_vpp = 0.4;
  }

  if (const json* f = find(top, "filterbank")) {
    const std::string p = "filterbank";
    reject_unknown(*f, p,
                   {"enabled", "n_channels", "f_low_hz", "f_high_hz", "order",
                    "spacing", "band_target_vpp", "band_center_v"});
    auto& fb = cfg.filterbank;
    fb.enabled = get_bool(*f, p, "enabled", fb.enabled);
    fb.cfg.n_channels = get_int(*f, p, "n_channels", fb.cfg.n_channels);
    fb.cfg.f_low_hz = get_number(*f, p, "f_low_hz", fb.cfg.f_low_hz);
    fb.cfg.f_high_hz = get_number(*f, p, "f_high_hz", fb.cfg.f_high_hz);
    fb.cfg.order = get_int(*f, p, "order", fb.cfg.order);
    const std::string spacing = get_string(*f, p, "spacing", "erb");
    if (spacing == "erb")
      fb.cfg.spacing = BandSpacing::kErb;
    else if (spacing == "log")
      fb.cfg.spacing = BandSpacing::kLog;
    else
      throw ConfigError(p + ".spacing", "expected erb or log");
    fb.band_target_vpp =
        get_number(*f, p, "band_target_vpp", fb.band_target_vpp);
    require(fb.band_target_vpp > 0.0, p + ".band_target_vpp", "must be > 0");
    if (find(*f, "band_center_v"))
      fb.band_center_v = get_number(*f, p, "band_center_v", 0.0);
    else
      fb.band_center_v = cfg.frontend.thr.v_cm;
    if (fb.enabled) {
      try {
        fb.cfg.validate(cfg.stimulus.rate_hz);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(p, e.what());
      }
    }
  } else {
    cfg.filterbank.band_center_v = cfg.frontend.thr.v_cm;
    if (cfg.filterbank.enabled) {
      try {
        cfg.filterbank.cfg.validate(cfg.stimulus.rate_hz);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("filterbank", e.what());
      }
    }
  }

  if (const json* d = find(top, "device")) {
    const std::string p = "device";
    reject_unknown(*d, p,
                   {"i_hrs_a", "tau1_s", "tau2_s", "split", "v_read",
                    "i_lrs_a", "surface_csv", "delta_i_at_op_a", "v_on",
                    "exp_v", "exp_pw"});
    auto& dev = cfg.device;
    dev.params.i_hrs_a = get_number(*d, p, "i_hrs_a", dev.params.i_hrs_a);
    dev.params.tau1_s = get_number(*d, p, "tau1_s", dev.params.tau1_s);
    dev.params.tau2_s = get_number(*d, p, "tau2_s", dev.params.tau2_s);
    dev.params.split = get_number(*d, p, "split", dev.params.split);
    dev.params.v_read = get_number(*d, p, "v_read", dev.params.v_read);
    dev.params.i_lrs_a = get_number(*d, p, "i_lrs_a", dev.params.i_lrs_a);
    if (find(*d, "surface_csv"))
      dev.surface_csv = get_string(*d, p, "surface_csv", "");
    dev.delta_i_at_op_a =
        get_number(*d, p, "delta_i_at_op_a", dev.delta_i_at_op_a);
    dev.v_on = get_number(*d, p, "v_on", dev.v_on);
    dev.exp_v = get_number(*d, p, "exp_v", dev.exp_v);
    dev.exp_pw = get_number(*d, p, "exp_pw", dev.exp_pw);
    try {
      dev.params.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(p, e.what());
    }
  }

  if (const json* pop = find(top, "population")) {
    const std::string p = "population";
    reject_unknown(*pop, p,
                   {"enabled", "i_hrs_sigma", "tau1_sigma", "tau2_sigma"});
    cfg.population.enabled = get_bool(*pop, p, "enabled", false);
    cfg.population.i_hrs_sigma =
        get_number(*pop, p, "i_hrs_sigma", cfg.population.i_hrs_sigma);
    cfg.population.tau1_sigma =
        get_number(*pop, p, "tau1_sigma", cfg.population.tau1_sigma);
    cfg.population.tau2_sigma =
        get_number(*pop, p, "tau2_sigma", cfg.population.tau2_sigma);
    require(cfg.population.i_hrs_sigma >= 0.0 &&
                cfg.population.tau1_sigma >= 0.0 &&
                cfg.population.tau2_sigma >= 0.0,
            p, "dispersions must be >= 0");
  }

  if (const json* c = find(top, "controller")) {
    const std::string p = "controller";
    reject_unknown(*c, p,
                   {"cmp_clk_hz", "thr_hit", "v_sti", "pw_s",
                    "switch_guard_s", "count_polarity", "phase_s"});
    auto& ct = cfg.controller;
    ct.cmp_clk_hz = get_number(*c, p, "cmp_clk_hz", ct.cmp_clk_hz);
    ct.thr_hit = get_int(*c, p, "thr_hit", ct.thr_hit);
    ct.v_sti = get_number(*c, p, "v_sti", ct.v_sti);
    ct.pw_s = get_number(*c, p, "pw_s", ct.pw_s);
    ct.switch_guard_s = get_number(*c, p, "switch_guard_s", ct.switch_guard_s);
    ct.phase_s = get_number(*c, p, "phase_s", ct.phase_s);
    const std::string pol = get_string(*c, p, "count_polarity", "both");
    if (pol == "both")
      ct.count_polarity = CountPolarity::kBoth;
    else if (pol == "positive_only")
      ct.count_polarity = CountPolarity::kPositiveOnly;
    else
      throw ConfigError(p + ".count_polarity",
                        "expected both or positive_only");
    try {
      ct.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(p, e.what());
    }
  }

  if (const json* m = find(top, "metrics")) {
    const std::string p = "metrics";
    reject_unknown(*m, p,
                   {"rate_window_s", "pearson_window_s", "onset_window_s",
                    "onset_period_s", "cochleagram_window_s"});
    auto& mt = cfg.metrics;
    mt.rate_window_s = get_number(*m, p, "rate_window_s", mt.rate_window_s);
    mt.pearson_window_s =
        get_number(*m, p, "pearson_window_s", mt.pearson_window_s);
    mt.onset_window_s = get_number(*m, p, "onset_window_s", mt.onset_window_s);
    mt.onset_period_s = get_number(*m, p, "onset_period_s", mt.onset_period_s);
    mt.cochleagram_window_s =
        get_number(*m, p, "cochleagram_window_s", mt.cochleagram_window_s);
    require(mt.rate_window_s > 0.0 && mt.pearson_window_s > 0.0 &&
                mt.onset_window_s > 0.0 && mt.cochleagram_window_s > 0.0,
            p, "windows must be > 0");
  }

  if (const json* s = find(top, "sweep")) {
    const std::string p = "sweep";
    reject_unknown(*s, p,
                   {"i_min_a", "i_max_a", "n_points", "scale", "duration_s",
                    "rate_hz", "amplitude_vpp", "frequency_hz", "offset_v",
                    "use_ideal"});
    auto& sw = cfg.sweep;
    sw.i_min_a = get_number(*s, p, "i_min_a", sw.i_min_a);
    sw.i_max_a = get_number(*s, p, "i_max_a", sw.i_max_a);
    sw.n_points = get_int(*s, p, "n_points", sw.n_points);
    const std::string scale = get_string(*s, p, "scale", "log");
    if (scale == "log")
      sw.log_scale = true;
    else if (scale == "linear")
      sw.log_scale = false;
    else
      throw ConfigError(p + ".scale", "expected log or linear");
    sw.duration_s = get_number(*s, p, "duration_s", sw.duration_s);
    sw.rate_hz = get_number(*s, p, "rate_hz", sw.rate_hz);
    sw.amplitude_vpp = get_number(*s, p, "amplitude_vpp", sw.amplitude_vpp);
    sw.frequency_hz = get_number(*s, p, "frequency_hz", sw.frequency_hz);
    sw.offset_v = get_number(*s, p, "offset_v", sw.offset_v);
    sw.use_ideal = get_bool(*s, p, "use_ideal", sw.use_ideal);
    require(sw.i_min_a > 0.0 && sw.i_min_a <= sw.i_max_a, p + ".i_min_a",
            "need 0 < i_min_a <= i_max_a");
    require(sw.n_points >= 1, p + ".n_points", "must be >= 1");
    require(sw.rate_hz >= 10.0 * sw.frequency_hz, p + ".rate_hz",
            "must be >= 10x sweep.frequency_hz");
  }

  if (const json* c = find(top, "characterize")) {
    const std::string p = "characterize";
    reject_unknown(*c, p,
                   {"n_pulses", "v_sti", "pw_s", "spacing_s", "sample_dt_s",
                    "tail_s"});
    auto& ch = cfg.characterize;
    ch.n_pulses = get_int(*c, p, "n_pulses", ch.n_pulses);
    ch.v_sti = get_number(*c, p, "v_sti", ch.v_sti);
    ch.pw_s = get_number(*c, p, "pw_s", ch.pw_s);
    ch.spacing_s = get_number(*c, p, "spacing_s", ch.spacing_s);
    ch.sample_dt_s = get_number(*c, p, "sample_dt_s", ch.sample_dt_s);
    ch.tail_s = get_number(*c, p, "tail_s", ch.tail_s);
    require(ch.n_pulses >= 0, p + ".n_pulses", "must be >= 0");
    require(ch.pw_s >= 0.0, p + ".pw_s", "must be >= 0");
    require(ch.spacing_s > ch.pw_s, p + ".spacing_s", "must exceed pw_s");
    require(ch.sample_dt_s > 0.0 && ch.tail_s >= 0.0, p,
            "sampling fields must be positive");
  }

  return cfg;
}

inline nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["seed"] = cfg.seed;
  j["trace_decimation"] = cfg.trace_decimation;

  auto& st = j["stimulus"];
  switch (cfg.stimulus.spec.kind) {
    case StimulusKind::kSine: st["kind"] = "sine"; break;
    case StimulusKind::kBurstTrain: st["kind"] = "burst_train"; break;
    case StimulusKind::kFile: st["kind"] = "file"; break;
  }
  st["path"] = cfg.stimulus.spec.path;
  st["amplitude_vpp"] = cfg.stimulus.spec.amplitude_vpp;
  st["frequency_hz"] = cfg.stimulus.spec.frequency_hz;
  st["offset_v"] = cfg.stimulus.spec.offset_v;
  st["duration_s"] = cfg.stimulus.duration_s;
  st["rate_hz"] = cfg.stimulus.rate_hz;
  st["n_bursts"] = cfg.stimulus.spec.n_bursts;
  st["burst_s"] = cfg.stimulus.spec.burst_s;
  st["gap_s"] = cfg.stimulus.spec.gap_s;
  st["lead_in_s"] = cfg.stimulus.spec.lead_in_s;
  st["attack_s"] = cfg.stimulus.spec.attack_s;
  st["decay_tau_s"] = cfg.stimulus.spec.decay_tau_s;
  st["amp_jitter"] = cfg.stimulus.spec.amp_jitter;
  st["freq_jitter"] = cfg.stimulus.spec.freq_jitter;

  auto& fb = j["filterbank"];
  fb["enabled"] = cfg.filterbank.enabled;
  fb["n_channels"] = cfg.filterbank.cfg.n_channels;
  fb["f_low_hz"] = cfg.filterbank.cfg.f_low_hz;
  fb["f_high_hz"] = cfg.filterbank.cfg.f_high_hz;
  fb["order"] = cfg.filterbank.cfg.order;
  fb["spacing"] =
      cfg.filterbank.cfg.spacing == BandSpacing::kErb ? "erb" : "log";
  fb["band_target_vpp"] = cfg.filterbank.band_target_vpp;
  fb["band_center_v"] = cfg.filterbank.band_center_v;

  auto& dv = j["device"];
  dv["i_hrs_a"] = cfg.device.params.i_hrs_a;
  dv["tau1_s"] = cfg.device.params.tau1_s;
  dv["tau2_s"] = cfg.device.params.tau2_s;
  dv["split"] = cfg.device.params.split;
  dv["v_read"] = cfg.device.params.v_read;
  dv["i_lrs_a"] = cfg.device.params.i_lrs_a;
  if (cfg.device.surface_csv) dv["surface_csv"] = *cfg.device.surface_csv;
  dv["delta_i_at_op_a"] = cfg.device.delta_i_at_op_a;
  dv["v_on"] = cfg.device.v_on;
  dv["exp_v"] = cfg.device.exp_v;
  dv["exp_pw"] = cfg.device.exp_pw;

  auto& pop = j["population"];
  pop["enabled"] = cfg.population.enabled;
  pop["i_hrs_sigma"] = cfg.population.i_hrs_sigma;
  pop["tau1_sigma"] = cfg.population.tau1_sigma;
  pop["tau2_sigma"] = cfg.population.tau2_sigma;

  auto& fe = j["frontend"];
  fe["g_tia_ohms"] = cfg.frontend.thr.g_tia_ohms;
  fe["beta"] = cfg.frontend.thr.beta;
  fe["r_th_ohms"] = cfg.frontend.thr.r_th_ohms;
  fe["v_cm"] = cfg.frontend.thr.v_cm;
  fe["i_linear_max_a"] = cfg.frontend.thr.i_linear_max_a;
  fe["delta_min_v"] = cfg.frontend.thr.delta_min_v;
  fe["delta_max_v"] = cfg.frontend.thr.delta_max_v;
  fe["divider_gain"] = cfg.frontend.divider_gain;
  fe["dead_time_s"] = cfg.frontend.dead_time_s;
  fe["spike_pulse_width_s"] = cfg.frontend.spike_pulse_width_s;
  fe["threshold_jitter_sigma_v"] = cfg.frontend.threshold_jitter_sigma_v;

  auto& ct = j["controller"];
  ct["cmp_clk_hz"] = cfg.controller.cmp_clk_hz;
  ct["thr_hit"] = cfg.controller.thr_hit;
  ct["v_sti"] = cfg.controller.v_sti;
  ct["pw_s"] = cfg.controller.pw_s;
  ct["switch_guard_s"] = cfg.controller.switch_guard_s;
  ct["count_polarity"] =
      cfg.controller.count_polarity == CountPolarity::kBoth ? "both"
                                                            : "positive_only";
  ct["phase_s"] = cfg.controller.phase_s;

  auto& mt = j["metrics"];
  mt["rate_window_s"] = cfg.metrics.rate_window_s;
  mt["pearson_window_s"] = cfg.metrics.pearson_window_s;
  mt["onset_window_s"] = cfg.metrics.onset_window_s;
  mt["onset_period_s"] = cfg.metrics.onset_period_s;
  mt["cochleagram_window_s"] = cfg.metrics.cochleagram_window_s;

  auto& sw = j["sweep"];
  sw["i_min_a"] = cfg.sweep.i_min_a;
  sw["i_max_a"] = cfg.sweep.i_max_a;
  sw["n_points"] = cfg.sweep.n_points;
  sw["scale"] = cfg.sweep.log_scale ? "log" : "linear";
  sw["duration_s"] = cfg.sweep.duration_s;
  sw["rate_hz"] = cfg.sweep.rate_hz;
  sw["amplitude_vpp"] = cfg.sweep.amplitude_vpp;
  sw["frequency_hz"] = cfg.sweep.frequency_hz;
  sw["offset_v"] = cfg.sweep.offset_v;
  sw["use_ideal"] = cfg.sweep.use_ideal;

  auto& ch = j["characterize"];
  ch["n_pulses"] = cfg.characterize.n_pulses;
  ch["v_sti"] = cfg.characterize.v_sti;
  ch["pw_s"] = cfg.characterize.pw_s;
  ch["spacing_s"] = cfg.characterize.spacing_s;
  ch["sample_dt_s"] = cfg.characterize.sample_dt_s;
  ch["tail_s"] = cfg.characterize.tail_s;

  return j;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_run_config(j);
}

}  // namespace adaspike

#endif  // ADASPIKE_CONFIG_HPP
