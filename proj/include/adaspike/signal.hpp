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

#ifndef ADASPIKE_SIGNAL_HPP
#define ADASPIKE_SIGNAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaspike/rng.hpp"

namespace adaspike {

// Uniformly sampled voltage waveform. Internal units are volts and
// seconds everywhere; spike timestamps alone use nanoseconds.
struct AudioSignal {
  double sample_rate_hz = 0.0;
  std::vector<double> samples;  // volts
  double t0_s = 0.0;

  double duration_s() const {
    return sample_rate_hz > 0.0
               ? static_cast<double>(samples.size()) / sample_rate_hz
               : 0.0;
  }
  double end_time_s() const { return t0_s + duration_s(); }

  // Piecewise-linear interpolation between samples; constant
  // extrapolation outside the sampled span.
  double value_at(double t_s) const {
    if (samples.empty()) return 0.0;
    const double x = (t_s - t0_s) * sample_rate_hz;
    if (x <= 0.0) return samples.front();
    const double last = static_cast<double>(samples.size() - 1);
    if (x >= last) return samples.back();
    const auto i = static_cast<std::size_t>(x);
    const double frac = x - static_cast<double>(i);
    return samples[i] + frac * (samples[i + 1] - samples[i]);
  }

  void validate() const {
    if (!(sample_rate_hz > 0.0))
      throw std::invalid_argument("AudioSignal: sample_rate_hz must be > 0");
    for (double v : samples) {
      if (!std::isfinite(v))
        throw std::invalid_argument("AudioSignal: samples must be finite");
    }
  }
};

enum class StimulusKind { kSine, kBurstTrain, kFile };

// Parametric stimulus description. The burst-train fields describe a
// train of enveloped tone bursts separated by silence; per-burst
// amplitude/frequency variation is derived deterministically from
// variant_seed so that seeded stimulus families are reproducible.
struct SignalSpec {
  StimulusKind kind = StimulusKind::kSine;
  double amplitude_vpp = 1.5;  // peak-to-peak, volts
  double frequency_hz = 1000.0;
  double offset_v = 0.0;
  std::string path;  // kind == kFile

  // Burst-train shape.
  int n_bursts = 2;
  double burst_s = 0.12;
  double gap_s = 0.30;
  double lead_in_s = 0.05;
  double attack_s = 0.005;
  double decay_tau_s = 0.05;   // intra-burst envelope decay; <= 0 means flat
  double sustain_level = 0.0;  // envelope floor after the decay, of peak
  double amp_jitter = 0.0;     // per-burst amplitude spread, [0, 1)
  double freq_jitter = 0.0;    // per-burst relative frequency spread
  std::uint64_t variant_seed = 0;

  void validate() const {
    if (amplitude_vpp < 0.0)
      throw std::invalid_argument("SignalSpec: amplitude_vpp must be >= 0");
    if (kind == StimulusKind::kBurstTrain) {
      if (!(burst_s > 0.0) || !(gap_s > 0.0))
        throw std::invalid_argument(
            "SignalSpec: burst_s and gap_s must be > 0 for burst_train");
      if (n_bursts < 1)
        throw std::invalid_argument("SignalSpec: n_bursts must be >= 1");
      if (amp_jitter < 0.0 || amp_jitter >= 1.0)
        throw std::invalid_argument("SignalSpec: amp_jitter must be in [0,1)");
    }
  }
};

// Pure tone: offset + (A/2)*sin(2*pi*f*t). The oversampling floor keeps
// sub-sample crossing interpolation accurate for the encoder.
inline AudioSignal synth_sine(const SignalSpec& spec, double duration_s,
                              double rate_hz) {
  spec.validate();
  if (!(rate_hz > 0.0) || !(duration_s >= 0.0))
    throw std::invalid_argument("synth_sine: rate and duration must be > 0");
  if (rate_hz < 10.0 * spec.frequency_hz)
    throw std::invalid_argument(
        "synth_sine: rate_hz must be >= 10x frequency_hz");
  AudioSignal out;
  out.sample_rate_hz = rate_hz;
  out.t0_s = 0.0;
  const auto n = static_cast<std::size_t>(std::llround(duration_s * rate_hz));
  out.samples.resize(n);
  const double amp = 0.5 * spec.amplitude_vpp;
  const double w = 2.0 * M_PI * spec.frequency_hz;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate_hz;
    out.samples[i] = spec.offset_v + amp * std::sin(w * t);
  }
  return out;
}

// Burst start times for a burst-train spec (seconds).
inline std::vector<double> burst_onsets(const SignalSpec& spec) {
  std::vector<double> onsets;
  onsets.reserve(static_cast<std::size_t>(spec.n_bursts));
  for (int k = 0; k < spec.n_bursts; ++k)
    onsets.push_back(spec.lead_in_s +
                     static_cast<double>(k) * (spec.burst_s + spec.gap_s));
  return onsets;
}

// Per-burst amplitude scale in (1 - amp_jitter, 1], deterministic in
// (variant_seed, burst index).
inline double burst_amp_scale(const SignalSpec& spec, int k) {
  if (spec.amp_jitter <= 0.0) return 1.0;
  const double u =
      uniform01(mix64(spec.variant_seed, 2 * static_cast<std::uint64_t>(k)));
  return 1.0 - spec.amp_jitter * u;
}

inline double burst_frequency(const SignalSpec& spec, int k) {
  if (spec.freq_jitter <= 0.0) return spec.frequency_hz;
  const double u = uniform01(
      mix64(spec.variant_seed, 2 * static_cast<std::uint64_t>(k) + 1));
  return spec.frequency_hz * (1.0 + spec.freq_jitter * (u - 0.5));
}

inline double burst_train_duration_s(const SignalSpec& spec) {
  return spec.lead_in_s +
         static_cast<double>(spec.n_bursts) * (spec.burst_s + spec.gap_s);
}

// Train of enveloped tone bursts over a silent baseline at offset_v.
// Each burst has a linear attack followed by an exponential decay.
inline AudioSignal synth_burst_train(const SignalSpec& spec, double rate_hz) {
  spec.validate();
  if (!(rate_hz > 0.0))
    throw std::invalid_argument("synth_burst_train: rate must be > 0");
  if (rate_hz < 10.0 * spec.frequency_hz)
    throw std::invalid_argument(
        "synth_burst_train: rate_hz must be >= 10x frequency_hz");
  AudioSignal out;
  out.sample_rate_hz = rate_hz;
  out.t0_s = 0.0;
  const double duration = burst_train_duration_s(spec);
  const auto n = static_cast<std::size_t>(std::llround(duration * rate_hz));
  out.samples.assign(n, spec.offset_v);

  const double amp = 0.5 * spec.amplitude_vpp;
  const auto onsets = burst_onsets(spec);
  for (int k = 0; k < spec.n_bursts; ++k) {
    const double f = burst_frequency(spec, k);
    const double scale = burst_amp_scale(spec, k);
    const double w = 2.0 * M_PI * f;
    const auto i0 = static_cast<std::size_t>(std::ceil(onsets[k] * rate_hz));
    const auto i1 = std::min(
        n, static_cast<std::size_t>(
               std::ceil((onsets[k] + spec.burst_s) * rate_hz)));
    for (std::size_t i = i0; i < i1; ++i) {
      const double t = static_cast<double>(i) / rate_hz;
      const double tau = t - onsets[k];
      double env = 1.0;
      if (spec.attack_s > 0.0 && tau < spec.attack_s) {
        env = tau / spec.attack_s;
      } else if (spec.decay_tau_s > 0.0) {
        env = std::max(std::exp(-(tau - spec.attack_s) / spec.decay_tau_s),
                       spec.sustain_level);
      }
      out.samples[i] =
          spec.offset_v + scale * amp * env * std::sin(w * tau);
    }
  }
  return out;
}

inline AudioSignal synthesize(const SignalSpec& spec, double duration_s,
                              double rate_hz) {
  switch (spec.kind) {
    case StimulusKind::kSine:
      return synth_sine(spec, duration_s, rate_hz);
    case StimulusKind::kBurstTrain:
      return synth_burst_train(spec, rate_hz);
    case StimulusKind::kFile:
      throw std::invalid_argument("synthesize: file stimuli use load_wav");
  }
  throw std::invalid_argument("synthesize: unknown stimulus kind");
}

// Rescales so that max - min equals target_vpp. With preserve_mean the
// signal keeps its original mean; otherwise it is scaled about zero.
inline AudioSignal normalize_pp(const AudioSignal& sig, double target_vpp,
                                bool preserve_mean = false) {
  sig.validate();
  if (!(target_vpp > 0.0))
    throw std::invalid_argument("normalize_pp: target_vpp must be > 0");
  const auto [min_it, max_it] =
      std::minmax_element(sig.samples.begin(), sig.samples.end());
  if (sig.samples.empty() || *max_it == *min_it)
    throw std::invalid_argument("normalize_pp: cannot normalize a constant "
                                "signal");
  const double span = *max_it - *min_it;
  const double scale = target_vpp / span;
  AudioSignal out = sig;
  if (preserve_mean) {
    double mean = 0.0;
    for (double v : sig.samples) mean += v;
    mean /= static_cast<double>(sig.samples.size());
    for (double& v : out.samples) v = (v - mean) * scale + mean;
  } else {
    for (double& v : out.samples) v *= scale;
  }
  return out;
}

// Shifts so the midpoint between min and max sits at center_v.
inline AudioSignal recenter_midrange(const AudioSignal& sig, double center_v) {
  sig.validate();
  if (sig.samples.empty()) return sig;
  const auto [min_it, max_it] =
      std::minmax_element(sig.samples.begin(), sig.samples.end());
  const double mid = 0.5 * (*min_it + *max_it);
  AudioSignal out = sig;
  for (double& v : out.samples) v += center_v - mid;
  return out;
}

}  // namespace adaspike

#endif  // ADASPIKE_SIGNAL_HPP
