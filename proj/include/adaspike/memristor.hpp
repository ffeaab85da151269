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

#ifndef ADASPIKE_MEMRISTOR_HPP
#define ADASPIKE_MEMRISTOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaspike/rng.hpp"

namespace adaspike {

// Programming response surface: current change as a function of
// stimulus voltage and pulse width, nondecreasing along both axes.
// Either a bilinear interpolation over a measured grid or a parametric
// fallback  di = k * max(0, v - v_on)^p * (pw / pw_ref)^q.
class DeltaISurface {
 public:
  struct Lookup {
    double delta_i_a = 0.0;
    bool clamped = false;  // query fell outside the tabulated domain
  };

  static DeltaISurface parametric(double delta_i_at_op_a, double v_op = 2.5,
                                  double pw_op_s = 5e-3, double v_on = 1.0,
                                  double exp_v = 2.0, double exp_pw = 0.5) {
    if (!(delta_i_at_op_a >= 0.0) || !(v_op > v_on) || !(pw_op_s > 0.0))
      throw std::invalid_argument("DeltaISurface: bad parametric operating "
                                  "point");
    DeltaISurface s;
    s.v_on_ = v_on;
    s.exp_v_ = exp_v;
    s.exp_pw_ = exp_pw;
    s.pw_ref_s_ = pw_op_s;
    s.k_ = delta_i_at_op_a / std::pow(v_op - v_on, exp_v);
    return s;
  }

  // CSV grid with header v_sti_volts,pw_seconds,delta_i_amps and one
  // grid point per row; the rows must cover a complete rectangle.
  static DeltaISurface from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error("DeltaISurface: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) ||
        line.find("v_sti_volts") == std::string::npos)
      throw std::runtime_error("DeltaISurface: missing header in " + path);
    std::vector<double> vs, pws, dis;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream row(line);
      std::string field;
      double vals[3];
      for (int i = 0; i < 3; ++i) {
        if (!std::getline(row, field, ','))
          throw std::runtime_error("DeltaISurface: malformed row in " + path);
        vals[i] = std::stod(field);
      }
      vs.push_back(vals[0]);
      pws.push_back(vals[1]);
      dis.push_back(vals[2]);
    }
    if (vs.empty())
      throw std::runtime_error("DeltaISurface: empty grid in " + path);

    DeltaISurface s;
    s.v_grid_ = vs;
    std::sort(s.v_grid_.begin(), s.v_grid_.end());
    s.v_grid_.erase(std::unique(s.v_grid_.begin(), s.v_grid_.end()),
                    s.v_grid_.end());
    s.pw_grid_ = pws;
    std::sort(s.pw_grid_.begin(), s.pw_grid_.end());
    s.pw_grid_.erase(std::unique(s.pw_grid_.begin(), s.pw_grid_.end()),
                     s.pw_grid_.end());
    const std::size_t nv = s.v_grid_.size(), npw = s.pw_grid_.size();
    if (nv * npw != vs.size())
      throw std::runtime_error("DeltaISurface: grid is not rectangular in " +
                               path);
    s.table_.assign(nv * npw, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto iv = static_cast<std::size_t>(
          std::lower_bound(s.v_grid_.begin(), s.v_grid_.end(), vs[i]) -
          s.v_grid_.begin());
      const auto ip = static_cast<std::size_t>(
          std::lower_bound(s.pw_grid_.begin(), s.pw_grid_.end(), pws[i]) -
          s.pw_grid_.begin());
      s.table_[iv * npw + ip] = dis[i];
    }
    s.tabulated_ = true;
    s.validate();
    return s;
  }

  void validate() const {
    if (!tabulated_) return;
    const std::size_t npw = pw_grid_.size();
    for (std::size_t iv = 0; iv < v_grid_.size(); ++iv) {
      for (std::size_t ip = 0; ip < npw; ++ip) {
        const double d = table_[iv * npw + ip];
        if (!std::isfinite(d) || d < 0.0)
          throw std::runtime_error(
              "DeltaISurface: grid entries must be finite and >= 0");
        if (ip > 0 && d < table_[iv * npw + ip - 1])
          throw std::runtime_error(
              "DeltaISurface: delta_i must be nondecreasing in pulse width");
        if (iv > 0 && d < table_[(iv - 1) * npw + ip])
          throw std::runtime_error(
              "DeltaISurface: delta_i must be nondecreasing in voltage");
      }
    }
  }

  Lookup delta_i(double v_sti, double pw_s) const {
    if (pw_s < 0.0)
      throw std::invalid_argument("DeltaISurface: negative pulse width");
    if (!tabulated_) {
      const double v_eff = std::max(0.0, v_sti - v_on_);
      const double di = k_ * std::pow(v_eff, exp_v_) *
                        (pw_s > 0.0 ? std::pow(pw_s / pw_ref_s_, exp_pw_)
                                    : 0.0);
      return {di, false};
    }
    bool clamped = false;
    const double v = clamp_axis(v_grid_, v_sti, &clamped);
    const double pw = clamp_axis(pw_grid_, pw_s, &clamped);
    return {bilinear(v, pw), clamped};
  }

  bool tabulated() const { return tabulated_; }

 private:
  static double clamp_axis(const std::vector<double>& grid, double x,
                           bool* clamped) {
    if (x < grid.front()) {
      *clamped = true;
      return grid.front();
    }
    if (x > grid.back()) {
      *clamped = true;
      return grid.back();
    }
    return x;
  }

  double bilinear(double v, double pw) const {
    const std::size_t npw = pw_grid_.size();
    const auto cell = [](const std::vector<double>& g, double x) {
      auto hi = std::upper_bound(g.begin(), g.end(), x);
      std::size_t i1 = static_cast<std::size_t>(hi - g.begin());
      if (i1 == 0) i1 = 1;
      if (i1 >= g.size()) i1 = g.size() - 1;
      return i1;
    };
    if (v_grid_.size() == 1 && npw == 1) return table_[0];
    const std::size_t iv1 = v_grid_.size() > 1 ? cell(v_grid_, v) : 0;
    const std::size_t ip1 = npw > 1 ? cell(pw_grid_, pw) : 0;
    const std::size_t iv0 = iv1 > 0 ? iv1 - 1 : 0;
    const std::size_t ip0 = ip1 > 0 ? ip1 - 1 : 0;
    const double tv =
        iv1 > iv0 ? (v - v_grid_[iv0]) / (v_grid_[iv1] - v_grid_[iv0]) : 0.0;
    const double tp =
        ip1 > ip0 ? (pw - pw_grid_[ip0]) / (pw_grid_[ip1] - pw_grid_[ip0])
                  : 0.0;
    const double d00 = table_[iv0 * npw + ip0];
    const double d01 = table_[iv0 * npw + ip1];
    const double d10 = table_[iv1 * npw + ip0];
    const double d11 = table_[iv1 * npw + ip1];
    return (1.0 - tv) * ((1.0 - tp) * d00 + tp * d01) +
           tv * ((1.0 - tp) * d10 + tp * d11);
  }

  bool tabulated_ = false;
  std::vector<double> v_grid_, pw_grid_, table_;  // table row-major v x pw
  double k_ = 0.0, v_on_ = 1.0, exp_v_ = 2.0, exp_pw_ = 0.5, pw_ref_s_ = 5e-3;
};

struct DeviceParams {
  double i_hrs_a = 1e-7;   // baseline read current at v_read
  double tau1_s = 0.05;    // slow decay constant
  double tau2_s = 0.005;   // fast decay constant
  double split = 0.4;      // fraction of an excitation in the fast component
  double v_read = 0.5;
  double i_lrs_a = 9.9e-7;  // programmed-current ceiling
  DeltaISurface surface = DeltaISurface::parametric(1e-7);

  void validate() const {
    if (!(i_hrs_a > 0.0))
      throw std::invalid_argument("DeviceParams: i_hrs_a must be > 0");
    if (!(tau1_s > tau2_s && tau2_s > 0.0))
      throw std::invalid_argument("DeviceParams: need tau1_s > tau2_s > 0");
    if (!(split >= 0.0 && split <= 1.0))
      throw std::invalid_argument("DeviceParams: split must be in [0, 1]");
    if (!(i_lrs_a > i_hrs_a))
      throw std::invalid_argument("DeviceParams: i_lrs_a must exceed i_hrs_a");
  }
};

// One decaying contribution from a programming pulse.
struct Excitation {
  double onset_s = 0.0;
  double amp_slow_a = 0.0;
  double amp_fast_a = 0.0;
};

struct PulseResult {
  double delta_i_a = 0.0;   // amplitude actually added
  bool surface_clamped = false;
  bool saturated = false;   // limited by i_lrs
};

// Volatile-device state: baseline current plus a set of bi-exponential
// excitations. The device timeline is monotone; queries and pulses must
// not precede the latest excitation onset.
class DeviceState {
 public:
  DeviceState() { params_.validate(); }
  explicit DeviceState(DeviceParams params) : params_(std::move(params)) {
    params_.validate();
  }

  const DeviceParams& params() const { return params_; }

  double read_current(double t_s) const {
    if (t_s < last_onset_s_)
      throw std::invalid_argument(
          "DeviceState: read_current before latest excitation onset");
    double i = params_.i_hrs_a;
    for (const auto& e : excitations_) {
      const double dt = t_s - e.onset_s;
      i += e.amp_slow_a * std::exp(-dt / params_.tau1_s) +
           e.amp_fast_a * std::exp(-dt / params_.tau2_s);
    }
    return i;
  }

  // Applies a programming pulse starting at t_s; the current step
  // becomes visible at t_s + pw_s, after the programming window.
  PulseResult apply_pulse(double t_s, double v_sti, double pw_s) {
    if (pw_s < 0.0)
      throw std::invalid_argument("DeviceState: negative pulse width");
    if (t_s < last_onset_s_)
      throw std::invalid_argument("DeviceState: pulse precedes latest onset");
    PulseResult result;
    if (pw_s == 0.0) return result;

    const auto lookup = params_.surface.delta_i(v_sti, pw_s);
    result.surface_clamped = lookup.clamped;
    if (lookup.clamped) ++clamp_warnings_;

    const double onset = t_s + pw_s;
    compact(onset);
    double di = lookup.delta_i_a;
    const double i_at_onset = read_current(onset);
    if (i_at_onset + di > params_.i_lrs_a) {
      di = std::max(0.0, params_.i_lrs_a - i_at_onset);
      result.saturated = true;
    }
    result.delta_i_a = di;
    if (di > 0.0)
      excitations_.push_back(
          {onset, (1.0 - params_.split) * di, params_.split * di});
    last_onset_s_ = onset;
    return result;
  }

  std::size_t excitation_count() const { return excitations_.size(); }
  double last_onset_s() const { return last_onset_s_; }
  int clamp_warnings() const { return clamp_warnings_; }

 private:
  // Drops components whose remaining contribution is negligible,
  // keeping read_current O(active pulses).
  void compact(double t_s) {
    const double floor = 1e-4 * params_.i_hrs_a;
    std::erase_if(excitations_, [&](const Excitation& e) {
      const double dt = t_s - e.onset_s;
      return e.amp_slow_a * std::exp(-dt / params_.tau1_s) +
                 e.amp_fast_a * std::exp(-dt / params_.tau2_s) <
             floor;
    });
  }

  DeviceParams params_;
  std::vector<Excitation> excitations_;
  double last_onset_s_ = -std::numeric_limits<double>::infinity();
  int clamp_warnings_ = 0;
};

// Onset enhancement gain: current ratio across a programming event.
inline double onset_gain(double i_before_a, double i_after_a) {
  if (!(i_before_a > 0.0))
    throw std::invalid_argument("onset_gain: i_before must be > 0");
  return i_after_a / i_before_a;
}

// Log-normal device population: median and log-space dispersion per
// parameter. Draws violating the DeviceParams invariants are resampled.
struct PopulationSpec {
  int n_devices = 8;
  double i_hrs_median_a = 1e-7;
  double i_hrs_sigma = 0.1;
  double tau1_median_s = 0.05;
  double tau1_sigma = 0.1;
  double tau2_median_s = 0.005;
  double tau2_sigma = 0.1;
  std::uint64_t rng_seed = 1;
  DeviceParams base;  // split, v_read, surface, i_lrs are shared

  void validate() const {
    if (n_devices < 1)
      throw std::invalid_argument("PopulationSpec: n_devices must be >= 1");
    if (i_hrs_sigma < 0.0 || tau1_sigma < 0.0 || tau2_sigma < 0.0)
      throw std::invalid_argument("PopulationSpec: dispersions must be >= 0");
    if (!(i_hrs_median_a > 0.0) || !(tau1_median_s > tau2_median_s) ||
        !(tau2_median_s > 0.0))
      throw std::invalid_argument("PopulationSpec: bad medians");
  }
};

inline std::vector<DeviceParams> sample_population(const PopulationSpec& spec) {
  spec.validate();
  GaussianRng rng(spec.rng_seed);
  std::vector<DeviceParams> devices;
  devices.reserve(static_cast<std::size_t>(spec.n_devices));
  for (int d = 0; d < spec.n_devices; ++d) {
    bool accepted = false;
    for (int attempt = 0; attempt < 1000 && !accepted; ++attempt) {
      DeviceParams p = spec.base;
      p.i_hrs_a = spec.i_hrs_median_a * std::exp(spec.i_hrs_sigma * rng.next());
      p.tau1_s = spec.tau1_median_s * std::exp(spec.tau1_sigma * rng.next());
      p.tau2_s = spec.tau2_median_s * std::exp(spec.tau2_sigma * rng.next());
      if (p.tau1_s > p.tau2_s && p.i_hrs_a < p.i_lrs_a) {
        p.validate();
        devices.push_back(std::move(p));
        accepted = true;
      }
    }
    if (!accepted)
      throw std::runtime_error(
          "sample_population: rejection sampling did not converge");
  }
  return devices;
}

struct BiexpFit {
  double i_inf_a = 0.0;
  double a1 = 0.0;      // slow amplitude
  double tau1_s = 0.0;  // slow constant
  double a2 = 0.0;      // fast amplitude
  double tau2_s = 0.0;  // fast constant
  double residual_rms = 0.0;
  bool converged = false;
};

namespace biexp_detail {

// For fixed time constants the model is linear in (i_inf, a1, a2);
// solve the 3x3 normal equations and return the residual SSE.
inline double linear_solve(const std::vector<double>& t,
                           const std::vector<double>& y, double tau1,
                           double tau2, double coeffs[3]) {
  double ata[3][3] = {{0}};
  double atb[3] = {0, 0, 0};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double basis[3] = {1.0, std::exp(-t[i] / tau1),
                             std::exp(-t[i] / tau2)};
    for (int r = 0; r < 3; ++r) {
      atb[r] += basis[r] * y[i];
      for (int c = 0; c < 3; ++c) ata[r][c] += basis[r] * basis[c];
    }
  }
  // Gaussian elimination with partial pivoting.
  double m[3][4];
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) m[r][c] = ata[r][c];
    m[r][3] = atb[r];
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    for (int c = 0; c < 4; ++c) std::swap(m[col][c], m[pivot][c]);
    if (std::abs(m[col][col]) < 1e-300)
      return std::numeric_limits<double>::infinity();
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  for (int r = 0; r < 3; ++r) coeffs[r] = m[r][3] / m[r][r];

  double sse = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double fit = coeffs[0] + coeffs[1] * std::exp(-t[i] / tau1) +
                       coeffs[2] * std::exp(-t[i] / tau2);
    const double r = y[i] - fit;
    sse += r * r;
  }
  return sse;
}

}  // namespace biexp_detail

// Least-squares bi-exponential fit via variable projection: the decay
// constants are searched on a log grid and refined by coordinate
// descent; amplitudes come from the linear subproblem.
inline BiexpFit fit_biexponential(const std::vector<double>& t_s,
                                  const std::vector<double>& i_a) {
  if (t_s.size() != i_a.size() || t_s.size() < 5)
    throw std::invalid_argument(
        "fit_biexponential: need >= 5 (t, I) samples");
  const double span = t_s.back() - t_s.front();
  if (!(span > 0.0))
    throw std::invalid_argument("fit_biexponential: samples must span time");

  std::vector<double> t(t_s.size());
  for (std::size_t i = 0; i < t_s.size(); ++i) t[i] = t_s[i] - t_s.front();

  double mean = 0.0, var = 0.0;
  for (double v : i_a) mean += v;
  mean /= static_cast<double>(i_a.size());
  for (double v : i_a) var += (v - mean) * (v - mean);

  BiexpFit fit;
  if (var <= 1e-30 * mean * mean * static_cast<double>(i_a.size())) {
    fit.i_inf_a = mean;
    fit.tau1_s = span;
    fit.tau2_s = span / 10.0;
    fit.converged = true;
    return fit;
  }

  const double lo = std::log(span * 1e-4);
  const double hi = std::log(span * 4.0);
  double best_sse = std::numeric_limits<double>::infinity();
  double best_l1 = lo, best_l2 = lo;
  const int kGrid = 25;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < i; ++j) {
      const double l1 = lo + (hi - lo) * i / (kGrid - 1.0);
      const double l2 = lo + (hi - lo) * j / (kGrid - 1.0);
      double c[3];
      const double sse =
          biexp_detail::linear_solve(t, i_a, std::exp(l1), std::exp(l2), c);
      if (sse < best_sse) {
        best_sse = sse;
        best_l1 = l1;
        best_l2 = l2;
      }
    }
  }

  // Coordinate refinement in log space.
  double step = (hi - lo) / (kGrid - 1.0);
  for (int round = 0; round < 60 && step > 1e-7; ++round) {
    bool improved = false;
    for (int axis = 0; axis < 2; ++axis) {
      for (double dir : {-1.0, 1.0}) {
        const double l1 = best_l1 + (axis == 0 ? dir * step : 0.0);
        const double l2 = best_l2 + (axis == 1 ? dir * step : 0.0);
        double c[3];
        const double sse =
            biexp_detail::linear_solve(t, i_a, std::exp(l1), std::exp(l2), c);
        if (sse < best_sse) {
          best_sse = sse;
          best_l1 = l1;
          best_l2 = l2;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  double coeffs[3];
  double tau_a = std::exp(best_l1), tau_b = std::exp(best_l2);
  biexp_detail::linear_solve(t, i_a, tau_a, tau_b, coeffs);
  double amp_a = coeffs[1], amp_b = coeffs[2];
  if (tau_a < tau_b) {
    std::swap(tau_a, tau_b);
    std::swap(amp_a, amp_b);
  }
  fit.i_inf_a = coeffs[0];
  fit.a1 = amp_a;
  fit.tau1_s = tau_a;
  fit.a2 = amp_b;
  fit.tau2_s = tau_b;
  fit.residual_rms =
      std::sqrt(best_sse / static_cast<double>(t.size()));
  // Declare convergence when the refined model explains the data far
  // better than the flat model.
  fit.converged = std::isfinite(best_sse) && best_sse <= 0.999 * var;
  return fit;
}

}  // namespace adaspike

#endif  // ADASPIKE_MEMRISTOR_HPP
