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

#ifndef ADASPIKE_EVENT_IO_HPP
#define ADASPIKE_EVENT_IO_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaspike/controller.hpp"
#include "adaspike/frontend.hpp"
#include "adaspike/metrics.hpp"

namespace adaspike {

// All floating-point text output uses 9 significant digits.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// --- Event stream, text form: t_ns,channel,polarity -----------------------

inline void write_events_csv(std::ostream& os,
                             const std::vector<SpikeEvent>& events) {
  os << "t_ns,channel,polarity\n";
  for (const auto& ev : events)
    os << ev.t_ns << ',' << ev.channel << ',' << ev.polarity << '\n';
}

inline void write_events_csv(const std::string& path,
                             const std::vector<SpikeEvent>& events) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_events_csv: cannot open " + path);
  write_events_csv(os, events);
}

inline std::vector<SpikeEvent> read_events_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_events_csv: cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || line.rfind("t_ns", 0) != 0)
    throw std::runtime_error("read_events_csv: missing header in " + path);
  std::vector<SpikeEvent> events;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    SpikeEvent ev;
    if (!std::getline(row, field, ','))
      throw std::runtime_error("read_events_csv: malformed row");
    ev.t_ns = std::stoull(field);
    if (!std::getline(row, field, ','))
      throw std::runtime_error("read_events_csv: malformed row");
    ev.channel = std::stoi(field);
    if (!std::getline(row, field, ','))
      throw std::runtime_error("read_events_csv: malformed row");
    ev.polarity = std::stoi(field);
    events.push_back(ev);
  }
  return events;
}

// --- Event stream, packed binary form --------------------------------------
// Little-endian records of u64 t_ns, u8 channel, i8 polarity (10 bytes).

inline void write_events_binary(const std::string& path,
                                const std::vector<SpikeEvent>& events) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("write_events_binary: cannot open " + path);
  for (const auto& ev : events) {
    if (ev.channel < 0 || ev.channel > 255)
      throw std::invalid_argument(
          "write_events_binary: channel must fit in a byte");
    std::uint8_t rec[10];
    for (int b = 0; b < 8; ++b)
      rec[b] = static_cast<std::uint8_t>((ev.t_ns >> (8 * b)) & 0xFF);
    rec[8] = static_cast<std::uint8_t>(ev.channel);
    rec[9] = static_cast<std::uint8_t>(static_cast<std::int8_t>(ev.polarity));
    os.write(reinterpret_cast<const char*>(rec), sizeof(rec));
  }
}

inline std::vector<SpikeEvent> read_events_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_events_binary: cannot open " + path);
  std::vector<SpikeEvent> events;
  std::uint8_t rec[10];
  while (is.read(reinterpret_cast<char*>(rec), sizeof(rec))) {
    SpikeEvent ev;
    ev.t_ns = 0;
    for (int b = 0; b < 8; ++b)
      ev.t_ns |= static_cast<std::uint64_t>(rec[b]) << (8 * b);
    ev.channel = rec[8];
    ev.polarity = static_cast<std::int8_t>(rec[9]);
    events.push_back(ev);
  }
  if (is.gcount() != 0)
    throw std::runtime_error("read_events_binary: truncated record in " +
                             path);
  return events;
}

// --- Tabular exports --------------------------------------------------------

inline void write_window_series_csv(const std::string& path,
                                    const std::vector<WindowSeries>& columns,
                                    const std::vector<std::string>& names) {
  if (columns.empty() || columns.size() != names.size())
    throw std::invalid_argument("write_window_series_csv: bad columns");
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("write_window_series_csv: cannot open " + path);
  os << "t_center_s";
  for (const auto& n : names) os << ',' << n;
  os << '\n';
  const std::size_t rows = columns.front().t_centers_s.size();
  for (std::size_t r = 0; r < rows; ++r) {
    os << format_double(columns.front().t_centers_s[r]);
    for (const auto& col : columns)
      os << ',' << format_double(r < col.values.size() ? col.values[r] : 0.0);
    os << '\n';
  }
}

inline void write_cochleagram_csv(const std::string& path,
                                  const Cochleagram& coch) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("write_cochleagram_csv: cannot open " + path);
  os << "t_center_s";
  for (int ch = 0; ch < coch.n_channels; ++ch) os << ",ch" << ch;
  os << '\n';
  for (std::size_t r = 0; r < coch.t_centers_s.size(); ++r) {
    os << format_double(coch.t_centers_s[r]);
    for (int ch = 0; ch < coch.n_channels; ++ch)
      os << ',' << format_double(coch.rows[static_cast<std::size_t>(ch)][r]);
    os << '\n';
  }
}

inline void write_programming_log_csv(
    const std::string& path, const std::vector<ProgrammingEvent>& log) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("write_programming_log_csv: cannot open " + path);
  os << "t_start_s,channel,v_sti,pw_s,i_before_a,i_after_a,gain\n";
  for (const auto& p : log) {
    os << format_double(p.t_start_s) << ',' << p.channel << ','
       << format_double(p.v_sti) << ',' << format_double(p.pw_s) << ','
       << format_double(p.i_before_a) << ',' << format_double(p.i_after_a)
       << ',' << format_double(p.gain) << '\n';
  }
}

inline void write_dropped_triggers_csv(const std::string& path,
                                       const std::vector<DroppedTrigger>& log) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("write_dropped_triggers_csv: cannot open " +
                             path);
  os << "t_s,channel,count\n";
  for (const auto& d : log)
    os << format_double(d.t_s) << ',' << d.channel << ',' << d.count << '\n';
}

inline void write_delta_trace_csv(const std::string& path,
                                  const DeltaTrace& trace) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("write_delta_trace_csv: cannot open " + path);
  os << "t_s,delta_v\n";
  for (std::size_t i = 0; i < trace.delta_v.size(); ++i) {
    os << format_double(trace.t0_s + static_cast<double>(i) * trace.dt_s)
       << ',' << format_double(trace.delta_v[i]) << '\n';
  }
}

inline void write_population_csv(const std::string& path,
                                 const std::vector<DeviceParams>& devices) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("write_population_csv: cannot open " + path);
  os << "device,i_hrs_a,tau1_s,tau2_s,split,v_read,i_lrs_a\n";
  for (std::size_t d = 0; d < devices.size(); ++d) {
    const auto& p = devices[d];
    os << d << ',' << format_double(p.i_hrs_a) << ','
       << format_double(p.tau1_s) << ',' << format_double(p.tau2_s) << ','
       << format_double(p.split) << ',' << format_double(p.v_read) << ','
       << format_double(p.i_lrs_a) << '\n';
  }
}

}  // namespace adaspike

#endif  // ADASPIKE_EVENT_IO_HPP
