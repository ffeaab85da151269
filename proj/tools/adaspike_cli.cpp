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

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "adaspike/config.hpp"
#include "adaspike/pipeline.hpp"
#include "adaspike/version.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::int64_t seed = -1;  // <0 keeps the config seed
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts* opts, bool with_threads = true) {
  cmd->add_option("--config", opts->config_path,
                  "Run configuration (JSON); omit for the default system");
  cmd->add_option("--out", opts->out_dir, "Output directory");
  cmd->add_option("--seed", opts->seed, "Override the config seed");
  if (with_threads)
    cmd->add_option("--threads", opts->threads,
                    "Worker threads for per-channel encoding");
}

adaspike::RunConfig resolve_config(const CommonOpts& opts) {
  adaspike::RunConfig cfg =
      opts.config_path.empty()
          ? adaspike::parse_run_config(nlohmann::json::object())
          : adaspike::load_run_config(opts.config_path);
  if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive-resolution auditory spike encoder simulator"};
  app.set_version_flag("--version", std::string("adaspike ") +
                                        adaspike::kVersion);
  app.require_subcommand(1);

  CommonOpts encode_opts, compare_opts, char_opts, sweep_opts;
  CLI::App* encode =
      app.add_subcommand("encode", "Run the adaptive encoder pipeline");
  add_common(encode, &encode_opts);
  CLI::App* compare = app.add_subcommand(
      "compare", "Adaptive run against the matched-budget fixed baseline");
  add_common(compare, &compare_opts);
  CLI::App* characterize = app.add_subcommand(
      "characterize-device", "Pulse-train device characterisation");
  add_common(characterize, &char_opts, false);
  CLI::App* sweep = app.add_subcommand(
      "rate-sweep", "Spike rate vs device current for a fixed tone");
  add_common(sweep, &sweep_opts, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (encode->parsed()) {
      const auto cfg = resolve_config(encode_opts);
      const auto art = adaspike::run_encode_pipeline(cfg, encode_opts.threads);
      adaspike::write_encode_artifacts(cfg, art, encode_opts.out_dir);
      std::printf("encode: %zu channels, %zu events -> %s\n",
                  art.channel_signals.size(), art.run.merged_events.size(),
                  encode_opts.out_dir.c_str());
    } else if (compare->parsed()) {
      const auto cfg = resolve_config(compare_opts);
      const auto art =
          adaspike::run_compare_pipeline(cfg, compare_opts.threads);
      adaspike::write_compare_artifacts(cfg, art, compare_opts.out_dir);
      if (art.degenerate) {
        std::printf("compare: degenerate (no adaptive spikes) -> %s\n",
                    compare_opts.out_dir.c_str());
      } else {
        std::printf(
            "compare: adaptive %zu vs baseline %zu spikes (delta %.6g V) "
            "-> %s\n",
            art.adaptive_total, art.baseline_total, art.baseline_delta_v,
            compare_opts.out_dir.c_str());
      }
    } else if (characterize->parsed()) {
      const auto cfg = resolve_config(char_opts);
      const auto art = adaspike::run_characterize_pipeline(cfg);
      adaspike::write_characterize_artifacts(cfg, art, char_opts.out_dir);
      if (art.fitted && art.fit.converged)
        std::printf("characterize-device: tau1 %.6g s, tau2 %.6g s -> %s\n",
                    art.fit.tau1_s, art.fit.tau2_s, char_opts.out_dir.c_str());
      else
        std::printf("characterize-device: flat or unfitted decay -> %s\n",
                    char_opts.out_dir.c_str());
    } else if (sweep->parsed()) {
      const auto cfg = resolve_config(sweep_opts);
      const auto rows = adaspike::run_sweep_pipeline(cfg);
      adaspike::write_sweep_artifacts(cfg, rows, sweep_opts.out_dir);
      std::printf("rate-sweep: %zu points -> %s\n", rows.size(),
                  sweep_opts.out_dir.c_str());
    }
  } catch (const adaspike::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntimeError;
  }
  return 0;
}
