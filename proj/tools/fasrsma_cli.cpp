// SPDX-License-Identifier: Apache-2.0
// fasrsma: Monte-Carlo outage / sum-rate simulator for fluid-antenna
// multi-user downlinks with RSMA and NOMA.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>
#include <cctype>

#include "fasrsma/engine.hpp"
#include "fasrsma/kernels.hpp"
#include "fasrsma/report.hpp"
#include "fasrsma/scenario.hpp"

namespace fs = std::filesystem;
using namespace fasrsma;

namespace {

int print_diagnostics(const ParseResult& parsed, const std::string& path) {
  for (const auto& d : parsed.diagnostics)
    std::cerr << path << ": " << (d.key_path.empty() ? "<document>" : d.key_path) << ": "
              << d.message << '\n';
  return parsed.ok() ? 0 : 2;
}

std::string file_stem_for(const std::string& label) {
  std::string out;
  for (char c : label) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out.empty() ? "results" : out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fluid-antenna RSMA/NOMA link-level Monte-Carlo simulator"};
  app.require_subcommand(1);

  std::string config;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  bool emit_plots = false;

  auto* run = app.add_subcommand("run", "Run every scenario of a config document");
  run->add_option("--config", config, "Scenario document (YAML)")->required()->check(CLI::ExistingFile);
  run->add_option("--workers", workers, "Worker threads (results do not depend on this)")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Override the document's seed");
  run->add_option("--out-dir", out_dir, "Directory for the CSV and plot scripts");
  run->add_flag("--emit-plots", emit_plots, "Also write gnuplot scripts");

  auto* validate = app.add_subcommand("validate", "Check a config document without running it");
  validate->add_option("--config", config, "Scenario document (YAML)")->required()->check(CLI::ExistingFile);

  app.add_subcommand("list-schemes", "List multiple-access schemes and port strategies");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("list-schemes")) {
    std::cout << "schemes:\n"
                 "  rsma   1-layer rate splitting: common stream + K private streams\n"
                 "         (SISO scalar, or hybrid ZF private / MRT-sum common precoding)\n"
                 "  noma   power-domain NOMA with SIC, weakest-first power fractions\n"
                 "         (SISO scalar, or per-user MRT beams)\n"
                 "strategies:\n"
                 "  max_gain    activate the port with the largest channel gain (FAS)\n"
                 "  fixed:<i>   always use port i (FPA baseline)\n"
                 "noma_rate_rule:\n"
                 "  sic_decodable (default), own_sinr\n"
                 "kernels: " << kernels::active().name << '\n';
    return 0;
  }

  const ParseResult parsed = parse_config_file(config);
  if (int rc = print_diagnostics(parsed, config); rc != 0) return rc;

  if (app.got_subcommand("validate")) {
    std::cout << config << ": " << parsed.scenarios.size() << " scenario(s)\n";
    for (const auto& s : parsed.scenarios)
      std::cout << "  " << s.series_label() << "  K=" << s.users << " L=" << s.tx_antennas
                << " trials=" << s.trials << " snr=[" << s.snr.min_db << ", " << s.snr.max_db
                << "] x" << s.snr.steps << '\n';
    return 0;
  }

  std::vector<Scenario> scenarios = parsed.scenarios;
  if (seed)
    for (auto& s : scenarios) s.seed = *seed;

  try {
    fs::create_directories(out_dir);
    const auto start = std::chrono::steady_clock::now();
    RunOutput result;
    for (const auto& s : scenarios) {
      RunOutput one = run_scenario(s, workers);
      std::cerr << "  " << s.series_label() << ": " << s.trials << " trials x " << s.snr.steps
                << " SNR points, resampled " << one.diagnostics.resampled_trials
                << ", common-beam fallbacks " << one.diagnostics.common_fallbacks << '\n';
      result.table.append(one.table);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string stem = file_stem_for(scenarios.front().label);
    const fs::path csv = fs::path(out_dir) / (stem + ".csv");
    emit_csv(result.table, csv);
    std::cerr << "wrote " << csv.string() << " (" << result.table.rows.size() << " rows, "
              << secs << " s, kernels=" << kernels::active().name << ")\n";
    if (emit_plots) {
      const fs::path op = fs::path(out_dir) / (stem + "_op.gp");
      const fs::path rate = fs::path(out_dir) / (stem + "_rate.gp");
      emit_plot_script(result.table, PlotKind::OpVsSnr, op);
      emit_plot_script(result.table, PlotKind::RateVsSnr, rate);
      std::cerr << "wrote " << op.string() << ", " << rate.string() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
