// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fasrsma/scenario.hpp"

using namespace fasrsma;

namespace {

bool has_diagnostic(const ParseResult& r, std::string_view key, std::string_view text = {}) {
  return std::any_of(r.diagnostics.begin(), r.diagnostics.end(), [&](const Diagnostic& d) {
    return d.key_path == key && d.message.find(text) != std::string::npos;
  });
}

std::string dump(const ParseResult& r) {
  std::string s;
  for (const auto& d : r.diagnostics) s += d.key_path + ": " + d.message + "\n";
  return s;
}

}  // namespace

TEST(SnrGrid, Points) {
  EXPECT_EQ((SnrGrid{0, 40, 9}).points(),
            (std::vector<double>{0, 5, 10, 15, 20, 25, 30, 35, 40}));
  EXPECT_EQ((SnrGrid{3, 3, 1}).points(), (std::vector<double>{3}));
}

TEST(ParseConfig, MinimalSisoDocument) {
  const auto r = parse_config("users: 3\nports: 10\nscheme: rsma\n");
  ASSERT_TRUE(r.ok()) << dump(r);
  ASSERT_EQ(r.scenarios.size(), 1u);
  const Scenario& s = r.scenarios[0];
  EXPECT_EQ(s.users, 3u);
  EXPECT_EQ(s.tx_antennas, 1u);
  EXPECT_EQ(s.port_grid.num_ports(), 10u);
  EXPECT_EQ(s.port_grid.aperture(), kDefaultAperture);
  EXPECT_EQ(s.strategy, PortStrategy::max_gain());
  EXPECT_EQ(s.scheme.scheme, Scheme::Rsma);
  EXPECT_EQ(s.scheme.precoder, PrecoderFamily::Siso);
  EXPECT_EQ(s.trials, kDefaultTrials);
  EXPECT_EQ(s.series_label(), "FAS-RSMA N=10 t=0.5");
  EXPECT_NO_THROW(s.validate());
}

TEST(ParseConfig, KGreaterThanL) {
  const auto r = parse_config("users: 3\ntx_antennas: 2\nports: 10\nscheme: rsma\n");
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_diagnostic(r, "users", "K <= L violated")) << dump(r);
}

TEST(ParseConfig, ZeroTrialsNamesKey) {
  const auto r = parse_config("users: 3\nports: 10\nscheme: rsma\ntrials: 0\n");
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_diagnostic(r, "trials")) << dump(r);
}

TEST(ParseConfig, UnknownAndMissingKeys) {
  const auto r = parse_config("users: 3\nscheme: rsma\nportz: 10\n");
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_diagnostic(r, "portz")) << dump(r);
  EXPECT_TRUE(has_diagnostic(r, "ports")) << dump(r);
}

TEST(ParseConfig, BadValuesNameTheirKeys) {
  EXPECT_TRUE(has_diagnostic(parse_config("users: 3\nports: 10\nscheme: tdma\n"), "scheme"));
  EXPECT_TRUE(has_diagnostic(parse_config("users: 3\nports: 10\nscheme: rsma\nstrategy: fixed:10\n"),
                             "strategy"));
  EXPECT_TRUE(has_diagnostic(
      parse_config("users: 2\nports: 10\nscheme: noma\nnoma_power_fractions: [0.5, 0.4]\n"),
      "noma_power_fractions"));
  EXPECT_TRUE(has_diagnostic(parse_config("users: 3\nports: 10\nscheme: rsma\nsnr_db: {min: 0, max: 10, steps: 0}\n"),
                             "snr_db.steps"));
  EXPECT_FALSE(parse_config("users: [3\n").ok());
}

TEST(ParseConfig, MatrixExpansion) {
  const auto r = parse_config(
      "label: m\nusers: 3\nports: 10\nscheme: rsma\n"
      "matrix:\n  scheme: [rsma, noma]\n  ports: [1, 10, 20]\n");
  ASSERT_TRUE(r.ok()) << dump(r);
  std::set<std::string> labels;
  for (const auto& s : r.scenarios) {
    labels.insert(s.series_label());
    EXPECT_EQ(s.label, "m");
  }
  EXPECT_EQ(labels, (std::set<std::string>{"FPA-RSMA t=0.5", "FAS-RSMA N=10 t=0.5", "FAS-RSMA N=20 t=0.5",
                                           "FPA-NOMA", "FAS-NOMA N=10", "FAS-NOMA N=20"}));
  EXPECT_EQ(r.scenarios.size(), 6u);
}

TEST(ParseConfig, MatrixDropsDuplicatesForIgnoredParameters) {
  // NOMA ignores the common power fraction, so three t values give one NOMA curve.
  const auto r = parse_config(
      "users: 3\ntx_antennas: 4\nports: 10\nscheme: rsma\n"
      "matrix:\n  scheme: [rsma, noma]\n  common_power_fraction: [0.2, 0.5, 0.8]\n");
  ASSERT_TRUE(r.ok()) << dump(r);
  EXPECT_EQ(r.scenarios.size(), 4u);
}

TEST(ParseConfig, MatrixErrorsCarryIndex) {
  const auto r = parse_config(
      "users: 3\nports: 10\nscheme: rsma\nmatrix:\n  ports: [10, 0]\n");
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_diagnostic(r, "matrix.ports[1]")) << dump(r);
}

TEST(ParseConfig, ShippedConfigs) {
  for (const char* name : {"siso_outage.yaml", "miso_sum_rate.yaml"}) {
    const auto r = parse_config_file(std::filesystem::path(FASRSMA_SOURCE_DIR) / "configs" / name);
    EXPECT_TRUE(r.ok()) << name << "\n" << dump(r);
  }
  const auto siso = parse_config_file(std::filesystem::path(FASRSMA_SOURCE_DIR) / "configs/siso_outage.yaml");
  EXPECT_EQ(siso.scenarios.size(), 6u);
  const auto miso = parse_config_file(std::filesystem::path(FASRSMA_SOURCE_DIR) / "configs/miso_sum_rate.yaml");
  EXPECT_EQ(miso.scenarios.size(), 12u);  // 9 RSMA (N x t) + 3 NOMA
}

TEST(ParseConfig, MissingFile) {
  const auto r = parse_config_file("/nonexistent/cfg.yaml");
  EXPECT_FALSE(r.ok());
}
