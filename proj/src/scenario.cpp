// SPDX-License-Identifier: Apache-2.0
#include "fasrsma/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "fasrsma/errors.hpp"

namespace fasrsma {

std::vector<double> SnrGrid::points() const {
  std::vector<double> out(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    if (steps == 1) {
      out[i] = min_db;
    } else if (i + 1 == steps) {
      out[i] = max_db;
    } else {
      out[i] = min_db + (max_db - min_db) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
  }
  return out;
}

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string Scenario::series_label() const {
  const std::size_t n = port_grid.num_ports();
  const bool fas = n > 1 && strategy.kind() == PortStrategy::Kind::MaxGain;
  std::string s = fas ? "FAS-" : "FPA-";
  s += to_string(scheme.scheme);
  if (fas) {
    s += " N=" + std::to_string(n);
  } else if (n > 1) {
    s += " port=" + std::to_string(strategy.fixed_index()) + " N=" + std::to_string(n);
  }
  if (scheme.scheme == Scheme::Rsma) s += " t=" + format_number(scheme.common_power_fraction);
  if (scheme.scheme == Scheme::Noma && scheme.noma_rate_rule == NomaRateRule::OwnSinr)
    s += " own_sinr";
  return s;
}

void Scenario::validate() const {
  if (users == 0) throw ConfigError("users: must be >= 1");
  if (tx_antennas == 0) throw ConfigError("tx_antennas: must be >= 1");
  if (tx_antennas > 1 && users > tx_antennas) throw ConfigError("users: K <= L violated");
  if (strategy.kind() == PortStrategy::Kind::Fixed &&
      strategy.fixed_index() >= port_grid.num_ports())
    throw ConfigError("strategy: fixed port index out of range");
  if (scheme.precoder != default_precoder(scheme.scheme, tx_antennas))
    throw ConfigError("scheme: precoder family does not match the antenna configuration");
  scheme.validate(users, tx_antennas);
  thresholds.validate(users);
  if (snr.steps < 1) throw ConfigError("snr_db.steps: must be >= 1");
  if (!std::isfinite(snr.min_db) || !std::isfinite(snr.max_db))
    throw ConfigError("snr_db: bounds must be finite");
  if (snr.max_db < snr.min_db) throw ConfigError("snr_db: max must be >= min");
  if (trials < 2) throw ConfigError("trials: must be >= 2");
  if (label.empty()) throw ConfigError("label: must be nonempty");
}

namespace {

const std::set<std::string> kKnownKeys = {
    "users", "tx_antennas", "ports", "aperture_wavelengths", "strategy", "scheme",
    "common_power_fraction", "noma_power_fractions", "noma_rate_rule", "threshold_common",
    "threshold_private", "snr_db", "trials", "seed", "label", "matrix"};

const std::set<std::string> kMatrixKeys = {"scheme", "ports", "strategy", "common_power_fraction",
                                           "aperture_wavelengths", "tx_antennas", "users"};

const std::set<std::string> kRequiredKeys = {"users", "ports", "scheme"};

struct FieldError {
  std::string key;
  std::string message;
};

// Reads one document (possibly with matrix overrides applied). `where`
// maps a top-level key to the path reported in diagnostics.
class Reader {
 public:
  Reader(const YAML::Node& root, std::function<std::string(const std::string&)> where)
      : root_(root), where_(std::move(where)) {}

  std::vector<FieldError> errors;

  bool has(const std::string& key) const { return static_cast<bool>(root_[key]); }

  template <typename T>
  std::optional<T> scalar(const std::string& key, const char* what) {
    const YAML::Node n = root_[key];
    if (!n) return std::nullopt;
    if (!n.IsScalar()) {
      fail(key, std::string("expected ") + what);
      return std::nullopt;
    }
    T value{};
    if (!YAML::convert<T>::decode(n, value)) {
      fail(key, std::string("expected ") + what + ", got '" + n.Scalar() + "'");
      return std::nullopt;
    }
    return value;
  }

  std::optional<std::uint64_t> count(const std::string& key) {
    const YAML::Node n = root_[key];
    if (!n) return std::nullopt;
    if (!n.IsScalar() || n.Scalar().empty() || n.Scalar().front() == '-') {
      fail(key, "expected a nonnegative integer");
      return std::nullopt;
    }
    std::uint64_t v{};
    if (!YAML::convert<std::uint64_t>::decode(n, v)) {
      fail(key, "expected a nonnegative integer, got '" + n.Scalar() + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::vector<double>> list_or_scalar(const std::string& key) {
    const YAML::Node n = root_[key];
    if (!n) return std::nullopt;
    std::vector<double> out;
    if (n.IsScalar()) {
      double v{};
      if (!YAML::convert<double>::decode(n, v)) {
        fail(key, "expected a number or a list of numbers");
        return std::nullopt;
      }
      out.push_back(v);
      return out;
    }
    if (!n.IsSequence()) {
      fail(key, "expected a number or a list of numbers");
      return std::nullopt;
    }
    for (std::size_t i = 0; i < n.size(); ++i) {
      double v{};
      if (!n[i].IsScalar() || !YAML::convert<double>::decode(n[i], v)) {
        fail_path(where_(key) + "[" + std::to_string(i) + "]", "expected a number");
        return std::nullopt;
      }
      out.push_back(v);
    }
    return out;
  }

  const YAML::Node node(const std::string& key) const { return root_[key]; }

  void fail(const std::string& key, std::string message) {
    errors.push_back({where_(key), std::move(message)});
  }
  void fail_path(std::string path, std::string message) {
    errors.push_back({std::move(path), std::move(message)});
  }
  std::string path(const std::string& key) const { return where_(key); }

 private:
  YAML::Node root_;
  std::function<std::string(const std::string&)> where_;
};

std::optional<PortStrategy> parse_strategy(const std::string& text) {
  if (text == "max_gain") return PortStrategy::max_gain();
  constexpr std::string_view prefix = "fixed:";
  if (text.starts_with(prefix)) {
    const std::string digits = text.substr(prefix.size());
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos)
      return PortStrategy::fixed(static_cast<std::size_t>(std::stoull(digits)));
  }
  return std::nullopt;
}

// Builds one scenario; returns nullopt with errors recorded in `r`.
std::optional<Scenario> build(Reader& r) {
  for (const auto& key : kRequiredKeys)
    if (!r.has(key)) r.fail(key, "missing required key");

  Scenario s;
  if (auto v = r.count("users")) s.users = *v;
  if (auto v = r.count("tx_antennas")) s.tx_antennas = *v;
  std::size_t ports = 1;
  if (auto v = r.count("ports")) {
    ports = *v;
    if (ports == 0) r.fail("ports", "must be >= 1");
  }
  double aperture = kDefaultAperture;
  if (auto v = r.scalar<double>("aperture_wavelengths", "a number")) {
    aperture = *v;
    if (!std::isfinite(aperture) || aperture < 0.0) r.fail("aperture_wavelengths", "must be >= 0");
  }
  if (ports >= 1 && std::isfinite(aperture) && aperture >= 0.0) s.port_grid = PortGrid(ports, aperture);

  if (auto v = r.scalar<std::string>("strategy", "max_gain or fixed:<i>")) {
    if (auto st = parse_strategy(*v)) {
      s.strategy = *st;
    } else {
      r.fail("strategy", "expected max_gain or fixed:<i>, got '" + *v + "'");
    }
  }
  if (auto v = r.scalar<std::string>("scheme", "rsma or noma")) {
    if (*v == "rsma") {
      s.scheme.scheme = Scheme::Rsma;
    } else if (*v == "noma") {
      s.scheme.scheme = Scheme::Noma;
    } else {
      r.fail("scheme", "expected rsma or noma, got '" + *v + "'");
    }
  }
  if (auto v = r.scalar<double>("common_power_fraction", "a number"))
    s.scheme.common_power_fraction = *v;
  if (auto v = r.scalar<std::string>("noma_rate_rule", "sic_decodable or own_sinr")) {
    if (*v == "sic_decodable") {
      s.scheme.noma_rate_rule = NomaRateRule::SicDecodable;
    } else if (*v == "own_sinr") {
      s.scheme.noma_rate_rule = NomaRateRule::OwnSinr;
    } else {
      r.fail("noma_rate_rule", "expected sic_decodable or own_sinr, got '" + *v + "'");
    }
  }
  s.scheme.precoder = default_precoder(s.scheme.scheme, s.tx_antennas);

  double t_common = 0.5;
  if (auto v = r.scalar<double>("threshold_common", "a number")) t_common = *v;
  std::vector<double> t_private{0.5};
  if (auto v = r.list_or_scalar("threshold_private")) t_private = *v;
  if (t_private.size() == 1) {
    s.thresholds = OutageThresholds::uniform(s.users, t_common, t_private.front());
  } else {
    s.thresholds = {t_common, t_private};
  }

  if (r.has("snr_db")) {
    const YAML::Node n = r.node("snr_db");
    if (!n.IsMap()) {
      r.fail("snr_db", "expected a mapping {min, max, steps}");
    } else {
      for (const auto& kv : n) {
        const auto k = kv.first.as<std::string>();
        if (k != "min" && k != "max" && k != "steps")
          r.fail_path(r.path("snr_db") + "." + k, "unknown key");
      }
      auto num = [&](const char* k, double& out) {
        if (!n[k]) return;
        if (!YAML::convert<double>::decode(n[k], out))
          r.fail_path(r.path("snr_db") + "." + k, "expected a number");
      };
      num("min", s.snr.min_db);
      num("max", s.snr.max_db);
      if (n["steps"]) {
        std::uint64_t steps{};
        if (!n["steps"].IsScalar() || n["steps"].Scalar().starts_with("-") ||
            !YAML::convert<std::uint64_t>::decode(n["steps"], steps)) {
          r.fail_path(r.path("snr_db") + ".steps", "expected a positive integer");
        } else {
          s.snr.steps = steps;
        }
      }
    }
  }
  if (auto v = r.count("trials")) s.trials = *v;
  if (auto v = r.count("seed")) s.seed = *v;
  if (auto v = r.scalar<std::string>("label", "text")) s.label = *v;

  if (r.has("noma_power_fractions")) {
    if (auto v = r.list_or_scalar("noma_power_fractions")) s.scheme.noma_power_fractions = *v;
  } else if (s.scheme.scheme == Scheme::Noma) {
    try {
      s.scheme.noma_power_fractions = default_noma_fractions(s.users);
    } catch (const ConfigError& e) {
      r.fail("noma_power_fractions", e.what());
    }
  }

  if (!r.errors.empty()) return std::nullopt;

  // Parameters the scheme ignores are normalized so matrix duplicates collapse.
  if (s.scheme.scheme == Scheme::Noma) s.scheme.common_power_fraction = 0.5;
  if (s.scheme.scheme == Scheme::Rsma) {
    s.scheme.noma_power_fractions.clear();
    s.scheme.noma_rate_rule = NomaRateRule::SicDecodable;
  }
  if (s.port_grid.num_ports() == 1) s.strategy = PortStrategy::max_gain();

  try {
    s.validate();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(':');
    std::string key = colon == std::string::npos ? "" : msg.substr(0, colon);
    std::string text = colon == std::string::npos ? msg : msg.substr(colon + 2);
    const auto dot = key.find('.');
    const std::string top = key.substr(0, dot);
    if (kKnownKeys.count(top)) {
      r.fail_path(r.path(top) + (dot == std::string::npos ? "" : key.substr(dot)), text);
    } else {
      r.fail_path(key, text);
    }
    return std::nullopt;
  }
  return s;
}

bool same_config(const Scenario& a, const Scenario& b) {
  return a.users == b.users && a.tx_antennas == b.tx_antennas &&
         a.port_grid.num_ports() == b.port_grid.num_ports() &&
         a.port_grid.aperture() == b.port_grid.aperture() && a.strategy == b.strategy &&
         a.scheme.scheme == b.scheme.scheme &&
         a.scheme.common_power_fraction == b.scheme.common_power_fraction &&
         a.scheme.noma_power_fractions == b.scheme.noma_power_fractions &&
         a.scheme.noma_rate_rule == b.scheme.noma_rate_rule;
}

}  // namespace

ParseResult parse_config(std::string_view document) {
  ParseResult result;
  YAML::Node root;
  try {
    root = YAML::Load(std::string(document));
  } catch (const YAML::Exception& e) {
    result.diagnostics.push_back({"", std::string("malformed document: ") + e.what()});
    return result;
  }
  if (!root.IsMap()) {
    result.diagnostics.push_back({"", "document must be a mapping of keys"});
    return result;
  }

  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!kKnownKeys.count(key)) result.diagnostics.push_back({key, "unknown key"});
  }

  // Matrix axes in document order.
  const std::size_t key_errors = result.diagnostics.size();
  std::vector<std::pair<std::string, std::vector<YAML::Node>>> axes;
  if (root["matrix"]) {
    const YAML::Node m = root["matrix"];
    if (!m.IsMap()) {
      result.diagnostics.push_back({"matrix", "expected a mapping of key -> list"});
    } else {
      for (const auto& kv : m) {
        const auto key = kv.first.as<std::string>();
        if (!kMatrixKeys.count(key)) {
          result.diagnostics.push_back({"matrix." + key, "unknown or non-sweepable key"});
          continue;
        }
        if (!kv.second.IsSequence() || kv.second.size() == 0) {
          result.diagnostics.push_back({"matrix." + key, "expected a nonempty list"});
          continue;
        }
        std::vector<YAML::Node> values;
        for (const auto& v : kv.second) values.push_back(v);
        axes.emplace_back(key, std::move(values));
      }
    }
  }
  if (result.diagnostics.size() > key_errors) return result;

  // A key supplied by the matrix satisfies the required-key check.
  std::vector<std::size_t> index(axes.size(), 0);
  std::set<std::pair<std::string, std::string>> seen_errors;
  while (true) {
    YAML::Node doc = YAML::Clone(root);
    doc.remove("matrix");
    std::map<std::string, std::string> origin;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      doc[axes[a].first] = axes[a].second[index[a]];
      origin[axes[a].first] = "matrix." + axes[a].first + "[" + std::to_string(index[a]) + "]";
    }
    Reader reader(doc, [&origin](const std::string& key) {
      auto it = origin.find(key);
      return it == origin.end() ? key : it->second;
    });
    if (auto s = build(reader)) {
      const std::string series = s->series_label();
      bool duplicate = false;
      for (const auto& existing : result.scenarios) {
        if (existing.series_label() != series) continue;
        if (!same_config(existing, *s)) {
          result.diagnostics.push_back({"matrix", "two scenarios produce the series '" + series + "'"});
        }
        duplicate = true;
        break;
      }
      if (!duplicate) result.scenarios.push_back(std::move(*s));
    } else {
      for (auto& e : reader.errors)
        if (seen_errors.insert({e.key, e.message}).second)
          result.diagnostics.push_back({e.key, e.message});
    }

    std::size_t a = 0;
    for (; a < axes.size(); ++a) {
      if (++index[a] < axes[a].second.size()) break;
      index[a] = 0;
    }
    if (a == axes.size()) break;
  }
  if (!result.diagnostics.empty()) result.scenarios.clear();
  return result;
}

ParseResult parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    ParseResult r;
    r.diagnostics.push_back({"", "cannot read " + path.string()});
    return r;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace fasrsma
