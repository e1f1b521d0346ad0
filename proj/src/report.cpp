// SPDX-License-Identifier: Apache-2.0
#include "fasrsma/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <vector>

#include "fasrsma/errors.hpp"

namespace fasrsma {

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ConfigError("csv line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

double to_double(const std::string& s, std::size_t line_no) {
  double v{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
  return v;
}

std::uint64_t to_u64(const std::string& s, std::size_t line_no) {
  std::uint64_t v{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("csv line " + std::to_string(line_no) + ": bad count '" + s + "'");
  return v;
}

}  // namespace

std::string to_csv(const ResultTable& table) {
  ResultTable sorted = table;
  sorted.sort();
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : sorted.rows) {
    out += fmt9(r.snr_db) + ',' + csv_field(r.scheme_label) + ',' + r.metric.name() + ',' +
           fmt9(r.value) + ',' + fmt9(r.ci_low) + ',' + fmt9(r.ci_high) + ',' +
           std::to_string(r.trials) + ',' + std::to_string(r.resampled_trials) + '\n';
  }
  return out;
}

ResultTable parse_csv(std::string_view text) {
  ResultTable table;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != kCsvHeader) throw ConfigError("csv: unexpected header");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split_record(line, line_no);
    if (f.size() != 8) throw ConfigError("csv line " + std::to_string(line_no) + ": expected 8 fields");
    ResultRow r;
    r.snr_db = to_double(f[0], line_no);
    r.scheme_label = f[1];
    r.metric = Metric::parse(f[2]);
    r.value = to_double(f[3], line_no);
    r.ci_low = to_double(f[4], line_no);
    r.ci_high = to_double(f[5], line_no);
    r.trials = to_u64(f[6], line_no);
    r.resampled_trials = to_u64(f[7], line_no);
    table.rows.push_back(std::move(r));
  }
  if (!header_seen) throw ConfigError("csv: missing header");
  return table;
}

void emit_csv(const ResultTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_csv(table);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string plot_script(const ResultTable& table, PlotKind kind, std::string_view output_png) {
  const Metric::Kind wanted =
      kind == PlotKind::OpVsSnr ? Metric::Kind::NetworkOp : Metric::Kind::AvgSumRate;
  ResultTable sorted = table;
  sorted.sort();
  std::map<std::string, std::vector<const ResultRow*>> series;
  std::vector<std::string> order;
  for (const auto& r : sorted.rows) {
    if (r.metric.kind != wanted) continue;
    auto [it, inserted] = series.try_emplace(r.scheme_label);
    if (inserted) order.push_back(r.scheme_label);
    it->second.push_back(&r);
  }
  if (series.empty()) throw ConfigError("plot: table has no rows for this plot kind");

  std::string s = "# gnuplot script written by fasrsma\n";
  s += "set terminal pngcairo size 900,650\n";
  s += "set output '" + std::string(output_png) + "'\n";
  s += "set xlabel 'Average SNR (dB)'\n";
  if (kind == PlotKind::OpVsSnr) {
    s += "set ylabel 'Outage probability'\n";
    s += "set logscale y\n";
    s += "set format y '10^{%L}'\n";
    s += "set key bottom left\n";
  } else {
    s += "set ylabel 'Average sum rate (bits/s/Hz)'\n";
    s += "unset logscale y\n";
    s += "set key top left\n";
  }
  s += "set grid\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    s += "$series" + std::to_string(i) + " << EOD\n";
    for (const ResultRow* r : series[order[i]])
      s += fmt9(r->snr_db) + ' ' + fmt9(r->value) + ' ' + fmt9(r->ci_low) + ' ' +
           fmt9(r->ci_high) + '\n';
    s += "EOD\n";
  }
  s += "plot ";
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::string title = order[i];
    for (auto& c : title)
      if (c == '\'') c = '"';
    s += "$series" + std::to_string(i) + " using 1:2 with linespoints title '" + title + "'";
    s += i + 1 < order.size() ? ", \\\n     " : "\n";
  }
  return s;
}

void emit_plot_script(const ResultTable& table, PlotKind kind, const std::filesystem::path& path) {
  std::filesystem::path png = path;
  png.replace_extension(".png");
  const std::string script = plot_script(table, kind, png.filename().string());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << script;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace fasrsma
