// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fasrsma/metrics.hpp"

namespace fasrsma {

/// Header row of every result CSV.
inline constexpr std::string_view kCsvHeader =
    "snr_db,scheme_label,metric,value,ci_low,ci_high,trials,resampled_trials";

/// Rows sorted by (scheme_label, metric, snr_db); reals printed with %.9g.
std::string to_csv(const ResultTable& table);

/// Inverse of to_csv. Throws ConfigError on a malformed document.
ResultTable parse_csv(std::string_view text);

/// Writes to_csv(table) to `path`. Throws std::runtime_error if the file
/// cannot be written.
void emit_csv(const ResultTable& table, const std::filesystem::path& path);

enum class PlotKind { OpVsSnr, RateVsSnr };

/// Self-contained gnuplot script with the data inlined: network OP on a
/// log-scale y axis, or average sum rate on a linear one; one series per
/// scheme label. Throws ConfigError if the table has no rows for `kind`.
std::string plot_script(const ResultTable& table, PlotKind kind, std::string_view output_png);

void emit_plot_script(const ResultTable& table, PlotKind kind, const std::filesystem::path& path);

}  // namespace fasrsma
