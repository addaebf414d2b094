#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "aoi/sim.h"

namespace aoi {

// One CSV row. Missing values print as "--".
struct ReportRow {
  std::optional<double> sweep_value;
  std::string policy;
  std::optional<double> ewsaoi_mean;
  std::optional<double> ewsaoi_stderr;
  std::optional<double> rate;
  std::optional<double> q_over_t;
  std::optional<double> bound_lower;
  std::optional<double> bound_upper;
};

inline constexpr const char* kCsvHeader =
    "sweep_value,policy,ewsaoi_mean,ewsaoi_stderr,rate,q_over_t,bound_lower,bound_upper";

// Row for a simulated experiment; bounds are left for the caller.
ReportRow make_row(std::optional<double> sweep_value, std::string policy,
                   const ExperimentReport& report);

// Six significant digits.
std::string format_value(std::optional<double> value);

void write_csv(std::ostream& os, std::span<const ReportRow> rows);

// Throws ParameterError when the file cannot be written.
void emit_csv(std::span<const ReportRow> rows, const std::string& path);

}  // namespace aoi
