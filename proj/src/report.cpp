#include "aoi/report.h"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "aoi/errors.h"

namespace aoi {

ReportRow make_row(std::optional<double> sweep_value, std::string policy,
                   const ExperimentReport& report) {
  ReportRow row;
  row.sweep_value = sweep_value;
  row.policy = std::move(policy);
  row.ewsaoi_mean = report.ewsaoi.mean;
  row.ewsaoi_stderr = report.ewsaoi.stderr_;
  row.rate = report.rate.mean;
  row.q_over_t = report.q_over_t.mean;
  return row;
}

std::string format_value(std::optional<double> value) {
  if (!value) return "--";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", *value);
  return buf;
}

void write_csv(std::ostream& os, std::span<const ReportRow> rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << format_value(r.sweep_value) << ',' << r.policy << ',' << format_value(r.ewsaoi_mean)
       << ',' << format_value(r.ewsaoi_stderr) << ',' << format_value(r.rate) << ','
       << format_value(r.q_over_t) << ',' << format_value(r.bound_lower) << ','
       << format_value(r.bound_upper) << '\n';
  }
}

void emit_csv(std::span<const ReportRow> rows, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ParameterError("cannot write '" + path + "'");
  write_csv(f, rows);
  f.flush();
  if (!f) throw ParameterError("failed writing '" + path + "'");
}

}  // namespace aoi
