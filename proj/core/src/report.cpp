#include "radnorm/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "radnorm/log_integrate.hpp"

namespace radnorm {

namespace {

using nlohmann::json;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void csv_line(std::ostringstream& os, const std::string& experiment, const std::string& sample,
              double x, const std::string& quantity, double value, double error) {
  os << csv_field(experiment) << ',' << csv_field(sample) << ',' << csv_number(x) << ','
     << csv_field(quantity) << ',' << csv_number(value) << ',' << csv_number(error) << '\n';
}

constexpr const char* kCsvHeader = "experiment,sample,x,quantity,value,error\n";

void add(Report& r, std::string sample, double x, std::string quantity, const NormResult& v) {
  r.rows.push_back({std::move(sample), x, std::move(quantity), v.value, v.error_estimate, v.status});
}

Report start(std::string experiment, double p, double q) {
  Report r;
  r.experiment = std::move(experiment);
  r.p = p;
  r.q = q;
  return r;
}

}  // namespace

json to_json(const NormResult& r) {
  return {{"value", number_or_null(r.value)},
          {"error_estimate", number_or_null(r.error_estimate)},
          {"evaluations", r.evaluations},
          {"status", to_string(r.status)}};
}

json to_json(const ComplexResult& r) {
  return {{"re", number_or_null(r.value.real())},
          {"im", number_or_null(r.value.imag())},
          {"error_estimate", number_or_null(r.error_estimate)},
          {"evaluations", r.evaluations},
          {"status", to_string(r.status)}};
}

json to_json(const ExponentFit& fit) {
  json samples = json::array();
  for (const auto& [lx, ly] : fit.samples) samples.push_back({lx, ly});
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"residual_max", fit.residual_max},
          {"samples", std::move(samples)}};
}

Report make_report(const KernelAsymptotics& a) {
  Report r = start("asymptotics", a.e.p(), a.e.q());
  r.parameters = {{"beta", a.beta}, {"space", to_string(a.space)}};
  const std::string quantity = std::string(to_string(a.space)) + "_norm";
  for (std::size_t i = 0; i < a.alphas.size(); ++i) {
    add(r, "alpha=" + csv_number(a.alphas[i]), 1.0 - a.alphas[i], quantity, a.norms[i]);
  }
  r.fits.emplace_back("loglog", a.fit);
  r.summary = {{"expected_slope", a.expected_slope},
               {"slope", a.fit.slope},
               {"slope_error", a.fit.slope - a.expected_slope}};
  return r;
}

Report make_report(const ContainmentReport& c) {
  Report r = start("sweep", c.e.p(), c.e.q());
  const char* direction = c.e.p() > c.e.q()   ? "mixed<=rm"
                          : c.e.q() > c.e.p() ? "rm<=mixed"
                                              : "rm==mixed";
  r.parameters = {{"direction", direction}, {"corpus_size", c.rows.size()}};
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    const ContainmentRow& row = c.rows[i];
    const double x = static_cast<double>(i);
    add(r, row.label, x, "rm", row.rm);
    add(r, row.label, x, "mixed", row.mixed);
    r.rows.push_back({row.label, x, "ratio", row.ratio,
                      row.ratio * (row.rm.error_estimate / row.rm.value +
                                   row.mixed.error_estimate / row.mixed.value),
                      combine_status(row.rm.status, row.mixed.status)});
  }
  r.summary = {{"worst_ratio", c.worst_ratio}, {"worst_deviation", c.worst_deviation}};
  return r;
}

Report make_report(const SeparationReport& s) {
  Report r = start("separate", s.schedule.e.p(), s.schedule.e.q());
  r.parameters = {{"m", s.schedule.m()}, {"schedule", to_json(s.schedule)}};
  for (const PieceNorms& pc : s.pieces) {
    const std::string sample = "n=" + std::to_string(pc.n);
    const double x = static_cast<double>(pc.n);
    add(r, sample, x, "rm_f", pc.rm_f);
    add(r, sample, x, "mixed_f", pc.mixed_f);
    add(r, sample, x, "rm_g", pc.rm_g);
    add(r, sample, x, "mixed_g", pc.mixed_g);
  }
  for (const PartialSumNorms& ps : s.partial_sums) {
    const std::string sample = "m=" + std::to_string(ps.m);
    const double x = static_cast<double>(ps.m);
    add(r, sample, x, "rm_F", ps.rm_F);
    add(r, sample, x, "mixed_F", ps.mixed_F);
    r.rows.push_back({sample, x, "rm_additive", ps.rm_additive, 0.0, QuadStatus::converged});
    r.rows.push_back({sample, x, "mixed_additive", ps.mixed_additive, 0.0, QuadStatus::converged});
    if (ps.rm_pieces_direct) add(r, sample, x, "rm_pieces_direct", *ps.rm_pieces_direct);
    if (ps.mixed_pieces_direct) add(r, sample, x, "mixed_pieces_direct", *ps.mixed_pieces_direct);
  }
  if (s.rm_fit) r.fits.emplace_back("rm_F", *s.rm_fit);
  if (s.mixed_fit) r.fits.emplace_back("mixed_F", *s.mixed_fit);
  if (s.ratio_fit) r.fits.emplace_back("ratio", *s.ratio_fit);
  const double p = s.schedule.e.p();
  const double q = s.schedule.e.q();
  r.summary = {{"expected_rm_slope", 1.0 / q},
               {"expected_mixed_slope", 1.0 / p},
               {"expected_ratio_slope", 1.0 / q - 1.0 / p}};
  return r;
}

json to_json(const Report& r) {
  json rows = json::array();
  for (const ReportRow& row : r.rows) {
    rows.push_back({{"sample", row.sample},
                    {"x", number_or_null(row.x)},
                    {"quantity", row.quantity},
                    {"value", number_or_null(row.value)},
                    {"error", number_or_null(row.error)},
                    {"status", to_string(row.status)}});
  }
  json fits = json::object();
  for (const auto& [name, fit] : r.fits) fits[name] = to_json(fit);
  return {{"experiment", r.experiment},
          {"exponents", {{"p", r.p}, {"q", r.q}}},
          {"parameters", r.parameters},
          {"rows", std::move(rows)},
          {"fits", std::move(fits)},
          {"summary", r.summary}};
}

std::string to_csv(const Report& r) {
  std::ostringstream os;
  os << kCsvHeader;
  for (const ReportRow& row : r.rows) {
    csv_line(os, r.experiment, row.sample, row.x, row.quantity, row.value, row.error);
  }
  for (const auto& [name, fit] : r.fits) {
    const std::string sample = "fit:" + name;
    const double nan = std::nan("");
    csv_line(os, r.experiment, sample, nan, "slope", fit.slope, nan);
    csv_line(os, r.experiment, sample, nan, "intercept", fit.intercept, nan);
    csv_line(os, r.experiment, sample, nan, "residual_max", fit.residual_max, nan);
  }
  return os.str();
}

std::string to_csv(const std::string& experiment, const NormResult& result) {
  std::ostringstream os;
  os << kCsvHeader;
  csv_line(os, experiment, "0", std::nan(""), "value", result.value, result.error_estimate);
  return os.str();
}

std::string to_csv(const std::string& experiment,
                   const std::vector<std::pair<std::string, ComplexResult>>& values) {
  std::ostringstream os;
  os << kCsvHeader;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& [sample, v] = values[i];
    const double x = static_cast<double>(i);
    csv_line(os, experiment, sample, x, "re", v.value.real(), v.error_estimate);
    csv_line(os, experiment, sample, x, "im", v.value.imag(), v.error_estimate);
  }
  return os.str();
}

}  // namespace radnorm
