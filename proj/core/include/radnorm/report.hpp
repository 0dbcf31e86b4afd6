#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "radnorm/experiments.hpp"
#include "radnorm/fit.hpp"
#include "radnorm/quadrature.hpp"

namespace radnorm {

/// One (sample, quantity) measurement.
struct ReportRow {
  std::string sample;
  double x;
  std::string quantity;
  double value;
  double error;
  QuadStatus status = QuadStatus::converged;
};

/// Long-format experiment output shared by every driver.
struct Report {
  std::string experiment;
  double p = 0.0;
  double q = 0.0;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<ReportRow> rows;
  std::vector<std::pair<std::string, ExponentFit>> fits;
  nlohmann::json summary = nlohmann::json::object();
};

Report make_report(const KernelAsymptotics& result);
Report make_report(const ContainmentReport& result);
Report make_report(const SeparationReport& result);

nlohmann::json to_json(const Report& report);
nlohmann::json to_json(const ExponentFit& fit);
nlohmann::json to_json(const NormResult& result);
nlohmann::json to_json(const ComplexResult& result);

/// Header `experiment,sample,x,quantity,value,error` and one line per row;
/// fits follow as rows whose sample is `fit:<name>`.
std::string to_csv(const Report& report);

/// CSV for a single norm or complex result, in the same column layout.
std::string to_csv(const std::string& experiment, const NormResult& result);
std::string to_csv(const std::string& experiment,
                   const std::vector<std::pair<std::string, ComplexResult>>& values);

}  // namespace radnorm
