#include "cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "radnorm/dsl.hpp"
#include "radnorm/errors.hpp"
#include "radnorm/experiments.hpp"
#include "radnorm/kernels.hpp"
#include "radnorm/norms.hpp"
#include "radnorm/operators.hpp"
#include "radnorm/report.hpp"
#include "radnorm/schedule.hpp"

namespace radnorm::cli {

namespace {

using nlohmann::json;

class UsageError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "usage_error"; }
};

struct Common {
  std::string format = "json";
  std::string output;
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  std::optional<std::size_t> max_panels;
  std::optional<std::size_t> outer_samples;
};

struct Exponents {
  double p = 0.0;
  double q = 0.0;
  ExponentPair pair() const { return ExponentPair(p, q); }
};

QuadratureConfig make_config(const Common& c) {
  QuadratureConfig cfg;
  if (const char* env = std::getenv("RADNORM_REL_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || errno == ERANGE) {
      throw UsageError(std::string("RADNORM_REL_TOL is not a number: ") + env);
    }
    cfg.rel_tol = v;
  }
  if (c.rel_tol) cfg.rel_tol = *c.rel_tol;
  if (c.abs_tol) cfg.abs_tol = *c.abs_tol;
  if (c.max_panels) cfg.max_panels = *c.max_panels;
  if (c.outer_samples) cfg.outer_samples = *c.outer_samples;
  cfg.validate();
  return cfg;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--output,-o", c.output, "Write the document to this file instead of stdout");
  cmd->add_option("--rel-tol", c.rel_tol,
                  "Relative quadrature tolerance (default 1e-8, or RADNORM_REL_TOL)");
  cmd->add_option("--abs-tol", c.abs_tol, "Absolute quadrature tolerance (default 1e-12)");
  cmd->add_option("--max-panels", c.max_panels, "Panel budget per 1-d integral (default 4096)");
  cmd->add_option("--outer-samples", c.outer_samples,
                  "Nodes of the fixed outer fallback rule (default 512)");
}

void add_exponents(CLI::App* cmd, Exponents& e) {
  cmd->add_option("--p", e.p, "Radial exponent p, 1 < p < inf")->required();
  cmd->add_option("--q", e.q, "Angular exponent q, 1 < q < inf")->required();
}

std::string grammar_footer() {
  return "\nFunction expressions (--fn, --f, --g, corpus lines):\n" + std::string(dsl::kGrammar);
}

DiscFunction compile_expr(const std::string& text) { return dsl::compile(text); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  const auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw UsageError("invalid number '" + s + "' in " + what);
  }
  return v;
}

struct Emitted {
  json doc;
  std::string csv;
};

void check_divergence(QuadStatus status, const std::string& what) {
  if (status == QuadStatus::diverged) throw DivergenceError(what + " diverged");
}

void emit(const Common& c, const Emitted& e, std::ostream& out) {
  const std::string text = c.format == "csv" ? e.csv : e.doc.dump(2) + "\n";
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + c.output + "'");
  file << text;
}

json error_json(const Error& e) {
  json j = {{"error", e.kind()}, {"detail", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    j["offset"] = pe->offset();
    j["expected"] = pe->expected();
  } else if (const auto* re = dynamic_cast<const RangeError*>(&e)) {
    j["offset"] = re->offset();
  } else if (const auto* fu = dynamic_cast<const FitUnreliable*>(&e)) {
    j["residual_max"] = fu->residual_max();
  }
  return j;
}

}  // namespace

int exit_code_for(const Error& e) {
  if (dynamic_cast<const DivergenceError*>(&e)) return kDiverged;
  if (dynamic_cast<const OverflowError*>(&e)) return kOverflow;
  if (dynamic_cast<const FitUnreliable*>(&e)) return kFitUnreliable;
  return kInvalidInput;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radial-average and mixed-norm computations for analytic functions on the unit disc",
               "radnorm"};
  app.require_subcommand(1, 1);
  app.footer(grammar_footer());

  Common common;
  Exponents ex;
  std::string space = "rm";
  std::string fn_text;
  std::function<Emitted()> action;

  // norm
  auto* norm_cmd = app.add_subcommand("norm", "Compute rho_{p,q}(f) or the mixed norm of f");
  add_common(norm_cmd, common);
  add_exponents(norm_cmd, ex);
  norm_cmd->add_option("--space", space, "rm or mixed")
      ->check(CLI::IsMember({"rm", "mixed"}))
      ->capture_default_str();
  norm_cmd->add_option("--fn", fn_text, "Function expression")->required();
  norm_cmd->footer(grammar_footer());
  norm_cmd->callback([&] {
    action = [&] {
      const ExponentPair e = ex.pair();
      const QuadratureConfig cfg = make_config(common);
      const DiscFunction f = compile_expr(fn_text);
      const NormSpace s = parse_norm_space(space);
      const NormResult r = norm(f, e, s, cfg);
      check_divergence(r.status, "norm");
      json doc = to_json(r);
      doc["command"] = "norm";
      doc["space"] = space;
      doc["exponents"] = {{"p", e.p()}, {"q", e.q()}};
      doc["function"] = dsl::print(*dsl::parse(fn_text));
      return Emitted{doc, to_csv("norm", r)};
    };
  });

  // asymptotics
  double beta = 0.0;
  std::string grid = "1e-4:1e-1:8";
  auto* asym_cmd =
      app.add_subcommand("asymptotics", "Fit the norm of (1 - a z)^(-beta) against 1 - a");
  add_common(asym_cmd, common);
  add_exponents(asym_cmd, ex);
  asym_cmd->add_option("--beta", beta, "Kernel exponent, beta > 1/p + 1/q")->required();
  asym_cmd->add_option("--alpha-grid", grid,
                       "LO:HI:N, N values of 1 - alpha log-spaced from HI down to LO")
      ->capture_default_str();
  asym_cmd->add_option("--space", space, "rm or mixed")
      ->check(CLI::IsMember({"rm", "mixed"}))
      ->capture_default_str();
  asym_cmd->footer(grammar_footer());
  asym_cmd->callback([&] {
    action = [&] {
      const ExponentPair e = ex.pair();
      const QuadratureConfig cfg = make_config(common);
      const auto parts = split(grid, ':');
      if (parts.size() != 3) throw UsageError("--alpha-grid must be LO:HI:N");
      const double lo = parse_double(parts[0], "--alpha-grid");
      const double hi = parse_double(parts[1], "--alpha-grid");
      const double n = parse_double(parts[2], "--alpha-grid");
      if (n != std::floor(n) || n < 2 || n > 10000) {
        throw UsageError("--alpha-grid N must be an integer between 2 and 10000");
      }
      const auto alphas = alpha_grid(lo, hi, static_cast<std::size_t>(n));
      const Report rep =
          make_report(kernel_asymptotics(e, beta, alphas, parse_norm_space(space), cfg));
      return Emitted{to_json(rep), to_csv(rep)};
    };
  });

  // sweep
  std::string corpus_path;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Compare both norms over a corpus file (one expression per line)");
  add_common(sweep_cmd, common);
  add_exponents(sweep_cmd, ex);
  sweep_cmd->add_option("--corpus", corpus_path, "File with one expression per line")
      ->required();
  sweep_cmd->footer(grammar_footer() + "Blank lines and lines starting with '#' are skipped.\n");
  sweep_cmd->callback([&] {
    action = [&] {
      const ExponentPair e = ex.pair();
      const QuadratureConfig cfg = make_config(common);
      std::ifstream in(corpus_path);
      if (!in) throw UsageError("cannot read corpus file '" + corpus_path + "'");
      std::vector<LabelledFunction> corpus;
      std::string line;
      while (std::getline(in, line)) {
        const std::string text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        corpus.push_back({text, compile_expr(text)});
      }
      if (corpus.empty()) throw UsageError("corpus file contains no expressions");
      const Report rep = make_report(containment_sweep(e, corpus, cfg));
      return Emitted{to_json(rep), to_csv(rep)};
    };
  });

  // separate
  std::size_t m = kDefaultScheduleLength;
  bool serial = false;
  auto* sep_cmd = app.add_subcommand(
      "separate", "Norms of the separating functions F_m and their pieces (requires p > q)");
  add_common(sep_cmd, common);
  add_exponents(sep_cmd, ex);
  sep_cmd->add_option("--m", m, "Number of pieces")->capture_default_str();
  sep_cmd->add_flag("--serial", serial, "Evaluate pieces on one thread");
  sep_cmd->callback([&] {
    action = [&] {
      const ExponentPair e = ex.pair();
      const QuadratureConfig cfg = make_config(common);
      SeparationOptions opts;
      opts.parallel = !serial;
      const SeparationReport sep = separation_experiment(e, m, cfg, opts);
      for (const auto& pc : sep.pieces) {
        for (const auto* r : {&pc.rm_f, &pc.mixed_f, &pc.rm_g, &pc.mixed_g}) {
          check_divergence(r->status, "piece norm");
        }
      }
      for (const auto& ps : sep.partial_sums) {
        check_divergence(ps.rm_F.status, "norm of F_m");
        check_divergence(ps.mixed_F.status, "norm of F_m");
      }
      const Report rep = make_report(sep);
      return Emitted{to_json(rep), to_csv(rep)};
    };
  });

  // project
  double gamma = 0.0;
  std::string at;
  auto* proj_cmd =
      app.add_subcommand("project", "Evaluate the weighted Bergman projection P_gamma f");
  add_common(proj_cmd, common);
  proj_cmd->add_option("--gamma", gamma, "Weight exponent, gamma > -1")->capture_default_str();
  proj_cmd->add_option("--fn", fn_text, "Function expression")->required();
  proj_cmd->add_option("--at", at, "Points as \"R,THETA;R,THETA;...\" with 0 <= R < 1")
      ->required();
  proj_cmd->footer(grammar_footer());
  proj_cmd->callback([&] {
    action = [&] {
      const QuadratureConfig cfg = make_config(common);
      const ProjectionParams params(gamma);
      const DiscFunction f = compile_expr(fn_text);
      json values = json::array();
      std::vector<std::pair<std::string, ComplexResult>> rows;
      for (const auto& point : split(at, ';')) {
        if (point.empty()) continue;
        const auto rt = split(point, ',');
        if (rt.size() != 2) throw UsageError("--at entries must be R,THETA");
        const double r = parse_double(rt[0], "--at");
        const double theta = parse_double(rt[1], "--at");
        if (!(r >= 0.0 && r < 1.0)) throw UsageError("--at radius must satisfy 0 <= R < 1");
        const ComplexResult v =
            bergman_project(params, f, DiscPoint::from_radius(r, theta), cfg);
        check_divergence(v.status, "projection");
        json item = to_json(v);
        item["r"] = r;
        item["theta"] = theta;
        values.push_back(std::move(item));
        rows.emplace_back(point, v);
      }
      if (rows.empty()) throw UsageError("--at lists no points");
      json doc = {{"command", "project"},
                  {"gamma", gamma},
                  {"function", dsl::print(*dsl::parse(fn_text))},
                  {"values", std::move(values)}};
      return Emitted{doc, to_csv("project", rows)};
    };
  });

  // pair
  std::string f_text;
  std::string g_text;
  auto* pair_cmd = app.add_subcommand("pair", "Area pairing of f against conj(g)");
  add_common(pair_cmd, common);
  pair_cmd->add_option("--f", f_text, "First function expression")->required();
  pair_cmd->add_option("--g", g_text, "Second function expression (conjugated)")->required();
  pair_cmd->footer(grammar_footer());
  pair_cmd->callback([&] {
    action = [&] {
      const QuadratureConfig cfg = make_config(common);
      const ComplexResult v = pairing(compile_expr(f_text), compile_expr(g_text), cfg);
      check_divergence(v.status, "pairing");
      json doc = to_json(v);
      doc["command"] = "pair";
      doc["f"] = dsl::print(*dsl::parse(f_text));
      doc["g"] = dsl::print(*dsl::parse(g_text));
      return Emitted{doc, to_csv("pair", {{"0", v}})};
    };
  });

  // schedule
  auto* sched_cmd =
      app.add_subcommand("schedule", "Print the delta/theta schedule and regions A_n (p > q)");
  add_common(sched_cmd, common);
  add_exponents(sched_cmd, ex);
  sched_cmd->add_option("--m", m, "Number of pieces")->capture_default_str();
  sched_cmd->callback([&] {
    action = [&] {
      const CounterexampleSchedule s = build_schedule(ex.pair(), m);
      json doc = to_json(s);
      doc["command"] = "schedule";
      std::ostringstream csv;
      csv << "experiment,sample,x,quantity,value,error\n";
      char buf[200];
      for (std::size_t i = 0; i < s.m(); ++i) {
        const AnnulusArc& a = s.regions[i];
        const double vals[] = {s.log_deltas[i] / std::log(10.0), s.thetas[i], a.x_lo(), a.x_hi(),
                               a.half_width()};
        const char* names[] = {"log10_delta", "theta", "one_minus_r_lo", "one_minus_r_hi",
                               "theta_half_width"};
        for (int k = 0; k < 5; ++k) {
          std::snprintf(buf, sizeof buf, "schedule,n=%zu,%zu,%s,%.17g,\n", i + 1, i + 1, names[k],
                        vals[k]);
          csv << buf;
        }
      }
      return Emitted{doc, csv.str()};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "usage_error"}, {"detail", e.what()}}.dump() << "\n";
    return kInvalidInput;
  }

  try {
    emit(common, action(), out);
    return kOk;
  } catch (const Error& e) {
    err << error_json(e).dump() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << json{{"error", "internal_error"}, {"detail", e.what()}}.dump() << "\n";
    return kInternal;
  }
}

}  // namespace radnorm::cli
