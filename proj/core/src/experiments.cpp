#include "radnorm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "radnorm/errors.hpp"
#include "radnorm/kernels.hpp"
#include "radnorm/norms.hpp"

namespace radnorm {

namespace {

constexpr double kFitResidualLimit = 0.2;

// Runs every job, possibly on several threads, and returns the results in
// job order. The first exception (by job index) is rethrown.
std::vector<NormResult> run_jobs(const std::vector<std::function<NormResult()>>& jobs,
                                 bool parallel) {
  std::vector<NormResult> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = jobs[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      parallel ? std::min<std::size_t>(jobs.size(), std::max(1u, std::thread::hardware_concurrency()))
               : 1;
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace

const char* to_string(NormSpace s) noexcept { return s == NormSpace::rm ? "rm" : "mixed"; }

NormSpace parse_norm_space(const std::string& s) {
  if (s == "rm") return NormSpace::rm;
  if (s == "mixed") return NormSpace::mixed;
  throw DomainError("unknown norm space '" + s + "' (expected rm or mixed)");
}

NormResult norm(const DiscFunction& f, const ExponentPair& e, NormSpace space,
                const QuadratureConfig& config) {
  return space == NormSpace::rm ? rm_norm(f, e, config) : mixed_norm(f, e, config);
}

std::vector<double> alpha_grid(double gap_lo, double gap_hi, std::size_t count) {
  if (!(gap_lo > 0.0 && gap_lo < gap_hi && gap_hi < 1.0) || count < 2) {
    throw DomainError("alpha grid needs 0 < LO < HI < 1 and at least two points");
  }
  std::vector<double> alphas;
  alphas.reserve(count);
  const double lo = std::log(gap_lo);
  const double hi = std::log(gap_hi);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    alphas.push_back(1.0 - std::exp(hi + t * (lo - hi)));
  }
  return alphas;
}

KernelAsymptotics kernel_asymptotics(const ExponentPair& e, double beta,
                                     const std::vector<double>& alphas, NormSpace space,
                                     const QuadratureConfig& config) {
  const double threshold = 1.0 / e.p() + 1.0 / e.q();
  if (!(beta > threshold)) throw DomainError("kernel asymptotics requires beta > 1/p + 1/q");
  if (alphas.size() < 4) throw DomainError("kernel asymptotics needs at least four alphas");
  double gap_min = 1.0;
  double gap_max = 0.0;
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("kernel asymptotics needs alphas in (0, 1)");
    gap_min = std::min(gap_min, 1.0 - a);
    gap_max = std::max(gap_max, 1.0 - a);
  }
  if (!(gap_max >= 10.0 * gap_min)) {
    throw DomainError("kernel asymptotics needs 1 - alpha to span a decade");
  }

  KernelAsymptotics out{e, beta, space, alphas, {}, threshold - beta, {}};
  std::vector<std::pair<double, double>> samples;
  for (double a : alphas) {
    const NormResult r = norm(test_kernel({a, beta}), e, space, config);
    if (r.diverged()) throw DivergenceError("kernel norm diverged at alpha = " + std::to_string(a));
    out.norms.push_back(r);
    samples.emplace_back(1.0 - a, r.value);
  }
  out.fit = fit_loglog(samples);
  if (out.fit.residual_max > kFitResidualLimit) {
    throw FitUnreliable("log-log fit residual " + std::to_string(out.fit.residual_max) +
                            " exceeds " + std::to_string(kFitResidualLimit),
                        out.fit.residual_max);
  }
  return out;
}

ContainmentReport containment_sweep(const ExponentPair& e,
                                    const std::vector<LabelledFunction>& corpus,
                                    const QuadratureConfig& config) {
  ContainmentReport out{e, {}, 0.0, 0.0};
  for (const auto& item : corpus) {
    const NormResult rm = rm_norm(item.f, e, config);
    const NormResult mixed = mixed_norm(item.f, e, config);
    if (rm.diverged() || mixed.diverged()) {
      throw DivergenceError("norm of '" + item.label + "' diverged");
    }
    const double ratio = e.q() > e.p() ? rm.value / mixed.value : mixed.value / rm.value;
    out.worst_ratio = std::max(out.worst_ratio, ratio);
    out.worst_deviation = std::max(out.worst_deviation, std::abs(mixed.value / rm.value - 1.0));
    out.rows.push_back({item.label, rm, mixed, ratio});
  }
  return out;
}

SeparationReport separation_experiment(const ExponentPair& e, std::size_t m_max,
                                       const QuadratureConfig& config,
                                       const SeparationOptions& options) {
  SeparationReport out{build_schedule(e, m_max), {}, {}, {}, {}, {}};
  const CounterexampleSchedule& s = out.schedule;

  std::vector<std::function<NormResult()>> jobs;
  for (std::size_t n = 1; n <= m_max; ++n) {
    const Pieces pc = pieces(s, n);
    jobs.emplace_back([=] { return rm_norm(pc.f, e, config); });
    jobs.emplace_back([=] { return mixed_norm(pc.f, e, config); });
    jobs.emplace_back([=] { return rm_norm(pc.g, e, config); });
    jobs.emplace_back([=] { return mixed_norm(pc.g, e, config); });
  }
  const std::size_t direct_max = std::min(options.direct_pieces_max, m_max);
  for (std::size_t m = 1; m <= m_max; ++m) {
    const CounterexampleSchedule prefix = build_schedule(e, m);
    const DiscFunction F = f_sum(prefix);
    jobs.emplace_back([=] { return rm_norm(F, e, config); });
    jobs.emplace_back([=] { return mixed_norm(F, e, config); });
    if (m <= direct_max) {
      const DiscFunction S = f_pieces_sum(prefix);
      jobs.emplace_back([=] { return rm_norm(S, e, config); });
      jobs.emplace_back([=] { return mixed_norm(S, e, config); });
    }
  }

  const std::vector<NormResult> results = run_jobs(jobs, options.parallel);
  std::size_t k = 0;
  for (std::size_t n = 1; n <= m_max; ++n) {
    out.pieces.push_back({n, results[k], results[k + 1], results[k + 2], results[k + 3]});
    k += 4;
  }

  const double p = e.p();
  const double q = e.q();
  double rm_acc = 0.0;
  double mixed_acc = 0.0;
  std::vector<std::pair<double, double>> rm_samples;
  std::vector<std::pair<double, double>> mixed_samples;
  std::vector<std::pair<double, double>> ratio_samples;
  for (std::size_t m = 1; m <= m_max; ++m) {
    const PieceNorms& piece = out.pieces[m - 1];
    rm_acc += std::pow(piece.rm_f.value, q);
    mixed_acc += std::pow(piece.mixed_f.value, p);
    PartialSumNorms row{m, results[k], results[k + 1], std::pow(rm_acc, 1.0 / q),
                        std::pow(mixed_acc, 1.0 / p), std::nullopt, std::nullopt};
    k += 2;
    if (m <= direct_max) {
      row.rm_pieces_direct = results[k];
      row.mixed_pieces_direct = results[k + 1];
      k += 2;
    }
    const double md = static_cast<double>(m);
    rm_samples.emplace_back(md, row.rm_F.value);
    mixed_samples.emplace_back(md, row.mixed_F.value);
    ratio_samples.emplace_back(md, row.rm_F.value / row.mixed_F.value);
    out.partial_sums.push_back(std::move(row));
  }

  if (m_max >= 3) {
    out.rm_fit = fit_loglog(rm_samples);
    out.mixed_fit = fit_loglog(mixed_samples);
    out.ratio_fit = fit_loglog(ratio_samples);
  }
  return out;
}

}  // namespace radnorm
