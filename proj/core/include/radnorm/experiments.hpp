#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "radnorm/disc_function.hpp"
#include "radnorm/exponents.hpp"
#include "radnorm/fit.hpp"
#include "radnorm/quadrature.hpp"
#include "radnorm/schedule.hpp"

namespace radnorm {

enum class NormSpace { rm, mixed };

const char* to_string(NormSpace s) noexcept;
/// Accepts "rm" and "mixed"; throws DomainError otherwise.
NormSpace parse_norm_space(const std::string& s);

/// ρ_{p,q} or ‖·‖_{H^{q,p}} depending on `space`.
NormResult norm(const DiscFunction& f, const ExponentPair& e, NormSpace space,
                const QuadratureConfig& config = {});

struct KernelAsymptotics {
  ExponentPair e;
  double beta;
  NormSpace space;
  std::vector<double> alphas;
  std::vector<NormResult> norms;
  double expected_slope;  ///< 1/p + 1/q - β
  ExponentFit fit;        ///< log(norm) against log(1 - α)
};

/// Fits the norm of (1 - αz)^{-β} against 1 - α.
///
/// Requires β > 1/p + 1/q and at least four α in (0, 1) whose values of
/// 1 - α span a factor of ten. Throws DivergenceError when a norm diverges
/// and FitUnreliable when the fit's residual_max exceeds 0.2.
KernelAsymptotics kernel_asymptotics(const ExponentPair& e, double beta,
                                     const std::vector<double>& alphas, NormSpace space,
                                     const QuadratureConfig& config = {});

/// `count` values of α with 1 - α log-spaced from `gap_hi` down to `gap_lo`.
std::vector<double> alpha_grid(double gap_lo, double gap_hi, std::size_t count);

struct LabelledFunction {
  std::string label;
  DiscFunction f;
};

struct ContainmentRow {
  std::string label;
  NormResult rm;
  NormResult mixed;
  /// mixed/rm when p ≥ q, rm/mixed when q > p. Minkowski's inequality
  /// bounds it by one.
  double ratio;
};

struct ContainmentReport {
  ExponentPair e;
  std::vector<ContainmentRow> rows;
  double worst_ratio;
  /// Largest |mixed/rm - 1| over the corpus.
  double worst_deviation;
};

ContainmentReport containment_sweep(const ExponentPair& e,
                                    const std::vector<LabelledFunction>& corpus,
                                    const QuadratureConfig& config = {});

struct PieceNorms {
  std::size_t n;
  NormResult rm_f;
  NormResult mixed_f;
  NormResult rm_g;
  NormResult mixed_g;
};

struct PartialSumNorms {
  std::size_t m;
  NormResult rm_F;      ///< ρ(F_m) by direct quadrature
  NormResult mixed_F;   ///< ‖F_m‖ by direct quadrature
  double rm_additive;     ///< (Σ_{n≤m} ρ(f_n)^q)^{1/q}
  double mixed_additive;  ///< (Σ_{n≤m} ‖f_n‖^p)^{1/p}
  /// ρ(Σ f_n) and ‖Σ f_n‖ quadratured directly, for small m only.
  std::optional<NormResult> rm_pieces_direct;
  std::optional<NormResult> mixed_pieces_direct;
};

struct SeparationReport {
  CounterexampleSchedule schedule;
  std::vector<PieceNorms> pieces;
  std::vector<PartialSumNorms> partial_sums;
  /// Fits against m; present when at least three partial sums exist.
  std::optional<ExponentFit> rm_fit;
  std::optional<ExponentFit> mixed_fit;
  std::optional<ExponentFit> ratio_fit;
};

struct SeparationOptions {
  /// Largest m for which Σ f_n is also quadratured directly.
  std::size_t direct_pieces_max = 3;
  bool parallel = true;
};

/// Norms of every piece f_n, g_n and of every partial sum F_m for the
/// schedule of length m_max, together with the disjoint-support
/// combinations and log-log fits against m.
SeparationReport separation_experiment(const ExponentPair& e, std::size_t m_max,
                                       const QuadratureConfig& config = {},
                                       const SeparationOptions& options = {});

}  // namespace radnorm
