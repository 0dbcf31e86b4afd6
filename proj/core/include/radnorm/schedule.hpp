#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radnorm/disc.hpp"
#include "radnorm/disc_function.hpp"
#include "radnorm/exponents.hpp"

namespace radnorm {

/// Default and hard limits on the number of pieces in a counterexample.
inline constexpr std::size_t kDefaultScheduleLength = 5;

/// The sequences δ_n, θ_n and the regions A_n = {r ∈ I_n, θ ∈ J_n} of the
/// separating construction. δ_n decays doubly exponentially and is held as
/// log δ_n; the regions are stored in x = 1 - r with J_n as centre θ_n and
/// half-width n²δ_n.
struct CounterexampleSchedule {
  ExponentPair e;
  std::vector<double> log_deltas;
  std::vector<double> thetas;
  std::vector<AnnulusArc> regions;

  std::size_t m() const noexcept { return log_deltas.size(); }
};

/// δ_1 = 1/8, δ_{n+1} = δ_n² / (2 n^{4p} (n+1)²), θ_1 = δ_1,
/// θ_n = θ_{n-1} + 1/n² + (n-1)²δ_{n-1} + n²δ_n,
/// I_n = [1 - n δ_n^{1/2}, 1 - δ_n / n^{2p}], J_n = [θ_n - n²δ_n, θ_n + n²δ_n].
///
/// Throws InvalidExponents unless p > q, DomainError for m = 0 and
/// OverflowError once δ_m² would leave the normal double range.
CounterexampleSchedule build_schedule(const ExponentPair& e, std::size_t m);

/// Largest m for which `build_schedule(e, m)` succeeds.
std::size_t max_schedule_length(const ExponentPair& e);

/// Returns a description of every violated constraint; empty when the
/// schedule satisfies n²δ_n < 1/4, δ_n/n^{2p} > (n+1)δ_{n+1}^{1/2},
/// Σ j²δ_j < 2, the θ recurrence, and pairwise disjointness of the I_n and
/// of the J_n.
std::vector<std::string> check_schedule(const CounterexampleSchedule& s);

struct Pieces {
  DiscFunction f;  ///< rotated u_{δ_n} restricted to A_n
  DiscFunction g;  ///< rotated u_{δ_n} restricted to the complement of A_n
};

/// The rotated pole u_{δ_n}(z e^{-iθ_n}); n is 1-based.
DiscFunction rotated_pole(const CounterexampleSchedule& s, std::size_t n);

/// Throws IndexError unless 1 ≤ n ≤ m.
Pieces pieces(const CounterexampleSchedule& s, std::size_t n);

/// F_m = Σ_{n ≤ m} u_{δ_n}(z e^{-iθ_n}).
DiscFunction f_sum(const CounterexampleSchedule& s);

/// Σ_{n ≤ m} f_n, the disjointly supported part of F_m.
DiscFunction f_pieces_sum(const CounterexampleSchedule& s);

/// Log-deltas are written as decimal strings of log10 δ_n so that the
/// document survives tools without extended-range numbers.
nlohmann::json to_json(const CounterexampleSchedule& s);

}  // namespace radnorm
