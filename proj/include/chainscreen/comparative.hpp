#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chainscreen/core_model.hpp"
#include "chainscreen/solver.hpp"

namespace chainscreen {

inline constexpr double kCompareTol = 1e-9;
inline constexpr double kFosdTol = 1e-12;

enum class ExpansionMode { OnChain, OffChain };

// OnChain: type i becomes type g[i] >= i of the same chain.
// OffChain: type i becomes a new set with frontier frontiers[i]; pi[i] >= i
// names the largest baseline type contained in it.
struct Expansion {
  ExpansionMode mode = ExpansionMode::OnChain;
  std::vector<std::size_t> g;
  std::vector<Frontier> frontiers;
  std::vector<std::size_t> pi;
};

struct NamedCheck {
  std::string name;
  bool pass = true;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct MassTransfer {
  std::size_t from = 0;
  std::size_t to = 0;
  double mass = 0.0;
};

struct ComparisonRecord {
  std::string mode;
  double base_opt = 0.0;
  double alt_opt = 0.0;
  std::optional<double> bound;
  double base_agent_welfare = 0.0;
  double alt_agent_welfare = 0.0;
  PromisedUtility base_promise;
  PromisedUtility alt_promise;
  std::optional<PromisedUtility> spliced;
  std::vector<MassTransfer> coupling;
  std::vector<NamedCheck> checks;

  [[nodiscard]] bool pass() const;
};

/// Solve on the scenario grid united with `extra` levels.
Solution solve_with_levels(const Scenario& scenario, std::span<const double> extra);

ComparisonRecord verify_expansion_dominance(const Scenario& base, const Expansion& exp);

/// Weights reached by pushing type i's mass to type g[i].
std::vector<double> pushforward_weights(std::span<const double> weights, std::span<const std::size_t> g);

/// True when the CDF of `alt` lies weakly below the CDF of `base`.
bool fosd_dominates(std::span<const double> alt, std::span<const double> base, double tol = kFosdTol);

/// Quantile coupling moving base mass weakly upward onto alt.
std::vector<MassTransfer> monotone_coupling(std::span<const double> base, std::span<const double> alt);

ComparisonRecord fosd_compare(const Scenario& base, std::span<const double> alt_weights);

/// Optimal constant promise of a two-type chain whose u_c decreases, when the
/// upper type has probability q.
double binary_flat_level(const Scenario& two_types, double q);

ComparisonRecord default_expansion_compare(const Scenario& base, const Frontier& bigger_default);

/// U_small up to the first index where it falls below U_big, U_big from there on.
PromisedUtility splice_promises(const PromisedUtility& small_default, const PromisedUtility& big_default);

}  // namespace chainscreen
