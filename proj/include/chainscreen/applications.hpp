#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chainscreen/core_model.hpp"

namespace chainscreen {

struct GeneratedScenario {
  Scenario scenario;
  std::vector<double> reference_u_c;
};

// ---- drug approval with test design ----

// Tradeoff between false positive rate a and false negative rate
// psi(a) = (1 - a^(1/k))^k. k = 2 gives 1 - 2 sqrt(a) + a.
struct Tradeoff {
  double k = 2.0;
  [[nodiscard]] double psi(double a) const;
  [[nodiscard]] double dpsi(double a) const;
};

struct FdaConfig {
  double q = 0.4;
  double L = 1.0;
  Tradeoff tradeoff;
  std::vector<double> types;
  std::vector<double> alpha_lo;  // decreasing in type
  std::vector<double> alpha_hi;  // increasing in type
  int alpha_steps = 200;
  int u_steps = 200;
};

struct FdaClosedForm {
  double alpha_star = 0.0;
  double alpha_hat = 0.0;
  double p_star = 0.0;  // approval probability at alpha_star
  double p_hat = 0.0;   // approval probability at alpha_hat
};

void validate(const FdaConfig& c);
/// Receiver payoff from approving after a positive signal.
double fda_R(const FdaConfig& c, double alpha);
/// Approval probability when approving exactly on positive signals, 0 past alpha_hat.
double fda_P(const FdaConfig& c, double alpha);
FdaClosedForm fda_closed_form(const FdaConfig& c);
GeneratedScenario fda_scenario(const FdaConfig& c);

enum class FdaCase { Interior, Increasing, Decreasing };
/// Three preset type families on 21 types with q = 0.4, L = 1.
FdaConfig fda_preset(FdaCase which);

// ---- reform elicitation ----

struct CivilServantConfig {
  std::vector<double> signals;         // posteriors P(theta = 1 | s)
  std::vector<double> signal_weights;  // sums to 1
  double alpha = 0.3;                  // servant's bias against change
  double m = 1.0;                      // politician's cost of a fight
  double n = 1.0;                      // servant's cost of a fight, >= 1
  std::vector<double> types;           // most radical feasible reform
  int u_steps = 200;
};

void validate(const CivilServantConfig& c);
/// Trapezoid weights on an equispaced grid of `points` posteriors in [0, 1].
CivilServantConfig civil_servant_uniform(double alpha, int points = 101, int types = 21);
double politician_capability(const CivilServantConfig& c);
GeneratedScenario civil_servant_scenario(const CivilServantConfig& c);

struct CivilAllocation {
  double reform = 0.0;
  double fight = 0.0;
  double status_quo = 0.0;
  double u = 0.0;
  double v = 0.0;
};

/// Signal-contingent action probabilities that deliver promise `u` to type
/// index `i` at the frontier.
CivilAllocation civil_servant_allocation(const CivilServantConfig& c, std::size_t i, double u);

// ---- performance pay with a risky strategy ----

inline constexpr std::array<double, 4> kCeoOutcomes{-4.0, 0.0, 1.0, 2.0};

struct CeoConfig {
  double p0 = 0.1;
  double p1 = 0.3;
  double cost = 0.1;
  double u_max = 0.5;
  std::vector<double> types;  // inside [0, 0.5]
  int u_steps = 100;
};

enum class CeoStrategy { Shirk, Safe, Risky };

struct WageContract {
  CeoStrategy strategy = CeoStrategy::Shirk;
  bool risky_improvement_permitted = false;
  std::array<double, 4> wages{};  // on kCeoOutcomes
  double agent_utility = 0.0;
  double principal_payoff = 0.0;
  std::vector<double> obedience_slack;
};

void validate(const CeoConfig& c);
/// 50 equispaced types on [0, 0.5].
CeoConfig ceo_default();
double ceo_reference_u_c(double T);

/// Cheapest wages making `strategy` obedient for type T at agent utility u,
/// or nothing when infeasible. Without `u`, the utility is the LP minimum.
std::optional<WageContract> ceo_wage_lp(const CeoConfig& c, double T, CeoStrategy strategy, bool permit,
                                        std::optional<double> u = std::nullopt);

struct CeoLotteryEntry {
  std::size_t type = 0;
  double weight = 0.0;
  WageContract contract;
};

/// Contracts delivering each type's promise on the frontier; a type gets two
/// entries when the board randomizes between contracts.
std::vector<CeoLotteryEntry> ceo_contracts(const CeoConfig& c, const PromisedUtility& promise);
GeneratedScenario ceo_scenario(const CeoConfig& c);

std::string to_string(CeoStrategy s);

}  // namespace chainscreen
