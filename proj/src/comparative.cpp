#include "chainscreen/comparative.hpp"

#include <algorithm>
#include <cmath>

#include "chainscreen/complete_info.hpp"
#include "chainscreen/errors.hpp"
#include "chainscreen/mechanism.hpp"

namespace chainscreen {

bool ComparisonRecord::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.pass; });
}

namespace {

void add_ge(ComparisonRecord& r, std::string name, double lhs, double rhs, double tol = kCompareTol) {
  r.checks.push_back({std::move(name), lhs >= rhs - tol, lhs, rhs});
}

double agent_welfare(std::span<const double> weights, const PromisedUtility& u) {
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) total = total + weights[i] * u[i];
  return total;
}

bool weakly_increasing(std::span<const double> xs, double tol) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] < xs[i - 1] - tol) return false;
  }
  return true;
}

// V_hat >= V on V's interval, and V's interval inside V_hat's.
bool dominates(const Frontier& hat, const Frontier& base, double tol) {
  if (hat.lo() > base.lo() + tol || hat.hi() < base.hi() - tol) return false;
  for (double u : base.sample_points(base.lo(), base.hi())) {
    if (hat(u) < base(u) - tol) return false;
  }
  return true;
}

void validate_expansion(const Scenario& base, const Expansion& exp) {
  const std::size_t n = base.size();
  if (exp.mode == ExpansionMode::OnChain) {
    if (exp.g.size() != n) throw Error(ErrorKind::InvalidExpansion, "g must have one entry per type");
    for (std::size_t i = 0; i < n; ++i) {
      if (exp.g[i] < i || exp.g[i] >= n) throw Error(ErrorKind::InvalidExpansion, "g(i) must lie in [i, n)");
    }
    return;
  }
  if (exp.frontiers.size() != n || exp.pi.size() != n) {
    throw Error(ErrorKind::InvalidExpansion, "off-chain expansion needs a frontier and pi per type");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (exp.pi[i] < i || exp.pi[i] >= n) throw Error(ErrorKind::InvalidExpansion, "pi(i) must lie in [i, n)");
    if (!dominates(exp.frontiers[i], base.surface.frontier(exp.pi[i]), kFeasTol)) {
      throw Error(ErrorKind::InvalidExpansion, "replacement frontier does not contain its projection");
    }
  }
}

}  // namespace

Solution solve_with_levels(const Scenario& scenario, std::span<const double> extra) {
  Scenario s = scenario;
  s.u_grid.insert(s.u_grid.end(), extra.begin(), extra.end());
  std::sort(s.u_grid.begin(), s.u_grid.end());
  s.u_grid.erase(std::unique(s.u_grid.begin(), s.u_grid.end()), s.u_grid.end());
  return solve_dp(s, complete_info_curve(s.surface));
}

std::vector<double> pushforward_weights(std::span<const double> weights, std::span<const std::size_t> g) {
  std::vector<double> out(weights.size(), 0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) out.at(g[i]) += weights[i];
  return out;
}

ComparisonRecord verify_expansion_dominance(const Scenario& base, const Expansion& exp) {
  validate_scenario(base);
  validate_expansion(base, exp);
  const auto prof = complete_info_curve(base.surface);
  const Solution sol = solve_dp(base, prof);
  const auto& f = base.chain.weights();

  ComparisonRecord r;
  r.mode = "expansion";
  r.base_opt = sol.value;
  r.base_promise = sol.promise;
  r.base_agent_welfare = agent_welfare(f, sol.promise);

  const PromisedUtility ustar = monotonize_principal_payoff(base, sol.promise);
  const auto interim = interim_payoffs(base.surface, ustar);
  r.checks.push_back({"monotone_interim_payoff", weakly_increasing(interim, kCompareTol), 0.0, 0.0});
  add_ge(r, "monotonized_optimal", objective(base, ustar), sol.value);

  double bound = 0.0;
  if (exp.mode == ExpansionMode::OnChain) {
    for (std::size_t i = 0; i < base.size(); ++i) bound = bound + f[i] * interim[exp.g[i]];
    Scenario alt = base;
    alt.chain = base.chain.with_weights(pushforward_weights(f, exp.g));
    const Solution alt_sol = solve_dp(alt, prof);
    r.alt_opt = alt_sol.value;
    r.alt_promise = alt_sol.promise;
    r.alt_agent_welfare = agent_welfare(alt.chain.weights(), alt_sol.promise);
    add_ge(r, "resolve_dominates", r.alt_opt, r.base_opt);
  } else {
    std::vector<double> promised(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      promised[i] = ustar[exp.pi[i]];
      bound = bound + f[i] * exp.frontiers[i](promised[i]);
    }
    ValueSurface hat(exp.frontiers, base.surface.default_frontier());
    r.alt_opt = bound;
    r.alt_promise = PromisedUtility(promised);
    if (validate_nesting(hat).empty()) {
      Scenario alt = base;
      alt.surface = std::move(hat);
      const Solution alt_sol = solve_with_levels(alt, solver_grid(base, prof));
      r.alt_opt = alt_sol.value;
      r.alt_promise = alt_sol.promise;
      add_ge(r, "resolve_dominates", r.alt_opt, r.base_opt);
    }
    r.alt_agent_welfare = agent_welfare(f, r.alt_promise);
  }
  r.bound = bound;
  add_ge(r, "bound_dominates", bound, r.base_opt);
  return r;
}

bool fosd_dominates(std::span<const double> alt, std::span<const double> base, double tol) {
  if (alt.size() != base.size()) throw Error(ErrorKind::InvalidInput, "weight vectors differ in length");
  double ca = 0.0;
  double cb = 0.0;
  for (std::size_t i = 0; i < alt.size(); ++i) {
    ca += alt[i];
    cb += base[i];
    if (ca > cb + tol) return false;
  }
  return true;
}

std::vector<MassTransfer> monotone_coupling(std::span<const double> base, std::span<const double> alt) {
  constexpr double kDust = 1e-15;
  std::vector<MassTransfer> out;
  std::size_t i = 0;
  std::size_t j = 0;
  double left_i = base.empty() ? 0.0 : base[0];
  double left_j = alt.empty() ? 0.0 : alt[0];
  while (i < base.size() && j < alt.size()) {
    if (left_i <= kDust) {
      if (++i < base.size()) left_i = base[i];
      continue;
    }
    if (left_j <= kDust) {
      if (++j < alt.size()) left_j = alt[j];
      continue;
    }
    const double m = std::min(left_i, left_j);
    out.push_back({i, j, m});
    left_i -= m;
    left_j -= m;
  }
  return out;
}

ComparisonRecord fosd_compare(const Scenario& base, std::span<const double> alt_weights) {
  validate_scenario(base);
  Scenario alt = base;
  alt.chain = base.chain.with_weights(std::vector<double>(alt_weights.begin(), alt_weights.end()));
  if (!fosd_dominates(alt_weights, base.chain.weights())) {
    throw Error(ErrorKind::NotDominant, "alternative weights do not first-order dominate the base");
  }
  const auto prof = complete_info_curve(base.surface);
  const Solution a = solve_dp(base, prof);
  const Solution b = solve_dp(alt, prof);

  ComparisonRecord r;
  r.mode = "fosd";
  r.base_opt = a.value;
  r.alt_opt = b.value;
  r.base_promise = a.promise;
  r.alt_promise = b.promise;
  r.base_agent_welfare = agent_welfare(base.chain.weights(), a.promise);
  r.alt_agent_welfare = agent_welfare(alt_weights, b.promise);
  r.coupling = monotone_coupling(base.chain.weights(), alt_weights);
  add_ge(r, "resolve_dominates", r.alt_opt, r.base_opt);
  const bool upward = std::all_of(r.coupling.begin(), r.coupling.end(),
                                  [](const MassTransfer& t) { return t.to >= t.from; });
  r.checks.push_back({"coupling_upward", upward, 0.0, 0.0});
  return r;
}

double binary_flat_level(const Scenario& two_types, double q) {
  if (two_types.size() != 2) throw Error(ErrorKind::InvalidInput, "binary example needs exactly two types");
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorKind::InvalidInput, "q must lie in [0, 1]");
  const auto prof = complete_info_curve(two_types.surface);
  const double hi = prof.u_c[0];
  const double lo = prof.u_c[1];
  if (!(hi > lo)) throw Error(ErrorKind::InvalidInput, "binary example needs u_c(T0) > u_c(T1)");
  const Frontier& v0 = two_types.surface.frontier(0);
  const Frontier& v1 = two_types.surface.frontier(1);
  return maximize_concave([&](double u) { return (1.0 - q) * v0(u) + q * v1(u); }, lo, hi);
}

PromisedUtility splice_promises(const PromisedUtility& small_default, const PromisedUtility& big_default) {
  if (small_default.size() != big_default.size()) throw Error(ErrorKind::InvalidInput, "promise sizes differ");
  std::vector<double> out = small_default.values();
  std::size_t cross = 0;
  while (cross < out.size() && !(small_default[cross] < big_default[cross])) ++cross;
  for (std::size_t i = cross; i < out.size(); ++i) out[i] = big_default[i];
  return PromisedUtility(std::move(out));
}

ComparisonRecord default_expansion_compare(const Scenario& base, const Frontier& bigger_default) {
  validate_scenario(base);
  if (!dominates(bigger_default, base.surface.default_frontier(), kFeasTol)) {
    throw Error(ErrorKind::NotAnExpansion, "bigger default does not contain the base default");
  }
  Scenario big = base;
  big.surface = base.surface.with_default(bigger_default);
  for (const auto& v : validate_nesting(big.surface)) {
    if (v.kind == ViolationKind::DefaultContainment) {
      throw Error(ErrorKind::NotAnExpansion, "bigger default leaves some type's choice set");
    }
  }
  const auto small_prof = complete_info_curve(base.surface);
  const auto big_prof = complete_info_curve(big.surface);
  std::vector<double> levels = solver_grid(base, small_prof);
  const auto more = solver_grid(big, big_prof);
  levels.insert(levels.end(), more.begin(), more.end());
  const Solution s = solve_with_levels(base, levels);
  const Solution b = solve_with_levels(big, levels);

  ComparisonRecord r;
  r.mode = "default";
  r.base_opt = s.value;
  r.alt_opt = b.value;
  r.base_promise = s.promise;
  r.alt_promise = b.promise;
  r.base_agent_welfare = agent_welfare(base.chain.weights(), s.promise);
  r.alt_agent_welfare = agent_welfare(base.chain.weights(), b.promise);
  add_ge(r, "ubar_weakly_lower", small_prof.ubar, big_prof.ubar, 0.0);
  add_ge(r, "resolve_dominates", r.alt_opt, r.base_opt);

  PromisedUtility spliced = splice_promises(s.promise, b.promise);
  r.checks.push_back({"splice_incentive_compatible", check_ic(spliced, small_prof.ubar).pass, 0.0, 0.0});
  add_ge(r, "splice_optimal_small_default", objective(base, spliced), s.value);
  bool above = true;
  for (std::size_t i = 0; i < spliced.size(); ++i) above = above && spliced[i] >= b.promise[i];
  r.checks.push_back({"splice_above_big_default", above, 0.0, 0.0});
  r.spliced = std::move(spliced);
  return r;
}

}  // namespace chainscreen
