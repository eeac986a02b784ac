#include "chainscreen/applications.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "chainscreen/complete_info.hpp"
#include "chainscreen/errors.hpp"
#include "chainscreen/mechanism.hpp"

namespace chainscreen {

namespace {

void config_error(const std::string& what) { throw Error(ErrorKind::InvalidConfig, what); }

std::vector<double> linspace(double a, double b, int n) {
  if (n == 1) return {a};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = a + (b - a) * k / (n - 1);
  out.back() = b;
  return out;
}

void check_types(const std::vector<double>& types) {
  if (types.empty()) config_error("no types");
  for (std::size_t i = 1; i < types.size(); ++i) {
    if (!(types[i] > types[i - 1])) config_error("types must be strictly increasing");
  }
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Range of u over all frontiers and the default.
std::pair<double, double> surface_span(const ValueSurface& s) {
  double lo = s.default_frontier().lo();
  double hi = s.default_frontier().hi();
  for (const auto& f : s.frontiers()) {
    lo = std::min(lo, f.lo());
    hi = std::max(hi, f.hi());
  }
  return {lo, hi};
}

}  // namespace

// ---------------------------------------------------------------------------
// drug approval

double Tradeoff::psi(double a) const { return std::pow(1.0 - std::pow(a, 1.0 / k), k); }

double Tradeoff::dpsi(double a) const {
  if (a <= 0.0) return -INFINITY;
  const double s = std::pow(a, 1.0 / k);
  return -std::pow(1.0 - s, k - 1.0) * s / a;
}

void validate(const FdaConfig& c) {
  if (!(c.q > 0.0 && c.q < 1.0)) config_error("q must lie in (0, 1)");
  if (!(c.L > 0.0)) config_error("L must be positive");
  if (!(c.q - (1.0 - c.q) * c.L < 0.0)) config_error("receiver must reject at the prior");
  if (!(c.tradeoff.k > 1.0)) config_error("tradeoff exponent must exceed 1");
  check_types(c.types);
  if (c.alpha_lo.size() != c.types.size() || c.alpha_hi.size() != c.types.size()) {
    config_error("alpha bounds need one entry per type");
  }
  for (std::size_t i = 0; i < c.types.size(); ++i) {
    if (!(c.alpha_lo[i] >= 0.0 && c.alpha_lo[i] <= c.alpha_hi[i] && c.alpha_hi[i] <= 1.0)) {
      config_error("alpha bounds must satisfy 0 <= lo <= hi <= 1");
    }
    if (i > 0 && (c.alpha_lo[i] > c.alpha_lo[i - 1] || c.alpha_hi[i] < c.alpha_hi[i - 1])) {
      config_error("alpha ranges must widen with type");
    }
  }
  if (c.alpha_steps < 1 || c.u_steps < 1) config_error("step counts must be positive");
}

double fda_R(const FdaConfig& c, double alpha) {
  return c.q * (1.0 - c.tradeoff.psi(alpha)) - (1.0 - c.q) * alpha * c.L;
}

namespace {

double positive_signal_prob(const FdaConfig& c, double alpha) {
  return c.q * (1.0 - c.tradeoff.psi(alpha)) + (1.0 - c.q) * alpha;
}

}  // namespace

FdaClosedForm fda_closed_form(const FdaConfig& c) {
  validate(c);
  // psi'(a) = -((1 - s) / s)^(k-1) with s = a^(1/k)
  const double ratio = (1.0 - c.q) * c.L / c.q;
  const double s = 1.0 / (1.0 + std::pow(ratio, 1.0 / (c.tradeoff.k - 1.0)));
  FdaClosedForm out;
  out.alpha_star = std::pow(s, c.tradeoff.k);

  boost::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve([&](double a) { return fda_R(c, a); }, out.alpha_star, 1.0,
                                              boost::math::tools::eps_tolerance<double>(52), iters);
  out.alpha_hat = 0.5 * (r.first + r.second);
  out.p_star = positive_signal_prob(c, out.alpha_star);
  out.p_hat = positive_signal_prob(c, out.alpha_hat);
  return out;
}

double fda_P(const FdaConfig& c, double alpha) {
  return alpha <= fda_closed_form(c).alpha_hat ? positive_signal_prob(c, alpha) : 0.0;
}

GeneratedScenario fda_scenario(const FdaConfig& c) {
  const FdaClosedForm cf = fda_closed_form(c);
  const double reject_all = c.q - (1.0 - c.q) * c.L;
  std::vector<std::vector<Vertex>> pts(c.types.size());
  std::vector<double> ref(c.types.size());
  for (std::size_t i = 0; i < c.types.size(); ++i) {
    auto alphas = linspace(c.alpha_lo[i], c.alpha_hi[i], c.alpha_steps + 1);
    const double a_opt = std::clamp(cf.alpha_star, c.alpha_lo[i], c.alpha_hi[i]);
    alphas.push_back(a_opt);
    auto& p = pts[i];
    p.push_back({0.0, 0.0});
    p.push_back({1.0, reject_all});
    for (double a : alphas) {
      const double plus = positive_signal_prob(c, a);
      p.push_back({plus, fda_R(c, a)});
      // approve only after a negative signal
      p.push_back({1.0 - plus, c.q * c.tradeoff.psi(a) - (1.0 - c.q) * (1.0 - a) * c.L});
    }
    ref[i] = a_opt <= cf.alpha_hat ? positive_signal_prob(c, a_opt) : 0.0;
  }
  std::vector<Vertex> def{{0.0, 0.0}, {1.0, reject_all}};
  Scenario sc{TypeChain::uniform(c.types), build_surface(pts, def), uniform_grid(0.0, 1.0, c.u_steps), {}};
  sc.metadata = {{"application", "fda"}, {"q", num(c.q)}, {"L", num(c.L)}, {"k", num(c.tradeoff.k)}};
  return {std::move(sc), std::move(ref)};
}

FdaConfig fda_preset(FdaCase which) {
  FdaConfig c;
  const auto t = linspace(0.0, 1.0, 21);
  c.types = t;
  for (double x : t) {
    switch (which) {
      case FdaCase::Interior:
        c.alpha_lo.push_back(0.10 - 0.05 * x);
        c.alpha_hi.push_back(0.25 + 0.5 * x);
        break;
      case FdaCase::Increasing:
        c.alpha_lo.push_back(0.01 * (1.0 - x));
        c.alpha_hi.push_back(0.04 + 0.2 * x);
        break;
      case FdaCase::Decreasing:
        c.alpha_lo.push_back(0.9 - 0.6 * x);
        c.alpha_hi.push_back(0.95 + 0.05 * x);
        break;
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// reform elicitation

void validate(const CivilServantConfig& c) {
  if (c.signals.empty() || c.signals.size() != c.signal_weights.size()) {
    config_error("signals and weights must be nonempty and of equal length");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < c.signals.size(); ++k) {
    if (!(c.signals[k] >= 0.0 && c.signals[k] <= 1.0)) config_error("posteriors must lie in [0, 1]");
    if (!(c.signal_weights[k] >= 0.0)) config_error("negative signal weight");
    total += c.signal_weights[k];
  }
  if (std::abs(total - 1.0) > 1e-12) config_error("signal weights must sum to 1");
  if (!(c.n >= 1.0)) config_error("servant fight cost n must be >= 1");
  if (!(c.m >= 0.0)) config_error("politician fight cost m must be >= 0");
  check_types(c.types);
  if (c.types.front() < 0.0) config_error("reform radicalness must be >= 0");
  if (c.u_steps < 1) config_error("u_steps must be positive");
}

CivilServantConfig civil_servant_uniform(double alpha, int points, int types) {
  if (points < 2 || types < 1) config_error("need at least two signals and one type");
  CivilServantConfig c;
  c.alpha = alpha;
  c.signals = linspace(0.0, 1.0, points);
  const double h = 1.0 / (points - 1);
  c.signal_weights.assign(static_cast<std::size_t>(points), h);
  c.signal_weights.front() = c.signal_weights.back() = 0.5 * h;
  c.types = linspace(0.0, 1.0, types);
  return c;
}

double politician_capability(const CivilServantConfig& c) {
  double cp = 0.0;
  for (std::size_t k = 0; k < c.signals.size(); ++k) {
    const double s = c.signals[k];
    cp += c.signal_weights[k] * std::max(2.0 * s - 1.0, 1.0 - 2.0 * s);
  }
  return cp;
}

namespace {

enum class CivilAction { StatusQuo, Fight, Matched, Mismatched };

struct LabeledPoint {
  Vertex p;
  CivilAction action;
};

std::vector<LabeledPoint> civil_actions(const CivilServantConfig& c, double d, double s) {
  const double gain = d * std::abs(2.0 * s - 1.0);
  return {{{0.0, 0.0}, CivilAction::StatusQuo},
          {{-c.n, -c.m}, CivilAction::Fight},
          {{gain - c.alpha * d, gain}, CivilAction::Matched},
          {{-gain - c.alpha * d, -gain}, CivilAction::Mismatched}};
}

struct Edge {
  std::size_t signal;
  std::size_t from;  // vertex index in that signal's hull
  double du;
  double dv;
};

struct SupConvolution {
  std::vector<std::vector<Vertex>> hulls;
  std::vector<double> weights;
  Vertex start;
  std::vector<Edge> edges;  // weighted, by decreasing slope
};

SupConvolution sup_convolution(const CivilServantConfig& c, double d) {
  SupConvolution sc;
  sc.start = {0.0, 0.0};
  for (std::size_t k = 0; k < c.signals.size(); ++k) {
    const double g = c.signal_weights[k];
    if (g == 0.0) continue;
    std::vector<Vertex> raw;
    for (const auto& lp : civil_actions(c, d, c.signals[k])) raw.push_back(lp.p);
    auto hull = upper_hull(raw);
    const std::size_t idx = sc.hulls.size();
    sc.start.u += g * hull.front().u;
    sc.start.v += g * hull.front().v;
    for (std::size_t j = 0; j + 1 < hull.size(); ++j) {
      sc.edges.push_back({idx, j, g * (hull[j + 1].u - hull[j].u), g * (hull[j + 1].v - hull[j].v)});
    }
    sc.hulls.push_back(std::move(hull));
    sc.weights.push_back(g);
  }
  std::stable_sort(sc.edges.begin(), sc.edges.end(),
                   [](const Edge& a, const Edge& b) { return a.dv * b.du > b.dv * a.du; });
  return sc;
}

}  // namespace

GeneratedScenario civil_servant_scenario(const CivilServantConfig& c) {
  validate(c);
  const double cp = politician_capability(c);
  std::vector<std::vector<Vertex>> pts;
  std::vector<double> ref;
  for (double d : c.types) {
    const auto sc = sup_convolution(c, d);
    std::vector<Vertex> v{sc.start};
    for (const auto& e : sc.edges) v.push_back({v.back().u + e.du, v.back().v + e.dv});
    pts.push_back(std::move(v));
    ref.push_back((cp - c.alpha) * d);
  }
  const auto base = sup_convolution(c, 0.0);
  std::vector<Vertex> def{base.start};
  for (const auto& e : base.edges) def.push_back({def.back().u + e.du, def.back().v + e.dv});

  ValueSurface surface = build_surface(pts, def);
  const auto [lo, hi] = surface_span(surface);
  Scenario sc{TypeChain::uniform(c.types), std::move(surface), uniform_grid(lo, hi, c.u_steps), {}};
  sc.metadata = {{"application", "civil_servant"}, {"alpha", num(c.alpha)}, {"c_p", num(cp)},
                 {"m", num(c.m)}, {"n", num(c.n)}};
  return {std::move(sc), std::move(ref)};
}

CivilAllocation civil_servant_allocation(const CivilServantConfig& c, std::size_t i, double u) {
  validate(c);
  if (i >= c.types.size()) throw Error(ErrorKind::InvalidInput, "type index out of range");
  const double d = c.types[i];
  const auto sc = sup_convolution(c, d);
  double end = sc.start.u;
  for (const auto& e : sc.edges) end += e.du;
  if (u < sc.start.u - kFeasTol || u > end + kFeasTol) {
    throw Error(ErrorKind::InfeasiblePromise, "promise outside the type's feasible interval");
  }
  // position on each signal's hull: vertex index plus fraction toward the next
  std::vector<std::size_t> at(sc.hulls.size(), 0);
  std::vector<double> frac(sc.hulls.size(), 0.0);
  double remaining = u - sc.start.u;
  for (const auto& e : sc.edges) {
    if (remaining <= 0.0) break;
    if (remaining >= e.du) {
      at[e.signal] = e.from + 1;
      remaining -= e.du;
    } else {
      frac[e.signal] = remaining / e.du;
      remaining = 0.0;
    }
  }

  CivilAllocation out;
  std::size_t h = 0;
  for (std::size_t k = 0; k < c.signals.size(); ++k) {
    if (c.signal_weights[k] == 0.0) continue;
    const auto labeled = civil_actions(c, d, c.signals[k]);
    auto credit = [&](const Vertex& p, double w) {
      for (const auto& lp : labeled) {
        if (lp.p == p) {
          double mass = sc.weights[h] * w;
          switch (lp.action) {
            case CivilAction::StatusQuo: out.status_quo += mass; break;
            case CivilAction::Fight: out.fight += mass; break;
            default: out.reform += mass; break;
          }
          out.u += mass * p.u;
          out.v += mass * p.v;
          return;
        }
      }
    };
    const auto& hull = sc.hulls[h];
    credit(hull[at[h]], 1.0 - frac[h]);
    if (frac[h] > 0.0) credit(hull[at[h] + 1], frac[h]);
    ++h;
  }
  return out;
}

// ---------------------------------------------------------------------------
// performance pay

void validate(const CeoConfig& c) {
  check_types(c.types);
  if (c.types.front() < 0.0 || c.types.back() > 0.5) config_error("CEO types must lie in [0, 0.5]");
  if (!(c.u_max > 0.0)) config_error("u_max must be positive");
  if (c.u_steps < 1) config_error("u_steps must be positive");
  if (!(c.p0 >= 0.0 && c.p0 <= 1.0 && c.p1 >= 0.0 && c.p1 <= 1.0 && c.cost >= 0.0)) {
    config_error("invalid CEO probabilities or cost");
  }
}

CeoConfig ceo_default() {
  CeoConfig c;
  c.types = linspace(0.0, 0.5, 50);
  return c;
}

double ceo_reference_u_c(double T) {
  if (T < 3.0 / 22.0) return 0.0;
  if (T < 0.2) return (5.0 - 18.0 * T) / (20.0 * (1.0 + 2.0 * T));
  if (T < 0.25) return 1.0 / 20.0;
  return 0.0;
}

std::string to_string(CeoStrategy s) {
  switch (s) {
    case CeoStrategy::Shirk: return "shirk";
    case CeoStrategy::Safe: return "safe";
    case CeoStrategy::Risky: return "risky";
  }
  return "?";
}

namespace {

using Vec4 = Eigen::Vector4d;

struct StrategyData {
  Vec4 dist;  // over kCeoOutcomes
  double cost;
};

std::array<StrategyData, 3> ceo_strategies(const CeoConfig& c, double T, bool permit) {
  const double p = permit ? 0.5 - T : 0.5;
  return {StrategyData{Vec4(0.0, 1.0 - c.p0, c.p0, 0.0), 0.0}, StrategyData{Vec4(0.0, 1.0 - c.p1, c.p1, 0.0), c.cost},
          StrategyData{Vec4(p, 0.0, p, 1.0 - 2.0 * p), c.cost}};
}

// min cost.x s.t. A_ub x <= b_ub, eq.x == b_eq (optional), x >= 0; by
// enumerating basic solutions.
std::optional<Vec4> small_lp(const Vec4& cost, const std::vector<Vec4>& a_ub, const std::vector<double>& b_ub,
                             const std::optional<std::pair<Vec4, double>>& eq) {
  constexpr double kTol = 1e-12;
  std::vector<Vec4> rows = a_ub;
  std::vector<double> rhs = b_ub;
  for (int j = 0; j < 4; ++j) {
    Vec4 r = Vec4::Zero();
    r[j] = -1.0;
    rows.push_back(r);
    rhs.push_back(0.0);
  }
  const std::size_t m = rows.size();
  const std::size_t need = eq ? 3 : 4;
  std::optional<Vec4> best;
  double best_obj = INFINITY;
  // bitmask subsets of size `need`
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != need) continue;
    Eigen::Matrix4d A;
    Vec4 b;
    int r = 0;
    if (eq) {
      A.row(r) = eq->first.transpose();
      b[r++] = eq->second;
    }
    for (std::size_t k = 0; k < m; ++k) {
      if (mask & (1u << k)) {
        A.row(r) = rows[k].transpose();
        b[r++] = rhs[k];
      }
    }
    Eigen::FullPivLU<Eigen::Matrix4d> lu(A);
    if (!lu.isInvertible()) continue;
    const Vec4 x = lu.solve(b);
    bool ok = true;
    for (std::size_t k = 0; k < m && ok; ++k) ok = rows[k].dot(x) <= rhs[k] + kTol;
    if (!ok) continue;
    const double obj = cost.dot(x);
    if (obj < best_obj - kTol) {
      best_obj = obj;
      best = x.cwiseMax(0.0);
    }
  }
  return best;
}

}  // namespace

std::optional<WageContract> ceo_wage_lp(const CeoConfig& c, double T, CeoStrategy strategy, bool permit,
                                        std::optional<double> u) {
  const auto st = ceo_strategies(c, T, permit);
  const auto k = static_cast<std::size_t>(strategy);
  std::vector<Vec4> a_ub;
  std::vector<double> b_ub;
  for (std::size_t j = 0; j < st.size(); ++j) {
    if (j == k) continue;
    // E_j w - c_j <= E_k w - c_k
    a_ub.push_back(st[j].dist - st[k].dist);
    b_ub.push_back(st[j].cost - st[k].cost);
  }
  std::optional<Vec4> w;
  if (u) {
    w = small_lp(Vec4::Ones(), a_ub, b_ub, std::make_pair(st[k].dist, *u + st[k].cost));
  } else {
    w = small_lp(st[k].dist, a_ub, b_ub, std::nullopt);
  }
  if (!w) return std::nullopt;
  const Vec4 y(kCeoOutcomes[0], kCeoOutcomes[1], kCeoOutcomes[2], kCeoOutcomes[3]);
  WageContract out;
  out.strategy = strategy;
  out.risky_improvement_permitted = permit;
  for (int j = 0; j < 4; ++j) out.wages[static_cast<std::size_t>(j)] = (*w)[j];
  const double pay = st[k].dist.dot(*w);
  out.agent_utility = u ? *u : pay - st[k].cost;
  out.principal_payoff = st[k].dist.dot(y) - st[k].cost - out.agent_utility;
  for (std::size_t j = 0; j < st.size(); ++j) {
    if (j == k) continue;
    out.obedience_slack.push_back((pay - st[k].cost) - (st[j].dist.dot(*w) - st[j].cost));
  }
  return out;
}

namespace {

constexpr std::array<CeoStrategy, 3> kAllStrategies{CeoStrategy::Shirk, CeoStrategy::Safe, CeoStrategy::Risky};

std::vector<Vertex> ceo_points(const CeoConfig& c, double T, const std::vector<bool>& permits) {
  std::vector<Vertex> pts;
  for (bool permit : permits) {
    for (CeoStrategy s : kAllStrategies) {
      const auto cheapest = ceo_wage_lp(c, T, s, permit);
      if (!cheapest || cheapest->agent_utility > c.u_max) continue;
      pts.push_back({cheapest->agent_utility, cheapest->principal_payoff});
      if (const auto top = ceo_wage_lp(c, T, s, permit, c.u_max)) {
        pts.push_back({c.u_max, top->principal_payoff});
      }
    }
  }
  return pts;
}

}  // namespace

GeneratedScenario ceo_scenario(const CeoConfig& c) {
  validate(c);
  std::vector<std::vector<Vertex>> pts;
  std::vector<double> ref;
  for (double T : c.types) {
    pts.push_back(ceo_points(c, T, {false, true}));
    ref.push_back(ceo_reference_u_c(T));
  }
  const auto def = ceo_points(c, 0.0, {false});
  Scenario sc{TypeChain::uniform(c.types), build_surface(pts, def), uniform_grid(0.0, c.u_max, c.u_steps), {}};
  sc.metadata = {{"application", "ceo"}, {"p0", num(c.p0)}, {"p1", num(c.p1)}, {"cost", num(c.cost)}};
  return {std::move(sc), std::move(ref)};
}

std::vector<CeoLotteryEntry> ceo_contracts(const CeoConfig& c, const PromisedUtility& promise) {
  validate(c);
  if (promise.size() != c.types.size()) throw Error(ErrorKind::InvalidInput, "promise size mismatch");
  const auto gen = ceo_scenario(c);
  std::vector<CeoLotteryEntry> out;
  for (std::size_t i = 0; i < c.types.size(); ++i) {
    const Allocation a = implement_allocation(gen.scenario.surface, i, promise[i]);
    for (const auto& sp : a.support) {
      std::optional<WageContract> pick;
      for (bool permit : {false, true}) {
        for (CeoStrategy s : kAllStrategies) {
          auto w = ceo_wage_lp(c, c.types[i], s, permit, sp.point.u);
          if (w && std::abs(w->principal_payoff - sp.point.v) <= 1e-9 && !pick) pick = w;
        }
      }
      if (!pick) throw Error(ErrorKind::InvalidInput, "frontier vertex has no matching contract");
      out.push_back({i, sp.weight, *pick});
    }
  }
  return out;
}

}  // namespace chainscreen
