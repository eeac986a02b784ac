#include "chainscreen/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "chainscreen/errors.hpp"

namespace chainscreen {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_sizes(const Scenario& scenario, const CompleteInfoProfile& profile) {
  validate_scenario(scenario);
  if (profile.u_c.size() != scenario.size()) {
    throw Error(ErrorKind::InvalidInput, "profile and scenario sizes differ");
  }
}

void finish(Solution& sol, std::span<const double> u_c) {
  sol.segments = extract_segments(sol.promise, u_c);
  sol.constant_segments = 0;
  sol.curve_segments = 0;
  for (const auto& s : sol.segments) {
    (s.label == SegmentLabel::Constant ? sol.constant_segments : sol.curve_segments)++;
  }
}

}  // namespace

double objective(const Scenario& scenario, const PromisedUtility& promise) {
  if (promise.size() != scenario.size()) throw Error(ErrorKind::InvalidInput, "promise size mismatch");
  double total = 0.0;
  const auto& w = scenario.chain.weights();
  for (std::size_t i = 0; i < promise.size(); ++i) {
    total = total + w[i] * scenario.surface.frontier(i)(promise[i]);
  }
  return total;
}

std::vector<double> solver_grid(const Scenario& scenario, const CompleteInfoProfile& profile) {
  std::vector<double> g = scenario.u_grid;
  g.insert(g.end(), profile.u_c.begin(), profile.u_c.end());
  g.push_back(profile.ubar);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

std::vector<std::size_t> admissible_levels(const Scenario& scenario, const CompleteInfoProfile& profile,
                                           std::span<const double> grid, std::size_t i) {
  const Frontier& f = scenario.surface.frontier(i);
  double lo = std::max(f.lo() - kFeasTol, profile.lower_closure_textual[i] - kEnvelopeTol);
  const double hi = std::min(f.hi() + kFeasTol, profile.upper_closure[i] + kEnvelopeTol);
  if (i == 0) lo = std::max(lo, profile.ubar - kEnvelopeTol);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (grid[j] >= lo && grid[j] <= hi) out.push_back(j);
  }
  return out;
}

Solution solve_dp(const Scenario& scenario, const CompleteInfoProfile& profile) {
  require_sizes(scenario, profile);
  const std::vector<double> grid = solver_grid(scenario, profile);
  const std::size_t n = scenario.size();
  const std::size_t m = grid.size();
  const auto& w = scenario.chain.weights();

  // best[i][j]: best left-fold prefix value with U_i = grid[j].
  // pref[i][j]: max_{j' <= j} best[i-1][j'] used to reach (i, j).
  std::vector<std::vector<double>> best(n, std::vector<double>(m, kNegInf));
  std::vector<std::vector<double>> pref(n, std::vector<double>(m, kNegInf));
  for (std::size_t i = 0; i < n; ++i) {
    const auto levels = admissible_levels(scenario, profile, grid, i);
    if (levels.empty()) {
      std::ostringstream os;
      os << "no grid level inside the envelope for type " << i;
      throw Error(ErrorKind::InfeasibleGrid, os.str());
    }
    if (i > 0) {
      double run = kNegInf;
      for (std::size_t j = 0; j < m; ++j) {
        run = std::max(run, best[i - 1][j]);
        pref[i][j] = run;
      }
    }
    const Frontier& f = scenario.surface.frontier(i);
    for (std::size_t j : levels) {
      const double term = w[i] * f(grid[j]);
      if (i == 0) {
        best[i][j] = 0.0 + term;
      } else if (pref[i][j] > kNegInf) {
        best[i][j] = pref[i][j] + term;
      }
    }
  }
  const double opt = *std::max_element(best[n - 1].begin(), best[n - 1].end());
  if (opt == kNegInf) throw Error(ErrorKind::InfeasibleGrid, "no monotone grid path inside the envelope");

  // Mark states lying on some optimal path, then walk forward taking the
  // smallest marked level each step: the lexicographically smallest optimum.
  std::vector<std::vector<char>> marked(n, std::vector<char>(m, 0));
  for (std::size_t j = 0; j < m; ++j) marked[n - 1][j] = best[n - 1][j] == opt;
  for (std::size_t i = n - 1; i > 0; --i) {
    for (std::size_t jp = 0; jp < m; ++jp) {
      if (best[i - 1][jp] == kNegInf) continue;
      for (std::size_t j = jp; j < m; ++j) {
        if (marked[i][j] && pref[i][j] == best[i - 1][jp]) {
          marked[i - 1][jp] = 1;
          break;
        }
      }
    }
  }
  std::vector<double> promise(n);
  std::size_t cur = 0;
  while (!marked[0][cur]) ++cur;
  promise[0] = grid[cur];
  for (std::size_t i = 1; i < n; ++i) {
    const double need = best[i - 1][cur];
    std::size_t j = cur;
    while (!(marked[i][j] && pref[i][j] == need)) ++j;
    cur = j;
    promise[i] = grid[cur];
  }

  Solution sol;
  sol.promise = PromisedUtility(std::move(promise));
  sol.value = opt;
  finish(sol, profile.u_c);
  return sol;
}

Solution brute_force(const Scenario& scenario, const CompleteInfoProfile& profile, std::uint64_t budget) {
  require_sizes(scenario, profile);
  const std::vector<double> grid = solver_grid(scenario, profile);
  const std::size_t n = scenario.size();
  const std::size_t m = grid.size();
  const auto& w = scenario.chain.weights();

  std::vector<std::vector<char>> allowed(n, std::vector<char>(m, 0));
  std::vector<std::vector<double>> term(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : admissible_levels(scenario, profile, grid, i)) {
      allowed[i][j] = 1;
      term[i][j] = w[i] * scenario.surface.frontier(i)(grid[j]);
    }
  }

  // Count admissible sequences (saturating) before enumerating.
  std::vector<double> count(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) count[j] = allowed[0][j];
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<double> next(m, 0.0);
    double run = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      run += count[j];
      next[j] = allowed[i][j] ? run : 0.0;
    }
    count = std::move(next);
  }
  double total = 0.0;
  for (double c : count) total += c;
  if (total > static_cast<double>(budget)) {
    std::ostringstream os;
    os << "enumeration needs " << total << " sequences, budget is " << budget;
    throw Error(ErrorKind::BudgetExceeded, os.str());
  }

  std::vector<std::size_t> path(n), best_path;
  double best = kNegInf;
  auto rec = [&](auto&& self, std::size_t i, std::size_t from, double acc) -> void {
    for (std::size_t j = from; j < m; ++j) {
      if (!allowed[i][j]) continue;
      path[i] = j;
      const double next = acc + term[i][j];
      if (i + 1 == n) {
        if (next > best) {
          best = next;
          best_path = path;
        }
      } else {
        self(self, i + 1, j, next);
      }
    }
  };
  rec(rec, 0, 0, 0.0);
  if (best_path.empty()) throw Error(ErrorKind::InfeasibleGrid, "no monotone grid path inside the envelope");

  std::vector<double> promise(n);
  for (std::size_t i = 0; i < n; ++i) promise[i] = grid[best_path[i]];
  Solution sol;
  sol.promise = PromisedUtility(std::move(promise));
  sol.value = best;
  finish(sol, profile.u_c);
  return sol;
}

std::vector<Segment> extract_segments(const PromisedUtility& promise, std::span<const double> u_c,
                                      double tol, std::optional<std::size_t> max_constant) {
  const std::size_t n = promise.size();
  if (n != u_c.size()) throw Error(ErrorKind::InvalidInput, "promise and u_c sizes differ");
  if (n == 0) return {};
  if (!promise.is_monotone(tol)) {
    throw Error(ErrorKind::StructureViolation, "promise is not weakly increasing");
  }

  // Lexicographic cost: (constant runs, curve runs, -indices on curve runs).
  using Cost = std::tuple<std::size_t, std::size_t, long>;
  struct Cell {
    bool reachable = false;
    Cost cost{};
    std::size_t start = 0;
    int prev_label = -1;
  };
  // dp[e][label] for prefixes ending at e; label 0 = curve, 1 = constant.
  std::vector<std::array<Cell, 2>> dp(n);
  std::vector<char> on(n);
  for (std::size_t i = 0; i < n; ++i) on[i] = std::abs(promise[i] - u_c[i]) <= tol;

  for (std::size_t e = 0; e < n; ++e) {
    double lo = promise[e], hi = promise[e];
    bool all_on = true;
    for (std::size_t s = e + 1; s-- > 0;) {
      lo = std::min(lo, promise[s]);
      hi = std::max(hi, promise[s]);
      all_on = all_on && on[s];
      const bool constant_ok = hi - lo <= tol;
      if (!all_on && !constant_ok) break;
      for (int label = 0; label < 2; ++label) {
        if (label == 0 && !all_on) continue;
        if (label == 1 && !constant_ok) continue;
        const long len = static_cast<long>(e - s + 1);
        auto consider = [&](Cost base, int prev) {
          Cost c = base;
          if (label == 0) {
            ++std::get<1>(c);
            std::get<2>(c) -= len;
          } else {
            ++std::get<0>(c);
          }
          Cell& cell = dp[e][label];
          if (!cell.reachable || c < cell.cost) cell = {true, c, s, prev};
        };
        if (s == 0) {
          consider(Cost{0, 0, 0}, -1);
        } else {
          for (int prev = 0; prev < 2; ++prev) {
            if (label == 0 && prev == 0) continue;  // adjacent curve runs merge
            const Cell& pc = dp[s - 1][prev];
            if (pc.reachable) consider(pc.cost, prev);
          }
        }
      }
    }
  }

  int label = -1;
  for (int l = 0; l < 2; ++l) {
    if (dp[n - 1][l].reachable && (label < 0 || dp[n - 1][l].cost < dp[n - 1][label].cost)) label = l;
  }
  if (label < 0) throw Error(ErrorKind::StructureViolation, "promise has no curve/constant partition");

  std::vector<Segment> segs;
  std::size_t e = n - 1;
  while (true) {
    const Cell& c = dp[e][label];
    Segment s;
    s.first = c.start;
    s.last = e;
    s.label = label == 0 ? SegmentLabel::FollowCurve : SegmentLabel::Constant;
    s.level = label == 1 ? promise[c.start] : 0.0;
    segs.push_back(s);
    if (c.start == 0) break;
    e = c.start - 1;
    label = c.prev_label;
  }
  std::reverse(segs.begin(), segs.end());

  if (max_constant) {
    const auto j2 = static_cast<std::size_t>(std::count_if(
        segs.begin(), segs.end(), [](const Segment& s) { return s.label == SegmentLabel::Constant; }));
    if (j2 > *max_constant) {
      std::ostringstream os;
      os << j2 << " constant runs exceed the bound " << *max_constant;
      throw Error(ErrorKind::StructureViolation, os.str());
    }
  }
  return segs;
}

namespace {

void check_range(const PromisedUtility& promise, std::span<const double> u_c, IndexRange r) {
  if (promise.size() != u_c.size()) throw Error(ErrorKind::InvalidInput, "promise and u_c sizes differ");
  if (r.first > r.last || r.last >= promise.size()) {
    throw Error(ErrorKind::InvalidProjection, "index range outside the promise");
  }
}

}  // namespace

PromisedUtility project_running_max(const PromisedUtility& promise, std::span<const double> u_c,
                                    IndexRange range, std::optional<double> anchor) {
  check_range(promise, u_c, range);
  const double a = anchor.value_or(promise[range.first]);
  if (a > promise[range.first] + kEnvelopeTol) {
    throw Error(ErrorKind::InvalidProjection, "anchor above the promise at the left endpoint");
  }
  std::vector<double> out = promise.values();
  double run = a;
  for (std::size_t i = range.first; i <= range.last; ++i) {
    if (promise[i] < u_c[i] - kEnvelopeTol) {
      throw Error(ErrorKind::InvalidProjection, "promise below the curve on a running-max range");
    }
    run = std::max(run, u_c[i]);
    out[i] = run;
  }
  return PromisedUtility(std::move(out));
}

PromisedUtility project_running_min(const PromisedUtility& promise, std::span<const double> u_c,
                                    IndexRange range, std::optional<double> anchor) {
  check_range(promise, u_c, range);
  const double a = anchor.value_or(promise[range.last]);
  if (a < promise[range.last] - kEnvelopeTol) {
    throw Error(ErrorKind::InvalidProjection, "anchor below the promise at the right endpoint");
  }
  std::vector<double> out = promise.values();
  double run = a;
  for (std::size_t i = range.last + 1; i-- > range.first;) {
    if (promise[i] > u_c[i] + kEnvelopeTol) {
      throw Error(ErrorKind::InvalidProjection, "promise above the curve on a running-min range");
    }
    run = std::min(run, u_c[i]);
    out[i] = run;
  }
  return PromisedUtility(std::move(out));
}

Solution structural_solve(const Scenario& scenario, const CompleteInfoProfile& profile) {
  require_sizes(scenario, profile);
  const std::size_t n = scenario.size();
  const auto& w = scenario.chain.weights();
  const auto& uc = profile.u_c;
  const auto& surf = scenario.surface;

  std::vector<double> curve_term(n);
  for (std::size_t i = 0; i < n; ++i) curve_term[i] = w[i] * surf.frontier(i)(uc[i]);

  // Envelope slice and unconstrained flat level for every candidate run.
  struct Slice {
    double lo = 0.0, hi = 0.0, best = 0.0;
    bool ok = false;
  };
  std::vector<std::vector<Slice>> slice(n, std::vector<Slice>(n));
  for (std::size_t a = 0; a < n; ++a) {
    double lo = a == 0 ? profile.ubar : kNegInf;
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t b = a; b < n; ++b) {
      lo = std::max({lo, profile.lower_closure_textual[b], surf.frontier(b).lo()});
      hi = std::min({hi, profile.upper_closure[b], surf.frontier(b).hi()});
      Slice& s = slice[a][b];
      s.lo = lo;
      s.hi = hi;
      s.ok = lo <= hi + kEnvelopeTol;
      if (!s.ok) break;
      if (hi < lo) s.hi = lo;
      auto pooled = [&](double x) {
        double t = 0.0;
        for (std::size_t i = a; i <= b; ++i) t += w[i] * surf.frontier(i)(x);
        return t;
      };
      s.best = maximize_concave(pooled, s.lo, s.hi);
    }
  }
  auto pooled_value = [&](std::size_t a, std::size_t b, double x) {
    double t = 0.0;
    for (std::size_t i = a; i <= b; ++i) t += w[i] * surf.frontier(i)(x);
    return t;
  };

  // States per (end, constants used): Pareto set over (last level, value).
  struct State {
    double last;
    double value;
    std::size_t prev_end;  // n means "start"
    std::size_t prev_k;
    std::size_t prev_idx;
    std::size_t first;
    bool constant;
    double level;
  };
  const std::size_t K = profile.K;
  std::vector<std::vector<std::vector<State>>> states(n, std::vector<std::vector<State>>(K + 1));

  auto prune = [](std::vector<State>& v) {
    std::stable_sort(v.begin(), v.end(), [](const State& a, const State& b) {
      return a.last < b.last || (a.last == b.last && a.value > b.value);
    });
    std::vector<State> kept;
    double best = kNegInf;
    for (const auto& s : v) {
      if (s.value > best) {
        kept.push_back(s);
        best = s.value;
      }
    }
    v = std::move(kept);
  };

  auto expand = [&](std::size_t start, std::size_t k, std::size_t idx, double last, double value,
                    std::size_t prev_end) {
    bool mono = last <= uc[start] + kEnvelopeTol;
    double acc = value;
    for (std::size_t b = start; b < n; ++b) {
      // curve-following run [start, b]
      if (b > start && uc[b] < uc[b - 1]) mono = false;
      if (mono) {
        acc += curve_term[b];
        states[b][k].push_back({uc[b], acc, prev_end, k, idx, start, false, 0.0});
      }
      // constant run [start, b]
      if (k < K && slice[start][b].ok) {
        const Slice& s = slice[start][b];
        const double lb = std::max(s.lo, last);
        if (lb <= s.hi + kEnvelopeTol) {
          std::vector<double> levels{std::clamp(s.best, lb, std::max(lb, s.hi))};
          if (b + 1 < n) {
            const double ub = std::min(s.hi, uc[b + 1]);
            if (ub >= lb) levels.push_back(std::clamp(s.best, lb, ub));
          }
          for (double lv : levels) {
            states[b][k + 1].push_back(
                {lv, value + pooled_value(start, b, lv), prev_end, k, idx, start, true, lv});
          }
        }
      }
    }
  };

  expand(0, 0, 0, kNegInf, 0.0, n);
  for (std::size_t e = 0; e + 1 < n; ++e) {
    for (std::size_t k = 0; k <= K; ++k) {
      prune(states[e][k]);
      for (std::size_t idx = 0; idx < states[e][k].size(); ++idx) {
        const State s = states[e][k][idx];
        expand(e + 1, k, idx, s.last, s.value, e);
      }
    }
  }
  std::size_t best_k = 0, best_idx = 0;
  double best_val = kNegInf;
  for (std::size_t k = 0; k <= K; ++k) {
    prune(states[n - 1][k]);
    for (std::size_t idx = 0; idx < states[n - 1][k].size(); ++idx) {
      if (states[n - 1][k][idx].value > best_val) {
        best_val = states[n - 1][k][idx].value;
        best_k = k;
        best_idx = idx;
      }
    }
  }
  if (best_val == kNegInf) throw Error(ErrorKind::InfeasibleGrid, "no structured promise found");

  std::vector<double> promise(n);
  std::size_t e = n - 1, k = best_k, idx = best_idx;
  while (true) {
    const State& s = states[e][k][idx];
    for (std::size_t i = s.first; i <= e; ++i) promise[i] = s.constant ? s.level : uc[i];
    if (s.prev_end == n) break;
    e = s.prev_end;
    k = s.prev_k;
    idx = s.prev_idx;
  }
  Solution sol;
  sol.promise = PromisedUtility(std::move(promise));
  sol.value = objective(scenario, sol.promise);
  finish(sol, uc);
  return sol;
}

std::vector<double> interim_payoffs(const ValueSurface& surface, const PromisedUtility& promise) {
  if (promise.size() != surface.size()) throw Error(ErrorKind::InvalidInput, "promise size mismatch");
  std::vector<double> v(promise.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = surface.frontier(i)(promise[i]);
  return v;
}

PromisedUtility monotonize_principal_payoff(const Scenario& scenario, const PromisedUtility& promise) {
  const auto v = interim_payoffs(scenario.surface, promise);
  std::vector<double> out(promise.size());
  std::size_t arg = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= v[arg]) arg = i;  // largest maximizer
    out[i] = promise[arg];
  }
  return PromisedUtility(std::move(out));
}

}  // namespace chainscreen
