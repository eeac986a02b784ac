#include "chainscreen/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "chainscreen/applications.hpp"
#include "chainscreen/comparative.hpp"
#include "chainscreen/complete_info.hpp"
#include "chainscreen/errors.hpp"
#include "chainscreen/instances.hpp"
#include "chainscreen/mechanism.hpp"
#include "chainscreen/scenario_io.hpp"
#include "chainscreen/solver.hpp"
#include "json.hpp"

namespace chainscreen::cli {

using nlohmann::json;

namespace {

// Invariant failure: reported, exit 2.
struct Failure {
  std::string what;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double max_step(const std::vector<double>& grid) {
  double step = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) step = std::max(step, grid[k] - grid[k - 1]);
  return step;
}

void regrid(Scenario& sc, int steps) {
  if (steps <= 0) return;
  sc.u_grid = uniform_grid(sc.u_grid.front(), sc.u_grid.back(), steps);
}

// ---- solve ----

struct SolveOpts {
  std::string input;
  std::string out;
  std::string csv;
  int grid_steps = 0;
  bool structural = false;
};

int do_solve(const SolveOpts& o, std::ostream& out) {
  Scenario sc = load_scenario(o.input);
  regrid(sc, o.grid_steps);
  const auto prof = complete_info_curve(sc.surface);
  const Solution sol = o.structural ? structural_solve(sc, prof) : solve_dp(sc, prof);
  if (!check_ic(sol.promise, prof.ubar, kFeasTol).pass) throw Failure{"solution is not incentive compatible"};
  emit(solution_to_json(sol, prof), o.out, out);
  if (!o.csv.empty()) write_text(o.csv, plot_csv(sc, sol, prof));
  return kExitOk;
}

// ---- benchmark ----

int do_benchmark(const std::string& input, const std::string& path, std::ostream& out) {
  const Scenario sc = load_scenario(input);
  emit(profile_to_json(complete_info_curve(sc.surface)), path, out);
  return kExitOk;
}

// ---- segments ----

int do_segments(const std::string& input, const std::string& path, double tol, std::ostream& out) {
  const Scenario sc = load_scenario(input);
  const auto prof = complete_info_curve(sc.surface);
  const Solution sol = solve_dp(sc, prof);
  std::vector<Segment> segs;
  try {
    segs = extract_segments(sol.promise, prof.u_c, tol);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::StructureViolation) throw Failure{e.what()};
    throw;
  }
  std::size_t j1 = 0;
  std::size_t j2 = 0;
  json arr = json::array();
  for (const auto& s : segs) {
    const bool flat = s.label == SegmentLabel::Constant;
    (flat ? j2 : j1) += 1;
    arr.push_back({{"from", s.first + 1},
                   {"to", s.last + 1},
                   {"label", flat ? "CONSTANT" : "FOLLOW_CURVE"},
                   {"level", flat ? json(s.level) : json(nullptr)}});
  }
  const bool counts_ok = j2 <= prof.K && j1 <= j2 + 1;
  json doc{{"segments", arr}, {"K", prof.K}, {"J1", j1}, {"J2", j2}, {"status", counts_ok ? "PASS" : "FAIL"}};
  emit(dump(doc), path, out);
  if (!counts_ok) throw Failure{"segment counts exceed the bound"};
  return kExitOk;
}

// ---- oracle-check ----

struct SweepResult {
  bool oracle_ok = true;
  bool structure_ok = true;
  bool envelope_ok = true;
  std::string note;
};

SweepResult check_instance(const Scenario& sc) {
  SweepResult r;
  const auto prof = complete_info_curve(sc.surface);
  const Solution dp = solve_dp(sc, prof);
  const Solution bf = brute_force(sc, prof);
  r.oracle_ok = dp.value == bf.value;
  try {
    const auto segs = extract_segments(dp.promise, prof.u_c, kSegmentTol, prof.K);
    std::size_t j1 = 0;
    for (const auto& s : segs) j1 += s.label == SegmentLabel::FollowCurve ? 1 : 0;
    r.structure_ok = j1 <= segs.size() - j1 + 1;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::StructureViolation) throw;
    r.structure_ok = false;
    r.note = e.what();
  }
  const double tol = max_step(sc.u_grid);
  for (std::size_t i = 0; i < sc.size(); ++i) {
    if (dp.promise[i] < prof.lower_closure_textual[i] - tol || dp.promise[i] > prof.upper_closure[i] + tol) {
      r.envelope_ok = false;
    }
  }
  return r;
}

struct OracleOpts {
  std::string input;
  std::string out;
  int sweep = 0;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::size_t max_types = 6;
  std::size_t max_levels = 8;
};

int do_oracle(const OracleOpts& o, std::ostream& out) {
  if (!o.input.empty()) {
    const Scenario sc = load_scenario(o.input);
    const auto prof = complete_info_curve(sc.surface);
    const Solution dp = solve_dp(sc, prof);
    const Solution bf = brute_force(sc, prof);
    const bool ok = dp.value == bf.value;
    json doc{{"dp", dp.value}, {"brute_force", bf.value}, {"report", ok ? "dp == brute_force" : "dp != brute_force"}};
    emit(dump(doc), o.out, out);
    if (!ok) throw Failure{"dp and brute force disagree"};
    return kExitOk;
  }
  if (o.sweep <= 0) throw Error(ErrorKind::InvalidInput, "oracle-check needs a scenario file or --sweep N");
  if (o.max_types < 1 || o.max_levels < 2) throw Error(ErrorKind::InvalidInput, "need --max-types >= 1, --max-levels >= 2");

  const std::uint64_t seed = o.seed ? *o.seed : seed_from_env(1);
  std::mt19937_64 rng(seed);
  std::vector<Scenario> instances;
  instances.reserve(static_cast<std::size_t>(o.sweep));
  for (int k = 0; k < o.sweep; ++k) {
    const std::size_t n = 1 + rng() % o.max_types;
    const std::size_t levels = 2 + rng() % (o.max_levels - 1);
    instances.push_back(random_instance(rng, n, levels));
  }

  // Instances are drawn up front; workers only fill their own slots, so the
  // report does not depend on scheduling.
  std::vector<SweepResult> results(instances.size());
  std::vector<std::string> errors(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < instances.size(); k = next++) {
      try {
        results[k] = check_instance(instances[k]);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  unsigned nthreads = o.threads > 0 ? static_cast<unsigned>(o.threads) : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, 16);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::size_t oracle_bad = 0, structure_bad = 0, envelope_bad = 0, error_count = 0;
  json failures = json::array();
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& r = results[k];
    if (!errors[k].empty()) {
      ++error_count;
      failures.push_back({{"instance", k}, {"error", errors[k]}});
      continue;
    }
    oracle_bad += !r.oracle_ok;
    structure_bad += !r.structure_ok;
    envelope_bad += !r.envelope_ok;
    if (!r.oracle_ok || !r.structure_ok || !r.envelope_ok) {
      failures.push_back({{"instance", k},
                          {"oracle", r.oracle_ok},
                          {"structure", r.structure_ok},
                          {"envelope", r.envelope_ok},
                          {"note", r.note}});
    }
  }
  const bool ok = oracle_bad + structure_bad + envelope_bad + error_count == 0;
  json doc{{"seed", seed},
           {"instances", o.sweep},
           {"oracle_mismatches", oracle_bad},
           {"structure_violations", structure_bad},
           {"envelope_violations", envelope_bad},
           {"errors", error_count},
           {"failures", failures},
           {"report", ok ? "dp == brute_force" : "FAIL"}};
  emit(dump(doc), o.out, out);
  if (!ok) throw Failure{"sweep found failures"};
  return kExitOk;
}

// ---- compare ----

// Upper contains lower: wider interval and pointwise weakly higher.
bool frontier_contains(const Frontier& upper, const Frontier& lower, const Frontier& dflt) {
  ValueSurface pair({lower, upper}, dflt);
  for (const auto& v : validate_nesting(pair)) {
    if (v.type == 1 && v.kind != ViolationKind::DefaultContainment) return false;
  }
  return true;
}

json record_json(const ComparisonRecord& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"status", c.pass ? "PASS" : "FAIL"}, {"lhs", c.lhs}, {"rhs", c.rhs}});
  }
  json coupling = json::array();
  for (const auto& m : r.coupling) coupling.push_back({{"from", m.from + 1}, {"to", m.to + 1}, {"mass", m.mass}});
  json doc{{"mode", r.mode},
           {"base_opt", r.base_opt},
           {"alt_opt", r.alt_opt},
           {"bound", r.bound ? json(*r.bound) : json(nullptr)},
           {"base_agent_welfare", r.base_agent_welfare},
           {"alt_agent_welfare", r.alt_agent_welfare},
           {"base_promise", r.base_promise.values()},
           {"alt_promise", r.alt_promise.values()},
           {"checks", checks},
           {"status", r.pass() ? "PASS" : "FAIL"}};
  if (r.spliced) doc["spliced"] = r.spliced->values();
  if (!r.coupling.empty()) doc["coupling"] = coupling;
  return doc;
}

struct CompareOpts {
  std::string mode;
  std::string base;
  std::string alt;
  std::vector<std::size_t> g;  // 1-based
  std::string out;
};

int do_compare(const CompareOpts& o, std::ostream& out) {
  const Scenario base = load_scenario(o.base);
  ComparisonRecord rec;
  if (o.mode == "expansion") {
    Expansion exp;
    if (!o.g.empty()) {
      exp.mode = ExpansionMode::OnChain;
      for (std::size_t gi : o.g) {
        if (gi == 0) throw Error(ErrorKind::InvalidInput, "--g entries are 1-based");
        exp.g.push_back(gi - 1);
      }
    } else {
      if (o.alt.empty()) throw Error(ErrorKind::InvalidInput, "expansion needs --g or an expanded scenario");
      const Scenario alt = load_scenario(o.alt);
      if (alt.size() != base.size()) throw Error(ErrorKind::InvalidInput, "expanded scenario has a different type count");
      exp.mode = ExpansionMode::OffChain;
      exp.frontiers = alt.surface.frontiers();
      for (std::size_t i = 0; i < alt.size(); ++i) {
        std::size_t best = i;
        bool found = false;
        for (std::size_t j = 0; j < base.size(); ++j) {
          if (frontier_contains(alt.surface.frontier(i), base.surface.frontier(j), base.surface.default_frontier())) {
            best = j;
            found = true;
          }
        }
        if (!found) throw Error(ErrorKind::InvalidExpansion, "expanded set " + std::to_string(i + 1) + " contains no base type");
        exp.pi.push_back(best);
      }
    }
    rec = verify_expansion_dominance(base, exp);
  } else if (o.mode == "fosd") {
    if (o.alt.empty()) throw Error(ErrorKind::InvalidInput, "fosd needs an alternative scenario");
    const Scenario alt = load_scenario(o.alt);
    rec = fosd_compare(base, alt.chain.weights());
  } else if (o.mode == "default") {
    if (o.alt.empty()) throw Error(ErrorKind::InvalidInput, "default needs an alternative scenario");
    const Scenario alt = load_scenario(o.alt);
    rec = default_expansion_compare(base, alt.surface.default_frontier());
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown compare mode " + o.mode);
  }
  emit(dump(record_json(rec)), o.out, out);
  if (!rec.pass()) throw Failure{"comparison invariant failed"};
  return kExitOk;
}

// ---- scenario ----

struct ScenarioOpts {
  std::string family;
  std::string fda_case = "interior";
  double alpha = 0.3;
  int u_steps = 0;
  std::string out;
};

int do_scenario(const ScenarioOpts& o, std::ostream& out) {
  GeneratedScenario gen;
  if (o.family == "fda") {
    FdaCase which = FdaCase::Interior;
    if (o.fda_case == "increasing") {
      which = FdaCase::Increasing;
    } else if (o.fda_case == "decreasing") {
      which = FdaCase::Decreasing;
    } else if (o.fda_case != "interior") {
      throw Error(ErrorKind::InvalidInput, "unknown fda case " + o.fda_case);
    }
    auto c = fda_preset(which);
    if (o.u_steps > 0) c.u_steps = o.u_steps;
    gen = fda_scenario(c);
  } else if (o.family == "civil") {
    auto c = civil_servant_uniform(o.alpha);
    if (o.u_steps > 0) c.u_steps = o.u_steps;
    gen = civil_servant_scenario(c);
  } else if (o.family == "ceo") {
    auto c = ceo_default();
    if (o.u_steps > 0) c.u_steps = o.u_steps;
    gen = ceo_scenario(c);
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown scenario family " + o.family);
  }
  emit(scenario_to_json(gen.scenario, gen.reference_u_c), o.out, out);
  return kExitOk;
}

// ---- rationalize ----

struct RationalizeOpts {
  std::string by;
  std::string input;
  std::string scenario;  // optional surface for checking dist weights
  std::string out;
};

int do_rationalize(const RationalizeOpts& o, std::ostream& out) {
  const CandidateFile file = parse_candidate(read_text(o.input));
  const auto& u_c = file.u_c;
  const PromisedUtility cand(file.candidate);
  const auto segs = extract_segments(cand, u_c, kSegmentTol, decreasing_segment_count(u_c));

  if (o.by == "dist") {
    const auto w = rationalize_by_distribution(u_c, cand);
    json result{{"weights", w}};
    if (!o.scenario.empty()) {
      Scenario sc = load_scenario(o.scenario);
      if (sc.size() != w.size()) throw Error(ErrorKind::InvalidInput, "scenario has a different type count");
      sc.chain = sc.chain.with_weights(w);
      const auto prof = complete_info_curve(sc.surface);
      const auto sol = solve_dp(sc, prof);
      const double tol = max_step(sc.u_grid);
      bool ok = true;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] > 0.0 && std::abs(sol.promise[i] - cand[i]) > tol) ok = false;
      }
      result["resolved_promise"] = sol.promise.values();
      result["status"] = ok ? "PASS" : "FAIL";
      emit(dump(result), o.out, out);
      if (!ok) throw Failure{"re-solve departs from the candidate on the support"};
      return kExitOk;
    }
    emit(dump(result), o.out, out);
    return kExitOk;
  }
  if (o.by != "tech") throw Error(ErrorKind::InvalidInput, "--by must be dist or tech");

  std::vector<double> labels(u_c.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<double>(i + 1);
  const std::vector<double> w = file.weights ? *file.weights : TypeChain::uniform(labels).weights();
  const ValueSurface surface = rationalize_by_technology(u_c, cand, w);
  const auto [lo_it, hi_it] = std::minmax_element(u_c.begin(), u_c.end());
  std::vector<double> grid = uniform_grid(*lo_it, *hi_it, 40);
  grid.insert(grid.end(), cand.values().begin(), cand.values().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  Scenario sc{TypeChain(labels, w), surface, grid, {}};
  const auto prof = complete_info_curve(sc.surface);
  const auto sol = solve_dp(sc, prof);
  const double tol = max_step(grid);
  bool ok = std::abs(sol.value - objective(sc, cand)) <= 1e-9;
  for (const auto& s : segs) {
    if (s.label != SegmentLabel::FollowCurve) continue;
    for (std::size_t i = s.first; i <= s.last; ++i) {
      if (std::abs(sol.promise[i] - cand[i]) > tol) ok = false;
    }
  }
  emit(scenario_to_json(sc), o.out, out);
  if (!ok) throw Failure{"re-solve of the rationalized surface departs from the candidate"};
  return kExitOk;
}

std::vector<const char*> as_args(int argc, const char* const* argv) { return {argv, argv + argc}; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Screening over nested choice sets: solver and checks"};
  app.name("chainscreen");
  app.require_subcommand(1, 1);

  SolveOpts solve;
  auto* s = app.add_subcommand("solve", "solve a scenario and write the solution JSON");
  s->add_option("scenario", solve.input, "scenario JSON")->required();
  s->add_option("--out", solve.out, "solution path (default stdout)");
  s->add_option("--csv", solve.csv, "plot data CSV path");
  s->add_option("--grid-steps", solve.grid_steps, "re-grid uniformly with this many steps");
  s->add_flag("--structural", solve.structural, "use the segment search instead of the grid DP");

  std::string bench_in, bench_out;
  auto* b = app.add_subcommand("benchmark", "complete-information curve and closures");
  b->add_option("scenario", bench_in, "scenario JSON")->required();
  b->add_option("--out", bench_out, "output path");

  std::string seg_in, seg_out;
  double seg_tol = kSegmentTol;
  auto* sg = app.add_subcommand("segments", "solve and label curve-following and constant runs");
  sg->add_option("scenario", seg_in, "scenario JSON")->required();
  sg->add_option("--tol", seg_tol, "labeling tolerance")->check(CLI::PositiveNumber);
  sg->add_option("--out", seg_out, "output path");

  OracleOpts oracle;
  std::uint64_t seed_value = 0;
  auto* oc = app.add_subcommand("oracle-check", "compare the DP against exhaustive enumeration");
  oc->add_option("scenario", oracle.input, "scenario JSON");
  oc->add_option("--sweep", oracle.sweep, "number of random instances")->check(CLI::NonNegativeNumber);
  auto* seed_opt = oc->add_option("--seed", seed_value, "sweep seed (else CHAINSCREEN_SEED, else 1)");
  oc->add_option("--threads", oracle.threads, "worker threads (default: hardware)");
  oc->add_option("--max-types", oracle.max_types, "largest type count in a sweep");
  oc->add_option("--max-levels", oracle.max_levels, "largest grid size in a sweep");
  oc->add_option("--out", oracle.out, "report path");

  CompareOpts cmp;
  auto* c = app.add_subcommand("compare", "comparative statics between two scenarios");
  c->add_option("--mode", cmp.mode, "expansion, fosd or default")
      ->required()
      ->check(CLI::IsMember({"expansion", "fosd", "default"}));
  c->add_option("base", cmp.base, "base scenario JSON")->required();
  c->add_option("alt", cmp.alt, "alternative scenario JSON");
  c->add_option("--g", cmp.g, "on-chain expansion map, 1-based")->delimiter(',');
  c->add_option("--out", cmp.out, "output path");

  ScenarioOpts sco;
  auto* sc = app.add_subcommand("scenario", "generate an application scenario");
  sc->add_option("family", sco.family, "fda, civil or ceo")->required()->check(CLI::IsMember({"fda", "civil", "ceo"}));
  sc->add_option("--case", sco.fda_case, "fda preset: interior, increasing, decreasing");
  sc->add_option("--alpha", sco.alpha, "civil servant bias");
  sc->add_option("--u-steps", sco.u_steps, "utility grid steps");
  sc->add_option("--out", sco.out, "output path");

  RationalizeOpts rat;
  auto* r = app.add_subcommand("rationalize", "weights or a surface making a candidate optimal");
  r->add_option("--by", rat.by, "dist or tech")->required()->check(CLI::IsMember({"dist", "tech"}));
  r->add_option("candidate", rat.input, "JSON with u_c and candidate")->required();
  r->add_option("--scenario", rat.scenario, "surface used to re-solve dist weights");
  r->add_option("--out", rat.out, "output path");

  try {
    const auto args = as_args(argc, argv);
    app.parse(argc, args.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (*seed_opt) oracle.seed = seed_value;

  try {
    if (*s) return do_solve(solve, out);
    if (*b) return do_benchmark(bench_in, bench_out, out);
    if (*sg) return do_segments(seg_in, seg_out, seg_tol, out);
    if (*oc) return do_oracle(oracle, out);
    if (*c) return do_compare(cmp, out);
    if (*sc) return do_scenario(sco, out);
    if (*r) return do_rationalize(rat, out);
  } catch (const Failure& f) {
    err << "FAIL: " << f.what << "\n";
    return kExitFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace chainscreen::cli
