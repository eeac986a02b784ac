#include "chainscreen/complete_info.hpp"

#include <algorithm>

#include "chainscreen/errors.hpp"

namespace chainscreen {

double default_min_utility(const ValueSurface& surface) {
  const Frontier& d = surface.default_frontier();
  if (d.kind() != FrontierKind::Quadratic && d.vertices().empty()) {
    throw Error(ErrorKind::InvalidInput, "missing default frontier");
  }
  return d.lo();
}

CompleteInfoProfile complete_info_curve(const ValueSurface& surface, double tol) {
  CompleteInfoProfile p;
  p.ubar = default_min_utility(surface);
  p.u_c.reserve(surface.size());
  for (const auto& f : surface.frontiers()) p.u_c.push_back(std::max(p.ubar, f.peak()));
  auto cl = monotone_closures(p.u_c);
  p.upper_closure = std::move(cl.upper);
  p.lower_closure = std::move(cl.lower);
  p.lower_closure_textual = lower_closure_textual(p.u_c);
  p.K = decreasing_segment_count(p.u_c, tol);
  return p;
}

Closures monotone_closures(std::span<const double> u_c) {
  if (u_c.empty()) throw Error(ErrorKind::InvalidInput, "empty complete-information curve");
  Closures c;
  c.upper.assign(u_c.begin(), u_c.end());
  for (std::size_t i = 1; i < c.upper.size(); ++i) c.upper[i] = std::max(c.upper[i], c.upper[i - 1]);
  c.lower = lower_closure_literal(u_c);
  return c;
}

std::vector<double> lower_closure_literal(std::span<const double> u_c) {
  if (u_c.empty()) throw Error(ErrorKind::InvalidInput, "empty complete-information curve");
  std::vector<double> out(u_c.begin(), u_c.end());
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = std::min(out[i], out[i - 1]);
  return out;
}

std::vector<double> lower_closure_textual(std::span<const double> u_c) {
  if (u_c.empty()) throw Error(ErrorKind::InvalidInput, "empty complete-information curve");
  std::vector<double> out(u_c.begin(), u_c.end());
  for (std::size_t i = out.size() - 1; i-- > 0;) out[i] = std::min(out[i], out[i + 1]);
  return out;
}

std::size_t decreasing_segment_count(std::span<const double> u_c, double tol) {
  std::size_t runs = 0;
  bool in_run = false;
  for (std::size_t i = 1; i < u_c.size(); ++i) {
    const bool drop = u_c[i] < u_c[i - 1] - tol;
    if (drop && !in_run) ++runs;
    in_run = drop;
  }
  return runs;
}

Vertex shoot_the_agent(const ValueSurface& surface, std::size_t true_type, std::size_t report) {
  if (true_type >= surface.size()) throw Error(ErrorKind::InvalidInput, "type index out of range");
  if (report > true_type) {
    throw Error(ErrorKind::IllegalReport, "report claims technologies the agent does not have");
  }
  const Frontier& f = surface.frontier(report);
  if (report == true_type) {
    const double u = std::max(default_min_utility(surface), f.peak());
    return {u, f(u)};
  }
  return {f.lo(), f(f.lo())};
}

}  // namespace chainscreen
