#include "chainscreen/mechanism.hpp"

#include <algorithm>
#include <cmath>

#include "chainscreen/complete_info.hpp"
#include "chainscreen/errors.hpp"
#include "chainscreen/solver.hpp"

namespace chainscreen {

IcVerdict check_ic(const PromisedUtility& promise, double ubar, double tol) {
  IcVerdict v;
  for (std::size_t i = 0; i + 1 < promise.size(); ++i) {
    if (promise[i + 1] < promise[i] - tol) v.monotonicity_violations.push_back(i);
  }
  v.floor_ok = promise.size() == 0 || promise[0] >= ubar - tol;
  v.pass = v.floor_ok && v.monotonicity_violations.empty();
  return v;
}

Allocation implement_allocation(const ValueSurface& surface, std::size_t i, double promise) {
  const Frontier& f = surface.frontier(i);
  Allocation a;
  a.v = f(promise);  // throws InfeasiblePromise
  a.u = std::clamp(promise, f.lo(), f.hi());
  if (f.kind() == FrontierKind::Quadratic) {
    a.support.push_back({{a.u, a.v}, 1.0});
    return a;
  }
  const auto& vs = f.vertices();
  auto it = std::lower_bound(vs.begin(), vs.end(), a.u, [](const Vertex& p, double x) { return p.u < x; });
  if (it == vs.end()) it = vs.end() - 1;
  if (it->u == a.u || it == vs.begin()) {
    a.support.push_back({*it, 1.0});
    return a;
  }
  const Vertex& left = *(it - 1);
  const Vertex& right = *it;
  const double wr = (a.u - left.u) / (right.u - left.u);
  a.support.push_back({left, 1.0 - wr});
  a.support.push_back({right, wr});
  return a;
}

namespace {

std::vector<Segment> candidate_segments(std::span<const double> u_c, const PromisedUtility& candidate) {
  if (candidate.size() != u_c.size() || u_c.empty()) {
    throw Error(ErrorKind::NotACandidate, "candidate and u_c sizes differ");
  }
  try {
    return extract_segments(candidate, u_c, kSegmentTol, decreasing_segment_count(u_c));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::StructureViolation) throw Error(ErrorKind::NotACandidate, e.what());
    throw;
  }
}

}  // namespace

std::vector<double> rationalize_by_distribution(std::span<const double> u_c, const PromisedUtility& candidate) {
  const auto segs = candidate_segments(u_c, candidate);
  std::vector<double> w(u_c.size(), 0.0);
  std::size_t support = 0;
  for (const auto& s : segs) {
    if (s.label != SegmentLabel::FollowCurve) continue;
    for (std::size_t i = s.first; i <= s.last; ++i) w[i] = 1.0;
    support += s.last - s.first + 1;
  }
  if (support == 0) throw Error(ErrorKind::NotACandidate, "candidate never follows the curve");
  for (double& x : w) x /= static_cast<double>(support);
  return w;
}

ValueSurface rationalize_by_technology(std::span<const double> u_c, const PromisedUtility& candidate,
                                       std::span<const double> weights) {
  const auto segs = candidate_segments(u_c, candidate);
  if (weights.size() != u_c.size()) throw Error(ErrorKind::InvalidInput, "weights size mismatch");
  for (double x : weights) {
    if (!(x > 0.0)) throw Error(ErrorKind::InvalidInput, "weights must be fully supported");
  }
  const double lo = *std::min_element(u_c.begin(), u_c.end());
  const double hi = *std::max_element(u_c.begin(), u_c.end());
  const double span2 = (hi - lo) * (hi - lo);

  std::vector<double> curvature(u_c.size(), 1.0);
  for (const auto& s : segs) {
    if (s.label == SegmentLabel::Constant) {
      for (std::size_t i = s.first; i <= s.last; ++i) curvature[i] = 0.0;
    }
  }
  // H_i - a_i D^2 >= H_{i-1} keeps V_i >= V_{i-1} everywhere on [lo, hi].
  std::vector<Frontier> fs;
  double height = 0.0;
  for (std::size_t i = 0; i < u_c.size(); ++i) {
    height = height + curvature[i] * span2 + 1.0;
    fs.push_back(Frontier::quadratic(height, u_c[i], curvature[i], lo, hi));
  }
  const Vertex punish{lo, 0.0};
  return {std::move(fs), Frontier::from_points(std::span<const Vertex>(&punish, 1))};
}

}  // namespace chainscreen
