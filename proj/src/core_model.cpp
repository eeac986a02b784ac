#include "chainscreen/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "chainscreen/errors.hpp"

namespace chainscreen {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InfeasiblePromise: return "InfeasiblePromise";
    case ErrorKind::IllegalReport: return "IllegalReport";
    case ErrorKind::InfeasibleGrid: return "InfeasibleGrid";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::InvalidProjection: return "InvalidProjection";
    case ErrorKind::NotACandidate: return "NotACandidate";
    case ErrorKind::InvalidExpansion: return "InvalidExpansion";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::NotAnExpansion: return "NotAnExpansion";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

namespace {

// Height of b above the chord a-c (a.u < b.u < c.u).
double height_above_chord(const Vertex& a, const Vertex& b, const Vertex& c) {
  return b.v - (a.v + (c.v - a.v) * ((b.u - a.u) / (c.u - a.u)));
}

}  // namespace

std::vector<Vertex> upper_hull(std::span<const Vertex> points) {
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "empty point list");
  for (const auto& p : points) {
    if (std::isnan(p.u) || std::isnan(p.v) || std::isinf(p.u) || std::isinf(p.v)) {
      throw Error(ErrorKind::InvalidInput, "non-finite coordinate in point list");
    }
  }
  std::vector<Vertex> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const Vertex& a, const Vertex& b) {
    return a.u < b.u || (a.u == b.u && a.v > b.v);
  });
  // keep the highest point at each u
  sorted.erase(std::unique(sorted.begin(), sorted.end(),
                           [](const Vertex& a, const Vertex& b) { return a.u == b.u; }),
               sorted.end());

  std::vector<Vertex> hull;
  hull.reserve(sorted.size());
  for (const auto& p : sorted) {
    while (hull.size() >= 2 && height_above_chord(hull[hull.size() - 2], hull.back(), p) <= kHullTol) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

Frontier Frontier::from_points(std::span<const Vertex> points, FrontierKind kind) {
  Frontier f;
  f.kind_ = kind;
  f.vertices_ = upper_hull(points);
  f.lo_ = f.vertices_.front().u;
  f.hi_ = f.vertices_.back().u;
  return f;
}

Frontier Frontier::quadratic(double height, double peak, double curvature, double lo, double hi) {
  if (!std::isfinite(height) || !std::isfinite(peak) || !std::isfinite(curvature) ||
      !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::InvalidInput, "non-finite quadratic parameter");
  }
  if (curvature < 0.0) throw Error(ErrorKind::InvalidInput, "quadratic curvature must be >= 0");
  if (lo > hi) throw Error(ErrorKind::InvalidInput, "quadratic interval has lo > hi");
  Frontier f;
  f.kind_ = FrontierKind::Quadratic;
  f.lo_ = lo;
  f.hi_ = hi;
  f.quad_ = {height, peak, curvature};
  return f;
}

double Frontier::operator()(double u) const {
  if (!contains(u)) {
    std::ostringstream os;
    os << "promise " << u << " outside feasible interval [" << lo_ << ", " << hi_ << "]";
    throw Error(ErrorKind::InfeasiblePromise, os.str());
  }
  u = std::clamp(u, lo_, hi_);
  if (kind_ == FrontierKind::Quadratic) {
    const double d = u - quad_.peak;
    return quad_.height - quad_.curvature * d * d;
  }
  if (vertices_.size() == 1) return vertices_.front().v;
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), u,
                             [](const Vertex& a, double x) { return a.u < x; });
  if (it == vertices_.begin()) return it->v;
  if (it == vertices_.end()) return vertices_.back().v;
  if (it->u == u) return it->v;
  const Vertex& b = *it;
  const Vertex& a = *(it - 1);
  const double t = (u - a.u) / (b.u - a.u);
  return a.v + t * (b.v - a.v);
}

double Frontier::peak() const {
  if (kind_ == FrontierKind::Quadratic) {
    if (quad_.curvature == 0.0) return lo_;
    return std::clamp(quad_.peak, lo_, hi_);
  }
  double best = vertices_.front().v;
  for (const auto& p : vertices_) best = std::max(best, p.v);
  for (const auto& p : vertices_) {
    if (p.v >= best - kPeakTieTol) return p.u;
  }
  return vertices_.front().u;
}

Frontier Frontier::shifted(double dv) const {
  Frontier f = *this;
  f.quad_.height += dv;
  for (auto& p : f.vertices_) p.v += dv;
  return f;
}

std::vector<double> Frontier::sample_points(double a, double b, int n) const {
  std::vector<double> out;
  if (a > b) return out;
  for (const auto& p : vertices_) {
    if (p.u >= a && p.u <= b) out.push_back(p.u);
  }
  if (a == b) {
    out.push_back(a);
  } else {
    for (int k = 0; k < n; ++k) out.push_back(a + (b - a) * k / (n - 1));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TypeChain::TypeChain(std::vector<double> labels, std::vector<double> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
  if (labels_.empty()) throw Error(ErrorKind::InvalidInput, "type chain needs at least one type");
  if (labels_.size() != weights_.size()) {
    throw Error(ErrorKind::InvalidInput, "labels and weights differ in length");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!std::isfinite(labels_[i]) || !std::isfinite(weights_[i])) {
      throw Error(ErrorKind::InvalidInput, "non-finite type label or weight");
    }
    if (i > 0 && !(labels_[i] > labels_[i - 1])) {
      throw Error(ErrorKind::InvalidInput, "type labels must be strictly increasing");
    }
    if (weights_[i] < 0.0) throw Error(ErrorKind::InvalidInput, "negative type weight");
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidInput, "type weights must sum to 1");
  }
}

TypeChain TypeChain::uniform(std::vector<double> labels) {
  std::vector<double> w(labels.size(), labels.empty() ? 0.0 : 1.0 / static_cast<double>(labels.size()));
  // absorb rounding so the sum check passes for any n
  if (!w.empty()) w.back() = 1.0 - std::accumulate(w.begin(), w.end() - 1, 0.0);
  return TypeChain(std::move(labels), std::move(w));
}

ValueSurface::ValueSurface(std::vector<Frontier> frontiers, Frontier default_frontier)
    : frontiers_(std::move(frontiers)), default_(std::move(default_frontier)) {
  if (frontiers_.empty()) throw Error(ErrorKind::InvalidInput, "surface needs at least one type");
}

bool PromisedUtility::is_monotone(double tol) const {
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] < values_[i - 1] - tol) return false;
  }
  return true;
}

void validate_scenario(const Scenario& scenario) {
  if (scenario.chain.size() != scenario.surface.size()) {
    throw Error(ErrorKind::InvalidInput, "type chain and surface sizes differ");
  }
  if (scenario.u_grid.empty()) throw Error(ErrorKind::InvalidInput, "empty u_grid");
  for (std::size_t k = 1; k < scenario.u_grid.size(); ++k) {
    if (!(scenario.u_grid[k] > scenario.u_grid[k - 1])) {
      throw Error(ErrorKind::InvalidInput, "u_grid must be strictly increasing");
    }
  }
}

std::vector<double> uniform_grid(double lo, double hi, int steps) {
  if (steps < 1 || !(hi > lo)) {
    if (steps >= 0 && lo == hi) return {lo};
    throw Error(ErrorKind::InvalidInput, "uniform grid needs steps >= 1 and hi > lo");
  }
  std::vector<double> g(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) g[static_cast<std::size_t>(k)] = lo + k * (hi - lo) / steps;
  g.back() = hi;
  return g;
}

ValueSurface build_surface(const std::vector<std::vector<Vertex>>& points_by_type,
                           const std::vector<Vertex>& default_points) {
  if (points_by_type.empty()) throw Error(ErrorKind::InvalidInput, "no types given");
  if (default_points.empty()) throw Error(ErrorKind::InvalidInput, "empty default point list");
  Frontier def = Frontier::from_points(default_points);

  std::vector<Frontier> frontiers;
  frontiers.reserve(points_by_type.size());
  // Carry the previous hull instead of all raw points; the hull of a union
  // equals the hull of (previous hull vertices + new points).
  std::vector<Vertex> carried = def.vertices();
  for (const auto& pts : points_by_type) {
    if (pts.empty()) throw Error(ErrorKind::InvalidInput, "empty point list for a type");
    std::vector<Vertex> all = carried;
    all.insert(all.end(), pts.begin(), pts.end());
    frontiers.push_back(Frontier::from_points(all));
    carried = frontiers.back().vertices();
  }
  return {std::move(frontiers), std::move(def)};
}

double eval_surface(const ValueSurface& surface, std::size_t i, double u) {
  if (i >= surface.size()) throw Error(ErrorKind::InvalidInput, "type index out of range");
  return surface.frontier(i)(u);
}

namespace {

void check_pair(const Frontier& lower, const Frontier& upper, std::size_t type, ViolationKind kind,
                double tol, std::vector<NestingViolation>& out) {
  if (lower.lo() < upper.lo() - tol) out.push_back({type, lower.lo(), kind});
  if (lower.hi() > upper.hi() + tol) out.push_back({type, lower.hi(), kind});
  const double a = std::max(lower.lo(), upper.lo());
  const double b = std::min(lower.hi(), upper.hi());
  std::vector<double> us = lower.sample_points(a, b);
  const auto more = upper.sample_points(a, b);
  us.insert(us.end(), more.begin(), more.end());
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  const ViolationKind pointwise =
      kind == ViolationKind::IntervalNesting ? ViolationKind::Monotonicity : kind;
  for (double u : us) {
    if (lower(u) > upper(u) + tol) out.push_back({type, u, pointwise});
  }
}

}  // namespace

std::vector<NestingViolation> validate_nesting(const ValueSurface& surface, double tol) {
  std::vector<NestingViolation> out;
  for (std::size_t i = 0; i < surface.size(); ++i) {
    check_pair(surface.default_frontier(), surface.frontier(i), i, ViolationKind::DefaultContainment,
               tol, out);
    if (i > 0) {
      check_pair(surface.frontier(i - 1), surface.frontier(i), i, ViolationKind::IntervalNesting, tol,
                 out);
    }
  }
  return out;
}

}  // namespace chainscreen
