#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace chainscreen {

// A hull vertex this close (in v) to the chord of its neighbours is dropped.
inline constexpr double kHullTol = 1e-9;
// Slack allowed when a promise sits just outside a feasible interval.
inline constexpr double kFeasTol = 1e-9;
// Two frontier values closer than this count as tied maxima.
inline constexpr double kPeakTieTol = 1e-12;

struct Vertex {
  double u = 0.0;  // agent payoff
  double v = 0.0;  // principal payoff

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

enum class FrontierKind { Points, Quadratic, Pwl };

struct QuadraticParams {
  double height = 0.0;
  double peak = 0.0;
  double curvature = 0.0;
};

// Concave upper frontier u -> V(u) of one choice set on [lo, hi].
class Frontier {
 public:
  /// Upper concave hull of a finite point cloud.
  static Frontier from_points(std::span<const Vertex> points, FrontierKind kind = FrontierKind::Points);
  /// h - a (u - p)^2 on [lo, hi], a >= 0.
  static Frontier quadratic(double height, double peak, double curvature, double lo, double hi);

  [[nodiscard]] FrontierKind kind() const { return kind_; }
  [[nodiscard]] double lo() const { return lo_; }
  [[nodiscard]] double hi() const { return hi_; }
  [[nodiscard]] bool contains(double u) const { return u >= lo_ - kFeasTol && u <= hi_ + kFeasTol; }

  /// V(u); throws InfeasiblePromise outside [lo, hi].
  [[nodiscard]] double operator()(double u) const;

  /// Smallest maximizer of V.
  [[nodiscard]] double peak() const;
  [[nodiscard]] double peak_value() const { return (*this)(peak()); }

  /// Hull vertices for Points/Pwl kinds; empty for quadratics.
  [[nodiscard]] const std::vector<Vertex>& vertices() const { return vertices_; }
  [[nodiscard]] const QuadraticParams& quadratic_params() const { return quad_; }

  /// Same frontier moved up by dv.
  [[nodiscard]] Frontier shifted(double dv) const;

  /// Vertices inside [a, b] plus `n` equispaced points spanning [a, b].
  [[nodiscard]] std::vector<double> sample_points(double a, double b, int n = 65) const;

 private:
  FrontierKind kind_ = FrontierKind::Points;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<Vertex> vertices_;
  QuadraticParams quad_;
};

/// Upper concave hull of `points`, sorted by u, collinear vertices removed.
std::vector<Vertex> upper_hull(std::span<const Vertex> points);

class TypeChain {
 public:
  TypeChain() = default;
  TypeChain(std::vector<double> labels, std::vector<double> weights);

  /// Equal weights over the given labels.
  static TypeChain uniform(std::vector<double> labels);

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] const std::vector<double>& labels() const { return labels_; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] TypeChain with_weights(std::vector<double> weights) const {
    return TypeChain(labels_, std::move(weights));
  }

 private:
  std::vector<double> labels_;
  std::vector<double> weights_;
};

class ValueSurface {
 public:
  ValueSurface() = default;
  ValueSurface(std::vector<Frontier> frontiers, Frontier default_frontier);

  [[nodiscard]] std::size_t size() const { return frontiers_.size(); }
  [[nodiscard]] const Frontier& frontier(std::size_t i) const { return frontiers_.at(i); }
  [[nodiscard]] const std::vector<Frontier>& frontiers() const { return frontiers_; }
  [[nodiscard]] const Frontier& default_frontier() const { return default_; }

  [[nodiscard]] ValueSurface with_default(Frontier d) const { return {frontiers_, std::move(d)}; }

 private:
  std::vector<Frontier> frontiers_;
  Frontier default_;
};

class PromisedUtility {
 public:
  PromisedUtility() = default;
  explicit PromisedUtility(std::vector<double> values) : values_(std::move(values)) {}

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] bool is_monotone(double tol = 0.0) const;

  friend bool operator==(const PromisedUtility&, const PromisedUtility&) = default;

 private:
  std::vector<double> values_;
};

struct Scenario {
  TypeChain chain;
  ValueSurface surface;
  std::vector<double> u_grid;
  std::map<std::string, std::string> metadata;

  [[nodiscard]] std::size_t size() const { return chain.size(); }
};

/// Checks chain/surface sizes agree and the grid is strictly increasing.
void validate_scenario(const Scenario& scenario);

/// Uniform grid lo + k (hi - lo) / steps, k = 0..steps.
std::vector<double> uniform_grid(double lo, double hi, int steps);

/// Per-type hulls after uniting each type's points with every smaller type's
/// points and with the default points.
ValueSurface build_surface(const std::vector<std::vector<Vertex>>& points_by_type,
                           const std::vector<Vertex>& default_points);

double eval_surface(const ValueSurface& surface, std::size_t i, double u);

enum class ViolationKind { IntervalNesting, Monotonicity, DefaultContainment };

struct NestingViolation {
  std::size_t type = 0;
  double u = 0.0;
  ViolationKind kind = ViolationKind::IntervalNesting;
};

std::vector<NestingViolation> validate_nesting(const ValueSurface& surface, double tol = kFeasTol);

}  // namespace chainscreen
