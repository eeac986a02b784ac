#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "chainscreen/core_model.hpp"

namespace chainscreen {

struct IcVerdict {
  bool pass = true;
  bool floor_ok = true;
  std::vector<std::size_t> monotonicity_violations;  // i means the pair (i, i+1) decreases
};

/// A promise is incentive compatible iff it is weakly increasing and the
/// smallest type gets at least ubar.
IcVerdict check_ic(const PromisedUtility& promise, double ubar, double tol = 1e-12);

struct SupportPoint {
  Vertex point;
  double weight = 0.0;
};

struct Allocation {
  double u = 0.0;
  double v = 0.0;
  std::vector<SupportPoint> support;  // one or two extreme points
};

/// Frontier point of type i at `promise`, written as a mixture of at most two
/// extreme points of the choice set.
Allocation implement_allocation(const ValueSurface& surface, std::size_t i, double promise);

/// Type weights under which `candidate` is optimal: uniform over the indices
/// where it follows u_c.
std::vector<double> rationalize_by_distribution(std::span<const double> u_c, const PromisedUtility& candidate);

/// Quadratic choice sets consistent with u_c under which `candidate` is optimal:
/// curvature 1 on curve-following types, 0 on constant types.
ValueSurface rationalize_by_technology(std::span<const double> u_c, const PromisedUtility& candidate,
                                       std::span<const double> weights);

}  // namespace chainscreen
