#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "chainscreen/core_model.hpp"

namespace chainscreen {

inline constexpr double kSegmentCountTol = 1e-9;

struct CompleteInfoProfile {
  double ubar = 0.0;
  std::vector<double> u_c;
  std::vector<double> upper_closure;          // running max from the left
  std::vector<double> lower_closure;          // running min from the left (literal formula)
  std::vector<double> lower_closure_textual;  // running min from the right; the envelope floor
  std::size_t K = 0;
};

/// Worst punishment: smallest agent payoff in the default choice set.
double default_min_utility(const ValueSurface& surface);

CompleteInfoProfile complete_info_curve(const ValueSurface& surface, double tol = kSegmentCountTol);

struct Closures {
  std::vector<double> upper;
  std::vector<double> lower;
};

/// Upper closure and the literal lower closure min_{j<=i} u_c[j].
Closures monotone_closures(std::span<const double> u_c);
std::vector<double> lower_closure_literal(std::span<const double> u_c);
/// Largest nondecreasing minorant min_{j>=i} u_c[j].
std::vector<double> lower_closure_textual(std::span<const double> u_c);

/// Number of maximal runs of consecutive drops u_c[i+1] < u_c[i] - tol.
std::size_t decreasing_segment_count(std::span<const double> u_c, double tol = kSegmentCountTol);

/// Complete-information mechanism: truthful reports get the principal's best
/// point with u >= ubar; any withholding report gets the reported type's
/// lowest-u point.
Vertex shoot_the_agent(const ValueSurface& surface, std::size_t true_type, std::size_t report);

}  // namespace chainscreen
