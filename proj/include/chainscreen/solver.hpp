#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chainscreen/complete_info.hpp"
#include "chainscreen/core_model.hpp"

namespace chainscreen {

enum class SegmentLabel { FollowCurve, Constant };

struct Segment {
  std::size_t first = 0;  // inclusive, 0-based
  std::size_t last = 0;   // inclusive
  SegmentLabel label = SegmentLabel::FollowCurve;
  double level = 0.0;     // promise level for Constant segments

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Solution {
  PromisedUtility promise;
  double value = 0.0;
  std::vector<Segment> segments;
  std::size_t constant_segments = 0;  // |J2|
  std::size_t curve_segments = 0;     // |J1|
};

struct IndexRange {
  std::size_t first = 0;  // inclusive
  std::size_t last = 0;   // inclusive
};

inline constexpr double kEnvelopeTol = 1e-9;
inline constexpr double kSegmentTol = 1e-7;
inline constexpr std::uint64_t kBruteForceBudget = 10'000'000;

/// Sum_i f_i V_i(U_i), accumulated left to right.
double objective(const Scenario& scenario, const PromisedUtility& promise);

/// The scenario grid augmented with every u_c value and ubar.
std::vector<double> solver_grid(const Scenario& scenario, const CompleteInfoProfile& profile);

/// Grid levels admissible for type i: feasible, inside the monotone
/// envelope, and >= ubar for the smallest type.
std::vector<std::size_t> admissible_levels(const Scenario& scenario, const CompleteInfoProfile& profile,
                                           std::span<const double> grid, std::size_t i);

/// Optimal weakly increasing grid promise by dynamic programming. Ties go to
/// the lexicographically smallest promise.
Solution solve_dp(const Scenario& scenario, const CompleteInfoProfile& profile);

/// Exhaustive enumeration of the same grid problem; the test oracle for solve_dp.
Solution brute_force(const Scenario& scenario, const CompleteInfoProfile& profile,
                     std::uint64_t budget = kBruteForceBudget);

/// Partition into curve-following and constant runs with the fewest constant
/// runs (then fewest curve runs). With `max_constant` set, more constant runs
/// than that is a StructureViolation.
std::vector<Segment> extract_segments(const PromisedUtility& promise, std::span<const double> u_c,
                                      double tol = kSegmentTol,
                                      std::optional<std::size_t> max_constant = std::nullopt);

/// Case A replacement on a range where the promise sits above u_c:
/// max(anchor, running max of u_c). Anchor defaults to the promise at range.first.
PromisedUtility project_running_max(const PromisedUtility& promise, std::span<const double> u_c,
                                    IndexRange range, std::optional<double> anchor = std::nullopt);

/// Case B replacement on a range where the promise sits below u_c:
/// min(anchor, running min of u_c from the right). Anchor defaults to the
/// promise at range.last.
PromisedUtility project_running_min(const PromisedUtility& promise, std::span<const double> u_c,
                                    IndexRange range, std::optional<double> anchor = std::nullopt);

/// Search over decompositions with at most K constant runs; each constant
/// level is a one-dimensional concave maximization over the envelope slice.
Solution structural_solve(const Scenario& scenario, const CompleteInfoProfile& profile);

/// U_hat(i) = U(largest argmax_{j<=i} V_j(U_j)).
PromisedUtility monotonize_principal_payoff(const Scenario& scenario, const PromisedUtility& promise);

/// Interim principal payoffs V_i(U_i).
std::vector<double> interim_payoffs(const ValueSurface& surface, const PromisedUtility& promise);

/// Maximizer of a concave function on [a, b].
double maximize_concave(const auto& f, double a, double b);

}  // namespace chainscreen

#include "chainscreen/detail/maximize.hpp"
