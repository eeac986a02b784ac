#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chainscreen/complete_info.hpp"
#include "chainscreen/core_model.hpp"
#include "chainscreen/solver.hpp"

namespace chainscreen {

/// Parse a scenario document. Syntax errors become InvalidInput with
/// "line L, column C" in the message.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// {"u_c": [...], "candidate": [...], "weights": [...]?}
struct CandidateFile {
  std::vector<double> u_c;
  std::vector<double> candidate;
  std::optional<std::vector<double>> weights;
};
CandidateFile parse_candidate(const std::string& text);

/// Canonical JSON text (sorted keys, two-space indent, trailing newline).
std::string scenario_to_json(const Scenario& scenario,
                             const std::optional<std::vector<double>>& reference_u_c = std::nullopt);

std::string profile_to_json(const CompleteInfoProfile& profile);
std::string solution_to_json(const Solution& solution, const CompleteInfoProfile& profile);

/// Columns type,u_c,upper_closure,lower_closure,U; the lower closure column is
/// the envelope floor.
std::string plot_csv(const Scenario& scenario, const Solution& solution, const CompleteInfoProfile& profile);

/// Shortest round-trip decimal form.
std::string format_double(double x);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace chainscreen
