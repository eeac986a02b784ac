#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "chainscreen/core_model.hpp"

namespace chainscreen {

/// Seed from CHAINSCREEN_SEED when set and parseable, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback);

/// Random nested concave-quadratic instance on [0, 1] with a uniform grid of
/// `levels` points. Peaks and the floor sit on grid points, so the solver grid
/// gains no extra levels.
Scenario random_instance(std::mt19937_64& rng, std::size_t n, std::size_t levels);

/// Random weights on n types, each at least `floor`.
std::vector<double> random_weights(std::mt19937_64& rng, std::size_t n, double floor = 0.0);

}  // namespace chainscreen
