#pragma once

#include <vector>

#include "chainscreen/core_model.hpp"

namespace fixtures {

// Three nested quadratics peaked at 1, 0, 2 on [0, 2], default {(0,0)}.
inline chainscreen::Scenario e1(std::vector<double> grid = chainscreen::uniform_grid(0.0, 2.0, 10)) {
  using chainscreen::Frontier;
  std::vector<Frontier> fs{
      Frontier::quadratic(1.0, 1.0, 1.0, 0.0, 2.0),
      Frontier::quadratic(2.0, 0.0, 0.25, 0.0, 2.0),
      Frontier::quadratic(4.0, 2.0, 0.25, 0.0, 2.0),
  };
  const chainscreen::Vertex origin{0.0, 0.0};
  chainscreen::ValueSurface s(std::move(fs), Frontier::from_points(std::span(&origin, 1)));
  return {chainscreen::TypeChain::uniform({1.0, 2.0, 3.0}), std::move(s), std::move(grid), {}};
}

}  // namespace fixtures
