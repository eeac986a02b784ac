#include "chainscreen/instances.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "chainscreen/errors.hpp"

namespace chainscreen {

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("CHAINSCREEN_SEED");
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used);
    return used == std::string(raw).size() ? v : fallback;
  } catch (const std::exception&) {
    return fallback;
  }
}

std::vector<double> random_weights(std::mt19937_64& rng, std::size_t n, double floor) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& x : w) {
    x = floor + unit(rng);
    total += x;
  }
  for (double& x : w) x /= total;
  double head = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) head += w[i];
  w.back() = 1.0 - head;
  return w;
}

namespace {

// max over [lo, hi] of c2 u^2 + c1 u + c0
double quad_max(double c2, double c1, double c0, double lo, double hi) {
  auto g = [&](double u) { return (c2 * u + c1) * u + c0; };
  double m = std::max(g(lo), g(hi));
  if (c2 < 0.0) {
    const double u0 = -c1 / (2.0 * c2);
    if (u0 > lo && u0 < hi) m = std::max(m, g(u0));
  }
  return m;
}

}  // namespace

Scenario random_instance(std::mt19937_64& rng, std::size_t n, std::size_t levels) {
  if (n == 0 || levels < 2) throw Error(ErrorKind::InvalidInput, "need n >= 1 and at least two levels");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, levels - 1);
  const auto grid = uniform_grid(0.0, 1.0, static_cast<int>(levels - 1));

  std::vector<Frontier> fs;
  double h = 1.0 + unit(rng);
  double prev_a = 0.0;
  double prev_p = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = grid[pick(rng)];
    const double a = 0.2 + 1.8 * unit(rng);
    if (i > 0) {
      // smallest height keeping V_i >= V_{i-1} on [0, 1]
      const double c2 = a - prev_a;
      const double c1 = 2.0 * prev_a * prev_p - 2.0 * a * p;
      const double c0 = h - prev_a * prev_p * prev_p + a * p * p;
      h = quad_max(c2, c1, c0, 0.0, 1.0) + 0.3 * unit(rng);
    }
    fs.push_back(Frontier::quadratic(h, p, a, 0.0, 1.0));
    prev_a = a;
    prev_p = p;
  }
  // floor: zero half the time, else a random grid level
  const double ubar = unit(rng) < 0.5 ? 0.0 : grid[pick(rng)];
  const Vertex d{ubar, fs.front()(ubar) - 1.0};
  std::vector<double> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<double>(i + 1);
  return {TypeChain(labels, random_weights(rng, n)), ValueSurface(std::move(fs), Frontier::from_points(std::span(&d, 1))),
          grid, {{"generator", "random_instance"}}};
}

}  // namespace chainscreen
