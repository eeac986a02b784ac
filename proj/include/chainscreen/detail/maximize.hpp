#pragma once

#include <boost/math/tools/minima.hpp>
#include <limits>

namespace chainscreen {

double maximize_concave(const auto& f, double a, double b) {
  if (!(b > a)) return a;
  auto neg = [&](double x) { return -f(x); };
  const auto [x, fx] =
      boost::math::tools::brent_find_minima(neg, a, b, std::numeric_limits<double>::digits);
  // Brent never evaluates the bracket ends; a constrained optimum sits there.
  double best = x;
  double best_val = -fx;
  for (double e : {a, b}) {
    const double val = f(e);
    if (val > best_val) {
      best = e;
      best_val = val;
    }
  }
  return best;
}

}  // namespace chainscreen
