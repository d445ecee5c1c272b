#include "cdg/problems.hpp"

#include "cdg/error.hpp"

#include <cmath>
#include <numbers>

namespace cdg {

std::vector<ProblemInfo> list_problems() {
  return {
      {"sinsin", "u = sin(pi x) sin(pi y), f = 2 pi^2 sin(pi x) sin(pi y), u = 0 on the boundary"},
      {"linear", "u = x + y, f = 0, g = x + y"},
      {"polyk", "u = (x + y)^k for the configured degree k, f = -2 k (k - 1) (x + y)^(k - 2)"},
  };
}

Problem make_problem(const std::string& name, int degree) {
  using std::numbers::pi;
  if (name == "sinsin") {
    return {name,
            [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); },
            [](double x, double y) { return 2.0 * pi * pi * std::sin(pi * x) * std::sin(pi * y); },
            [](double, double) { return 0.0; },
            "analytic"};
  }
  if (name == "linear") {
    return {name,
            [](double x, double y) { return x + y; },
            [](double, double) { return 0.0; },
            [](double x, double y) { return x + y; },
            "polynomial of degree 1"};
  }
  if (name == "polyk") {
    const int k = degree;
    auto u = [k](double x, double y) { return std::pow(x + y, k); };
    return {name, u,
            [k](double x, double y) { return k < 2 ? 0.0 : -2.0 * k * (k - 1) * std::pow(x + y, k - 2); },
            u, "polynomial of degree " + std::to_string(k)};
  }
  throw ConfigError("unknown problem '" + name + "'");
}

}  // namespace cdg
