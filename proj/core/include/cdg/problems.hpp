#pragma once

#include "cdg/space.hpp"

#include <string>
#include <vector>

namespace cdg {

/// -Laplace(u) = f in the unit square, u = g on the boundary.
struct Problem {
  std::string name;
  ScalarFunction exact;
  ScalarFunction source;
  ScalarFunction boundary;
  std::string regularity;
};

struct ProblemInfo {
  std::string name;
  std::string description;
};

std::vector<ProblemInfo> list_problems();

/// `degree` parameterizes `polyk`. Throws ConfigError for unknown names.
Problem make_problem(const std::string& name, int degree);

}  // namespace cdg
