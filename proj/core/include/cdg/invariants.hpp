#pragma once

#include <string>
#include <vector>

namespace cdg {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct InvariantSuiteOptions {
  int max_degree = 5;
  int level = 3;          ///< mesh for consistency and structural checks
  int samples = 200;      ///< norm-positivity samples
  unsigned long long seed = 20240601ULL;
};

/// Consistency (grad_w = grad on continuous P_k), reduced-matrix symmetry and
/// definiteness, stencil width, norm positivity and norm-equivalence stability.
std::vector<CheckResult> run_invariant_suite(const InvariantSuiteOptions& options = {});

}  // namespace cdg
