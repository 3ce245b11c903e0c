#pragma once

#include <cstdint>
#include <vector>

#include "svsec/polytope.hpp"

namespace svsec {

struct NormalityFailure {
  int level = 0;
  std::vector<std::int64_t> point;  // lattice point of level * P that is not a sum
};

struct NormalityResult {
  int normal_up_to = 1;
  std::vector<NormalityFailure> failures;  // from the first failing level, capped
};

/// For s = 2..s_max, tests whether every lattice point of sP is a sum of s
/// lattice points of P. Throws BudgetExceeded if a dilation is too large to
/// enumerate or to encode in 64 bits.
NormalityResult check_normality(const LatticePolytope& p, int s_max, const Budget& budget = {});

/// The set of s-fold sums of lattice points of P, built level by level as
/// sums(s) = sums(s-1) + P. Lexicographic order.
PointSet reachable_sums(const LatticePolytope& p, int s, const Budget& budget = {});

struct SaturationReport {
  bool saturated = false;  // lifted lattice equals the integer points of its span
  std::size_t rank = 0;
  LatticeBasis lattice;
};

SaturationReport check_lattice_saturation(const Analysis& a);

}  // namespace svsec
