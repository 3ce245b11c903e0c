#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svsec/polytope.hpp"

namespace svsec {

/// Segre-Veronese parameters: factors P^{b_i} embedded with degree a_i.
struct SVParams {
  std::vector<int> a;
  std::vector<int> b;

  SVParams() = default;
  SVParams(std::vector<int> a_, std::vector<int> b_);

  std::size_t k() const { return a.size(); }
  int n() const;
  int sum_a() const;
  /// Factor pairs (a_i, b_i) sorted ascending.
  SVParams canonical() const;
  bool is_canonical() const { return *this == canonical(); }
  std::string str() const;  // "a=1,2 b=1,2"

  /// Comma-separated positive integer lists.
  static SVParams parse(std::string_view a_list, std::string_view b_list);

  friend auto operator<=>(const SVParams&, const SVParams&) = default;
};

/// (i, j) for each coordinate, 1-based, lexicographic.
std::vector<std::pair<int, int>> index_layout(const SVParams& p);
/// Offset of block i (0-based) in the coordinate vector.
std::vector<int> block_offsets(const SVParams& p);

LatticePolytope build_polytope(const SVParams& p, const Budget& budget = {});

/// Canonical parameters with 1 <= k <= max_k, a_i <= max_a, b_i <= max_b, in
/// increasing k, then lexicographic factor order.
std::vector<SVParams> canonical_grid(int max_k, int max_a, int max_b);

/// prod C(a_i + b_i, b_i) - (1 + n) when sum a >= 2, else 0. Saturates at
/// UINT64_MAX.
std::uint64_t predicted_point_count(const SVParams& p);

enum class DimCase { Full, D1, D2Empty, D2Point, D2Hyperplane, Other };
enum class FacetExceptionKind { E1, E2, E3, E4 };

std::string to_string(DimCase c);
std::string to_string(FacetExceptionKind e);

struct FacetException {
  FacetExceptionKind kind;
  Label missing;
  friend auto operator<=>(const FacetException&, const FacetException&) = default;
};

struct FacetReport {
  DimCase dim_case = DimCase::Other;
  int dim = -1;
  std::vector<Label> present_facets;  // sorted
  std::vector<FacetException> exceptions;
  std::size_t facet_count = 0;
};

/// Closed-form prediction for canonical(p); labels index the canonical order.
FacetReport expected_facet_report(const SVParams& p);

/// Report read off a polytope built from canonical parameters.
FacetReport computed_facet_report(const Analysis& a, const SVParams& canonical);

struct FacetCheck {
  bool agree = false;
  FacetReport expected;
  FacetReport computed;
  std::string details;
};

FacetCheck compare_facet_reports(const FacetReport& expected, const FacetReport& computed);
FacetCheck cross_check_facets(const SVParams& p, const Budget& budget = {});

}  // namespace svsec
