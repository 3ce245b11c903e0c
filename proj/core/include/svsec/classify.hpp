#pragma once

#include <optional>
#include <string>

#include "svsec/segre_veronese.hpp"

namespace svsec {

enum class Status { Smooth, Gorenstein, QGorensteinOnly, Neither };

enum class CaseTag { None, S1, S2, S3, G1, G2, G3, G4, G5, G6, G7, G8, G9, G10, Q1, Q2, Q3, Q4, Q5 };

std::string to_string(Status s);
std::string to_string(CaseTag t);
/// Status predicted by a tag: S* smooth, G* Gorenstein, Q* Q-Gorenstein only, None neither.
Status status_of(CaseTag t);

struct Classification {
  Status status = Status::Neither;
  /// (beta_0, beta_{i,j}) with <beta, u> = 1 on every facet normal of the cone;
  /// integral for Smooth and Gorenstein. Empty when the polytope is empty or
  /// no solution exists.
  RatVector beta;
  bool beta_verified = false;
  bool fills_ambient = false;  // empty polytope: the secant is the whole space
  CaseTag tag = CaseTag::None;
  bool agree = false;
};

/// Smoothness and Gorenstein status of the cone over an analysed polytope.
Classification compute_status(const Analysis& a);
/// As above for build_polytope(p) in the given factor order.
Classification compute_status(const SVParams& p, const Budget& budget = {});

CaseTag expected_tag(const SVParams& p);

/// compute_status on canonical(p) compared with expected_tag(p).
Classification cross_check(const SVParams& p, const Budget& budget = {});
/// As above for an analysis of build_polytope(canonical).
Classification cross_check(const Analysis& a, const SVParams& canonical);

/// <beta, u> = 1 for every facet of the cone and beta lies in the lifted
/// lattice (integral) or its rational span.
bool verify_beta(const Analysis& a, const RatVector& beta, bool integral);

}  // namespace svsec
