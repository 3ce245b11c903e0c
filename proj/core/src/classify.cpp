#include "svsec/classify.hpp"

#include <algorithm>
#include <array>

namespace svsec {

std::string to_string(Status s) {
  switch (s) {
    case Status::Smooth:
      return "Smooth";
    case Status::Gorenstein:
      return "Gorenstein";
    case Status::QGorensteinOnly:
      return "QGorensteinOnly";
    case Status::Neither:
      break;
  }
  return "Neither";
}

std::string to_string(CaseTag t) {
  static constexpr std::array<const char*, 19> names = {"None", "S1", "S2", "S3", "G1", "G2", "G3",
                                                        "G4",   "G5", "G6", "G7", "G8", "G9", "G10",
                                                        "Q1",   "Q2", "Q3", "Q4", "Q5"};
  return names[static_cast<std::size_t>(t)];
}

Status status_of(CaseTag t) {
  if (t == CaseTag::None) return Status::Neither;
  if (t <= CaseTag::S3) return Status::Smooth;
  if (t <= CaseTag::G10) return Status::Gorenstein;
  return Status::QGorensteinOnly;
}

namespace {

// Ambient functional (-rhs, u) of a facet and the gcd g of its values on the
// lifted lattice, so that the primitive cone normal is functional / g.
struct ConeFunctional {
  IntVector functional;
  Integer scale;
};

ConeFunctional cone_functional(const Analysis& an, const Facet& f) {
  const auto& q = an.polytope().inequalities()[f.inequalities.front()];
  IntVector u;
  u.emplace_back(static_cast<long>(-q.rhs));
  for (auto x : q.normal) u.emplace_back(static_cast<long>(x));
  Integer scale = 0;
  const auto& l = an.lifted_lattice().basis();
  for (std::size_t r = 0; r < l.rows(); ++r) {
    Integer v = 0;
    for (std::size_t j = 0; j < u.size(); ++j) v += u[j] * l(r, j);
    scale = detail::gcd_of(scale, v);
  }
  return {std::move(u), scale};
}

std::vector<ConeFunctional> cone_functionals(const Analysis& an) {
  std::vector<ConeFunctional> out;
  if (an.dim() == 0) {
    // The cone is a single ray; its only facet is the origin, cut out by the
    // functional taking value 1 on the lifted point.
    const auto& l = an.lifted_lattice().basis();
    IntVector u(l.cols(), 0);
    u[0] = 1;
    out.push_back({std::move(u), 1});
    return out;
  }
  for (const auto& f : an.facets()) out.push_back(cone_functional(an, f));
  return out;
}

Rational pair(const IntVector& u, const RatVector& beta) {
  Rational s = 0;
  for (std::size_t j = 0; j < u.size(); ++j) s += u[j] * beta[j];
  return s;
}

}  // namespace

bool verify_beta(const Analysis& an, const RatVector& beta, bool integral) {
  const auto& lambda = an.lifted_lattice();
  if (beta.size() != lambda.ambient_dim() || an.dim() < 0) return false;
  for (const auto& cf : cone_functionals(an))
    if (pair(cf.functional, beta) != Rational(cf.scale)) return false;
  // Membership in the rational span: beta is annihilated by the annihilator.
  for (const auto& w : integer_kernel(lambda.basis()))
    if (pair(w, beta) != 0) return false;
  if (!integral) return true;
  IntVector z;
  for (const auto& q : beta) {
    if (q.get_den() != 1) return false;
    z.push_back(q.get_num());
  }
  return lambda.contains(z);
}

Classification compute_status(const Analysis& an) {
  Classification c;
  if (an.dim() < 0) {
    c.status = Status::Smooth;
    c.fills_ambient = true;
    return c;
  }
  const ConeData cd = cone_data(an);
  const bool smooth = cd.rays_lambda.size() == cd.dim &&
                      extends_to_basis(IntMatrix::from_rows(cd.rays_lambda, cd.dim));

  // <beta, u_f> = g_f for each facet, and beta in the span of the lattice.
  const auto functionals = cone_functionals(an);
  const auto annihilator = integer_kernel(cd.lambda.basis());
  const std::size_t m = cd.lambda.ambient_dim();
  IntMatrix sys(functionals.size() + annihilator.size(), m);
  IntVector rhs;
  for (std::size_t i = 0; i < functionals.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) sys(i, j) = functionals[i].functional[j];
    rhs.push_back(functionals[i].scale);
  }
  for (std::size_t i = 0; i < annihilator.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) sys(functionals.size() + i, j) = annihilator[i][j];
    rhs.push_back(0);
  }

  auto sol = solve_affine(sys, rhs);
  if (!sol) {
    c.status = smooth ? Status::Smooth : Status::Neither;
    return c;
  }
  if (auto integral = lattice_point_in_affine_set(*sol, cd.lambda)) {
    c.status = smooth ? Status::Smooth : Status::Gorenstein;
    for (const auto& x : *integral) c.beta.emplace_back(x);
    c.beta_verified = verify_beta(an, c.beta, true);
  } else {
    c.status = smooth ? Status::Smooth : Status::QGorensteinOnly;
    c.beta = sol->particular;
    c.beta_verified = verify_beta(an, c.beta, false);
  }
  return c;
}

Classification compute_status(const SVParams& p, const Budget& budget) {
  return compute_status(Analysis(build_polytope(p, budget)));
}

CaseTag expected_tag(const SVParams& raw) {
  const SVParams p = raw.canonical();
  const auto& a = p.a;
  const auto& b = p.b;
  using V = std::vector<int>;
  auto is = [](const V& x, const V& y) { return x == y; };
  auto any_of = [](const V& x, std::initializer_list<V> ys) {
    return std::any_of(ys.begin(), ys.end(), [&](const V& y) { return x == y; });
  };

  switch (p.k()) {
    case 1:
      if (a[0] == 1 || (a[0] == 2 && b[0] == 1)) return CaseTag::S3;
      if (a[0] == 2 && b[0] % 2 == 0) return CaseTag::G8;
      if (a[0] == 3 && (b[0] == 1 || b[0] == 5)) return CaseTag::G9;
      if (a[0] == 4 && (b[0] == 1 || b[0] == 3)) return CaseTag::G10;
      if (a[0] == 2 && b[0] > 1 && b[0] % 2 == 1) return CaseTag::Q3;
      if (a[0] >= 5 && b[0] == 1) return CaseTag::Q4;
      if (a[0] == 6 && b[0] == 2) return CaseTag::Q5;
      return CaseTag::None;
    case 2:
      if (is(a, {1, 1}) && b[0] == 1) return CaseTag::S2;
      if (is(a, {1, 1}) && b[0] == b[1] && b[0] > 1) return CaseTag::G5;
      if (is(a, {1, 2}) && any_of(b, {{1, 1}, {1, 5}, {2, 1}, {2, 5}})) return CaseTag::G6;
      if (is(a, {2, 3}) && any_of(b, {{1, 1}, {1, 2}})) return CaseTag::G7;
      if (is(a, {2, 2}) && any_of(b, {{1, 1}, {1, 2}, {2, 2}})) return CaseTag::Q1;
      if (is(a, {4, 4}) && is(b, {1, 1})) return CaseTag::Q2;
      return CaseTag::None;
    case 3:
      if (is(a, {1, 1, 1}) && is(b, {1, 1, 1})) return CaseTag::S1;
      if (is(a, {1, 1, 1}) && any_of(b, {{1, 1, 3}, {1, 3, 3}, {3, 3, 3}})) return CaseTag::G2;
      if (is(a, {1, 1, 2}) && any_of(b, {{1, 1, 1}, {1, 1, 3}})) return CaseTag::G3;
      if (is(a, {2, 2, 2}) && is(b, {1, 1, 1})) return CaseTag::G4;
      return CaseTag::None;
    case 5:
      if (is(a, {1, 1, 1, 1, 1}) && is(b, {1, 1, 1, 1, 1})) return CaseTag::G1;
      return CaseTag::None;
    default:
      return CaseTag::None;
  }
}

Classification cross_check(const SVParams& p, const Budget& budget) {
  const SVParams canonical = p.canonical();
  return cross_check(Analysis(build_polytope(canonical, budget)), canonical);
}

Classification cross_check(const Analysis& a, const SVParams& p) {
  Classification c = compute_status(a);
  c.tag = expected_tag(p);
  c.agree = c.status == status_of(c.tag);
  if (c.status == Status::Gorenstein || c.status == Status::QGorensteinOnly) c.agree = c.agree && c.beta_verified;
  return c;
}

}  // namespace svsec
