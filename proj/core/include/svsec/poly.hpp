#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "svsec/exact.hpp"

namespace svsec {

/// Sparse multivariate polynomial with rational coefficients over a fixed
/// number of variables. Zero coefficients are never stored.
class Poly {
 public:
  using Exponents = std::vector<std::uint32_t>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}
  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::uint32_t total_degree() const;

  void add_term(const Exponents& e, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend bool operator==(const Poly&, const Poly&) = default;

  Poly pow(unsigned e) const;
  /// Replaces variable i by values[i]; all values share one variable count.
  Poly substitute(const std::vector<Poly>& values) const;

  /// Terms in decreasing lexicographic order of exponents, e.g. "x1^2 - 2*x1*x2".
  std::string str(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_;
  std::map<Exponents, Rational> terms_;
};

}  // namespace svsec
