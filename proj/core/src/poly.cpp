#include "svsec/poly.hpp"

#include <stdexcept>

namespace svsec {

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw std::out_of_range("variable index out of range");
  Exponents e(nvars, 0);
  e[i] = 1;
  Poly p(nvars);
  p.add_term(e, 1);
  return p;
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t s = 0;
    for (auto x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent length does not match variable count");
  if (c == 0) return;
  auto it = terms_.lower_bound(e);
  if (it == terms_.end() || it->first != e) {
    terms_.emplace_hint(it, e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("variable counts differ");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.nvars_ != nvars_) throw std::invalid_argument("variable counts differ");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_) throw std::invalid_argument("variable counts differ");
  Poly out(a.nvars_);
  Poly::Exponents e(a.nvars_);
  Rational c;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      c = ca * cb;
      out.add_term(e, c);
    }
  }
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(nvars_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::substitute(const std::vector<Poly>& values) const {
  if (values.size() != nvars_) throw std::invalid_argument("one value per variable required");
  const std::size_t m = values.empty() ? 0 : values.front().nvars();
  // powers[i][k] = values[i]^k, filled on demand.
  std::vector<std::vector<Poly>> powers(nvars_);
  auto power = [&](std::size_t i, std::uint32_t k) -> const Poly& {
    auto& ps = powers[i];
    if (ps.empty()) ps.push_back(constant(m, 1));
    while (ps.size() <= k) ps.push_back(ps.back() * values[i]);
    return ps[k];
  };
  Poly out(m);
  for (const auto& [e, c] : terms_) {
    Poly term = constant(m, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) term = term * power(i, e[i]);
    out += term;
  }
  return out;
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    const bool negative = c < 0;
    if (first)
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += i < names.size() ? names[i] : "v" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      s += mag.get_str();
    else if (mag == 1)
      s += mono;
    else
      s += mag.get_str() + "*" + mono;
  }
  return s;
}

}  // namespace svsec
