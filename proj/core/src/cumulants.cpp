#include "svsec/cumulants.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace svsec {

namespace {

bool shortlex_less(const Multiset& a, const Multiset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Per-label multiplicities of a sorted multiset.
std::vector<std::pair<int, unsigned>> runs(const Multiset& m) {
  std::vector<std::pair<int, unsigned>> out;
  for (int l : m) {
    if (!out.empty() && out.back().first == l)
      ++out.back().second;
    else
      out.emplace_back(l, 1);
  }
  return out;
}

// Calls f(sub, coefficient) for every sub-multiset of m, where coefficient
// counts the vertex subsets carrying that label multiset.
void for_each_submultiset(const Multiset& m, const std::function<void(const Multiset&, const Integer&)>& f) {
  const auto r = runs(m);
  std::vector<unsigned> take(r.size(), 0);
  Multiset sub;
  for (;;) {
    sub.clear();
    Integer coeff = 1;
    for (std::size_t i = 0; i < r.size(); ++i) {
      sub.insert(sub.end(), take[i], r[i].first);
      Integer b;
      mpz_bin_uiui(b.get_mpz_t(), r[i].second, take[i]);
      coeff *= b;
    }
    f(sub, coeff);
    std::size_t i = 0;
    while (i < r.size() && take[i] == r[i].second) take[i++] = 0;
    if (i == r.size()) return;
    ++take[i];
  }
}

std::vector<std::pair<int, unsigned>> difference_runs(const Multiset& m, const Multiset& sub) {
  Multiset rest;
  std::set_difference(m.begin(), m.end(), sub.begin(), sub.end(), std::back_inserter(rest));
  return runs(rest);
}

void check_terms(const Poly& p, const SymbolicBudget& budget) {
  if (p.size() > budget.max_terms)
    throw BudgetExceeded("polynomial with " + std::to_string(p.size()) + " terms exceeds the term budget");
}

Multiset slice(const Multiset& m, std::pair<std::size_t, std::size_t> block) {
  return {m.begin() + static_cast<std::ptrdiff_t>(block.first), m.begin() + static_cast<std::ptrdiff_t>(block.second)};
}

// y_sigma = sum over sub-multisets m of (-1)^(|sigma|-|m|) x_m prod_{i in sigma \ m} x_i,
// for any assignment of x values to simplices.
Poly alternating_sum(const LabeledComplex& c, std::size_t s, const std::vector<Poly>& x,
                     const std::function<const Poly&(int, unsigned)>& vertex_power) {
  const Multiset& sigma = c.simplices()[s];
  Poly out(x.front().nvars());
  for_each_submultiset(sigma, [&](const Multiset& sub, const Integer& coeff) {
    Poly term = x[*c.index_of(sub)];
    for (auto [l, e] : difference_runs(sigma, sub)) term = term * vertex_power(l, e);
    const bool negative = (sigma.size() - sub.size()) % 2 == 1;
    term *= Rational(negative ? Integer(-coeff) : coeff);
    out += term;
  });
  return out;
}

// Cache of x_{l}^e for vertex coordinates.
class VertexPowers {
 public:
  VertexPowers(const LabeledComplex& c, const std::vector<Poly>& x) : c_(c), x_(x), cache_(c.label_count()) {}
  const Poly& operator()(int l, unsigned e) {
    auto& ps = cache_[static_cast<std::size_t>(l)];
    if (ps.empty()) ps.push_back(Poly::constant(x_.front().nvars(), 1));
    while (ps.size() <= e) ps.push_back(ps.back() * x_[*c_.index_of(Multiset{l})]);
    return ps[e];
  }

 private:
  const LabeledComplex& c_;
  const std::vector<Poly>& x_;
  std::vector<std::vector<Poly>> cache_;
};

std::vector<Poly> y_from_x(const LabeledComplex& c, const std::vector<Poly>& x, const SymbolicBudget* budget) {
  VertexPowers powers(c, x);
  std::vector<Poly> y;
  for (std::size_t s = 0; s < c.simplices().size(); ++s) {
    if (c.simplices()[s].size() <= 1) {
      y.push_back(x[s]);
      continue;
    }
    y.push_back(alternating_sum(c, s, x, [&](int l, unsigned e) -> const Poly& { return powers(l, e); }));
    if (budget) check_terms(y.back(), *budget);
  }
  return y;
}

// z_sigma = sum over thick interval partitions g of (-1)^(|g|+1) prod_B y_B.
std::vector<Poly> z_from_y(const LabeledComplex& c, const std::vector<Poly>& y, const SymbolicBudget* budget) {
  std::vector<Poly> z;
  for (std::size_t s = 0; s < c.simplices().size(); ++s) {
    const Multiset& sigma = c.simplices()[s];
    if (sigma.size() <= 1) {
      z.push_back(y[s]);
      continue;
    }
    Poly out(y.front().nvars());
    for (const auto& g : thick_interval_partitions(sigma.size())) {
      Poly term = Poly::constant(out.nvars(), g.size() % 2 == 1 ? 1 : -1);
      for (const auto& block : g) term = term * y[*c.index_of(slice(sigma, block))];
      out += term;
    }
    if (budget) check_terms(out, *budget);
    z.push_back(std::move(out));
  }
  return z;
}

std::vector<Poly> coordinate_variables(const LabeledComplex& c) {
  const std::size_t n = c.simplices().size() - 1;
  std::vector<Poly> v{Poly::constant(n, 1)};
  for (std::size_t s = 1; s <= n; ++s) v.push_back(Poly::variable(n, s - 1));
  return v;
}

// x_sigma = prod_{i in sigma} t_i in the label ring.
std::vector<Poly> embedding_values(const LabeledComplex& c) {
  const std::size_t L = c.label_count();
  std::vector<Poly> out;
  for (std::size_t s = 1; s < c.simplices().size(); ++s) {
    Poly::Exponents e(L, 0);
    for (int l : c.simplices()[s]) ++e[static_cast<std::size_t>(l)];
    Poly p(L);
    p.add_term(e, 1);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

LabeledComplex LabeledComplex::from_generators(std::size_t label_count, const std::vector<Multiset>& generators,
                                               std::vector<std::string> label_names) {
  LabeledComplex c;
  if (label_names.empty())
    for (std::size_t l = 0; l < label_count; ++l) label_names.push_back(std::to_string(l + 1));
  if (label_names.size() != label_count) throw std::invalid_argument("one name per label required");
  c.label_names_ = std::move(label_names);

  std::set<Multiset> all{Multiset{}};
  for (auto g : generators) {
    for (int l : g)
      if (l < 0 || static_cast<std::size_t>(l) >= label_count)
        throw std::invalid_argument("label " + std::to_string(l + 1) + " out of range");
    std::sort(g.begin(), g.end());
    for_each_submultiset(g, [&](const Multiset& sub, const Integer&) { all.insert(sub); });
  }
  for (std::size_t l = 0; l < label_count; ++l)
    if (!all.count(Multiset{static_cast<int>(l)}))
      throw std::invalid_argument("label " + c.label_names_[l] + " carries no vertex");
  c.simplices_.assign(all.begin(), all.end());
  std::sort(c.simplices_.begin(), c.simplices_.end(), shortlex_less);
  if (!c.connected()) throw std::invalid_argument("the complex is disconnected; cumulant coordinates require a connected complex");
  return c;
}

std::size_t LabeledComplex::vertex_count() const {
  std::vector<unsigned> copies(label_count(), 0);
  for (const auto& s : simplices_)
    for (auto [l, e] : runs(s)) copies[static_cast<std::size_t>(l)] = std::max(copies[static_cast<std::size_t>(l)], e);
  return std::accumulate(copies.begin(), copies.end(), std::size_t{0});
}

std::optional<std::size_t> LabeledComplex::index_of(const Multiset& m) const {
  auto it = std::lower_bound(simplices_.begin(), simplices_.end(), m, shortlex_less);
  if (it == simplices_.end() || *it != m) return std::nullopt;
  return static_cast<std::size_t>(it - simplices_.begin());
}

std::string LabeledComplex::variable_name(std::size_t simplex) const {
  const Multiset& m = simplices_.at(simplex);
  const bool short_names = std::all_of(label_names_.begin(), label_names_.end(),
                                       [](const std::string& s) { return s.size() == 1; });
  std::string body;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i && !short_names) body += ",";
    body += label_names_[static_cast<std::size_t>(m[i])];
  }
  if (short_names && !m.empty()) return "x_" + body;
  return "x_{" + body + "}";
}

bool LabeledComplex::connected() const {
  // Vertex j of label l is the j-th copy; a simplex uses copies 0..e-1.
  std::vector<std::size_t> offset(label_count() + 1, 0);
  std::vector<unsigned> copies(label_count(), 0);
  for (const auto& s : simplices_)
    for (auto [l, e] : runs(s)) copies[static_cast<std::size_t>(l)] = std::max(copies[static_cast<std::size_t>(l)], e);
  for (std::size_t l = 0; l < label_count(); ++l) offset[l + 1] = offset[l] + copies[l];
  const std::size_t nv = offset.back();
  if (nv <= 1) return true;
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const auto& s : simplices_) {
    std::vector<std::size_t> vs;
    for (auto [l, e] : runs(s))
      for (unsigned j = 0; j < e; ++j) vs.push_back(offset[static_cast<std::size_t>(l)] + j);
    for (std::size_t i = 1; i < vs.size(); ++i) parent[find(vs[i])] = find(vs[0]);
  }
  for (std::size_t v = 1; v < nv; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

LabeledComplex parse_complex(std::istream& in) {
  std::vector<Multiset> generators;
  int max_label = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'name: l1 l2 ...'");
    std::istringstream rest(line.substr(colon + 1));
    Multiset g;
    std::string tok;
    while (rest >> tok) {
      int l = 0;
      try {
        std::size_t used = 0;
        l = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": '" + tok + "' is not an integer label");
      }
      if (l < 1) throw std::invalid_argument("line " + std::to_string(line_no) + ": labels start at 1");
      max_label = std::max(max_label, l);
      g.push_back(l - 1);
    }
    if (g.empty()) throw std::invalid_argument("line " + std::to_string(line_no) + ": empty generator");
    generators.push_back(std::move(g));
  }
  if (generators.empty()) throw std::invalid_argument("no generators given");
  return LabeledComplex::from_generators(static_cast<std::size_t>(max_label), generators);
}

LabeledComplex sv_complex(const SVParams& p, const SymbolicBudget& budget) {
  std::size_t vertices = 0;
  for (std::size_t i = 0; i < p.k(); ++i) vertices += static_cast<std::size_t>(p.a[i] * p.b[i]);
  if (vertices > budget.max_vertices)
    throw BudgetExceeded("Segre-Veronese complex has " + std::to_string(vertices) + " vertices, budget is " +
                         std::to_string(budget.max_vertices));
  const auto layout = index_layout(p);
  const auto off = block_offsets(p);
  const bool short_names = std::all_of(layout.begin(), layout.end(), [](auto ij) { return ij.first < 10 && ij.second < 10; });
  std::vector<std::string> names;
  for (auto [i, j] : layout)
    names.push_back(std::to_string(i) + (short_names ? "" : ".") + std::to_string(j));

  // Maximal simplices: a_i labels (with repetition) from every block.
  std::vector<Multiset> generators{Multiset{}};
  for (std::size_t i = 0; i < p.k(); ++i) {
    std::vector<Multiset> block;
    std::function<void(Multiset&, int)> choose = [&](Multiset& cur, int from) {
      if (static_cast<int>(cur.size()) == p.a[i]) {
        block.push_back(cur);
        return;
      }
      for (int j = from; j < p.b[i]; ++j) {
        cur.push_back(off[i] + j);
        choose(cur, j);
        cur.pop_back();
      }
    };
    Multiset cur;
    choose(cur, 0);
    std::vector<Multiset> next;
    for (const auto& g : generators)
      for (const auto& b : block) {
        Multiset m = g;
        m.insert(m.end(), b.begin(), b.end());
        next.push_back(std::move(m));
      }
    generators = std::move(next);
  }
  return LabeledComplex::from_generators(layout.size(), generators, std::move(names));
}

IntMatrix embed(const LabeledComplex& c) {
  IntMatrix m(c.label_count(), c.simplices().size());
  for (std::size_t s = 0; s < c.simplices().size(); ++s)
    for (int l : c.simplices()[s]) m(static_cast<std::size_t>(l), s) += 1;
  return m;
}

std::vector<std::string> coordinate_names(const LabeledComplex& c, char prefix) {
  std::vector<std::string> out;
  for (std::size_t s = 1; s < c.simplices().size(); ++s) {
    std::string name = c.variable_name(s);
    name[0] = prefix;
    out.push_back(std::move(name));
  }
  return out;
}

std::vector<Poly> y_transform(const LabeledComplex& c) {
  return y_from_x(c, coordinate_variables(c), nullptr);
}

std::vector<Poly> z_transform(const LabeledComplex& c) {
  return z_from_y(c, coordinate_variables(c), nullptr);
}

std::vector<Poly> z_in_x(const LabeledComplex& c) {
  const auto y = y_transform(c);
  const std::vector<Poly> values(y.begin() + 1, y.end());
  std::vector<Poly> out;
  for (const auto& z : z_transform(c)) out.push_back(z.substitute(values));
  return out;
}

std::vector<ThickIntervalPartition> thick_interval_partitions(std::size_t m) {
  std::vector<ThickIntervalPartition> out;
  ThickIntervalPartition cur;
  std::function<void(std::size_t)> extend = [&](std::size_t from) {
    if (from == m) {
      out.push_back(cur);
      return;
    }
    for (std::size_t end = from + 2; end <= m; ++end) {
      cur.emplace_back(from, end);
      extend(end);
      cur.pop_back();
    }
  };
  extend(0);
  return out;
}

std::vector<std::string> parameter_names(const LabeledComplex& c) {
  std::vector<std::string> out{"pi"};
  for (const auto& n : c.label_names()) out.push_back("t" + n);
  for (const auto& n : c.label_names()) out.push_back("u" + n);
  return out;
}

namespace {

struct ParameterRing {
  std::size_t labels;
  std::size_t nvars() const { return 1 + 2 * labels; }
  Poly pi() const { return Poly::variable(nvars(), 0); }
  Poly t(std::size_t l) const { return Poly::variable(nvars(), 1 + l); }
  Poly u(std::size_t l) const { return Poly::variable(nvars(), 1 + labels + l); }
  Poly one() const { return Poly::constant(nvars(), 1); }
  // prod over sigma of t (or u), as a single monomial.
  Poly product(const Multiset& m, bool of_t) const {
    Poly::Exponents e(nvars(), 0);
    for (int l : m) ++e[1 + (of_t ? 0 : labels) + static_cast<std::size_t>(l)];
    Poly p(nvars());
    p.add_term(e, 1);
    return p;
  }
};

// (1 - 2 pi)^k pi (1 - pi) prod_{i in sigma} sign (t_i - u_i).
Poly closed_form(const ParameterRing& r, const Multiset& sigma, unsigned k, int sign) {
  const Poly one_minus_2pi = r.one() - r.pi() * Rational(2);
  Poly out = r.pi() * (r.one() - r.pi()) * one_minus_2pi.pow(k);
  for (int l : sigma) {
    Poly d = r.t(static_cast<std::size_t>(l)) - r.u(static_cast<std::size_t>(l));
    out = out * (sign > 0 ? d : -d);
  }
  return out;
}

}  // namespace

std::vector<Poly> secant_z(const LabeledComplex& c, const SymbolicBudget& budget) {
  if (c.vertex_count() > budget.max_vertices)
    throw BudgetExceeded("complex has " + std::to_string(c.vertex_count()) + " vertices, budget is " +
                         std::to_string(budget.max_vertices));
  const ParameterRing r{c.label_count()};
  std::vector<Poly> x;
  x.push_back(r.one());
  for (std::size_t s = 1; s < c.simplices().size(); ++s) {
    const Multiset& m = c.simplices()[s];
    x.push_back(r.pi() * r.product(m, true) + (r.one() - r.pi()) * r.product(m, false));
  }
  return z_from_y(c, y_from_x(c, x, &budget), &budget);
}

SecantCheck verify_secant_identity(const LabeledComplex& c, const SymbolicBudget& budget) {
  return verify_secant_identity(c, secant_z(c, budget));
}

SecantCheck verify_secant_identity(const LabeledComplex& c, const std::vector<Poly>& z) {
  const ParameterRing r{c.label_count()};
  SecantCheck out;
  for (std::size_t s = 1; s < c.simplices().size(); ++s) {
    const Multiset& m = c.simplices()[s];
    Poly expected(r.nvars());
    if (m.size() == 1) {
      const auto l = static_cast<std::size_t>(m[0]);
      expected = r.pi() * r.t(l) + (r.one() - r.pi()) * r.u(l);
    } else {
      expected = closed_form(r, m, static_cast<unsigned>(m.size() - 2), +1);
    }
    ++out.checked;
    Poly residual = z[s] - expected;
    if (!residual.is_zero()) out.failures.push_back({s, std::move(residual)});
  }
  out.ok = out.failures.empty();
  return out;
}

ReparametrizationCheck verify_reparametrization(const LabeledComplex& c, const SymbolicBudget& budget) {
  return verify_reparametrization(c, secant_z(c, budget));
}

ReparametrizationCheck verify_reparametrization(const LabeledComplex& c, const std::vector<Poly>& z) {
  const ParameterRing r{c.label_count()};
  const Poly one_minus_2pi = r.one() - r.pi() * Rational(2);
  const Poly scale = one_minus_2pi * one_minus_2pi;
  ReparametrizationCheck out;
  for (int sign : {+1, -1}) {
    // pi' = pi(1-pi)/(1-2pi)^2 and u'_v = sign (u_v - t_v)(1-2pi); both
    // sides multiplied by (1-2pi)^2.
    out.failures.clear();
    for (std::size_t s = 1; s < c.simplices().size(); ++s) {
      const Multiset& m = c.simplices()[s];
      if (m.size() < 2) continue;
      const Poly rhs = closed_form(r, m, static_cast<unsigned>(m.size()), -sign);
      Poly residual = scale * z[s] - rhs;
      if (!residual.is_zero()) out.failures.push_back({s, std::move(residual)});
    }
    if (out.failures.empty()) {
      out.ok = true;
      out.convention = sign > 0 ? "u-t" : "t-u";
      return out;
    }
  }
  return out;
}

bool z_vanishes_on_embedding(const LabeledComplex& c) {
  const auto values = embedding_values(c);
  const auto z = z_in_x(c);
  for (std::size_t s = 1; s < c.simplices().size(); ++s)
    if (c.simplices()[s].size() >= 2 && !z[s].substitute(values).is_zero()) return false;
  return true;
}

bool verify_round_trip(const LabeledComplex& c) {
  const auto zx = z_in_x(c);
  const std::vector<Poly> z_values(zx.begin() + 1, zx.end());
  const auto vars = coordinate_variables(c);
  const std::size_t count = c.simplices().size();

  // y in terms of z: the single-block partition contributes y_sigma itself.
  std::vector<Poly> y(count, vars.front());
  for (std::size_t s = 0; s < count; ++s) {
    const Multiset& sigma = c.simplices()[s];
    y[s] = vars[s];
    if (sigma.size() <= 1) continue;
    for (const auto& g : thick_interval_partitions(sigma.size())) {
      if (g.size() == 1) continue;
      Poly term = Poly::constant(vars.front().nvars(), g.size() % 2 == 1 ? 1 : -1);
      for (const auto& block : g) term = term * y[*c.index_of(slice(sigma, block))];
      y[s] -= term;
    }
  }
  // x in terms of y: the full sub-multiset contributes x_sigma itself.
  std::vector<Poly> x(count, vars.front());
  for (std::size_t s = 0; s < count; ++s) {
    const Multiset& sigma = c.simplices()[s];
    x[s] = y[s];
    if (sigma.size() <= 1) continue;
    VertexPowers powers(c, x);
    for_each_submultiset(sigma, [&](const Multiset& sub, const Integer& coeff) {
      if (sub.size() == sigma.size()) return;
      Poly term = x[*c.index_of(sub)];
      for (auto [l, e] : difference_runs(sigma, sub)) term = term * powers(l, e);
      const bool negative = (sigma.size() - sub.size()) % 2 == 1;
      term *= Rational(negative ? Integer(-coeff) : coeff);
      x[s] -= term;
    });
  }
  for (std::size_t s = 1; s < count; ++s)
    if (x[s].substitute(z_values) != vars[s]) return false;
  return true;
}

std::vector<std::size_t> toric_columns(const LabeledComplex& c) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < c.simplices().size(); ++s)
    if (c.simplices()[s].size() >= 2) out.push_back(s);
  return out;
}

std::vector<Binomial> toric_binomials(const LabeledComplex& c, unsigned degree_bound) {
  const auto cols = toric_columns(c);
  if (degree_bound > 6) throw BudgetExceeded("degree bound above 6");
  if (cols.size() > 20) throw BudgetExceeded("more than 20 columns of dimension >= 1");
  const std::size_t L = c.label_count();

  // Group monomials of degree 1..bound by their image.
  std::map<std::vector<std::int64_t>, std::vector<Poly::Exponents>> by_image;
  Poly::Exponents e(cols.size(), 0);
  std::vector<std::int64_t> image(L, 0);
  std::function<void(std::size_t, unsigned)> walk = [&](std::size_t from, unsigned degree) {
    if (degree > 0) by_image[image].push_back(e);
    if (degree == degree_bound) return;
    for (std::size_t j = from; j < cols.size(); ++j) {
      ++e[j];
      for (int l : c.simplices()[cols[j]]) ++image[static_cast<std::size_t>(l)];
      walk(j, degree + 1);
      for (int l : c.simplices()[cols[j]]) --image[static_cast<std::size_t>(l)];
      --e[j];
    }
  };
  walk(0, 0);

  auto degree = [](const Poly::Exponents& x) { return std::accumulate(x.begin(), x.end(), 0u); };
  // Plus side: smaller degree, then lexicographically larger.
  auto first = [&](const Poly::Exponents& x, const Poly::Exponents& y) {
    if (degree(x) != degree(y)) return degree(x) < degree(y);
    return x > y;
  };
  std::vector<Binomial> out;
  for (const auto& [img, monos] : by_image) {
    for (std::size_t i = 0; i < monos.size(); ++i)
      for (std::size_t j = i + 1; j < monos.size(); ++j) {
        bool disjoint = true;
        for (std::size_t q = 0; q < cols.size() && disjoint; ++q) disjoint = !(monos[i][q] && monos[j][q]);
        if (!disjoint) continue;
        if (first(monos[i], monos[j]))
          out.push_back({monos[i], monos[j]});
        else
          out.push_back({monos[j], monos[i]});
      }
  }
  std::sort(out.begin(), out.end(), [&](const Binomial& a, const Binomial& b) {
    const unsigned da = std::max(degree(a.plus), degree(a.minus));
    const unsigned db = std::max(degree(b.plus), degree(b.minus));
    if (da != db) return da < db;
    if (a.plus != b.plus) return a.plus > b.plus;
    return a.minus > b.minus;
  });
  return out;
}

std::string binomial_str(const LabeledComplex& c, const Binomial& b) {
  const auto cols = toric_columns(c);
  auto mono = [&](const Poly::Exponents& e) {
    std::string s;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (!e[j]) continue;
      if (!s.empty()) s += "*";
      s += c.variable_name(cols[j]);
      if (e[j] > 1) s += "^" + std::to_string(e[j]);
    }
    return s;
  };
  return mono(b.plus) + " - " + mono(b.minus);
}

bool binomial_vanishes(const LabeledComplex& c, const Binomial& b) {
  const auto cols = toric_columns(c);
  Poly p(cols.size());
  p.add_term(b.plus, 1);
  p.add_term(b.minus, -1);
  const auto all = embedding_values(c);
  std::vector<Poly> values;
  for (std::size_t s : cols) values.push_back(all[s - 1]);
  return p.substitute(values).is_zero();
}

LabeledComplex random_complex(std::uint64_t seed, std::size_t max_vertices) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (;;) {
    const int labels = uniform(2, 4);
    const int count = uniform(2, 4);
    std::vector<Multiset> gens;
    for (int l = 0; l < labels; ++l) gens.push_back({l});
    for (int g = 0; g < count; ++g) {
      Multiset m;
      const int size = uniform(2, 4);
      for (int i = 0; i < size; ++i) m.push_back(uniform(0, labels - 1));
      gens.push_back(std::move(m));
    }
    try {
      auto c = LabeledComplex::from_generators(static_cast<std::size_t>(labels), gens);
      if (c.vertex_count() <= max_vertices) return c;
    } catch (const std::invalid_argument&) {
      // disconnected draw; try again
    }
  }
}

}  // namespace svsec
