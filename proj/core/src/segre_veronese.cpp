#include "svsec/segre_veronese.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace svsec {

SVParams::SVParams(std::vector<int> a_, std::vector<int> b_) : a(std::move(a_)), b(std::move(b_)) {
  if (a.empty()) throw std::invalid_argument("at least one factor required");
  if (a.size() != b.size()) throw std::invalid_argument("a and b must have the same length");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < 1 || b[i] < 1) throw std::invalid_argument("a_i and b_i must be positive");
}

int SVParams::n() const { return std::accumulate(b.begin(), b.end(), 0); }
int SVParams::sum_a() const { return std::accumulate(a.begin(), a.end(), 0); }

SVParams SVParams::canonical() const {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < a.size(); ++i) pairs.emplace_back(a[i], b[i]);
  std::sort(pairs.begin(), pairs.end());
  SVParams c;
  for (auto [x, y] : pairs) {
    c.a.push_back(x);
    c.b.push_back(y);
  }
  return c;
}

namespace {

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<int> parse_list(std::string_view s, const char* name) {
  std::vector<int> out;
  while (true) {
    auto comma = s.find(',');
    std::string_view tok = s.substr(0, comma);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || v < 1)
      throw std::invalid_argument(std::string("invalid entry '") + std::string(tok) + "' in " + name +
                                  " (expected positive integers separated by commas)");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::string SVParams::str() const { return "a=" + join(a) + " b=" + join(b); }

SVParams SVParams::parse(std::string_view a_list, std::string_view b_list) {
  return SVParams(parse_list(a_list, "a"), parse_list(b_list, "b"));
}

std::vector<std::pair<int, int>> index_layout(const SVParams& p) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < p.k(); ++i)
    for (int j = 1; j <= p.b[i]; ++j) out.emplace_back(static_cast<int>(i) + 1, j);
  return out;
}

std::vector<int> block_offsets(const SVParams& p) {
  std::vector<int> off(p.k(), 0);
  for (std::size_t i = 1; i < p.k(); ++i) off[i] = off[i - 1] + p.b[i - 1];
  return off;
}

LatticePolytope build_polytope(const SVParams& p, const Budget& budget) {
  const auto layout = index_layout(p);
  const std::size_t n = layout.size();
  std::vector<Inequality> ineqs;
  for (std::size_t c = 0; c < n; ++c) {
    Inequality q{std::vector<std::int64_t>(n, 0), 0, Label::nonneg(layout[c].first, layout[c].second)};
    q.normal[c] = 1;
    ineqs.push_back(std::move(q));
  }
  for (std::size_t i = 0; i < p.k(); ++i) {
    Inequality q{std::vector<std::int64_t>(n, 0), -p.a[i], Label::cap(static_cast<int>(i) + 1)};
    for (std::size_t c = 0; c < n; ++c)
      if (layout[c].first == static_cast<int>(i) + 1) q.normal[c] = -1;
    ineqs.push_back(std::move(q));
  }
  ineqs.push_back({std::vector<std::int64_t>(n, 1), 2, Label::lower_bound_f()});

  std::vector<std::int64_t> lo(n, 0);
  std::vector<std::int64_t> hi(n, 0);
  std::vector<std::string> names;
  for (std::size_t c = 0; c < n; ++c) {
    hi[c] = p.a[static_cast<std::size_t>(layout[c].first - 1)];
    names.push_back("x_{" + std::to_string(layout[c].first) + "," + std::to_string(layout[c].second) + "}");
  }
  return LatticePolytope(std::move(ineqs), std::move(lo), std::move(hi), std::move(names), budget);
}

std::vector<SVParams> canonical_grid(int max_k, int max_a, int max_b) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 1; a <= max_a; ++a)
    for (int b = 1; b <= max_b; ++b) pairs.emplace_back(a, b);
  std::vector<SVParams> out;
  std::vector<std::size_t> idx;
  auto extend = [&](auto& self, std::size_t from, int k) -> void {
    if (static_cast<int>(idx.size()) == k) {
      SVParams p;
      for (auto i : idx) {
        p.a.push_back(pairs[i].first);
        p.b.push_back(pairs[i].second);
      }
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t i = from; i < pairs.size(); ++i) {
      idx.push_back(i);
      self(self, i, k);
      idx.pop_back();
    }
  };
  for (int k = 1; k <= max_k; ++k) extend(extend, 0, k);
  return out;
}

std::uint64_t predicted_point_count(const SVParams& p) {
  if (p.sum_a() < 2) return 0;
  constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < p.k(); ++i) {
    std::uint64_t c = 1;
    for (int t = 1; t <= p.b[i]; ++t) {
      std::uint64_t num;
      if (__builtin_mul_overflow(c, static_cast<std::uint64_t>(p.a[i] + t), &num)) return cap;
      c = num / static_cast<std::uint64_t>(t);
    }
    if (__builtin_mul_overflow(total, c, &total)) return cap;
  }
  return total - 1 - static_cast<std::uint64_t>(p.n());
}

std::string to_string(DimCase c) {
  switch (c) {
    case DimCase::Full:
      return "Full";
    case DimCase::D1:
      return "D1";
    case DimCase::D2Empty:
      return "D2_empty";
    case DimCase::D2Point:
      return "D2_point";
    case DimCase::D2Hyperplane:
      return "D2_hyperplane";
    case DimCase::Other:
      break;
  }
  return "Other";
}

std::string to_string(FacetExceptionKind e) {
  switch (e) {
    case FacetExceptionKind::E1:
      return "E1";
    case FacetExceptionKind::E2:
      return "E2";
    case FacetExceptionKind::E3:
      return "E3";
    case FacetExceptionKind::E4:
      break;
  }
  return "E4";
}

FacetReport expected_facet_report(const SVParams& raw) {
  const SVParams p = raw.canonical();
  const std::size_t k = p.k();
  const auto& a = p.a;
  const auto& b = p.b;
  FacetReport r;
  auto add_block_z = [&](std::size_t i) {
    for (int j = 1; j <= b[i]; ++j) r.present_facets.push_back(Label::nonneg(static_cast<int>(i) + 1, j));
  };

  if (k == 1 && a[0] <= 2) {
    if (a[0] == 1) {
      r.dim_case = DimCase::D2Empty;
      r.dim = -1;
    } else if (b[0] == 1) {
      r.dim_case = DimCase::D2Point;
      r.dim = 0;
    } else {
      r.dim_case = DimCase::D2Hyperplane;
      r.dim = p.n() - 1;
      add_block_z(0);
    }
  } else if (k == 2 && a[0] == 1 && a[1] == 1) {
    r.dim_case = DimCase::D1;
    r.dim = p.n() - 2;
    for (std::size_t i = 0; i < 2; ++i)
      if (b[i] >= 2) add_block_z(i);
  } else {
    r.dim_case = DimCase::Full;
    r.dim = p.n();
    auto miss = [&](FacetExceptionKind kind, int i) {
      FacetException e{kind, Label::nonneg(i, 1)};
      if (std::find(r.exceptions.begin(), r.exceptions.end(), e) == r.exceptions.end()) r.exceptions.push_back(e);
    };
    if (k == 3) {
      for (std::size_t i = 0; i < 3; ++i) {
        bool others_one = true;
        for (std::size_t j = 0; j < 3; ++j)
          if (j != i && a[j] != 1) others_one = false;
        if (b[i] == 1 && others_one) miss(FacetExceptionKind::E1, static_cast<int>(i) + 1);
      }
    }
    if (k == 2 && b[0] == 1 && a[0] <= 2 && a[1] == 2) miss(FacetExceptionKind::E2, 1);
    if (k == 2 && b[1] == 1 && a[0] <= 2 && a[1] >= 2) miss(FacetExceptionKind::E3, 2);
    if (k == 1 && b[0] == 1 && a[0] >= 3) miss(FacetExceptionKind::E4, 1);

    r.present_facets.push_back(Label::lower_bound_f());
    for (std::size_t i = 0; i < k; ++i) r.present_facets.push_back(Label::cap(static_cast<int>(i) + 1));
    for (std::size_t i = 0; i < k; ++i)
      for (int j = 1; j <= b[i]; ++j) {
        Label z = Label::nonneg(static_cast<int>(i) + 1, j);
        bool missing = std::any_of(r.exceptions.begin(), r.exceptions.end(),
                                   [&](const FacetException& e) { return e.missing == z; });
        if (!missing) r.present_facets.push_back(z);
      }
  }
  std::sort(r.present_facets.begin(), r.present_facets.end());
  r.facet_count = r.present_facets.size();
  return r;
}

FacetReport computed_facet_report(const Analysis& an, const SVParams& p) {
  FacetReport r;
  r.dim = an.dim();
  const int n = p.n();
  if (r.dim == -1) {
    r.dim_case = DimCase::D2Empty;
  } else if (r.dim == n) {
    r.dim_case = DimCase::Full;
  } else if (p.k() == 1 && r.dim == 0) {
    r.dim_case = DimCase::D2Point;
  } else if (p.k() == 1 && r.dim == n - 1) {
    r.dim_case = DimCase::D2Hyperplane;
  } else if (p.k() == 2 && r.dim == n - 2) {
    r.dim_case = DimCase::D1;
  }
  for (const auto& f : an.facets())
    for (const auto& l : f.labels) r.present_facets.push_back(l);
  std::sort(r.present_facets.begin(), r.present_facets.end());
  r.facet_count = an.facets().size();
  return r;
}

namespace {

std::string label_list(const std::vector<Label>& ls) {
  std::string s = "{";
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i) s += ", ";
    s += ls[i].str();
  }
  return s + "}";
}

}  // namespace

FacetCheck compare_facet_reports(const FacetReport& expected, const FacetReport& computed) {
  FacetCheck c;
  c.expected = expected;
  c.computed = computed;
  std::ostringstream d;
  if (expected.dim_case != computed.dim_case)
    d << "dim case " << to_string(expected.dim_case) << " expected, " << to_string(computed.dim_case) << " computed; ";
  if (expected.dim != computed.dim) d << "dim " << expected.dim << " expected, " << computed.dim << " computed; ";
  if (expected.present_facets != computed.present_facets)
    d << "facets " << label_list(expected.present_facets) << " expected, " << label_list(computed.present_facets)
      << " computed; ";
  if (expected.facet_count != computed.facet_count)
    d << expected.facet_count << " facets expected, " << computed.facet_count << " distinct computed; ";
  c.details = d.str();
  c.agree = c.details.empty();
  if (!c.details.empty()) c.details.resize(c.details.size() - 2);
  return c;
}

FacetCheck cross_check_facets(const SVParams& p, const Budget& budget) {
  const SVParams c = p.canonical();
  Analysis an(build_polytope(c, budget));
  return compare_facet_reports(expected_facet_report(c), computed_facet_report(an, c));
}

}  // namespace svsec
