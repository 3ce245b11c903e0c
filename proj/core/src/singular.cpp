#include "svsec/singular.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace svsec {

bool cone_smooth(const std::vector<IntVector>& rays, std::size_t lattice_rank) {
  if (rays.size() > lattice_rank) return false;
  if (rays.empty()) return true;
  return extends_to_basis(IntMatrix::from_rows(rays, lattice_rank));
}

namespace {

std::vector<IntVector> rays_of(const Analysis& a, FacetMask mask) {
  std::vector<IntVector> out;
  while (mask) {
    const auto f = static_cast<std::size_t>(std::countr_zero(mask));
    mask &= mask - 1;
    out.push_back(a.facets()[f].restricted_normal);
  }
  return out;
}

}  // namespace

FanCone fan_cone(const Analysis& a, const Face& face) {
  FanCone c;
  c.face = face;
  c.rays = rays_of(a, face.tight);
  for (std::size_t f : face.facets)
    c.ambient_rays.push_back(to_integers(a.polytope().inequalities()[a.facets()[f].inequalities.front()].normal));
  c.smooth = cone_smooth(c.rays, a.affine_lattice().rank());
  return c;
}

std::vector<FanCone> normal_fan(const Analysis& a) {
  std::vector<FanCone> out;
  if (a.dim() < 1) return out;
  for (const auto& face : a.faces()) out.push_back(fan_cone(a, face));
  return out;
}

std::string to_string(SingularComponent::Kind k) {
  switch (k) {
    case SingularComponent::Kind::PairOnes:
      return "PairOnes";
    case SingularComponent::Kind::DoubleTwo:
      return "DoubleTwo";
    case SingularComponent::Kind::Unmodeled:
      break;
  }
  return "Unmodeled";
}

std::string kind_label(const SingularComponent& c) {
  switch (c.kind) {
    case SingularComponent::Kind::PairOnes:
      return "PairOnes(" + std::to_string(c.i1) + "," + std::to_string(c.i2) + ")";
    case SingularComponent::Kind::DoubleTwo:
      return "DoubleTwo(" + std::to_string(c.i1) + ")";
    case SingularComponent::Kind::Unmodeled:
      break;
  }
  return "Unmodeled";
}

std::vector<SingularComponent> singular_components(const Analysis& a) {
  std::vector<SingularComponent> out;
  if (a.dim() < 1) return out;
  const std::size_t rank = a.affine_lattice().rank();
  std::unordered_map<FacetMask, bool> memo;
  auto smooth = [&](FacetMask m) {
    auto it = memo.find(m);
    if (it == memo.end()) it = memo.emplace(m, cone_smooth(rays_of(a, m), rank)).first;
    return it->second;
  };

  // Walk upward through faces with singular cones, starting at the singular
  // vertices. A face is reported when none of the faces covering it is
  // singular. Covers of a face with tight set T are the inclusion-maximal
  // sets T & mask(w) over vertices w outside the face.
  std::vector<FacetMask> queue;
  std::unordered_set<FacetMask> seen;
  for (std::size_t v = 0; v < a.vertices().size(); ++v) {
    const FacetMask m = a.vertex_mask(v);
    if (!smooth(m) && seen.insert(m).second) queue.push_back(m);
  }
  std::vector<FacetMask> maximal;
  std::vector<FacetMask> joins;
  std::vector<FacetMask> covers;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const FacetMask t = queue[q];
    joins.clear();
    for (std::size_t v = 0; v < a.vertices().size(); ++v) {
      const FacetMask vm = a.vertex_mask(v);
      if ((vm & t) != t) joins.push_back(vm & t);
    }
    std::sort(joins.begin(), joins.end());
    joins.erase(std::unique(joins.begin(), joins.end()), joins.end());
    std::stable_sort(joins.begin(), joins.end(),
                     [](FacetMask x, FacetMask y) { return std::popcount(x) > std::popcount(y); });
    covers.clear();
    for (FacetMask m : joins) {
      if (std::none_of(covers.begin(), covers.end(), [&](FacetMask c) { return (m & c) == m; }))
        covers.push_back(m);
    }
    bool singular_cover = false;
    for (FacetMask c : covers) {
      if (smooth(c)) continue;
      singular_cover = true;
      if (seen.insert(c).second) queue.push_back(c);
    }
    if (!singular_cover) maximal.push_back(t);
  }
  std::sort(maximal.begin(), maximal.end());

  for (FacetMask t : maximal) {
    SingularComponent c;
    c.face = *a.closure(t);
    c.points = a.face_points(c.face);
    c.rays = rays_of(a, t);
    std::set<int> caps;
    for (std::size_t f : c.face.facets)
      for (const auto& l : a.facets()[f].labels)
        if (l.kind == Label::Kind::CapR) caps.insert(l.i);
    if (caps.size() == 2) {
      c.kind = SingularComponent::Kind::PairOnes;
      c.i1 = *caps.begin();
      c.i2 = *caps.rbegin();
    } else if (caps.size() == 1) {
      c.kind = SingularComponent::Kind::DoubleTwo;
      c.i1 = *caps.begin();
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

std::string factor(int a, int b) {
  const std::string proj = "P^" + std::to_string(b);
  return a == 1 ? proj : "v_" + std::to_string(a) + "(" + proj + ")";
}

}  // namespace

ComponentDescription describe_component(const Analysis& a, const SingularComponent& c, const SVParams& p) {
  ComponentDescription d;
  if (c.kind == SingularComponent::Kind::Unmodeled) {
    d.text = "unmodeled";
    return d;
  }
  const auto off = block_offsets(p);
  const std::size_t n = static_cast<std::size_t>(p.n());
  const auto i1 = static_cast<std::size_t>(c.i1 - 1);
  const auto i2 = static_cast<std::size_t>(c.i2 - 1);
  std::set<std::vector<std::int64_t>> expected;
  auto unit_sum = [&](std::size_t x, std::size_t y) {
    std::vector<std::int64_t> v(n, 0);
    ++v[x];
    ++v[y];
    expected.insert(std::move(v));
  };
  const bool pair = c.kind == SingularComponent::Kind::PairOnes;
  if (pair) {
    for (int j = 0; j < p.b[i1]; ++j)
      for (int jj = 0; jj < p.b[i2]; ++jj)
        unit_sum(static_cast<std::size_t>(off[i1] + j), static_cast<std::size_t>(off[i2] + jj));
  } else {
    for (int j = 0; j < p.b[i1]; ++j)
      for (int jj = j; jj < p.b[i1]; ++jj)
        unit_sum(static_cast<std::size_t>(off[i1] + j), static_cast<std::size_t>(off[i1] + jj));
  }
  std::set<std::vector<std::int64_t>> actual;
  for (std::size_t i : c.points) actual.insert(a.polytope().points().point(i));
  d.points_match = actual == expected;

  for (std::size_t i = 0; i < p.k(); ++i) {
    if (i == i1 || (pair && i == i2)) continue;
    d.text += factor(p.a[i], p.b[i]) + " x ";
  }
  if (pair)
    d.text += "Sec(P^" + std::to_string(p.b[i1]) + " x P^" + std::to_string(p.b[i2]) + ")";
  else
    d.text += "Sec(" + factor(p.a[i1], p.b[i1]) + ")";
  return d;
}

VertexPrediction expected_vertex_status(const SVParams& p, const std::vector<std::int64_t>& v) {
  const auto layout = index_layout(p);
  if (v.size() != layout.size()) throw std::invalid_argument("point has the wrong number of coordinates");
  const std::size_t k = p.k();
  std::vector<std::int64_t> block(k, 0);
  std::vector<std::size_t> support;
  std::int64_t total = 0;
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] < 0) throw std::invalid_argument("point has a negative coordinate");
    if (v[c] == 0) continue;
    block[static_cast<std::size_t>(layout[c].first - 1)] += v[c];
    total += v[c];
    support.push_back(c);
  }
  for (std::size_t i = 0; i < k; ++i)
    if (block[i] > p.a[i]) throw std::invalid_argument("point violates a block-degree bound");
  if (total < 2) throw std::invalid_argument("point has total degree below 2");

  VertexPrediction r;
  if (total > 2) {
    // Off F, vertices of P are the vertices of the product of simplices.
    r.is_vertex = std::all_of(support.begin(), support.end(), [&](std::size_t c) {
      const auto i = static_cast<std::size_t>(layout[c].first - 1);
      return v[c] == p.a[i];
    });
    r.is_smooth = r.is_vertex;
    return r;
  }
  if (support.size() == 1) {
    const auto i = static_cast<std::size_t>(layout[support[0]].first - 1);
    r.is_vertex = true;
    if (p.a[i] >= 3 || k == 1)
      r.is_smooth = true;
    else
      r.is_smooth = k == 2 && p.b[1 - i] == 1;
    return r;
  }
  const auto i = static_cast<std::size_t>(layout[support[0]].first - 1);
  const auto ii = static_cast<std::size_t>(layout[support[1]].first - 1);
  r.is_vertex = i != ii && std::min(p.a[i], p.a[ii]) == 1;
  if (!r.is_vertex) return r;
  if (k == 2) {
    r.is_smooth = true;
  } else if (p.a[i] == 1 && p.a[ii] == 1) {
    r.is_smooth = k == 3 && p.b[3 - i - ii] == 1;
  } else {
    r.is_smooth = true;  // one of them is 1, the other at least 2
  }
  return r;
}

namespace {

struct Counts {
  std::size_t k1 = 0;
  std::size_t k2 = 0;
};

Counts counts(const SVParams& p) {
  Counts c;
  for (int x : p.a) {
    if (x == 1) ++c.k1;
    if (x == 2) ++c.k2;
  }
  return c;
}

}  // namespace

std::size_t expected_component_count(const SVParams& p) {
  const std::size_t k = p.k();
  const auto& a = p.a;
  const auto& b = p.b;
  if (k == 1) return 0;
  if (k == 2) {
    if (a[0] == 2 && a[1] == 2) return 2 - static_cast<std::size_t>((b[0] == 1) + (b[1] == 1));
    for (std::size_t i = 0; i < 2; ++i)
      if (a[i] == 2 && a[1 - i] != 2 && b[1 - i] > 1) return 1;
    return 0;
  }
  const Counts c = counts(p);
  std::size_t total = c.k1 * (c.k1 - (c.k1 > 0 ? 1 : 0)) / 2 + c.k2;
  if (k == 3) {
    for (std::size_t i3 = 0; i3 < 3; ++i3) {
      const std::size_t x = (i3 + 1) % 3;
      const std::size_t y = (i3 + 2) % 3;
      if (a[x] == 1 && a[y] == 1 && b[i3] == 1) --total;
    }
  }
  return total;
}

bool expected_vp_smooth(const SVParams& raw) {
  const SVParams p = raw.canonical();
  const auto& a = p.a;
  const auto& b = p.b;
  switch (p.k()) {
    case 1:
      return true;
    case 2:
      for (std::size_t i = 0; i < 2; ++i)
        if (a[i] == 2 && b[1 - i] > 1) return false;
      return true;
    case 3:
      return a[0] >= 3 || (a[0] == 1 && a[1] >= 3) ||
             (a == std::vector<int>{1, 1, 1} && b == std::vector<int>{1, 1, 1}) ||
             (a[0] == 1 && a[1] == 1 && b[2] == 1 && a[2] >= 3);
    default: {
      const Counts c = counts(p);
      return c.k1 < 2 && c.k2 == 0;
    }
  }
}

bool expected_sing_locus_equals_x(const SVParams& raw) {
  const SVParams p = raw.canonical();
  const auto& a = p.a;
  const auto& b = p.b;
  switch (p.k()) {
    case 1:
      return a[0] > 2 || (a[0] == 2 && b[0] > 1);
    case 2:
      return (a[0] > 2 && a[1] > 2) || (a[0] == 1 && a[1] == 1 && b[0] > 1 && b[1] > 1) ||
             (a[0] == 2 && b[1] == 1 && a[1] != 2) || (a[1] == 2 && b[0] == 1 && a[0] != 2) ||
             (a[0] == 2 && a[1] == 2 && b[0] == 1 && b[1] == 1);
    case 3:
      return a[0] >= 3 || (a[0] == 1 && a[1] >= 3) || (a[0] == 1 && a[1] == 1 && b[2] == 1 && a[2] >= 3);
    default: {
      const Counts c = counts(p);
      return c.k2 == 0 && c.k1 <= 1;
    }
  }
}

bool secant_fills_ambient(const Analysis& a) {
  if (a.dim() < 0) return true;
  return a.lifted_lattice().rank() == a.polytope().points().size();
}

SingularReport singular_report(const Analysis& a, const SVParams& p) {
  SingularReport r;
  r.components = singular_components(a);
  for (const auto& c : r.components) r.descriptions.push_back(describe_component(a, c, p));
  r.expected_count = expected_component_count(p);
  r.vp_smooth = r.components.empty();
  r.fills_ambient = secant_fills_ambient(a);
  r.sing_locus_equals_x = r.vp_smooth && !r.fills_ambient;
  r.expected_sing_locus_equals_x = expected_sing_locus_equals_x(p);
  r.agree = r.components.size() == r.expected_count;
  return r;
}

SingularReport singular_report(const SVParams& p, const Budget& budget) {
  const SVParams c = p.canonical();
  return singular_report(Analysis(build_polytope(c, budget)), c);
}

}  // namespace svsec
