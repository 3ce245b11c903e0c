#include "svsec/polytope.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace svsec {

std::string Label::str() const {
  switch (kind) {
    case Kind::F:
      return "F";
    case Kind::CapR:
      return "R_" + std::to_string(i);
    case Kind::NonNegZ:
      return "Z_{" + std::to_string(i) + "," + std::to_string(j) + "}";
    case Kind::Other:
      break;
  }
  return text;
}

std::int64_t Inequality::slack(std::span<const std::int64_t> x) const {
  std::int64_t s = -rhs;
  for (std::size_t j = 0; j < normal.size(); ++j) s += normal[j] * x[j];
  return s;
}

void PointSet::push_back(std::span<const std::int64_t> p) {
  if (p.size() != dim_) throw std::invalid_argument("point dimension mismatch");
  data_.insert(data_.end(), p.begin(), p.end());
  ++count_;
}

std::optional<std::size_t> PointSet::find(std::span<const std::int64_t> p) const {
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto q = (*this)[mid];
    if (std::lexicographical_compare(q.begin(), q.end(), p.begin(), p.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size() && std::ranges::equal((*this)[lo], p)) return lo;
  return std::nullopt;
}

namespace {

struct Enumerator {
  const std::vector<Inequality>& ineqs;
  std::span<const std::int64_t> lo;
  std::span<const std::int64_t> hi;
  const Budget& budget;
  std::size_t n;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> column;
  std::vector<std::vector<std::int64_t>> best_rest;  // [depth][ineq]
  std::vector<std::int64_t> partial;
  std::vector<std::int64_t> x;
  std::uint64_t nodes = 0;
  std::uint64_t found = 0;
  const PointVisitor& sink;

  Enumerator(const std::vector<Inequality>& in, std::span<const std::int64_t> l,
             std::span<const std::int64_t> h, const Budget& b, const PointVisitor& v)
      : ineqs(in), lo(l), hi(h), budget(b), n(l.size()), column(n),
        best_rest(n + 1, std::vector<std::int64_t>(in.size(), 0)), partial(in.size(), 0), x(n, 0),
        sink(v) {
    for (std::size_t c = 0; c < ineqs.size(); ++c)
      for (std::size_t j = 0; j < n; ++j)
        if (ineqs[c].normal[j] != 0) column[j].emplace_back(c, ineqs[c].normal[j]);
    for (std::size_t d = n; d-- > 0;)
      for (std::size_t c = 0; c < ineqs.size(); ++c) {
        std::int64_t a = ineqs[c].normal[d];
        best_rest[d][c] = best_rest[d + 1][c] + std::max(a * lo[d], a * hi[d]);
      }
  }

  void visit(std::size_t d) {
    if (++nodes > budget.max_nodes)
      throw BudgetExceeded("enumeration exceeded " + std::to_string(budget.max_nodes) + " search nodes");
    if (d == n) {
      if (budget.max_points != 0 && ++found > budget.max_points)
        throw BudgetExceeded("enumeration exceeded " + std::to_string(budget.max_points) + " points");
      sink(x);
      return;
    }
    for (std::int64_t v = lo[d]; v <= hi[d]; ++v) {
      x[d] = v;
      bool feasible = true;
      for (auto [c, a] : column[d]) {
        partial[c] += a * v;
        if (partial[c] + best_rest[d + 1][c] < ineqs[c].rhs) feasible = false;
      }
      if (feasible) visit(d + 1);
      for (auto [c, a] : column[d]) partial[c] -= a * v;
    }
  }
};

template <class T>
std::vector<T> lifted(std::span<const std::int64_t> p) {
  std::vector<T> v;
  v.reserve(p.size() + 1);
  v.emplace_back(1);
  for (auto x : p) {
    if constexpr (std::is_same_v<T, Integer>) {
      v.emplace_back(static_cast<long>(x));
    } else {
      v.emplace_back(x);
    }
  }
  return v;
}

template <class T>
std::vector<T> from_integers(const IntVector& v) {
  std::vector<T> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if constexpr (std::is_same_v<T, Integer>) {
      out.push_back(x);
    } else {
      if (!x.fits_slong_p()) throw detail::Overflow{};
      out.emplace_back(static_cast<std::int64_t>(x.get_si()));
    }
  }
  return out;
}

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void for_each_point(const std::vector<Inequality>& ineqs, std::span<const std::int64_t> lo,
                    std::span<const std::int64_t> hi, const PointVisitor& visit, const Budget& budget) {
  if (lo.size() != hi.size()) throw std::invalid_argument("box bounds differ in length");
  for (const auto& q : ineqs) {
    if (q.normal.size() != lo.size()) throw std::invalid_argument("inequality dimension mismatch");
    if (std::ranges::all_of(q.normal, [](std::int64_t a) { return a == 0; }))
      throw std::invalid_argument("inequality with zero normal");
  }
  for (std::size_t j = 0; j < lo.size(); ++j)
    if (lo[j] > hi[j]) return;
  Enumerator e(ineqs, lo, hi, budget, visit);
  for (std::size_t c = 0; c < ineqs.size(); ++c)
    if (e.best_rest[0][c] < ineqs[c].rhs) return;
  e.visit(0);
}

PointSet enumerate_points(const std::vector<Inequality>& ineqs, std::span<const std::int64_t> lo,
                          std::span<const std::int64_t> hi, const Budget& budget) {
  PointSet out(lo.size());
  for_each_point(ineqs, lo, hi, [&](std::span<const std::int64_t> x) { out.push_back(x); }, budget);
  return out;
}

LatticePolytope::LatticePolytope(std::vector<Inequality> ineqs, std::vector<std::int64_t> lo,
                                 std::vector<std::int64_t> hi, std::vector<std::string> coordinate_labels,
                                 const Budget& budget)
    : ineqs_(std::move(ineqs)), lo_(std::move(lo)), hi_(std::move(hi)),
      labels_(std::move(coordinate_labels)), points_(lo_.size()) {
  if (!labels_.empty() && labels_.size() != lo_.size())
    throw std::invalid_argument("coordinate label count mismatch");
  points_ = enumerate_points(ineqs_, lo_, hi_, budget);
}

void for_each_dilated_point(const LatticePolytope& p, std::int64_t s, const PointVisitor& visit,
                            const Budget& budget) {
  if (s < 1) throw std::invalid_argument("dilation factor must be positive");
  auto ineqs = p.inequalities();
  for (auto& q : ineqs) q.rhs *= s;
  std::vector<std::int64_t> lo(p.lower().begin(), p.lower().end());
  std::vector<std::int64_t> hi(p.upper().begin(), p.upper().end());
  for (auto& v : lo) v *= s;
  for (auto& v : hi) v *= s;
  for_each_point(ineqs, lo, hi, visit, budget);
}

PointSet dilate_points(const LatticePolytope& p, std::int64_t s, const Budget& budget) {
  PointSet out(p.ambient_dim());
  for_each_dilated_point(p, s, [&](std::span<const std::int64_t> x) { out.push_back(x); }, budget);
  return out;
}

Analysis::Analysis(LatticePolytope p) : p_(std::move(p)) {
  if (p_.inequalities().size() > 64) throw std::length_error("at most 64 candidate inequalities supported");
  compute_lattices();
  if (dim_ < 0) return;
  compute_facets();
  compute_vertices();
}

void Analysis::compute_lattices() {
  const std::size_t n = p_.ambient_dim();
  const PointSet& pts = p_.points();
  if (pts.empty()) {
    dim_ = -1;
    lambda_ = LatticeBasis::from_generators(IntMatrix(0, n + 1));
    affine_ = LatticeBasis::from_generators(IntMatrix(0, n));
    return;
  }
  const std::size_t r = with_overflow_fallback([&](auto tag) {
    using T = decltype(tag);
    detail::EchelonBasis<T> e(n + 1);
    for (std::size_t i = 0; i < pts.size() && e.rank() < n + 1; ++i) e.add(lifted<T>(pts[i]));
    return e.rank();
  });
  dim_ = static_cast<int>(r) - 1;

  LatticeBuilder builder(n + 1);
  for (std::size_t i = 0; i < pts.size() && !builder.complete(r); ++i) {
    auto v = lifted<std::int64_t>(pts[i]);
    builder.add(v);
  }
  lambda_ = builder.lattice();

  // Rows past the first have zero leading entry and generate the differences.
  IntMatrix diff(lambda_.rank() - 1, n);
  for (std::size_t i = 1; i < lambda_.rank(); ++i)
    for (std::size_t j = 0; j < n; ++j) diff(i - 1, j) = lambda_.basis()(i, j + 1);
  affine_ = LatticeBasis::from_generators(diff);
}

void Analysis::compute_facets() {
  const auto& ineqs = p_.inequalities();
  const PointSet& pts = p_.points();
  const std::size_t m = ineqs.size();
  const std::size_t npts = pts.size();

  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> sparse(m);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t j = 0; j < ineqs[c].normal.size(); ++j)
      if (ineqs[c].normal[j] != 0) sparse[c].emplace_back(j, ineqs[c].normal[j]);

  std::vector<FacetMask> cand(npts, 0);
  std::vector<std::size_t> count(m, 0);
  std::vector<std::uint64_t> hash(m, 0);
  for (std::size_t i = 0; i < npts; ++i) {
    auto x = pts[i];
    FacetMask mask = 0;
    for (std::size_t c = 0; c < m; ++c) {
      std::int64_t s = -ineqs[c].rhs;
      for (auto [j, a] : sparse[c]) s += a * x[j];
      if (s == 0) {
        mask |= FacetMask{1} << c;
        ++count[c];
        hash[c] += mix(i);
      }
    }
    cand[i] = mask;
  }

  const std::size_t target = static_cast<std::size_t>(dim_);
  std::vector<bool> is_facet(m, false);
  for (std::size_t c = 0; c < m; ++c) {
    if (count[c] == 0 || count[c] == npts) continue;
    const FacetMask bit = FacetMask{1} << c;
    const std::size_t r = with_overflow_fallback([&](auto tag) {
      using T = decltype(tag);
      detail::EchelonBasis<T> e(p_.ambient_dim() + 1);
      for (std::size_t i = 0; i < npts && e.rank() < target; ++i)
        if (cand[i] & bit) e.add(lifted<T>(pts[i]));
      return e.rank();
    });
    is_facet[c] = (r == target);
  }

  std::vector<std::ptrdiff_t> facet_of(m, -1);
  for (std::size_t c = 0; c < m; ++c) {
    if (!is_facet[c]) continue;
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      const std::size_t c0 = facets_[f].inequalities.front();
      if (count[c0] != count[c] || hash[c0] != hash[c]) continue;
      const FacetMask both = (FacetMask{1} << c0) | (FacetMask{1} << c);
      bool same = std::all_of(cand.begin(), cand.end(), [&](FacetMask mk) {
        FacetMask t = mk & both;
        return t == 0 || t == both;
      });
      if (same) {
        facet_of[c] = static_cast<std::ptrdiff_t>(f);
        break;
      }
    }
    if (facet_of[c] < 0) {
      facet_of[c] = static_cast<std::ptrdiff_t>(facets_.size());
      facets_.push_back({});
    }
    auto& f = facets_[static_cast<std::size_t>(facet_of[c])];
    f.inequalities.push_back(c);
    f.labels.push_back(ineqs[c].label);
  }

  const auto& w = affine_.basis();
  const auto& l = lambda_.basis();
  for (auto& f : facets_) {
    const auto& q = ineqs[f.inequalities.front()];
    IntVector restricted(w.rows(), 0);
    for (std::size_t r = 0; r < w.rows(); ++r)
      for (std::size_t j = 0; j < w.cols(); ++j) restricted[r] += static_cast<long>(q.normal[j]) * w(r, j);
    IntVector cone(l.rows(), 0);
    for (std::size_t r = 0; r < l.rows(); ++r) {
      cone[r] = -static_cast<long>(q.rhs) * l(r, 0);
      for (std::size_t j = 0; j < q.normal.size(); ++j) cone[r] += static_cast<long>(q.normal[j]) * l(r, j + 1);
    }
    f.restricted_normal = primitive(std::move(restricted));
    f.cone_normal = primitive(std::move(cone));
  }

  point_masks_.assign(npts, 0);
  for (std::size_t i = 0; i < npts; ++i) {
    FacetMask mk = cand[i];
    FacetMask out = 0;
    while (mk) {
      const int c = std::countr_zero(mk);
      mk &= mk - 1;
      if (facet_of[static_cast<std::size_t>(c)] >= 0) out |= FacetMask{1} << facet_of[static_cast<std::size_t>(c)];
    }
    point_masks_[i] = out;
  }
}

int Analysis::face_dim(FacetMask tight) const {
  if (dim_ <= 0) return dim_;
  const std::size_t r = with_overflow_fallback([&](auto tag) {
    using T = decltype(tag);
    detail::EchelonBasis<T> e(affine_.rank());
    FacetMask mk = tight;
    while (mk) {
      const int f = std::countr_zero(mk);
      mk &= mk - 1;
      e.add(from_integers<T>(facets_[static_cast<std::size_t>(f)].restricted_normal));
    }
    return e.rank();
  });
  return dim_ - static_cast<int>(r);
}

void Analysis::compute_vertices() {
  if (dim_ == 0) {
    vertices_ = {0};
    return;
  }
  std::unordered_map<FacetMask, bool> memo;
  for (std::size_t i = 0; i < point_masks_.size(); ++i) {
    const FacetMask mk = point_masks_[i];
    if (std::popcount(mk) < dim_) continue;
    auto it = memo.find(mk);
    if (it == memo.end()) it = memo.emplace(mk, face_dim(mk) == 0).first;
    if (it->second) vertices_.push_back(i);
  }
}

std::optional<Face> Analysis::closure(FacetMask tight) const {
  Face face;
  FacetMask acc = ~FacetMask{0};
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const FacetMask vm = vertex_mask(v);
    if ((vm & tight) != tight) continue;
    acc &= vm;
    face.vertices.push_back(v);
  }
  if (face.vertices.empty()) return std::nullopt;
  face.tight = acc;
  for (std::size_t f = 0; f < facets_.size(); ++f)
    if (acc >> f & 1) face.facets.push_back(f);
  face.dim = face_dim(acc);
  return face;
}

std::vector<std::size_t> Analysis::face_points(const Face& f) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < point_masks_.size(); ++i)
    if ((point_masks_[i] & f.tight) == f.tight) out.push_back(i);
  return out;
}

std::vector<Face> Analysis::faces() const {
  if (facets_.size() > 40) throw std::length_error("face enumeration is limited to 40 facets");
  std::vector<Face> out;
  auto top = closure(0);
  if (!top) return out;
  std::unordered_set<FacetMask> seen{top->tight};
  std::deque<Face> queue{*top};
  while (!queue.empty()) {
    Face face = std::move(queue.front());
    queue.pop_front();
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (face.tight >> f & 1) continue;
      auto child = closure(face.tight | FacetMask{1} << f);
      if (child && seen.insert(child->tight).second) queue.push_back(std::move(*child));
    }
    out.push_back(std::move(face));
  }
  std::stable_sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim > b.dim;
    return a.tight < b.tight;
  });
  return out;
}

ConeData cone_data(const Analysis& a) {
  if (a.dim() < 0) throw std::invalid_argument("cone over an empty polytope");
  ConeData cd;
  cd.lambda = a.lifted_lattice();
  cd.dim = cd.lambda.rank();
  const PointSet& pts = a.polytope().points();
  for (std::size_t v : a.vertices()) {
    IntVector ray{Integer(1)};
    for (auto x : pts[v]) ray.emplace_back(static_cast<long>(x));
    cd.rays_lambda.push_back(*cd.lambda.coordinates(ray));
    cd.rays.push_back(std::move(ray));
  }
  if (a.dim() == 0) {
    cd.facet_normals_lambda.push_back(IntVector{Integer(1)});
  } else {
    for (const auto& f : a.facets()) cd.facet_normals_lambda.push_back(f.cone_normal);
  }
  return cd;
}

}  // namespace svsec
