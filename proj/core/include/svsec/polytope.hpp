#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "svsec/exact.hpp"

namespace svsec {

/// Name of a candidate inequality. Block and coordinate indices are 1-based.
struct Label {
  enum class Kind { F, CapR, NonNegZ, Other };
  Kind kind = Kind::Other;
  int i = 0;
  int j = 0;
  std::string text;

  static Label lower_bound_f() { return {Kind::F, 0, 0, {}}; }
  static Label cap(int i) { return {Kind::CapR, i, 0, {}}; }
  static Label nonneg(int i, int j) { return {Kind::NonNegZ, i, j, {}}; }
  static Label other(std::string t) { return {Kind::Other, 0, 0, std::move(t)}; }

  std::string str() const;
  friend auto operator<=>(const Label&, const Label&) = default;
};

/// <normal, x> >= rhs.
struct Inequality {
  std::vector<std::int64_t> normal;
  std::int64_t rhs = 0;
  Label label;

  std::int64_t slack(std::span<const std::int64_t> x) const;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Budget {
  std::uint64_t max_nodes = 10'000'000;  // search-tree nodes visited by enumeration
  std::uint64_t max_points = 0;          // 0 = unlimited
};

/// Flat list of equal-length integer points.
class PointSet {
 public:
  explicit PointSet(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? count_ : data_.size() / dim_; }
  bool empty() const { return size() == 0; }
  std::span<const std::int64_t> operator[](std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::vector<std::int64_t> point(std::size_t i) const {
    auto s = (*this)[i];
    return {s.begin(), s.end()};
  }
  void push_back(std::span<const std::int64_t> p);
  std::optional<std::size_t> find(std::span<const std::int64_t> p) const;  // binary search

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_;
  std::size_t count_ = 0;
  std::vector<std::int64_t> data_;
};

using PointVisitor = std::function<void(std::span<const std::int64_t>)>;

/// Calls visit on each integer point of the box [lo, hi] satisfying every
/// inequality, in lexicographic order, without storing them.
void for_each_point(const std::vector<Inequality>& ineqs, std::span<const std::int64_t> lo,
                    std::span<const std::int64_t> hi, const PointVisitor& visit, const Budget& budget = {});

/// Integer points of the box [lo, hi] satisfying every inequality, in
/// lexicographic order.
PointSet enumerate_points(const std::vector<Inequality>& ineqs, std::span<const std::int64_t> lo,
                          std::span<const std::int64_t> hi, const Budget& budget = {});

/// Candidate inequality system with a bounding box and its enumerated points.
class LatticePolytope {
 public:
  LatticePolytope(std::vector<Inequality> ineqs, std::vector<std::int64_t> lo,
                  std::vector<std::int64_t> hi, std::vector<std::string> coordinate_labels = {},
                  const Budget& budget = {});

  std::size_t ambient_dim() const { return lo_.size(); }
  const std::vector<Inequality>& inequalities() const { return ineqs_; }
  const PointSet& points() const { return points_; }
  std::span<const std::int64_t> lower() const { return lo_; }
  std::span<const std::int64_t> upper() const { return hi_; }
  const std::vector<std::string>& coordinate_labels() const { return labels_; }

 private:
  std::vector<Inequality> ineqs_;
  std::vector<std::int64_t> lo_;
  std::vector<std::int64_t> hi_;
  std::vector<std::string> labels_;
  PointSet points_;
};

/// Lattice points of sP (right-hand sides and box scaled by s).
PointSet dilate_points(const LatticePolytope& p, std::int64_t s, const Budget& budget = {});
void for_each_dilated_point(const LatticePolytope& p, std::int64_t s, const PointVisitor& visit,
                            const Budget& budget = {});

using FacetMask = std::uint64_t;

struct Facet {
  std::vector<std::size_t> inequalities;  // candidates sharing this tight set
  std::vector<Label> labels;
  IntVector restricted_normal;  // values on the affine lattice basis, primitive
  IntVector cone_normal;        // values on the basis of the lifted lattice, primitive
};

struct Face {
  FacetMask tight = 0;               // closed set of facets containing the face
  std::vector<std::size_t> facets;   // same set as indices
  std::vector<std::size_t> vertices; // indices into Analysis::vertices()
  int dim = -1;
};

/// Combinatorial and lattice structure of a polytope, computed once.
///
/// The lifted lattice is generated by {(1, p)}; the affine lattice is
/// generated by differences of points. Facet normals are expressed on the
/// Hermite bases of these lattices.
class Analysis {
 public:
  explicit Analysis(LatticePolytope p);

  const LatticePolytope& polytope() const { return p_; }
  int dim() const { return dim_; }
  const LatticeBasis& lifted_lattice() const { return lambda_; }
  const LatticeBasis& affine_lattice() const { return affine_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<std::size_t>& vertices() const { return vertices_; }  // point indices
  FacetMask point_mask(std::size_t point) const { return point_masks_[point]; }
  FacetMask vertex_mask(std::size_t v) const { return point_masks_[vertices_[v]]; }

  /// Smallest face whose facet set contains `tight`, or nullopt if empty.
  std::optional<Face> closure(FacetMask tight) const;
  std::vector<std::size_t> face_points(const Face& f) const;
  int face_dim(FacetMask tight) const;
  /// Every nonempty face, P first, ordered by decreasing dimension.
  std::vector<Face> faces() const;

 private:
  void compute_lattices();
  void compute_facets();
  void compute_vertices();

  LatticePolytope p_;
  int dim_ = -1;
  LatticeBasis lambda_;
  LatticeBasis affine_;
  std::vector<Facet> facets_;
  std::vector<FacetMask> point_masks_;
  std::vector<std::size_t> vertices_;
};

struct ConeData {
  std::vector<IntVector> rays;         // (1, v) for each vertex v
  std::vector<IntVector> rays_lambda;  // the same in lifted-lattice coordinates
  LatticeBasis lambda;
  std::vector<IntVector> facet_normals_lambda;
  std::size_t dim = 0;
};

/// Throws std::invalid_argument for an empty polytope.
ConeData cone_data(const Analysis& a);

}  // namespace svsec
