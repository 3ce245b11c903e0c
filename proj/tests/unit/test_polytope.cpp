#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "svsec/segre_veronese.hpp"

using namespace svsec;
using namespace svsec::test;

namespace {

Analysis analyse(std::vector<int> a, std::vector<int> b) { return Analysis(build_polytope(SVParams(a, b))); }

std::vector<std::string> facet_names(const Analysis& an) {
  std::vector<std::string> out;
  for (const auto& f : an.facets())
    for (const auto& l : f.labels) out.push_back(l.str());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t affine_rank(const std::vector<Point>& pts) {
  if (pts.empty()) return 0;
  IntMatrix diff(pts.size(), pts.front().size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts[i].size(); ++j) diff(i, j) = pts[i][j] - pts[0][j];
  return rank_by_elimination(diff);
}

std::vector<Point> tight_points(const LatticePolytope& p, const Inequality& q) {
  std::vector<Point> out;
  for (const auto& x : to_points(p.points()))
    if (q.slack(x) == 0) out.push_back(x);
  return out;
}

std::vector<Point> vertex_points(const Analysis& an) {
  std::vector<Point> out;
  for (auto v : an.vertices()) out.push_back(an.polytope().points().point(v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("enumerate_points equals a brute-force box scan") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<std::int64_t> coef(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(dim(rng));
    Point lo(n, 0);
    Point hi(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
      lo[c] = coef(rng) % 2;
      hi[c] = lo[c] + std::abs(coef(rng));
    }
    std::vector<Inequality> ineqs;
    for (int q = 0; q < 3; ++q) {
      Inequality in;
      while (std::all_of(in.normal.begin(), in.normal.end(), [](std::int64_t v) { return v == 0; })) {
        in.normal.clear();
        for (std::size_t c = 0; c < n; ++c) in.normal.push_back(coef(rng));
      }
      in.rhs = coef(rng);
      ineqs.push_back(in);
    }
    CHECK(to_points(enumerate_points(ineqs, lo, hi)) == box_points(ineqs, lo, hi));
  }
}

TEST_CASE("lattice points of small Segre-Veronese polytopes") {
  const auto p = build_polytope(SVParams({1, 2}, {1, 2}));
  const std::vector<Point> expected = {{0, 0, 2}, {0, 1, 1}, {0, 2, 0}, {1, 0, 1},
                                       {1, 0, 2}, {1, 1, 0}, {1, 1, 1}, {1, 2, 0}};
  CHECK(to_points(p.points()) == expected);
  CHECK(build_polytope(SVParams({1}, {3})).points().empty());
  CHECK(to_points(build_polytope(SVParams({1, 1}, {1, 1})).points()) == std::vector<Point>{{1, 1}});
}

TEST_CASE("dimension") {
  CHECK(analyse({1, 1}, {2, 2}).dim() == 2);
  CHECK(analyse({1, 2}, {1, 2}).dim() == 3);
  CHECK(analyse({2}, {3}).dim() == 2);
  CHECK(analyse({1}, {2}).dim() == -1);
}

TEST_CASE("facets of the worked examples") {
  const auto e2 = analyse({1, 2}, {2, 1});
  CHECK(e2.facets().size() == 5);
  const auto names = facet_names(e2);
  CHECK(std::find(names.begin(), names.end(), "Z_{2,1}") == names.end());

  // k = 3 with b_i = 1: no Z_{i,1} is a facet.
  const auto e1 = facet_names(analyse({1, 1, 1}, {1, 1, 1}));
  for (const char* z : {"Z_{1,1}", "Z_{2,1}", "Z_{3,1}"}) CHECK(std::find(e1.begin(), e1.end(), z) == e1.end());

  const auto full = facet_names(analyse({1, 2, 3}, {1, 1, 1}));
  CHECK(full == std::vector<std::string>{"F", "R_1", "R_2", "R_3", "Z_{1,1}", "Z_{2,1}", "Z_{3,1}"});
}

TEST_CASE("vertices of the worked examples") {
  CHECK(vertex_points(analyse({1, 1, 2}, {1, 1, 1})) == 
        std::vector<Point>{{0, 0, 2}, {0, 1, 1}, {0, 1, 2}, {1, 0, 1}, {1, 0, 2}, {1, 1, 0}, {1, 1, 2}});
  CHECK(vertex_points(analyse({1, 1}, {2, 2})) == std::vector<Point>{{0, 1, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, 1}, {1, 0, 1, 0}});
  const auto v = vertex_points(analyse({2, 2}, {1, 1}));
  CHECK(std::find(v.begin(), v.end(), Point{1, 1}) == v.end());
}

TEST_CASE("facets have affine rank dim - 1; other candidates do not") {
  for (const auto& params : canonical_grid(3, 3, 2)) {
    const Analysis an(build_polytope(params));
    if (an.dim() < 1) continue;
    CAPTURE(params.str());
    std::set<std::size_t> facet_ineqs;
    for (const auto& f : an.facets()) {
      for (auto i : f.inequalities) facet_ineqs.insert(i);
      const auto& q = an.polytope().inequalities()[f.inequalities.front()];
      CHECK(affine_rank(tight_points(an.polytope(), q)) == static_cast<std::size_t>(an.dim() - 1));
    }
    for (std::size_t i = 0; i < an.polytope().inequalities().size(); ++i) {
      if (facet_ineqs.count(i)) continue;
      const auto tight = tight_points(an.polytope(), an.polytope().inequalities()[i]);
      if (tight.empty() || tight.size() == an.polytope().points().size()) continue;
      CHECK(affine_rank(tight) + 1 < static_cast<std::size_t>(an.dim()));
    }
  }
}

TEST_CASE("vertices equal points outside the hull of the others") {
  for (const auto& params : canonical_grid(3, 3, 3)) {
    if (predicted_point_count(params) > 12) continue;
    const Analysis an(build_polytope(params));
    CAPTURE(params.str());
    CHECK(vertex_points(an) == vertices_by_caratheodory(to_points(an.polytope().points())));
  }
}

TEST_CASE("face lattice") {
  CHECK(analyse({1, 1}, {2, 2}).faces().size() == 9);
  CHECK(analyse({1, 1}, {1, 1}).faces().size() == 1);

  // Faces are the distinct nonempty tight point sets of facet subsets.
  for (const auto& params : canonical_grid(2, 2, 2)) {
    const Analysis an(build_polytope(params));
    if (an.dim() < 0) continue;
    CAPTURE(params.str());
    const auto faces = an.faces();
    const std::size_t nf = an.facets().size();
    const std::size_t np = an.polytope().points().size();
    std::set<std::vector<std::size_t>> brute;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << nf); ++s) {
      std::vector<std::size_t> pts;
      for (std::size_t i = 0; i < np; ++i)
        if ((an.point_mask(i) & s) == s) pts.push_back(i);
      if (!pts.empty()) brute.insert(pts);
    }
    std::set<std::vector<std::size_t>> computed;
    for (const auto& f : faces) computed.insert(an.face_points(f));
    CHECK(computed == brute);

    // Closed under intersection and graded by dimension.
    for (const auto& f : faces)
      for (const auto& g : faces) {
        const auto meet = an.closure(f.tight | g.tight);
        if (!meet) continue;
        CHECK(computed.count(an.face_points(*meet)) == 1);
        if (meet->tight != f.tight) CHECK(meet->dim < f.dim);
      }
  }
}

TEST_CASE("cone over P") {
  const auto smooth = cone_data(analyse({1, 1}, {1, 2}));
  std::set<IntVector> rays(smooth.rays.begin(), smooth.rays.end());
  CHECK(rays == std::set<IntVector>{{1, 1, 0, 1}, {1, 1, 1, 0}});
  CHECK(smooth.lambda.rank() == 2);

  const auto full = cone_data(analyse({1, 2}, {1, 2}));
  CHECK(full.lambda.rank() == 4);
  CHECK(full.facet_normals_lambda.size() == 5);  // Z_{1,1} is not a facet

  CHECK_THROWS_AS(cone_data(analyse({1}, {1})), std::invalid_argument);
}

TEST_CASE("cone rays are tight on rank - 1 facet normals and interior evaluations are positive") {
  for (const auto& params : canonical_grid(3, 3, 2)) {
    const Analysis an(build_polytope(params));
    if (an.dim() < 1) continue;
    CAPTURE(params.str());
    const auto cd = cone_data(an);
    IntVector interior(cd.dim, 0);
    for (const auto& r : cd.rays_lambda)
      for (std::size_t i = 0; i < cd.dim; ++i) interior[i] += r[i];
    for (const auto& r : cd.rays_lambda) {
      std::size_t tight = 0;
      for (const auto& u : cd.facet_normals_lambda) {
        Integer s = 0;
        for (std::size_t i = 0; i < cd.dim; ++i) s += u[i] * r[i];
        CHECK(s >= 0);
        if (s == 0) ++tight;
      }
      CHECK(tight + 1 >= cd.dim);
    }
    for (const auto& u : cd.facet_normals_lambda) {
      Integer s = 0;
      for (std::size_t i = 0; i < cd.dim; ++i) s += u[i] * interior[i];
      CHECK(s > 0);
    }
  }
}

TEST_CASE("dilations") {
  const auto p = build_polytope(SVParams({1, 2}, {1, 2}));
  CHECK(dilate_points(p, 1) == p.points());
  CHECK(to_points(dilate_points(build_polytope(SVParams({1, 1}, {1, 1})), 2)) == std::vector<Point>{{2, 2}});
  const auto sums = brute_force_sums(to_points(p.points()), 2);
  CHECK(to_points(dilate_points(p, 2)) == std::vector<Point>(sums.begin(), sums.end()));
}
