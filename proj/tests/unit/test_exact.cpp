#include <doctest.h>

#include "oracles.hpp"
#include "svsec/exact.hpp"

using namespace svsec;
using namespace svsec::test;

TEST_CASE("hnf of small fixed matrices") {
  const auto id = hnf(IntMatrix::identity(3));
  CHECK(id.H == IntMatrix::identity(3));
  CHECK(id.rank == 3);

  const auto h = hnf(IntMatrix{{2, 4}, {1, 1}});
  CHECK(h.H == IntMatrix{{1, 1}, {0, 2}});

  const auto z = hnf(IntMatrix(2, 3));
  CHECK(z.rank == 0);
  CHECK(z.H.is_zero());
}

TEST_CASE("hnf randomized: U unimodular, U m = H, canonical form, row-equivalence invariance") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  for (int trial = 0; trial < 1200; ++trial) {
    const std::size_t r = size(rng);
    const std::size_t c = size(rng);
    const IntMatrix m = random_matrix(rng, r, c, 9);
    const HermiteResult h = hnf(m);
    CAPTURE(trial);
    REQUIRE(h.U.rows() == r);
    CHECK(abs(laplace_det(h.U)) == 1);
    CHECK(h.U * m == h.H);
    CHECK(is_hermite(h));
    CHECK(h.rank == rank_by_elimination(m));
    // The HNF only depends on the row lattice.
    CHECK(hnf(random_unimodular(rng, r) * m).H == h.H);
  }
}

TEST_CASE("snf of small fixed matrices") {
  CHECK(snf(IntMatrix::identity(3)) == std::vector<Integer>{1, 1, 1});
  CHECK(snf(IntMatrix{{2, 0}, {0, 3}}) == std::vector<Integer>{1, 6});
  CHECK(snf(IntMatrix{{1, 1, 0, 1}, {1, 1, 1, 0}}) == std::vector<Integer>{1, 1});
}

TEST_CASE("snf randomized: divisibility chain and determinantal divisors") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> size(1, 4);
  for (int trial = 0; trial < 1200; ++trial) {
    const std::size_t r = size(rng);
    const std::size_t c = size(rng);
    const IntMatrix m = random_matrix(rng, r, c, 9);
    const auto d = snf(m);
    CAPTURE(trial);
    REQUIRE(d.size() == rank_by_elimination(m));
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(d[i] > 0);
      if (i + 1 < d.size()) CHECK(d[i + 1] % d[i] == 0);
    }
    // d_1 ... d_i = gcd of all i x i minors.
    Integer prod = 1;
    for (std::size_t i = 0; i < d.size(); ++i) {
      prod *= d[i];
      CHECK(prod == gcd_of_minors(m, i + 1));
    }
    const IntMatrix left = random_unimodular(rng, r);
    const IntMatrix right = random_unimodular(rng, c);
    CHECK(snf(left * m * right) == d);
  }
}

TEST_CASE("determinant and rank agree with cofactor expansion") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = size(rng);
    const IntMatrix m = random_matrix(rng, n, n, 9);
    CHECK(determinant(m) == laplace_det(m));
    CHECK(rank(m) == rank_by_elimination(m));
  }
}

TEST_CASE("extends_to_basis matches the gcd of maximal minors") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> size(1, 4);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t c = size(rng);
    std::uniform_int_distribution<std::size_t> rows(1, c);
    const std::size_t r = rows(rng);
    const IntMatrix m = random_matrix(rng, r, c, 3);
    const bool expected = rank_by_elimination(m) == r && gcd_of_minors(m, r) == 1;
    CHECK(extends_to_basis(m) == expected);
  }
}

TEST_CASE("solve_affine and integer_kernel re-substitute") {
  const auto half = solve_affine(IntMatrix{{2}}, IntVector{1});
  REQUIRE(half);
  CHECK(half->particular == RatVector{Rational(1, 2)});
  CHECK(half->kernel.empty());
  CHECK_FALSE(solve_affine(IntMatrix{{1}, {1}}, IntVector{1, 2}));

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t r = size(rng);
    const std::size_t c = size(rng);
    const IntMatrix a = random_matrix(rng, r, c, 5);
    const IntMatrix x0 = random_matrix(rng, c, 1, 5);
    const IntVector rhs = (a * x0).transpose().row(0);
    const auto sol = solve_affine(a, rhs);
    REQUIRE(sol);
    CHECK(rat_apply(a, sol->particular) == to_rationals(rhs));
    for (const auto& k : sol->kernel) CHECK(rat_apply(a, k) == RatVector(r, 0));
    CHECK(sol->kernel.size() == c - rank_by_elimination(a));
    for (const auto& k : integer_kernel(a)) CHECK(a.apply(k) == IntVector(r, 0));
    const auto xi = solve_integer(a, rhs);
    REQUIRE(xi);
    CHECK(a.apply(*xi) == rhs);
  }
}

TEST_CASE("lattice_point_in_affine_set") {
  // beta_0 = 3/2 is forced, so no integral solution exists.
  AffineSolution forced{{Rational(3, 2), 2, 2}, {}};
  CHECK_FALSE(lattice_point_in_affine_set(forced, LatticeBasis::standard(3)));

  AffineSolution integral{{2, 1, 1, 1, 1}, {}};
  const auto p = lattice_point_in_affine_set(integral, LatticeBasis::standard(5));
  REQUIRE(p);
  CHECK(*p == IntVector{2, 1, 1, 1, 1});

  // The line (1/2 + s/2, s) meets Z^2 at odd s and misses 2Z^2.
  AffineSolution line{{Rational(1, 2), 0}, {{Rational(1, 2), 1}}};
  CHECK_FALSE(lattice_point_in_affine_set(line, LatticeBasis::from_generators(IntMatrix{{2, 0}, {0, 2}})));
  const auto q = lattice_point_in_affine_set(line, LatticeBasis::standard(2));
  REQUIRE(q);
  CHECK((*q)[1] % 2 != 0);
  CHECK(Rational((*q)[0]) == Rational(1, 2) + Rational((*q)[1]) / 2);
}

TEST_CASE("primitive") {
  CHECK(primitive({2, 4, 6}) == IntVector{1, 2, 3});
  CHECK(primitive({0, -3, 0}) == IntVector{0, -1, 0});
  CHECK(primitive({0, -3, 0}, Orientation::Free) == IntVector{0, 1, 0});
  CHECK(primitive({5}) == IntVector{1});
  CHECK_THROWS_AS(primitive({0, 0}), std::invalid_argument);
}

TEST_CASE("LatticeBuilder agrees with LatticeBasis::from_generators") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t dim = size(rng);
    const std::size_t count = size(rng) + 1;
    const IntMatrix gens = random_matrix(rng, count, dim, 6);
    LatticeBuilder b(dim);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<std::int64_t> v;
      for (std::size_t j = 0; j < dim; ++j) v.push_back(gens(i, j).get_si());
      b.add(v);
    }
    CHECK(b.lattice() == LatticeBasis::from_generators(gens));
    CHECK(b.rank() == rank_by_elimination(gens));
  }
}

TEST_CASE("64-bit fast path falls back to big integers") {
  const std::int64_t big = std::int64_t{1} << 62;
  LatticeBuilder b(2);
  b.add(std::vector<std::int64_t>{big, 3});
  b.add(std::vector<std::int64_t>{3, big});
  IntMatrix gens(2, 2);
  gens(0, 0) = Integer(big);
  gens(0, 1) = 3;
  gens(1, 0) = 3;
  gens(1, 1) = Integer(big);
  CHECK(b.lattice() == LatticeBasis::from_generators(gens));
  CHECK_THROWS_AS(to_int64(IntVector{Integer("100000000000000000000")}), std::overflow_error);
}
