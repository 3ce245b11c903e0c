#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "svsec/detail/integer_algorithms.hpp"

namespace svsec {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense arbitrary-precision integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : g_(rows, cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  explicit IntMatrix(detail::Grid<Integer> g) : g_(std::move(g)) {}

  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix identity(std::size_t n) { return IntMatrix(detail::Grid<Integer>::identity(n)); }

  std::size_t rows() const { return g_.rows; }
  std::size_t cols() const { return g_.cols; }
  Integer& operator()(std::size_t i, std::size_t j) { return g_(i, j); }
  const Integer& operator()(std::size_t i, std::size_t j) const { return g_(i, j); }

  IntVector row(std::size_t i) const;
  std::vector<IntVector> row_vectors() const;
  IntMatrix transpose() const;
  IntVector apply(const IntVector& x) const;  // this * x
  bool is_zero() const;

  const detail::Grid<Integer>& grid() const { return g_; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.g_.rows == b.g_.rows && a.g_.cols == b.g_.cols && a.g_.data == b.g_.data;
  }

 private:
  detail::Grid<Integer> g_;
};

struct HermiteResult {
  IntMatrix H;  // row Hermite normal form, zero rows last
  IntMatrix U;  // unimodular, U * m == H
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

HermiteResult hnf(const IntMatrix& m);

/// Nonzero Smith invariant factors, each dividing the next.
std::vector<Integer> snf(const IntMatrix& m);

/// True iff the rows of m are part of a basis of Z^cols.
bool extends_to_basis(const IntMatrix& rows);

std::size_t rank(const IntMatrix& m);
Integer determinant(const IntMatrix& square);

struct AffineSolution {
  RatVector particular;
  std::vector<RatVector> kernel;
};

/// Rational solution set of A x = rhs, or nullopt if inconsistent.
std::optional<AffineSolution> solve_affine(const IntMatrix& a, const IntVector& rhs);

/// Primitive integer vectors spanning {x : m x = 0} over Q.
std::vector<IntVector> integer_kernel(const IntMatrix& m);

/// Some integer x with A x = rhs, or nullopt.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& rhs);

/// Sublattice of Z^m stored by its canonical Hermite basis.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  static LatticeBasis from_generators(const IntMatrix& generators);
  static LatticeBasis standard(std::size_t m);

  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }
  std::optional<IntVector> coordinates(const IntVector& v) const;
  IntVector from_coordinates(const IntVector& c) const;
  /// Lattice equals the integer points of its rational span.
  bool is_saturated() const;

  friend bool operator==(const LatticeBasis&, const LatticeBasis&) = default;

 private:
  LatticeBasis(IntMatrix b, std::vector<std::size_t> p) : basis_(std::move(b)), pivots_(std::move(p)) {}
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Some lattice element of particular + span(kernel), or nullopt.
std::optional<IntVector> lattice_point_in_affine_set(const AffineSolution& solution,
                                                     const LatticeBasis& lattice);

enum class Orientation { Preserve, Free };

/// v divided by the gcd of its entries. Free also makes the first nonzero
/// entry positive. Throws std::invalid_argument on the zero vector.
IntVector primitive(IntVector v, Orientation orientation = Orientation::Preserve);

/// Builds the lattice generated by a stream of small integer vectors, using
/// 64-bit arithmetic until it would overflow.
class LatticeBuilder {
 public:
  explicit LatticeBuilder(std::size_t ambient_dim);

  /// Returns true if v enlarged the lattice.
  bool add(std::span<const std::int64_t> v);
  std::size_t rank() const;
  /// Rank equals target and the lattice is saturated; further vectors in the
  /// same span cannot change it.
  bool complete(std::size_t target_rank) const;
  LatticeBasis lattice() const;

 private:
  void rebuild_wide();
  std::size_t m_;
  bool wide_ = false;
  detail::Grid<detail::Checked64> narrow_;
  detail::Grid<Integer> wide_rows_;
  std::vector<std::size_t> pivots_;
  bool saturated_ = false;
};

IntVector to_integers(std::span<const std::int64_t> v);
/// Throws std::overflow_error if an entry does not fit.
std::vector<std::int64_t> to_int64(const IntVector& v);

/// Runs f with detail::Checked64 and retries with Integer on overflow.
template <class F>
auto with_overflow_fallback(F&& f) {
  try {
    return f(detail::Checked64{});
  } catch (const detail::Overflow&) {
    return f(Integer{});
  }
}

}  // namespace svsec
