#include "svsec/exact.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace svsec {

using detail::Checked64;
using detail::Grid;

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t c = rows.size() ? rows.begin()->size() : 0;
  g_ = Grid<Integer>(rows.size(), c);
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != c) throw std::invalid_argument("ragged matrix literal");
    std::size_t j = 0;
    for (long x : r) g_(i, j++) = x;
    ++i;
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(g_.data.begin() + i * g_.cols, g_.data.begin() + (i + 1) * g_.cols);
}

std::vector<IntVector> IntMatrix::row_vectors() const {
  std::vector<IntVector> out;
  out.reserve(rows());
  for (std::size_t i = 0; i < rows(); ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols(), rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVector IntMatrix::apply(const IntVector& x) const {
  if (x.size() != cols()) throw std::invalid_argument("dimension mismatch in apply");
  IntVector y(rows(), 0);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

bool IntMatrix::is_zero() const {
  return std::all_of(g_.data.begin(), g_.data.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in product");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

namespace {

std::optional<Grid<Checked64>> narrow(const Grid<Integer>& g) {
  Grid<Checked64> out(g.rows, g.cols);
  for (std::size_t i = 0; i < g.data.size(); ++i) {
    if (!g.data[i].fits_slong_p()) return std::nullopt;
    out.data[i] = static_cast<std::int64_t>(g.data[i].get_si());
  }
  return out;
}

Integer widen(Checked64 x) { return Integer(static_cast<long>(x.value())); }

// Integer row basis of {x : K x = 0} for rational rows K.
std::vector<IntVector> integer_nullspace(const std::vector<RatVector>& k, std::size_t m) {
  IntMatrix scaled(k.size(), m);
  for (std::size_t i = 0; i < k.size(); ++i) {
    Integer den = 1;
    for (const auto& q : k[i]) den = lcm(den, Integer(q.get_den()));
    for (std::size_t j = 0; j < m; ++j) {
      Rational s = k[i][j] * den;
      scaled(i, j) = s.get_num();
    }
  }
  return integer_kernel(scaled);
}

// Reduce v by Hermite rows; returns coordinates if v lies in their span over Z.
template <class T>
std::optional<std::vector<T>> hermite_coordinates(const Grid<T>& h, std::size_t rank,
                                                  const std::vector<std::size_t>& pivots,
                                                  std::vector<T> v) {
  std::vector<T> c(rank, T(0));
  for (std::size_t k = 0; k < rank; ++k) {
    const std::size_t p = pivots[k];
    for (std::size_t j = 0; j < p; ++j)
      if (v[j] != 0) return std::nullopt;
    if (v[p] == 0) continue;
    if (v[p] % h(k, p) != 0) return std::nullopt;
    T q = v[p] / h(k, p);
    c[k] = q;
    for (std::size_t j = p; j < h.cols; ++j) v[j] -= q * h(k, j);
  }
  for (const T& x : v)
    if (x != 0) return std::nullopt;
  return c;
}

template <class T>
bool all_ones(const std::vector<T>& d) {
  return std::all_of(d.begin(), d.end(), [](const T& x) { return x == 1; });
}

}  // namespace

HermiteResult hnf(const IntMatrix& m) {
  Grid<Integer> h = m.grid();
  Grid<Integer> u = Grid<Integer>::identity(m.rows());
  auto pivots = detail::hermite_in_place(h, &u);
  HermiteResult r{IntMatrix(std::move(h)), IntMatrix(std::move(u)), pivots.size(), std::move(pivots)};
  return r;
}

std::vector<Integer> snf(const IntMatrix& m) {
  if (auto small = narrow(m.grid())) {
    try {
      auto d = detail::smith_invariants(*small);
      std::vector<Integer> out;
      for (auto x : d) out.push_back(widen(x));
      return out;
    } catch (const detail::Overflow&) {
    }
  }
  return detail::smith_invariants(m.grid());
}

bool extends_to_basis(const IntMatrix& rows) {
  auto d = snf(rows);
  return d.size() == rows.rows() && all_ones(d);
}

std::size_t rank(const IntMatrix& m) {
  Grid<Integer> h = m.grid();
  return detail::hermite_in_place(h, static_cast<Grid<Integer>*>(nullptr)).size();
}

Integer determinant(const IntMatrix& square) {
  if (square.rows() != square.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = square.rows();
  if (n == 0) return 1;
  Grid<Integer> a = square.grid();
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::optional<AffineSolution> solve_affine(const IntMatrix& a, const IntVector& rhs) {
  if (rhs.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
  const std::size_t r = a.rows();
  const std::size_t c = a.cols();
  std::vector<RatVector> m(r, RatVector(c + 1));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m[i][j] = a(i, j);
    m[i][c] = rhs[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    std::size_t p = row;
    while (p < r && m[p][col] == 0) ++p;
    if (p == r) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational f = m[i][col];
      for (std::size_t j = col; j <= c; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < r; ++i)
    if (m[i][c] != 0) return std::nullopt;

  AffineSolution sol;
  sol.particular.assign(c, Rational(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) sol.particular[pivots[k]] = m[k][c];
  std::vector<bool> is_pivot(c, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < c; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(c, Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][f];
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

std::vector<IntVector> integer_kernel(const IntMatrix& m) {
  auto sol = solve_affine(m, IntVector(m.rows(), 0));
  std::vector<IntVector> out;
  for (const auto& v : sol->kernel) {
    Integer den = 1;
    for (const auto& q : v) den = lcm(den, Integer(q.get_den()));
    IntVector w(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational s = v[j] * den;
      w[j] = s.get_num();
    }
    out.push_back(primitive(std::move(w)));
  }
  return out;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& rhs) {
  if (rhs.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
  // U A^T = H, so A = H^T U^{-T}; solve H^T y = rhs and return x = U^T y.
  auto hr = hnf(a.transpose());
  const auto& h = hr.H;
  IntVector y(h.rows(), 0);
  for (std::size_t k = 0; k < hr.rank; ++k) {
    const std::size_t p = hr.pivots[k];
    Integer s = rhs[p];
    for (std::size_t r = 0; r < k; ++r) s -= y[r] * h(r, p);
    if (s % h(k, p) != 0) return std::nullopt;
    y[k] = s / h(k, p);
  }
  IntVector check(a.rows(), 0);
  for (std::size_t r = 0; r < hr.rank; ++r)
    for (std::size_t j = 0; j < a.rows(); ++j) check[j] += y[r] * h(r, j);
  if (check != rhs) return std::nullopt;
  return hr.U.transpose().apply(y);
}

LatticeBasis LatticeBasis::from_generators(const IntMatrix& generators) {
  Grid<Integer> h = generators.grid();
  auto pivots = detail::hermite_in_place(h, static_cast<Grid<Integer>*>(nullptr));
  IntMatrix b(pivots.size(), generators.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < generators.cols(); ++j) b(i, j) = h(i, j);
  return LatticeBasis(std::move(b), std::move(pivots));
}

LatticeBasis LatticeBasis::standard(std::size_t m) {
  std::vector<std::size_t> p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = i;
  return LatticeBasis(IntMatrix::identity(m), std::move(p));
}

std::optional<IntVector> LatticeBasis::coordinates(const IntVector& v) const {
  if (v.size() != ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  return hermite_coordinates(basis_.grid(), rank(), pivots_, v);
}

IntVector LatticeBasis::from_coordinates(const IntVector& c) const {
  return basis_.transpose().apply(c);
}

bool LatticeBasis::is_saturated() const { return all_ones(snf(basis_)); }

std::optional<IntVector> lattice_point_in_affine_set(const AffineSolution& solution,
                                                     const LatticeBasis& lattice) {
  const std::size_t m = lattice.ambient_dim();
  if (solution.particular.size() != m) throw std::invalid_argument("ambient dimension mismatch");
  std::vector<IntVector> w;
  if (solution.kernel.empty()) {
    w = IntMatrix::identity(m).row_vectors();
  } else {
    w = integer_nullspace(solution.kernel, m);
  }
  // Require W (B^T c) = W p for the lattice coordinates c.
  IntMatrix bt = lattice.basis().transpose();
  IntMatrix sys(w.size(), lattice.rank());
  IntVector rhs(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    Rational target = 0;
    for (std::size_t j = 0; j < m; ++j) target += w[i][j] * solution.particular[j];
    Integer den = target.get_den();
    rhs[i] = target.get_num();
    for (std::size_t r = 0; r < lattice.rank(); ++r) {
      Integer s = 0;
      for (std::size_t j = 0; j < m; ++j) s += w[i][j] * bt(j, r);
      sys(i, r) = s * den;
    }
  }
  auto c = solve_integer(sys, rhs);
  if (!c) return std::nullopt;
  return bt.apply(*c);
}

IntVector primitive(IntVector v, Orientation orientation) {
  Integer g = 0;
  for (const auto& x : v) g = detail::gcd_of(g, x);
  if (g == 0) throw std::invalid_argument("primitive() of the zero vector");
  if (orientation == Orientation::Free) {
    auto lead = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
    if (*lead < 0) g = -g;
  }
  for (auto& x : v) x /= g;
  return v;
}

IntVector to_integers(std::span<const std::int64_t> v) {
  IntVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

std::vector<std::int64_t> to_int64(const IntVector& v) {
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
    out.push_back(x.get_si());
  }
  return out;
}

LatticeBuilder::LatticeBuilder(std::size_t ambient_dim)
    : m_(ambient_dim), narrow_(0, ambient_dim), wide_rows_(0, ambient_dim) {}

std::size_t LatticeBuilder::rank() const { return pivots_.size(); }

bool LatticeBuilder::complete(std::size_t target_rank) const {
  return rank() == target_rank && saturated_;
}

void LatticeBuilder::rebuild_wide() {
  wide_rows_ = Grid<Integer>(narrow_.rows, m_);
  for (std::size_t i = 0; i < narrow_.data.size(); ++i) wide_rows_.data[i] = widen(narrow_.data[i]);
  wide_ = true;
}

namespace {

template <class T>
std::vector<T> lift(std::span<const std::int64_t> v) {
  std::vector<T> x;
  x.reserve(v.size());
  for (auto e : v) {
    if constexpr (std::is_same_v<T, Integer>) {
      x.emplace_back(static_cast<long>(e));
    } else {
      x.emplace_back(e);
    }
  }
  return x;
}

template <class T>
void builder_grow(Grid<T>& rows, std::vector<std::size_t>& pivots, bool& saturated,
                  const std::vector<T>& x) {
  Grid<T> next(pivots.size() + 1, rows.cols);
  for (std::size_t i = 0; i < pivots.size() * rows.cols; ++i) next.data[i] = rows.data[i];
  for (std::size_t j = 0; j < rows.cols; ++j) next(pivots.size(), j) = x[j];
  auto p = detail::hermite_in_place(next, static_cast<Grid<T>*>(nullptr));
  Grid<T> trimmed(p.size(), rows.cols);
  for (std::size_t i = 0; i < p.size() * rows.cols; ++i) trimmed.data[i] = next.data[i];
  auto d = detail::smith_invariants(trimmed);
  rows = std::move(trimmed);
  pivots = std::move(p);
  saturated = all_ones(d);
}

}  // namespace

bool LatticeBuilder::add(std::span<const std::int64_t> v) {
  if (v.size() != m_) throw std::invalid_argument("ambient dimension mismatch");
  if (!wide_) {
    try {
      auto x = lift<Checked64>(v);
      if (hermite_coordinates(narrow_, pivots_.size(), pivots_, x)) return false;
      auto rows = narrow_;
      auto pivots = pivots_;
      bool sat = saturated_;
      builder_grow(rows, pivots, sat, x);
      narrow_ = std::move(rows);
      pivots_ = std::move(pivots);
      saturated_ = sat;
      return true;
    } catch (const detail::Overflow&) {
      rebuild_wide();
    }
  }
  auto x = lift<Integer>(v);
  if (hermite_coordinates(wide_rows_, pivots_.size(), pivots_, x)) return false;
  builder_grow(wide_rows_, pivots_, saturated_, x);
  return true;
}

LatticeBasis LatticeBuilder::lattice() const {
  IntMatrix g(wide_ ? wide_rows_ : Grid<Integer>(narrow_.rows, m_));
  if (!wide_)
    for (std::size_t i = 0; i < narrow_.data.size(); ++i) g(i / m_, i % m_) = widen(narrow_.data[i]);
  return LatticeBasis::from_generators(g);
}

}  // namespace svsec
