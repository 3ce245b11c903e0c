#pragma once

// Integer row reduction shared by the arbitrary-precision API and the
// overflow-checked 64-bit fast paths. T is mpz_class or Checked64.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "svsec/detail/checked.hpp"

namespace svsec::detail {

template <class T>
T abs_of(const T& x) {
  return x < 0 ? T(-x) : x;
}

template <class T>
T floor_div(const T& a, const T& b) {
  T q = a / b;
  T r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) q = q - 1;
  return q;
}

inline mpz_class gcd_of(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Checked64 gcd_of(Checked64 a, Checked64 b) {
  std::int64_t x = a.value() < 0 ? -a.value() : a.value();
  std::int64_t y = b.value() < 0 ? -b.value() : b.value();
  while (y != 0) {
    std::int64_t t = x % y;
    x = y;
    y = t;
  }
  return x;
}

/// Row-major dense matrix used internally by the reduction routines.
template <class T>
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Grid() = default;
  Grid(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static Grid identity(std::size_t n) {
    Grid g(n, n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = 1;
    return g;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] -= q * row[src], columns [from, cols)
  void sub_row(std::size_t dst, std::size_t src, const T& q, std::size_t from = 0) {
    for (std::size_t j = from; j < cols; ++j) (*this)(dst, j) -= q * (*this)(src, j);
  }
  void sub_col(std::size_t dst, std::size_t src, const T& q) {
    for (std::size_t i = 0; i < rows; ++i) (*this)(i, dst) -= q * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols; ++j) (*this)(r, j) = -(*this)(r, j);
  }
};

/// In-place row Hermite normal form. When `u` is given, the same row
/// operations are applied to it. Returns pivot columns (one per nonzero row).
template <class T>
std::vector<std::size_t> hermite_in_place(Grid<T>& h, Grid<T>* u) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols && row < h.rows; ++col) {
    bool found = false;
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = row; i < h.rows; ++i) {
        if (h(i, col) != 0 && (!best || abs_of(h(i, col)) < abs_of(h(*best, col)))) best = i;
      }
      if (!best) break;
      found = true;
      h.swap_rows(*best, row);
      if (u) u->swap_rows(*best, row);
      bool clean = true;
      for (std::size_t i = row + 1; i < h.rows; ++i) {
        if (h(i, col) == 0) continue;
        T q = floor_div(h(i, col), h(row, col));
        h.sub_row(i, row, q, col);
        if (u) u->sub_row(i, row, q);
        if (h(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!found) continue;
    if (h(row, col) < 0) {
      h.negate_row(row);
      if (u) u->negate_row(row);
    }
    for (std::size_t i = 0; i < row; ++i) {
      if (h(i, col) == 0) continue;
      T q = floor_div(h(i, col), h(row, col));
      h.sub_row(i, row, q, col);
      if (u) u->sub_row(i, row, q);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Nonzero Smith invariant factors d_1 | d_2 | ... (positive).
template <class T>
std::vector<T> smith_invariants(Grid<T> a) {
  std::vector<T> diag;
  const std::size_t lim = std::min(a.rows, a.cols);
  for (std::size_t t = 0; t < lim; ++t) {
    auto move_min_to_corner = [&](bool whole) -> bool {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < a.rows; ++i) {
        for (std::size_t j = t; j < a.cols; ++j) {
          if (!whole && i != t && j != t) continue;
          if (a(i, j) == 0) continue;
          if (!best || abs_of(a(i, j)) < abs_of(a(best->first, best->second))) best = {i, j};
        }
      }
      if (!best) return false;
      a.swap_rows(t, best->first);
      a.swap_cols(t, best->second);
      return true;
    };
    if (!move_min_to_corner(true)) break;
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < a.rows; ++i) {
        if (a(i, t) == 0) continue;
        T q = floor_div(a(i, t), a(t, t));
        a.sub_row(i, t, q, t);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < a.cols; ++j) {
        if (a(t, j) == 0) continue;
        T q = floor_div(a(t, j), a(t, t));
        a.sub_col(j, t, q);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) {
        move_min_to_corner(false);
        continue;
      }
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < a.rows && !bad_row; ++i) {
        for (std::size_t j = t + 1; j < a.cols; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            bad_row = i;
            break;
          }
        }
      }
      if (!bad_row) break;
      for (std::size_t j = t; j < a.cols; ++j) a(t, j) += a(*bad_row, j);
    }
    diag.push_back(abs_of(a(t, t)));
  }
  return diag;
}

/// Incrementally maintained reduced echelon basis of a Q-span, with rows kept
/// integral and primitive. Used for rank computations over long point lists.
/// `add` is transactional: if T arithmetic throws, the basis is unchanged.
template <class T>
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t width = 0) : width_(width) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }
  const std::vector<std::vector<T>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Returns true if v was independent of the current rows.
  bool add(std::vector<T> v) {
    reduce(v);
    std::size_t p = 0;
    while (p < width_ && v[p] == 0) ++p;
    if (p == width_) return false;
    normalize(v);
    std::vector<std::vector<T>> updated = rows_;
    for (auto& r : updated) {
      if (r[p] == 0) continue;
      T f = r[p];
      T g = v[p];
      for (std::size_t j = 0; j < width_; ++j) r[j] = g * r[j] - f * v[j];
      normalize(r);
    }
    updated.push_back(std::move(v));
    rows_ = std::move(updated);
    pivots_.push_back(p);
    return true;
  }

  bool in_span(std::vector<T> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](const T& x) { return x == 0; });
  }

 private:
  void reduce(std::vector<T>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t p = pivots_[k];
      if (v[p] == 0) continue;
      const auto& r = rows_[k];
      T f = v[p];
      T g = r[p];
      if (g == 1) {
        for (std::size_t j = 0; j < width_; ++j) v[j] -= f * r[j];
      } else {
        for (std::size_t j = 0; j < width_; ++j) v[j] = g * v[j] - f * r[j];
      }
    }
  }

  static void normalize(std::vector<T>& v) {
    T g = 0;
    for (const T& x : v) {
      if (x != 0) g = gcd_of(g, x);
    }
    if (g == 0) return;
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] < 0) g = -g;
    if (g == 1) return;
    for (T& x : v) x = x / g;
  }

  std::size_t width_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace svsec::detail
