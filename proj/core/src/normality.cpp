#include "svsec/normality.hpp"

#include <algorithm>

namespace svsec {

namespace {

constexpr std::size_t kMaxFailures = 16;

// Mixed-radix codes for points of sP, s <= s_max, after shifting level-s
// points by s * lo. The shift is linear in the level, so the code of q - p
// (q at level s, p in P) is code(q) - code(p). Codes of a lexicographically
// sorted point list are sorted.
class Encoder {
 public:
  Encoder(const LatticePolytope& p, int s_max) : lo_(p.lower().begin(), p.lower().end()) {
    const auto hi = p.upper();
    const std::size_t n = lo_.size();
    width_.resize(n);
    weight_.assign(n, 1);
    std::uint64_t w = 1;
    for (std::size_t c = n; c-- > 0;) {
      width_[c] = hi[c] - lo_[c];
      weight_[c] = w;
      const auto radix = static_cast<std::uint64_t>(s_max) * static_cast<std::uint64_t>(width_[c]) + 1;
      if (__builtin_mul_overflow(w, radix, &w)) throw BudgetExceeded("dilated box does not fit a 64-bit code");
    }
  }

  std::uint64_t code(std::span<const std::int64_t> x, int level) const {
    std::uint64_t out = 0;
    for (std::size_t c = 0; c < x.size(); ++c)
      out += static_cast<std::uint64_t>(x[c] - level * lo_[c]) * weight_[c];
    return out;
  }

  /// q - p lies in the box of level s - 1.
  bool difference_in_box(std::span<const std::int64_t> q, std::span<const std::int64_t> p, int s) const {
    for (std::size_t c = 0; c < q.size(); ++c) {
      const std::int64_t y = (q[c] - s * lo_[c]) - (p[c] - lo_[c]);
      if (y < 0 || y > (s - 1) * width_[c]) return false;
    }
    return true;
  }

  std::int64_t lower(std::size_t c) const { return lo_[c]; }
  std::int64_t upper(std::size_t c) const { return lo_[c] + width_[c]; }

 private:
  std::vector<std::int64_t> lo_;
  std::vector<std::int64_t> width_;
  std::vector<std::uint64_t> weight_;
};

struct Level {
  PointSet reached;                  // kept only on request
  std::vector<std::uint64_t> codes;  // sorted; kept only on request
  PointSet missed;                   // first kMaxFailures points of sP that are not sums
  std::uint64_t missed_count = 0;
};

enum class Keep { Nothing, Codes, Points };

// Depth-first search over the lexicographically sorted points of P for a
// summand p with q - p in the previous level. Each coordinate of p is
// restricted to the values that keep q - p inside the box of that level.
class SummandSearch {
 public:
  SummandSearch(const PointSet& base, const Encoder& enc, const std::vector<std::uint64_t>& prev)
      : base_(base), enc_(enc), prev_(prev) {
    for (std::size_t i = 0; i < base.size(); ++i) codes_.push_back(enc.code(base[i], 1));
    groups_.resize(base.dim());
  }

  bool decomposes(std::span<const std::int64_t> q, int s) {
    q_ = q;
    cq_ = enc_.code(q, s);
    s_ = s;
    if (last_ < base_.size() && test(last_)) return true;
    return search(0, 0, base_.size());
  }

 private:
  bool test(std::size_t j) {
    if (!enc_.difference_in_box(q_, base_[j], s_)) return false;
    if (!std::binary_search(prev_.begin(), prev_.end(), cq_ - codes_[j])) return false;
    last_ = j;
    return true;
  }

  bool search(std::size_t col, std::size_t lo, std::size_t hi) {
    if (lo >= hi) return false;
    if (col == base_.dim()) return test(lo);
    const std::int64_t vmin = q_[col] - (s_ - 1) * enc_.upper(col);
    const std::int64_t vmax = q_[col] - (s_ - 1) * enc_.lower(col);
    auto value = [&](std::size_t j) { return base_[j][col]; };
    // Points in [lo, hi) share a prefix, so column col is sorted there.
    std::size_t a = lo;
    std::size_t b = hi;
    while (a < b) {
      const std::size_t m = a + (b - a) / 2;
      if (value(m) < vmin) a = m + 1; else b = m;
    }
    // Value groups in [vmin, vmax], visited nearest to q / s first.
    auto& groups = groups_[col];
    groups.clear();
    while (a < hi && value(a) <= vmax) {
      const std::int64_t v = value(a);
      std::size_t e = a;
      std::size_t f = hi;
      while (e < f) {
        const std::size_t m = e + (f - e) / 2;
        if (value(m) <= v) e = m + 1; else f = m;
      }
      groups.emplace_back(a, e);
      a = e;
    }
    auto distance = [&](const std::pair<std::size_t, std::size_t>& g) {
      const std::int64_t d = s_ * value(g.first) - q_[col];
      return d < 0 ? -d : d;
    };
    std::stable_sort(groups.begin(), groups.end(),
                     [&](const auto& x, const auto& y) { return distance(x) < distance(y); });
    for (const auto& [from, to] : groups)
      if (search(col + 1, from, to)) return true;
    return false;
  }

  const PointSet& base_;
  const Encoder& enc_;
  const std::vector<std::uint64_t>& prev_;
  std::vector<std::uint64_t> codes_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> groups_;  // per column
  std::span<const std::int64_t> q_;
  std::uint64_t cq_ = 0;
  int s_ = 0;
  std::size_t last_ = 0;
};

// sums(s) = sums(s-1) + P, evaluated by testing each lattice point q of sP
// for a summand p in P with q - p in sums(s-1).
Level next_level(const LatticePolytope& p, const Encoder& enc, const std::vector<std::uint64_t>& prev, int s,
                 Keep keep, const Budget& budget) {
  SummandSearch search(p.points(), enc, prev);
  Level out{PointSet(p.ambient_dim()), {}, PointSet(p.ambient_dim()), 0};
  for_each_dilated_point(
      p, s,
      [&](std::span<const std::int64_t> q) {
        if (search.decomposes(q, s)) {
          if (keep != Keep::Nothing) out.codes.push_back(enc.code(q, s));
          if (keep == Keep::Points) out.reached.push_back(q);
        } else if (out.missed_count++ < kMaxFailures) {
          out.missed.push_back(q);
        }
      },
      budget);
  return out;
}

std::vector<std::uint64_t> base_level(const LatticePolytope& p, const Encoder& enc) {
  std::vector<std::uint64_t> codes;
  for (std::size_t i = 0; i < p.points().size(); ++i) codes.push_back(enc.code(p.points()[i], 1));
  return codes;
}

}  // namespace

NormalityResult check_normality(const LatticePolytope& p, int s_max, const Budget& budget) {
  NormalityResult r;
  r.normal_up_to = std::max(s_max, 1);
  if (s_max < 2 || p.points().empty()) return r;
  const Encoder enc(p, s_max);
  std::vector<std::uint64_t> prev = base_level(p, enc);
  for (int s = 2; s <= s_max; ++s) {
    Level level = next_level(p, enc, prev, s, s < s_max ? Keep::Codes : Keep::Nothing, budget);
    if (level.missed_count > 0) {
      r.normal_up_to = s - 1;
      for (std::size_t i = 0; i < level.missed.size(); ++i) r.failures.push_back({s, level.missed.point(i)});
      return r;
    }
    prev = std::move(level.codes);
  }
  return r;
}

PointSet reachable_sums(const LatticePolytope& p, int s, const Budget& budget) {
  if (s < 1) throw std::invalid_argument("level must be positive");
  if (s == 1 || p.points().empty()) return p.points();
  const Encoder enc(p, s);
  std::vector<std::uint64_t> prev = base_level(p, enc);
  PointSet out;
  for (int t = 2; t <= s; ++t) {
    Level level = next_level(p, enc, prev, t, t < s ? Keep::Codes : Keep::Points, budget);
    prev = std::move(level.codes);
    out = std::move(level.reached);
  }
  return out;
}

SaturationReport check_lattice_saturation(const Analysis& a) {
  SaturationReport r;
  r.lattice = a.lifted_lattice();
  r.rank = r.lattice.rank();
  r.saturated = r.lattice.is_saturated();
  return r;
}

}  // namespace svsec
