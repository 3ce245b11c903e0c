#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "svsec/poly.hpp"
#include "svsec/segre_veronese.hpp"

namespace svsec {

/// Sorted 0-based label indices of a simplex.
using Multiset = std::vector<int>;

struct SymbolicBudget {
  std::size_t max_vertices = 14;
  std::size_t max_terms = 2'000'000;  // per intermediate polynomial
};

/// Simplicial complex whose vertices carry labels, possibly repeated.
/// Simplices with equal label multisets are identified, so the complex is
/// stored as a downward-closed family of multisets. Vertex j of label l is
/// the (j+1)-th copy of l; vertices are ordered by label, then copy.
class LabeledComplex {
 public:
  /// Downward closure of the generators. Throws std::invalid_argument if a
  /// label is out of range or the complex is disconnected.
  static LabeledComplex from_generators(std::size_t label_count, const std::vector<Multiset>& generators,
                                        std::vector<std::string> label_names = {});

  std::size_t label_count() const { return label_names_.size(); }
  const std::vector<std::string>& label_names() const { return label_names_; }
  std::size_t vertex_count() const;
  /// Distinct simplices: the empty simplex first, then by size and lexicographically.
  const std::vector<Multiset>& simplices() const { return simplices_; }
  std::optional<std::size_t> index_of(const Multiset& m) const;
  /// "x_234" or "x_{11,21}" when some label name is longer than one character.
  std::string variable_name(std::size_t simplex) const;
  bool connected() const;

 private:
  std::vector<std::string> label_names_;
  std::vector<Multiset> simplices_;
};

/// Reads generator lines "name: l1 l2 ..." with 1-based integer labels.
/// Blank lines and lines starting with '#' are ignored.
LabeledComplex parse_complex(std::istream& in);

/// Complex of the Segre-Veronese embedding: labels t_{i,j} in index_layout
/// order, a_i copies of each label of block i, and a simplex for every
/// multiset with at most a_i labels from block i. Throws BudgetExceeded
/// when sum a_i b_i exceeds the vertex budget.
LabeledComplex sv_complex(const SVParams& p, const SymbolicBudget& budget = {});

/// Exponent matrix of e_Delta: labels x simplices, column of the empty simplex zero.
IntMatrix embed(const LabeledComplex& c);

/// Variables of the coordinate rings: one per nonempty simplex, variable
/// s - 1 for simplex s.
std::vector<std::string> coordinate_names(const LabeledComplex& c, char prefix = 'x');

/// y_sigma as polynomials in the x variables, indexed by simplex (entry 0,
/// the empty simplex, is the constant 1).
std::vector<Poly> y_transform(const LabeledComplex& c);
/// z_sigma as polynomials in the y variables.
std::vector<Poly> z_transform(const LabeledComplex& c);
/// z_sigma composed into the x variables.
std::vector<Poly> z_in_x(const LabeledComplex& c);

/// Thick interval partition of {0..m-1}: blocks [begin, end), each of size >= 2.
using ThickIntervalPartition = std::vector<std::pair<std::size_t, std::size_t>>;
std::vector<ThickIntervalPartition> thick_interval_partitions(std::size_t m);

/// Parameter ring of the secant: pi, then t_l, then u_l for each label.
std::vector<std::string> parameter_names(const LabeledComplex& c);

/// z_sigma evaluated on x_sigma = pi prod t + (1 - pi) prod u, fully expanded.
std::vector<Poly> secant_z(const LabeledComplex& c, const SymbolicBudget& budget = {});

struct SimplexResidual {
  std::size_t simplex = 0;
  Poly residual;
};

struct SecantCheck {
  bool ok = false;
  std::size_t checked = 0;
  std::vector<SimplexResidual> failures;
};

/// Compares secant_z with pi(1-pi)(1-2pi)^(dim-1) prod (t_i - u_i) on simplices of
/// dimension >= 1 and with pi t_v + (1-pi) u_v on vertices.
SecantCheck verify_secant_identity(const LabeledComplex& c, const SymbolicBudget& budget = {});
/// As above with z = secant_z(c) already computed.
SecantCheck verify_secant_identity(const LabeledComplex& c, const std::vector<Poly>& z);

struct ReparametrizationCheck {
  bool ok = false;
  /// "u-t" if u'_v = (u_v - t_v)(1 - 2pi) clears every residual, otherwise
  /// "t-u" if u'_v = (t_v - u_v)(1 - 2pi) does, otherwise empty.
  std::string convention;
  std::vector<SimplexResidual> failures;  // of the last convention tried
};

/// Checks (1-2pi)^2 z_sigma = pi(1-pi) prod u'_v for every simplex of dimension >= 1.
ReparametrizationCheck verify_reparametrization(const LabeledComplex& c, const SymbolicBudget& budget = {});
ReparametrizationCheck verify_reparametrization(const LabeledComplex& c, const std::vector<Poly>& z);

/// z_sigma vanishes for dim >= 1 after substituting x_sigma = prod t.
bool z_vanishes_on_embedding(const LabeledComplex& c);

/// x -> z followed by the inverse z -> y -> x returns every x variable.
bool verify_round_trip(const LabeledComplex& c);

struct Binomial {
  Poly::Exponents plus;  // over the simplices of dimension >= 1, in simplex order
  Poly::Exponents minus;
};

/// Simplices of dimension >= 1, the variables of toric_binomials.
std::vector<std::size_t> toric_columns(const LabeledComplex& c);

/// Binomials x^plus - x^minus over the columns of dimension >= 1 with
/// disjoint supports, max(deg plus, deg minus) <= degree_bound and equal
/// exponent image. One of each +/- pair is kept, the one whose plus side has
/// the smaller degree (ties: lexicographically larger). Requires degree_bound <= 6 and at
/// most 20 columns (BudgetExceeded otherwise).
std::vector<Binomial> toric_binomials(const LabeledComplex& c, unsigned degree_bound);

std::string binomial_str(const LabeledComplex& c, const Binomial& b);
/// Substitutes x_sigma = prod t and reports whether the binomial vanishes.
bool binomial_vanishes(const LabeledComplex& c, const Binomial& b);

/// Connected labeled complex with at most max_vertices vertices drawn from seed.
LabeledComplex random_complex(std::uint64_t seed, std::size_t max_vertices = 10);

}  // namespace svsec
