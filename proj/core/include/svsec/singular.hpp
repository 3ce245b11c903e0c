#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svsec/segre_veronese.hpp"

namespace svsec {

/// Cone of the normal fan at a face: inward normals of the facets containing
/// it, as functionals on the affine lattice of the polytope.
struct FanCone {
  Face face;
  std::vector<IntVector> rays;          // affine-lattice coordinates, primitive
  std::vector<IntVector> ambient_rays;  // inequality normals in the ambient space
  bool smooth = false;
};

/// True iff the rays are part of a basis of Z^lattice_rank.
bool cone_smooth(const std::vector<IntVector>& rays, std::size_t lattice_rank);

/// One cone per nonempty face, in the order of Analysis::faces(). Empty when
/// dim(P) < 1.
std::vector<FanCone> normal_fan(const Analysis& a);
FanCone fan_cone(const Analysis& a, const Face& face);

struct SingularComponent {
  enum class Kind { PairOnes, DoubleTwo, Unmodeled };
  Face face;
  Kind kind = Kind::Unmodeled;
  int i1 = 0;  // 1-based block indices; i2 only for PairOnes
  int i2 = 0;
  std::vector<std::size_t> points;  // lattice points of the face
  std::vector<IntVector> rays;
};

std::string to_string(SingularComponent::Kind k);
/// "PairOnes(1,2)", "DoubleTwo(3)" or "Unmodeled".
std::string kind_label(const SingularComponent& c);

/// Minimal non-smooth cones of the normal fan (maximal faces with a singular
/// cone), ordered by facet mask. Kinds are read from the cap inequalities
/// that are tight on the face.
std::vector<SingularComponent> singular_components(const Analysis& a);

struct ComponentDescription {
  bool points_match = false;  // face points equal the pattern of its kind
  std::string text;           // e.g. "P^1 x P^1 x Sec(P^1 x P^2)"
};

ComponentDescription describe_component(const Analysis& a, const SingularComponent& c, const SVParams& p);

struct VertexPrediction {
  bool is_vertex = false;
  bool is_smooth = false;
};

/// Closed-form vertex and smoothness prediction for a lattice point of P.
/// Throws std::invalid_argument if v is not a lattice point of P.
VertexPrediction expected_vertex_status(const SVParams& p, const std::vector<std::int64_t>& v);

/// Closed-form number of components of the singular locus of V_P.
std::size_t expected_component_count(const SVParams& p);
/// The smooth cases S1-S4.
bool expected_vp_smooth(const SVParams& p);
/// The listed cases in which the singular locus of the secant equals X.
bool expected_sing_locus_equals_x(const SVParams& p);

/// All lattice points of P are linearly independent after lifting, i.e. V_P is
/// a projective space and the secant fills its ambient space.
bool secant_fills_ambient(const Analysis& a);

struct SingularReport {
  std::vector<SingularComponent> components;
  std::vector<ComponentDescription> descriptions;
  std::size_t expected_count = 0;
  bool vp_smooth = false;
  bool fills_ambient = false;
  bool sing_locus_equals_x = false;  // computed: vp_smooth and not fills_ambient
  bool expected_sing_locus_equals_x = false;
  bool agree = false;                // component count matches
};

/// Computes on canonical(p).
SingularReport singular_report(const SVParams& p, const Budget& budget = {});
SingularReport singular_report(const Analysis& a, const SVParams& p);

}  // namespace svsec
