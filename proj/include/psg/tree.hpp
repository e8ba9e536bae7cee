#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psg/group.hpp"

namespace psg {

// A vertex of a simplicial tree on which a group acts.
//   Cayley tree:       type 0, rep = the group element itself.
//   Bass-Serre tree:   type i >= 0 for the coset rep·A_i, rep shortest in its coset;
//                      type -1 for the trivial-stabilizer vertex rep (three or more factors).
struct TreeVertex {
  int type = 0;
  GroupElement rep;

  friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
};

bool vertex_less(const TreeVertex& a, const TreeVertex& b);

struct VertexLess {
  bool operator()(const TreeVertex& a, const TreeVertex& b) const { return vertex_less(a, b); }
};

std::string vertex_key(const TreeVertex& v);

// n/2 for integer n; Gromov products on integer-metric trees.
struct HalfInteger {
  long twice = 0;

  double value() const { return twice / 2.0; }
  std::string str() const;
  friend auto operator<=>(const HalfInteger&, const HalfInteger&) = default;
};

// A point on an edge at quarter-edge resolution: from + (q/4)·(to - from), q in [0, 4).
// Vertices have q = 0 and to = from. Canonical form has vertex_less(from, to) for q > 0.
struct MetricPoint {
  TreeVertex from;
  TreeVertex to;
  int q = 0;

  static MetricPoint at(const TreeVertex& v) { return {v, v, 0}; }
  bool is_vertex() const { return q == 0; }
  friend bool operator==(const MetricPoint&, const MetricPoint&) = default;
};

struct AxisFingerprint {
  std::string core;        // primitive cyclic word, least rotation over both orientations
  int orientation = 1;     // -1 when the element translates along the inverse of `core`
  long exponent = 1;       // g = primitive^exponent
  GroupElement primitive;  // generator of the translations along this axis, conjugated into place
  TreeVertex anchor;       // a vertex of the axis
};

struct Classification {
  bool loxodromic = false;
  long tau = 0;
  std::optional<TreeVertex> fixed;       // elliptic: a fixed vertex
  std::optional<AxisFingerprint> axis;   // loxodromic
};

struct LoxodromicCriterion {
  bool holds = false;
  long distance = 0;          // |o - go|
  HalfInteger product;        // <o, g^2 o>_{go}
};

class TreeAction {
 public:
  enum class Kind { Cayley, BassSerre };

  static TreeAction cayley(const Group& group);      // free groups
  static TreeAction bass_serre(const Group& group);  // free products of at least two finite cyclic groups
  // Cayley for free groups, Bass-Serre for free products.
  static TreeAction standard(const Group& group);

  const Group& group() const { return group_; }
  Kind kind() const { return kind_; }
  std::string name() const;

  TreeVertex base() const;
  TreeVertex act(const GroupElement& g, const TreeVertex& v) const;
  long dist(const TreeVertex& u, const TreeVertex& v) const;
  std::vector<TreeVertex> neighbors(const TreeVertex& v) const;
  // All vertices within distance r of `center`, in vertex order.
  std::vector<TreeVertex> ball(const TreeVertex& center, long r, std::size_t cap = 5'000'000) const;
  // The vertex at distance k from u on the geodesic [u, v].
  TreeVertex point_on_geodesic(const TreeVertex& u, const TreeVertex& v, long k) const;
  std::vector<TreeVertex> geodesic(const TreeVertex& u, const TreeVertex& v) const;

  HalfInteger gromov_product(const TreeVertex& a, const TreeVertex& c, const TreeVertex& at) const;

  long translation_length(const GroupElement& g) const;
  Classification classify(const GroupElement& g) const;
  AxisFingerprint fingerprint(const GroupElement& g) const;  // PreconditionError when elliptic
  LoxodromicCriterion loxodromic_criterion(const GroupElement& g, const TreeVertex& o) const;

  // Loxodromic g and h translate along the same line.
  bool same_axis(const GroupElement& g, const GroupElement& h) const;
  // h preserves the endpoint pair of g's axis, i.e. h lies in E(g).
  bool same_endpoint_pair(const GroupElement& g, const GroupElement& h) const;
  // Loxodromics with disjoint endpoint pairs.
  bool independent(const GroupElement& g, const GroupElement& h) const;
  // Closest-point projection of x to the axis of loxodromic g.
  TreeVertex project_to_axis(const GroupElement& g, const TreeVertex& x) const;

  // Quarter-subdivision metric; distances are in quarter-edge units.
  MetricPoint canonical(MetricPoint p) const;
  MetricPoint act(const GroupElement& g, const MetricPoint& p) const;
  long dist4(const MetricPoint& p, const MetricPoint& q) const;
  // Quarter points of all edges with both ends within distance r of `center`.
  std::vector<MetricPoint> metric_ball(const TreeVertex& center, long r, std::size_t cap = 5'000'000) const;
  // The point at quarter-distance k from p on [p, q].
  MetricPoint metric_point_on_geodesic(const MetricPoint& p, const MetricPoint& q, long k) const;

  TreeVertex parse_vertex(std::string_view text) const;
  std::string format(const TreeVertex& v) const;
  std::string format(const MetricPoint& p) const;

  void check(const TreeVertex& v) const;

 private:
  TreeAction(const Group& group, Kind kind) : group_(group), kind_(kind) {}

  TreeVertex coset(int type, const GroupElement& g) const;  // g·A_type, normalized
  GroupElement strip_leading(const GroupElement& w, int type) const;
  GroupElement strip_trailing(const GroupElement& w, int type) const;
  bool star() const { return group_.spec().orders.size() >= 3; }

  Group group_;
  Kind kind_;
};

}  // namespace psg
