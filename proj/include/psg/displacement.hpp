#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "psg/group.hpp"
#include "psg/tree.hpp"

namespace psg {

// G acting factorwise on X_1 x ... x X_l with the l1 metric. For l = 1 the group
// may be the factor group itself.
class ProductAction {
 public:
  using Point = std::vector<TreeVertex>;

  ProductAction(const Group& group, std::vector<TreeAction> factors);
  // One standard tree (Cayley or Bass-Serre) per direct factor.
  static ProductAction standard(const Group& group);

  const Group& group() const { return group_; }
  std::size_t size() const { return factors_.size(); }
  const TreeAction& factor(std::size_t i) const { return factors_.at(i); }

  GroupElement component(const GroupElement& g, std::size_t i) const;
  GroupElement embed(std::size_t i, const GroupElement& x) const;

  Point base() const;
  Point act(const GroupElement& g, const Point& p) const;
  long dist(const Point& p, const Point& q) const;
  std::string format(const Point& p) const;

 private:
  Group group_;
  std::vector<TreeAction> factors_;
};

// lambda(S, v) on one tree: max over s of d(v, s v). S acts through component i of P when given.
long displacement(const MarkedSubset& s, const TreeAction& tree, const TreeVertex& v);

struct DisplacementReport {
  long value = 0;                 // lambda(S, x) in the l1 product
  std::vector<long> per_factor;   // lambda(S, x_i)
  GroupElement maximizer;         // first s attaining the value
};

DisplacementReport displacement_at(const MarkedSubset& s, const ProductAction& p, const ProductAction::Point& x);

// Component i of every element of S, as a subset of factor i (duplicates dropped).
MarkedSubset factor_subset(const MarkedSubset& s, const ProductAction& p, std::size_t i);

struct Minimizer {
  long value = 0;       // lambda(S, X) over vertices
  TreeVertex vertex;    // a vertex attaining it
  long start_value = 0; // lambda(S, start)
  long steps = 0;       // descent steps taken
};

// Steepest descent from `start` (ties by vertex order). The vertex displacement is
// convex along geodesics, so a vertex with no strictly better neighbor is a global minimizer.
Minimizer min_displacement(const MarkedSubset& s, const TreeAction& tree, const TreeVertex& start);
Minimizer min_displacement(const MarkedSubset& s, const TreeAction& tree);
// Exhaustive search over the ball of radius lambda(S, start) around start, which contains a minimizer.
Minimizer min_displacement_exhaustive(const MarkedSubset& s, const TreeAction& tree, const TreeVertex& start,
                                      std::size_t cap = 5'000'000);

struct MetricMinimizer {
  long value4 = 0;   // min over the metric tree of lambda, in quarter-edge units
  MetricPoint point;
};

// Minimum over the geometric realization; attained at a quarter point.
MetricMinimizer min_displacement_metric(const MarkedSubset& s, const TreeAction& tree);
long displacement4(const MarkedSubset& s, const TreeAction& tree, const MetricPoint& p);

struct QuasiCenter {
  TreeVertex z;           // midpoint of [o, t o], rounded toward o
  GroupElement t;         // element of S maximizing d(o, s o), ties shortlex
  TreeVertex y_hat;       // point on [o, x] at distance max(|x-o| - |o-z| - L/2, 0) from x
  long lambda_x = 0;      // L = lambda(S, x)
  long lambda_z = 0;      // lambda(S, z)
  long bound = 0;         // 6 L
  long tolerance = 3;     // additive rounding slack on vertex trees
  bool within_bound() const { return lambda_z <= bound + tolerance; }
};

QuasiCenter quasi_center(const MarkedSubset& s, const TreeVertex& o, const TreeVertex& x, const TreeAction& tree);

// g with g o nearest to v, ties by vertex order.
struct OrbitPoint {
  GroupElement g;
  long distance = 0;
};
OrbitPoint nearest_orbit_point(const TreeAction& tree, const TreeVertex& o, const TreeVertex& v);

// Coarse density of the orbit of o: max over one vertex of each type near o of the distance to the orbit.
long coarse_density(const TreeAction& tree, const TreeVertex& o);

struct ReductionStep {
  std::size_t factor = 0;
  long factor_lambda = 0;   // lambda(S, X_i), exact over vertices
  TreeVertex x;             // minimizer used for the quasi-center
  TreeVertex z;             // quasi-center
  GroupElement s;           // element with z on [o_i, s o_i]
  GroupElement g;           // g_{i+1}
  long orbit_distance = 0;  // d(z, g_{i+1} o_i) <= D_i
  long measured_m = 0;      // M_{i+1} = max_{j <= i+1} lambda(S_{i+1}, o_j)
  long recursion_bound = 0; // bound on M_{i+1} from the recursion
};

struct ReductionTrace {
  GroupElement g;                      // g_1 g_2 ... g_l
  long m = 0;                          // M = max_i lambda(S, X_i)
  std::vector<long> density;           // D_i
  long d_total = 0;                    // D = sum of D_i, the product constant
  std::vector<ReductionStep> steps;
  long lambda_conjugated = 0;          // lambda(g^-1 S g, o) in the l1 product
  long c1 = 0;                         // constant with l * M_l <= C1 (M + 1)
  long final_bound = 0;                // C1 (M + 1)
  bool holds() const { return lambda_conjugated <= final_bound; }
};

ReductionTrace conjugate_reduce(const MarkedSubset& s, const ProductAction& p);

struct Sandwich {
  long lower = 0;         // max_i lambda(S, X_i) <= lambda(S, X)
  long orbit_upper = 0;   // upper bound for lambda(S, Go): min over searched conjugators
  int search_radius = 0;
  GroupElement best_conjugator;
  long c1 = 0;
  bool holds = false;     // lower <= orbit_upper <= C1 * lower + C1
};

// Two-sided displacement sandwich, lambda(S,Go) estimated by conjugator search in the word ball.
Sandwich displacement_sandwich(const MarkedSubset& s, const ProductAction& p, int radius = 4);

struct TransferResult {
  std::optional<std::size_t> factor;  // least i with lambda(S, X_i) > M
  long m = 0;
  std::vector<long> values;
  std::vector<TreeVertex> minimizers;
};

TransferResult factor_transfer(const MarkedSubset& s, const ProductAction& p, long m);

// |{g in G : d(o, g o) <= r}| for the base point of P, exactly.
boost::multiprecision::cpp_int orbit_ball_size(const ProductAction& p, long r);
// The same count, saturating at `cap`; cheap for radii where the exact value is astronomical.
std::uint64_t orbit_ball_size_saturating(const ProductAction& p, long r, std::uint64_t cap);

}  // namespace psg
