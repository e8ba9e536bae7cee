#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "psg/group.hpp"
#include "psg/growth.hpp"
#include "psg/tree.hpp"

namespace psg {

using Rational = boost::rational<long>;

// <x, y>_at on the quarter-subdivided tree, in edge units.
Rational gromov_product(const TreeAction& tree, const MetricPoint& x, const MetricPoint& y, const MetricPoint& at);

struct LoxodromicCertificate {
  enum class Case { Loxodromic, Product };

  GroupElement b;
  MetricPoint o;                 // minimizer of lambda(S, .) over the metric tree
  Rational lambda;               // lambda(S, X) = lambda(S, o)
  Rational distance;             // |o - b o|
  Rational delta;                // min(lambda / 30, 1)
  Rational l0;                   // 4 delta
  GroupElement t;                // element of S with |o - t o| = lambda, ties shortlex
  GroupElement s;                // element of S_0 selected by the claim
  Case which = Case::Loxodromic; // b = s, or b = t s
  long tau = 0;
  AxisFingerprint axis;
  bool one_sided = true;         // b verified in S^{<=2} without inverses
  Rational axis_ratio;           // |o - b o| / tau
  Rational axis_offset;          // |o - b o| - tau, twice the distance from o to the axis
};

std::string to_string(LoxodromicCertificate::Case c);

// Short loxodromic element of S^{<=2} with |o - b o| >= lambda(S, X) - 10.
LoxodromicCertificate short_loxodromic(const MarkedSubset& s, const TreeAction& tree);

struct JointVerdict {
  bool hypothesis = false;   // 1/4 min(|go-o|, |ho-o|) >= L >= max of the two products, L > 0
  Rational quarter_min;      // 1/4 min(|go-o|, |ho-o|), the L used
  Rational product_1;        // <g o, h^-1 o>_o
  Rational product_2;        // <g^-1 o, h o>_o
  bool loxodromic = false;   // gh loxodromic
  long tau = 0;              // tau(gh)
  Rational measured_c;       // max of length / (distance + 1) over breakpoints of the broken path
  Rational c_bound{2};       // on trees the broken path loses at most half its length
  int periods = 0;
};

JointVerdict joint_loxodromic(const GroupElement& g, const GroupElement& h, const MetricPoint& o,
                              const TreeAction& tree, int periods = 6);
JointVerdict joint_loxodromic(const GroupElement& g, const GroupElement& h, const TreeVertex& o,
                              const TreeAction& tree, int periods = 6);

// Local test on a tree: every segment [o, t o] keeps a nonempty core after the backtracking
// caused by its neighbours in any word, and segments of distinct letters part before their
// cores begin. When it holds, T is a free basis of a free semigroup (all depths).
struct PingPongTest {
  bool holds = false;
  Rational max_backtrack;   // max <t_i^-1 o, t_j o>_o
  Rational max_divergence;  // max over i != j of <t_i o, t_j o>_o
  Rational min_core;        // min over j of |o - t_j o| minus the worst backtracking at both ends
};

PingPongTest tree_pingpong(const TreeAction& tree, const MetricPoint& o, const std::vector<GroupElement>& t);

struct FreeBaseConstruction {
  LoxodromicCertificate loxodromic;   // source of b
  GroupElement f;                     // f in U outside E(b)
  long n = 0;                         // h = f b^n
  GroupElement h;
  long tau_h = 0;
  bool joint_hypothesis = false;      // joint_loxodromic(f, b^n, o) held at the chosen n
  int f_bound = 0;                    // F computed inside the word ball of this radius
  std::vector<GroupElement> f_set;    // E(h) cap E(b) within the ball
  Rational d1;                        // lambda(F, o)
  std::vector<GroupElement> u0;
  long n3 = 0;
  PingPongTest local;                 // the test that fixed n3
  long kappa = 0;                     // T inside U^{<=kappa}
  std::vector<std::string> t_words;   // each element of T as a word over U
};

struct FreeSemigroupCertificate {
  std::vector<GroupElement> base;
  std::string pair;                   // which of the four pairs, for ping-pong
  std::optional<FreeBaseConstruction> construction;
  int depth = 0;
  bool verified = false;
  FreeRankCheck check;
};

FreeSemigroupCertificate pingpong_pair(const GroupElement& g, const GroupElement& h, const TreeAction& tree,
                                       int depth);

struct ActionClass {
  enum class Kind { Bounded, Lineal, Focal, General };
  Kind kind = Kind::Bounded;
  std::vector<GroupElement> witnesses;   // loxodromics; two independent ones for General
  std::optional<TreeVertex> fixed;       // Bounded
  int radius = 0;                        // ball radius searched
  std::string horocyclic = "not observed - excluded for these testbeds";
};

std::string to_string(ActionClass::Kind k);

ActionClass classify_action(const MarkedSubset& u, const TreeAction& tree, int max_radius = 4);

FreeSemigroupCertificate build_free_base(const MarkedSubset& u, const TreeAction& tree, int depth,
                                         int f_bound = 4);

}  // namespace psg
