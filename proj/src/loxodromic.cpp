#include "psg/loxodromic.hpp"

#include <algorithm>
#include <unordered_set>

#include "psg/displacement.hpp"
#include "psg/error.hpp"

namespace psg {

namespace {

Rational quarters(long q) { return Rational(q, 4); }

Rational moved(const TreeAction& tree, const GroupElement& g, const MetricPoint& o) {
  return quarters(tree.dist4(o, tree.act(g, o)));
}

std::string rational_str(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

Rational gromov_product(const TreeAction& tree, const MetricPoint& x, const MetricPoint& y, const MetricPoint& at) {
  return Rational(tree.dist4(at, x) + tree.dist4(at, y) - tree.dist4(x, y), 8);
}

std::string to_string(LoxodromicCertificate::Case c) {
  return c == LoxodromicCertificate::Case::Loxodromic ? "s loxodromic" : "product ts";
}

LoxodromicCertificate short_loxodromic(const MarkedSubset& s, const TreeAction& tree) {
  const Group& group = tree.group();
  const MetricMinimizer mm = min_displacement_metric(s, tree);
  if (mm.value4 == 0) {
    const TreeVertex v = min_displacement(s, tree).vertex;
    throw PreconditionError("S has a common fixed vertex " + tree.format(v));
  }

  LoxodromicCertificate c;
  c.o = mm.point;
  c.lambda = quarters(mm.value4);
  c.delta = std::min(c.lambda / 30, Rational(1));
  c.l0 = 4 * c.delta;

  Rational far(-1);
  for (const auto& g : s.elements()) {
    const Rational d = moved(tree, g, c.o);
    if (d > far || (d == far && shortlex_less(g, c.t))) {
      far = d;
      c.t = g;
    }
  }

  const Rational threshold = c.lambda - 2 * c.l0 - c.delta;
  const MetricPoint to = tree.act(c.t, c.o);
  const MetricPoint t_inv_o = tree.act(group.inverse(c.t), c.o);
  bool found = false;
  for (const auto& x : s.elements()) {
    if (moved(tree, x, c.o) < threshold) continue;
    const MetricPoint xo = tree.act(x, c.o);
    const MetricPoint x_inv_o = tree.act(group.inverse(x), c.o);
    if (tree.classify(x).loxodromic && gromov_product(tree, c.o, tree.act(x, xo), xo) <= c.l0) {
      c.s = x;
      c.b = x;
      c.which = LoxodromicCertificate::Case::Loxodromic;
      found = true;
      break;
    }
    if (std::max(gromov_product(tree, t_inv_o, xo, c.o), gromov_product(tree, to, x_inv_o, c.o)) <= c.l0) {
      c.s = x;
      c.b = group.multiply(c.t, x);
      c.which = LoxodromicCertificate::Case::Product;
      found = true;
      break;
    }
  }
  if (!found) throw InvariantViolation("no element of S_0 satisfies either alternative at the minimizer");

  const GroupElement& g = c.which == LoxodromicCertificate::Case::Loxodromic ? c.s : c.t;
  if (!joint_loxodromic(g, c.s, c.o, tree, 2).hypothesis)
    throw InvariantViolation("the selected pair does not meet the joint loxodromic hypothesis");

  c.tau = tree.translation_length(c.b);
  if (c.tau == 0) throw InvariantViolation("short_loxodromic produced an elliptic element");
  c.distance = moved(tree, c.b, c.o);
  if (c.distance < c.lambda - 10) throw InvariantViolation("|o - b o| < lambda(S, X) - 10");
  c.axis = tree.fingerprint(c.b);

  bool member = s.contains(c.b);
  for (const auto& x : s.elements())
    for (const auto& y : s.elements())
      if (!member && group.multiply(x, y) == c.b) member = true;
  if (!member) throw InvariantViolation("b does not lie in S^{<=2}");
  c.one_sided = true;

  c.axis_ratio = c.distance / c.tau;
  c.axis_offset = c.distance - c.tau;
  return c;
}

JointVerdict joint_loxodromic(const GroupElement& g, const GroupElement& h, const MetricPoint& o,
                              const TreeAction& tree, int periods) {
  const Group& group = tree.group();
  JointVerdict v;
  v.periods = periods;
  const MetricPoint go = tree.act(g, o), ho = tree.act(h, o);
  const Rational dg = quarters(tree.dist4(o, go)), dh = quarters(tree.dist4(o, ho));
  v.quarter_min = std::min(dg, dh) / 4;
  v.product_1 = gromov_product(tree, go, tree.act(group.inverse(h), o), o);
  v.product_2 = gromov_product(tree, tree.act(group.inverse(g), o), ho, o);
  v.hypothesis = v.quarter_min > 0 && v.quarter_min >= std::max(v.product_1, v.product_2);

  const GroupElement gh = group.multiply(g, h);
  v.tau = tree.translation_length(gh);
  v.loxodromic = v.tau > 0;

  // Breakpoints (gh)^i o and (gh)^i g o of the concatenated path.
  std::vector<MetricPoint> points;
  std::vector<Rational> along{Rational(0)};
  GroupElement p = group.identity();
  for (int i = 0; i < periods; ++i) {
    points.push_back(tree.act(p, o));
    points.push_back(tree.act(group.multiply(p, g), o));
    p = group.multiply(p, gh);
  }
  points.push_back(tree.act(p, o));
  for (std::size_t i = 1; i < points.size(); ++i) along.push_back(along.back() + (i % 2 ? dg : dh));
  v.measured_c = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      v.measured_c = std::max(v.measured_c, (along[j] - along[i]) / (quarters(tree.dist4(points[i], points[j])) + 1));

  if (v.hypothesis && !v.loxodromic)
    throw InvariantViolation("joint loxodromic hypothesis holds but gh is elliptic");
  if (v.hypothesis && v.measured_c > v.c_bound)
    throw InvariantViolation("broken path constant " + rational_str(v.measured_c) + " exceeds " +
                             rational_str(v.c_bound));
  return v;
}

JointVerdict joint_loxodromic(const GroupElement& g, const GroupElement& h, const TreeVertex& o,
                              const TreeAction& tree, int periods) {
  return joint_loxodromic(g, h, MetricPoint::at(o), tree, periods);
}

FreeSemigroupCertificate pingpong_pair(const GroupElement& g, const GroupElement& h, const TreeAction& tree,
                                       int depth) {
  const Group& group = tree.group();
  if (tree.translation_length(g) == 0 || tree.translation_length(h) == 0)
    throw PreconditionError("ping-pong needs two loxodromic elements");
  if (tree.same_axis(g, h)) throw PreconditionError("g and h have the same endpoint pair");

  const GroupElement gi = group.inverse(g), hi = group.inverse(h);
  const std::vector<std::pair<std::string, std::vector<GroupElement>>> pairs{
      {"{g, h}", {g, h}}, {"{g, h^-1}", {g, hi}}, {"{g^-1, h}", {gi, h}}, {"{g^-1, h^-1}", {gi, hi}}};
  for (const auto& [label, base] : pairs) {
    FreeRankCheck check = free_rank_verify(group, base, depth);
    if (check.free) {
      FreeSemigroupCertificate c;
      c.base = base;
      c.pair = label;
      c.depth = depth;
      c.verified = true;
      c.check = std::move(check);
      return c;
    }
  }
  throw InconclusiveError("no pair among {g^(+-1), h^(+-1)} is free to depth " + std::to_string(depth));
}

PingPongTest tree_pingpong(const TreeAction& tree, const MetricPoint& o, const std::vector<GroupElement>& t) {
  const Group& group = tree.group();
  PingPongTest r;
  const std::size_t k = t.size();
  std::vector<MetricPoint> fwd, back;
  std::vector<Rational> len;
  for (const auto& x : t) {
    fwd.push_back(tree.act(x, o));
    back.push_back(tree.act(group.inverse(x), o));
    len.push_back(quarters(tree.dist4(o, fwd.back())));
  }
  // bt[i][j]: overlap of [t_i o, o] with [t_i o, t_i t_j o].
  std::vector<std::vector<Rational>> bt(k, std::vector<Rational>(k));
  std::vector<Rational> worst_after(k, Rational(0)), worst_before(k, Rational(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      bt[i][j] = gromov_product(tree, back[i], fwd[j], o);
      r.max_backtrack = std::max(r.max_backtrack, bt[i][j]);
      worst_after[i] = std::max(worst_after[i], bt[i][j]);
      worst_before[j] = std::max(worst_before[j], bt[i][j]);
    }
  for (std::size_t j = 0; j < k; ++j) {
    const Rational core = len[j] - worst_before[j] - worst_after[j];
    if (j == 0 || core < r.min_core) r.min_core = core;
  }
  bool diverge = true;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const Rational d = gromov_product(tree, fwd[i], fwd[j], o);
      r.max_divergence = std::max(r.max_divergence, d);
      if (d >= len[i] - worst_after[i]) diverge = false;
    }
  r.holds = r.min_core > 0 && diverge;
  return r;
}

std::string to_string(ActionClass::Kind k) {
  switch (k) {
    case ActionClass::Kind::Bounded: return "bounded";
    case ActionClass::Kind::Lineal: return "lineal";
    case ActionClass::Kind::Focal: return "focal";
    case ActionClass::Kind::General: return "general";
  }
  return "?";
}

// Distinct axes in these trees never share an end: a shared ray would let a product of
// powers fix an edge, and edge stabilizers are trivial. So Focal is never returned.
ActionClass classify_action(const MarkedSubset& u, const TreeAction& tree, int max_radius) {
  ActionClass out;
  const Minimizer m = min_displacement(u, tree);
  if (m.value == 0) {
    out.kind = ActionClass::Kind::Bounded;
    out.fixed = m.vertex;
    return out;
  }
  const MarkedSubset sym = symmetrize(u);
  std::optional<GroupElement> first;
  for (int k = 1; k <= max_radius; ++k) {
    out.radius = k;
    for (const auto& g : semigroup_ball(sym, k)) {
      if (tree.translation_length(g) == 0) continue;
      if (!first) {
        first = g;
      } else if (tree.independent(*first, g)) {
        out.kind = ActionClass::Kind::General;
        out.witnesses = {*first, g};
        return out;
      }
    }
  }
  if (!first)
    throw InconclusiveError("no loxodromic element within radius " + std::to_string(max_radius) +
                            " although lambda(U, X) = " + std::to_string(m.value));
  out.kind = ActionClass::Kind::Lineal;
  out.witnesses = {*first};
  return out;
}

namespace {

std::string u_word(const Group& group, const std::vector<GroupElement>& letters) {
  std::string out;
  for (const auto& x : letters) {
    const std::string w = group.format(x);
    const bool wrap = w.find(' ') != std::string::npos;
    if (!out.empty()) out += " . ";
    out += wrap ? "(" + w + ")" : w;
  }
  return out;
}

}  // namespace

FreeSemigroupCertificate build_free_base(const MarkedSubset& u, const TreeAction& tree, int depth, int f_bound) {
  const Group& group = tree.group();
  const ActionClass cls = classify_action(u, tree);
  if (cls.kind != ActionClass::Kind::General)
    throw PreconditionError("the action of <U> is " + to_string(cls.kind) + ", not of general type");

  FreeBaseConstruction c;
  c.loxodromic = short_loxodromic(u, tree);
  const GroupElement& b = c.loxodromic.b;
  const MetricPoint& o = c.loxodromic.o;

  bool have_f = false;
  for (const auto& x : u.elements()) {
    if (!tree.same_endpoint_pair(b, x)) {
      c.f = x;
      have_f = true;
      break;
    }
  }
  if (!have_f) throw InvariantViolation("U lies in E(b) although the action is of general type");

  // F = E(h) cap E(b) inside the word ball, and D1 = lambda(F, o).
  c.f_bound = f_bound;
  const std::vector<GroupElement> ball = word_ball(group, f_bound);
  auto f_of = [&](const GroupElement& h) {
    std::vector<GroupElement> out;
    for (const auto& g : ball)
      if (tree.same_endpoint_pair(h, g) && tree.same_endpoint_pair(b, g)) out.push_back(g);
    return out;
  };

  // Least n with h = f b^n loxodromic, independent of b, and |o - h o| > L |o - b o| + 1 + D1,
  // where L = 4(m1 + 1) with m1 = 0, c1 = 1 and C1 = 0 on a tree.
  constexpr long kMaxN = 256;
  for (long n = 1; n <= kMaxN && c.n == 0; ++n) {
    const GroupElement bn = group.power(b, n);
    const GroupElement h = group.multiply(c.f, bn);
    const long tau = tree.translation_length(h);
    if (tau == 0 || !tree.independent(h, b)) continue;
    auto f_set = f_of(h);
    Rational d1 = 0;
    for (const auto& g : f_set) d1 = std::max(d1, moved(tree, g, o));
    if (moved(tree, h, o) > 4 * c.loxodromic.distance + 1 + d1) {
      c.n = n;
      c.h = h;
      c.tau_h = tau;
      c.d1 = d1;
      c.f_set = std::move(f_set);
      c.joint_hypothesis = joint_loxodromic(c.f, bn, o, tree, 2).hypothesis;
    }
  }
  if (c.n == 0) throw InconclusiveError("no exponent n <= 256 makes f b^n long enough");
  std::unordered_set<std::string> f_keys;
  for (const auto& g : c.f_set) f_keys.insert(element_key(g));

  for (const auto& s : u.elements()) {
    if (f_keys.count(element_key(s))) continue;
    const bool repeat = std::any_of(c.u0.begin(), c.u0.end(), [&](const GroupElement& prev) {
      return f_keys.count(element_key(group.multiply(group.inverse(prev), s))) > 0;
    });
    if (!repeat) c.u0.push_back(s);
  }
  if (c.u0.empty()) throw PreconditionError("every element of U lies in F = E(h) cap E(b)");
  if (Rational(static_cast<long>(c.u0.size())) <
      Rational(static_cast<long>(u.size()), static_cast<long>(c.f_set.size())) - 1)
    throw InvariantViolation("|U_0| < |U| / |F| - 1");

  Rational hop = 0;
  for (const auto& s : c.u0) hop = std::max(hop, moved(tree, s, o));
  if (hop >= moved(tree, c.h, o)) throw InvariantViolation("some s in U_0 moves o as far as h does");

  // Least n3 for which T = {s h^n3} passes the local ping-pong test at o.
  constexpr long kMaxN3 = 256;
  for (long n3 = 1; n3 <= kMaxN3 && c.n3 == 0; ++n3) {
    const GroupElement hn = group.power(c.h, n3);
    std::vector<GroupElement> t;
    for (const auto& s : c.u0) t.push_back(group.multiply(s, hn));
    const PingPongTest test = tree_pingpong(tree, o, t);
    if (test.holds) {
      c.n3 = n3;
      c.local = test;
    }
  }
  if (c.n3 == 0) throw InconclusiveError("no exponent n3 <= 256 passes the local ping-pong test");

  // Words over U: b is s or t s, h = f b^n, T = s h^{n3}.
  std::vector<GroupElement> b_letters{c.loxodromic.s};
  if (c.loxodromic.which == LoxodromicCertificate::Case::Product) b_letters.insert(b_letters.begin(), c.loxodromic.t);
  std::vector<GroupElement> h_letters{c.f};
  for (long i = 0; i < c.n; ++i) h_letters.insert(h_letters.end(), b_letters.begin(), b_letters.end());

  FreeSemigroupCertificate out;
  for (const auto& s : c.u0) {
    std::vector<GroupElement> letters{s};
    for (long i = 0; i < c.n3; ++i) letters.insert(letters.end(), h_letters.begin(), h_letters.end());
    GroupElement value = group.product(letters);
    if (!(value == group.multiply(s, group.power(c.h, c.n3))))
      throw InvariantViolation("U-word of a base element does not evaluate to s h^n3");
    c.kappa = std::max(c.kappa, static_cast<long>(letters.size()));
    c.t_words.push_back(u_word(group, letters));
    out.base.push_back(std::move(value));
  }

  out.depth = depth;
  out.check = free_rank_verify(group, out.base, depth);
  if (!out.check.free) {
    const auto& [w1, w2] = *out.check.collision;
    std::string msg = "free base collision at depth " + std::to_string(depth) + ": words";
    for (auto i : w1) msg += " " + std::to_string(i);
    msg += " and";
    for (auto i : w2) msg += " " + std::to_string(i);
    throw InvariantViolation(msg);
  }
  out.verified = true;
  out.construction = std::move(c);
  return out;
}

}  // namespace psg
