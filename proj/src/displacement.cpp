#include "psg/displacement.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "psg/error.hpp"

namespace psg {

using boost::multiprecision::cpp_int;

ProductAction::ProductAction(const Group& group, std::vector<TreeAction> factors)
    : group_(group), factors_(std::move(factors)) {
  if (factors_.empty()) throw PreconditionError("a product action needs at least one tree");
  if (group_.kind() == GroupSpec::Kind::DirectProduct) {
    if (factors_.size() != group_.factor_count())
      throw PreconditionError("one tree per direct factor is required");
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (factors_[i].group().tag() != group_.factor(i).tag())
        throw StructuralError("tree " + std::to_string(i + 1) + " is not acted on by factor " + std::to_string(i + 1));
  } else {
    if (factors_.size() != 1) throw PreconditionError("only direct products act on several trees");
    if (factors_[0].group().tag() != group_.tag()) throw StructuralError("tree is acted on by a different group");
  }
}

ProductAction ProductAction::standard(const Group& group) {
  std::vector<TreeAction> trees;
  if (group.kind() == GroupSpec::Kind::DirectProduct) {
    for (std::size_t i = 0; i < group.factor_count(); ++i) trees.push_back(TreeAction::standard(group.factor(i)));
  } else {
    trees.push_back(TreeAction::standard(group));
  }
  return ProductAction(group, std::move(trees));
}

GroupElement ProductAction::component(const GroupElement& g, std::size_t i) const { return group_.component(g, i); }

GroupElement ProductAction::embed(std::size_t i, const GroupElement& x) const { return group_.embed(i, x); }

ProductAction::Point ProductAction::base() const {
  Point p;
  for (const auto& t : factors_) p.push_back(t.base());
  return p;
}

ProductAction::Point ProductAction::act(const GroupElement& g, const Point& p) const {
  if (p.size() != factors_.size()) throw StructuralError("point has the wrong number of coordinates");
  Point out;
  for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(factors_[i].act(component(g, i), p[i]));
  return out;
}

long ProductAction::dist(const Point& p, const Point& q) const {
  if (p.size() != factors_.size() || q.size() != factors_.size())
    throw StructuralError("point has the wrong number of coordinates");
  long d = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) d += factors_[i].dist(p[i], q[i]);
  return d;
}

std::string ProductAction::format(const Point& p) const {
  if (p.size() == 1) return factors_[0].format(p[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? ", " : "") + factors_[i].format(p[i]);
  return out + ")";
}

long displacement(const MarkedSubset& s, const TreeAction& tree, const TreeVertex& v) {
  long best = 0;
  for (const auto& g : s.elements()) best = std::max(best, tree.dist(v, tree.act(g, v)));
  return best;
}

DisplacementReport displacement_at(const MarkedSubset& s, const ProductAction& p, const ProductAction::Point& x) {
  DisplacementReport r;
  r.per_factor.assign(p.size(), 0);
  r.value = -1;
  for (const auto& g : s.elements()) {
    long total = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const long d = p.factor(i).dist(x[i], p.factor(i).act(p.component(g, i), x[i]));
      r.per_factor[i] = std::max(r.per_factor[i], d);
      total += d;
    }
    if (total > r.value) {
      r.value = total;
      r.maximizer = g;
    }
  }
  return r;
}

MarkedSubset factor_subset(const MarkedSubset& s, const ProductAction& p, std::size_t i) {
  std::vector<GroupElement> comps;
  for (const auto& g : s.elements()) comps.push_back(p.component(g, i));
  return MarkedSubset(p.factor(i).group(), comps);
}

Minimizer min_displacement(const MarkedSubset& s, const TreeAction& tree, const TreeVertex& start) {
  Minimizer m;
  m.vertex = start;
  m.value = m.start_value = displacement(s, tree, start);
  for (;;) {
    std::optional<TreeVertex> best;
    long best_value = m.value;
    for (auto& w : tree.neighbors(m.vertex)) {
      const long f = displacement(s, tree, w);
      if (f < best_value) {
        best_value = f;
        best = std::move(w);
      }
    }
    if (!best) return m;
    m.vertex = std::move(*best);
    m.value = best_value;
    ++m.steps;
  }
}

Minimizer min_displacement(const MarkedSubset& s, const TreeAction& tree) {
  return min_displacement(s, tree, tree.base());
}

Minimizer min_displacement_exhaustive(const MarkedSubset& s, const TreeAction& tree, const TreeVertex& start,
                                      std::size_t cap) {
  Minimizer m;
  m.start_value = displacement(s, tree, start);
  m.value = m.start_value;
  m.vertex = start;
  bool first = true;
  for (const auto& v : tree.ball(start, m.start_value, cap)) {
    const long f = displacement(s, tree, v);
    if (first || f < m.value) {
      m.value = f;
      m.vertex = v;
      first = false;
    }
  }
  return m;
}

long displacement4(const MarkedSubset& s, const TreeAction& tree, const MetricPoint& p) {
  long best = 0;
  for (const auto& g : s.elements()) best = std::max(best, tree.dist4(p, tree.act(g, p)));
  return best;
}

MetricMinimizer min_displacement_metric(const MarkedSubset& s, const TreeAction& tree) {
  MetricMinimizer m;
  m.point = MetricPoint::at(min_displacement(s, tree).vertex);
  m.value4 = displacement4(s, tree, m.point);
  for (;;) {
    std::vector<MetricPoint> next;
    if (m.point.is_vertex()) {
      for (const auto& w : tree.neighbors(m.point.from)) next.push_back(tree.canonical({m.point.from, w, 1}));
    } else {
      next.push_back(tree.canonical({m.point.from, m.point.to, m.point.q - 1}));
      next.push_back(tree.canonical({m.point.from, m.point.to, m.point.q + 1}));
    }
    std::optional<MetricPoint> best;
    long best_value = m.value4;
    for (auto& p : next) {
      const long f = displacement4(s, tree, p);
      if (f < best_value) {
        best_value = f;
        best = std::move(p);
      }
    }
    if (!best) return m;
    m.point = std::move(*best);
    m.value4 = best_value;
  }
}

QuasiCenter quasi_center(const MarkedSubset& s, const TreeVertex& o, const TreeVertex& x, const TreeAction& tree) {
  QuasiCenter qc;
  long far = -1;
  for (const auto& g : s.elements()) {
    const long d = tree.dist(o, tree.act(g, o));
    if (d > far || (d == far && shortlex_less(g, qc.t))) {
      far = d;
      qc.t = g;
    }
  }
  qc.z = tree.point_on_geodesic(o, tree.act(qc.t, o), far / 2);
  qc.lambda_x = displacement(s, tree, x);
  // 2|x - y_hat| = 2|x - o| - |o - t o| - L, clipped at 0 and rounded down.
  const long twice = 2 * tree.dist(x, o) - far - qc.lambda_x;
  qc.y_hat = tree.point_on_geodesic(x, o, std::max(0L, twice) / 2);
  qc.lambda_z = displacement(s, tree, qc.z);
  qc.bound = 6 * qc.lambda_x;
  return qc;
}

OrbitPoint nearest_orbit_point(const TreeAction& tree, const TreeVertex& o, const TreeVertex& v) {
  std::unordered_set<std::string> seen{vertex_key(v)};
  std::vector<TreeVertex> layer{v};
  for (long k = 0; !layer.empty(); ++k) {
    std::optional<TreeVertex> hit;
    for (const auto& w : layer)
      if (w.type == o.type && (!hit || vertex_less(w, *hit))) hit = w;
    if (hit) {
      const Group& g = tree.group();
      OrbitPoint out{g.multiply(hit->rep, g.inverse(o.rep)), k};
      if (!(tree.act(out.g, o) == *hit)) throw InvariantViolation("orbit representative does not map o to the target");
      return out;
    }
    std::vector<TreeVertex> next;
    for (const auto& w : layer)
      for (auto& u : tree.neighbors(w))
        if (seen.insert(vertex_key(u)).second) next.push_back(std::move(u));
    layer = std::move(next);
  }
  throw InvariantViolation("orbit of o not found");
}

long coarse_density(const TreeAction& tree, const TreeVertex& o) {
  long d = 0;
  for (const auto& v : tree.ball(o, 2)) d = std::max(d, nearest_orbit_point(tree, o, v).distance);
  return d;
}

namespace {

std::vector<GroupElement> conjugate_all(const Group& g, const std::vector<GroupElement>& s, const GroupElement& by) {
  std::vector<GroupElement> out;
  for (const auto& x : s) out.push_back(g.conjugate(x, by));
  return out;
}

}  // namespace

ReductionTrace conjugate_reduce(const MarkedSubset& s, const ProductAction& p) {
  const Group& group = p.group();
  const std::size_t l = p.size();
  ReductionTrace trace;
  trace.g = group.identity();
  const auto o = p.base();
  for (std::size_t i = 0; i < l; ++i) {
    trace.m = std::max(trace.m, min_displacement(factor_subset(s, p, i), p.factor(i)).value);
    trace.density.push_back(coarse_density(p.factor(i), o[i]));
    trace.d_total += trace.density.back();
  }
  // Recursion M_1 <= 6M + 3 + 2D, M_{i+1} <= max(6M + 3 + 2D, 3 M_i + 2D), tracked as a M + b.
  long a = 0, b = 0;
  std::vector<GroupElement> current = s.elements();
  for (std::size_t i = 0; i < l; ++i) {
    const TreeAction& tree = p.factor(i);
    const MarkedSubset si = factor_subset(MarkedSubset(group, current), p, i);
    ReductionStep step;
    step.factor = i;
    const auto x = min_displacement(si, tree, o[i]);
    step.factor_lambda = x.value;
    step.x = x.vertex;
    const auto qc = quasi_center(si, o[i], x.vertex, tree);
    if (!qc.within_bound())
      throw InvariantViolation("quasi-center displacement " + std::to_string(qc.lambda_z) + " exceeds 6L+3 = " +
                               std::to_string(qc.bound + qc.tolerance));
    step.z = qc.z;
    step.s = qc.t;
    const auto orbit = nearest_orbit_point(tree, o[i], qc.z);
    step.orbit_distance = orbit.distance;
    step.g = p.embed(i, orbit.g);
    current = conjugate_all(group, current, step.g);
    trace.g = group.multiply(trace.g, step.g);

    const MarkedSubset next(group, current);
    for (std::size_t j = 0; j <= i; ++j)
      step.measured_m = std::max(step.measured_m, displacement(factor_subset(next, p, j), p.factor(j), o[j]));
    if (i == 0) {
      a = 6;
      b = 3 + 2 * trace.d_total;
    } else {
      a = std::max(6L, 3 * a);
      b = std::max(3 + 2 * trace.d_total, 3 * b + 2 * trace.d_total);
    }
    step.recursion_bound = a * trace.m + b;
    if (step.measured_m > step.recursion_bound)
      throw InvariantViolation("M_" + std::to_string(i + 1) + " = " + std::to_string(step.measured_m) +
                               " exceeds its recursion bound " + std::to_string(step.recursion_bound));
    trace.steps.push_back(std::move(step));
  }
  trace.lambda_conjugated = displacement_at(MarkedSubset(group, current), p, o).value;
  trace.c1 = static_cast<long>(l) * std::max(a, b);
  trace.final_bound = trace.c1 * (trace.m + 1);
  return trace;
}

Sandwich displacement_sandwich(const MarkedSubset& s, const ProductAction& p, int radius) {
  const Group& group = p.group();
  const auto trace = conjugate_reduce(s, p);
  Sandwich out;
  out.lower = trace.m;
  out.search_radius = radius;
  out.c1 = trace.c1;
  auto candidates = word_ball(group, radius);
  candidates.push_back(trace.g);
  const auto o = p.base();
  out.orbit_upper = -1;
  for (const auto& g : candidates) {
    const long v = displacement_at(MarkedSubset(group, conjugate_all(group, s.elements(), g)), p, o).value;
    if (out.orbit_upper < 0 || v < out.orbit_upper || (v == out.orbit_upper && shortlex_less(g, out.best_conjugator))) {
      out.orbit_upper = v;
      out.best_conjugator = g;
    }
  }
  out.holds = out.lower <= out.orbit_upper && out.orbit_upper <= out.c1 * out.lower + out.c1;
  return out;
}

TransferResult factor_transfer(const MarkedSubset& s, const ProductAction& p, long m) {
  TransferResult r;
  r.m = m;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto min = min_displacement(factor_subset(s, p, i), p.factor(i));
    r.values.push_back(min.value);
    r.minimizers.push_back(min.vertex);
    if (!r.factor && min.value > m) r.factor = i;
  }
  return r;
}

namespace {

// Types of the neighbors of a vertex of the given type, with multiplicities.
std::vector<std::pair<int, long>> neighbor_types(const TreeAction& tree, int type) {
  const auto& spec = tree.group().spec();
  if (tree.kind() == TreeAction::Kind::Cayley) return {{0, 2L * spec.rank}};
  const int k = static_cast<int>(spec.orders.size());
  if (type < 0) {
    std::vector<std::pair<int, long>> out;
    for (int i = 0; i < k; ++i) out.emplace_back(i, 1);
    return out;
  }
  if (k >= 3) return {{-1, spec.orders[type]}};
  return {{1 - type, spec.orders[type]}};
}

// Arithmetic for orbit counts: exact, or saturating at a cap.
struct ExactCount {
  using Num = cpp_int;
  Num add(const Num& a, const Num& b) const { return a + b; }
  Num mul(const Num& a, const Num& b) const { return a * b; }
};

struct SaturatingCount {
  using Num = std::uint64_t;
  std::uint64_t cap;
  Num add(Num a, Num b) const { return std::min(cap, a + b < a ? cap : a + b); }
  Num mul(Num a, Num b) const {
    Num r = 0;
    return __builtin_mul_overflow(a, b, &r) ? cap : std::min(cap, r);
  }
};

// Number of group elements g with d(o, g o) = k, for k = 0..r.
template <class Arith>
std::vector<typename Arith::Num> orbit_sphere_counts(const TreeAction& tree, const TreeVertex& o, long r,
                                                     const Arith& ar) {
  using Num = typename Arith::Num;
  // State: (vertex type, parent type); counts of vertices at the current distance.
  std::map<std::pair<int, int>, Num> layer;
  constexpr int kRoot = 99;
  layer[{o.type, kRoot}] = 1;
  const long stabilizer =
      tree.kind() == TreeAction::Kind::Cayley || o.type < 0 ? 1 : tree.group().spec().orders[o.type];
  std::vector<Num> out;
  for (long k = 0; k <= r; ++k) {
    Num same = 0;
    for (const auto& [state, count] : layer)
      if (state.first == o.type) same = ar.add(same, count);
    out.push_back(ar.mul(same, static_cast<Num>(stabilizer)));
    std::map<std::pair<int, int>, Num> next;
    for (const auto& [state, count] : layer) {
      for (auto [t, mult] : neighbor_types(tree, state.first)) {
        const long children = mult - (t == state.second ? 1 : 0);
        if (children > 0) {
          auto& slot = next[{t, state.first}];
          slot = ar.add(slot, ar.mul(count, static_cast<Num>(children)));
        }
      }
    }
    layer = std::move(next);
  }
  return out;
}

template <class Arith>
typename Arith::Num orbit_ball(const ProductAction& p, long r, const Arith& ar) {
  using Num = typename Arith::Num;
  const auto o = p.base();
  std::vector<Num> total{1};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto sphere = orbit_sphere_counts(p.factor(i), o[i], r, ar);
    std::vector<Num> conv(static_cast<std::size_t>(r + 1), 0);
    for (std::size_t a = 0; a < total.size(); ++a) {
      if (total[a] == 0) continue;
      for (std::size_t b = 0; a + b <= static_cast<std::size_t>(r); ++b)
        conv[a + b] = ar.add(conv[a + b], ar.mul(total[a], sphere[b]));
    }
    total = std::move(conv);
  }
  Num sum = 0;
  for (const auto& c : total) sum = ar.add(sum, c);
  return sum;
}

}  // namespace

cpp_int orbit_ball_size(const ProductAction& p, long r) { return orbit_ball(p, r, ExactCount{}); }

std::uint64_t orbit_ball_size_saturating(const ProductAction& p, long r, std::uint64_t cap) {
  return orbit_ball(p, r, SaturatingCount{cap});
}

}  // namespace psg
