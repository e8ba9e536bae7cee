#include "psg/tree.hpp"

#include <algorithm>
#include <unordered_set>

#include "psg/error.hpp"
#include "text.hpp"

namespace psg {

bool vertex_less(const TreeVertex& a, const TreeVertex& b) {
  if (a.rep == b.rep) return a.type < b.type;
  return shortlex_less(a.rep, b.rep);
}

std::string vertex_key(const TreeVertex& v) {
  return static_cast<char>(v.type + 2) + element_key(v.rep);
}

std::string HalfInteger::str() const {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

TreeAction TreeAction::cayley(const Group& group) {
  if (group.kind() != GroupSpec::Kind::Free) throw PreconditionError("the Cayley tree needs a free group");
  return TreeAction(group, Kind::Cayley);
}

TreeAction TreeAction::bass_serre(const Group& group) {
  if (group.kind() != GroupSpec::Kind::FreeProduct || group.spec().orders.size() < 2)
    throw PreconditionError("the Bass-Serre tree needs a free product of at least two cyclic groups");
  return TreeAction(group, Kind::BassSerre);
}

TreeAction TreeAction::standard(const Group& group) {
  return group.kind() == GroupSpec::Kind::Free ? cayley(group) : bass_serre(group);
}

std::string TreeAction::name() const { return kind_ == Kind::Cayley ? "cayley" : "bass_serre"; }

void TreeAction::check(const TreeVertex& v) const {
  group_.check(v.rep);
  const int k = kind_ == Kind::Cayley ? 1 : static_cast<int>(group_.spec().orders.size());
  const int lowest = kind_ == Kind::BassSerre && star() ? -1 : 0;
  if (v.type < lowest || v.type >= k) throw StructuralError("vertex type does not belong to this tree");
}

GroupElement TreeAction::strip_leading(const GroupElement& w, int type) const {
  if (!w.code.empty() && w.code[0] == type)
    return GroupElement{w.tag, std::vector<std::int32_t>(w.code.begin() + 2, w.code.end())};
  return w;
}

GroupElement TreeAction::strip_trailing(const GroupElement& w, int type) const {
  if (!w.code.empty() && w.code[w.code.size() - 2] == type)
    return GroupElement{w.tag, std::vector<std::int32_t>(w.code.begin(), w.code.end() - 2)};
  return w;
}

TreeVertex TreeAction::coset(int type, const GroupElement& g) const { return {type, strip_trailing(g, type)}; }

TreeVertex TreeAction::base() const { return {0, group_.identity()}; }

TreeVertex TreeAction::act(const GroupElement& g, const TreeVertex& v) const {
  check(v);
  const GroupElement x = group_.multiply(g, v.rep);
  if (kind_ == Kind::Cayley || v.type < 0) return {v.type, x};
  return coset(v.type, x);
}

long TreeAction::dist(const TreeVertex& u, const TreeVertex& v) const {
  check(u);
  check(v);
  const GroupElement w = group_.multiply(group_.inverse(u.rep), v.rep);
  if (kind_ == Kind::Cayley) return static_cast<long>(w.code.size());
  if (u.type < 0 && v.type >= 0) return dist(v, u);
  if (u.type < 0) return static_cast<long>(w.code.size());  // two edges per syllable
  if (v.type < 0) {
    const long p = static_cast<long>(strip_leading(w, u.type).code.size() / 2);
    return 2 * p + 1;
  }
  const long p = static_cast<long>(strip_trailing(strip_leading(w, u.type), v.type).code.size() / 2);
  if (!star()) return p == 0 ? (u.type != v.type ? 1 : 0) : p + 1;
  return p == 0 ? (u.type != v.type ? 2 : 0) : 2 * p + 2;
}

std::vector<TreeVertex> TreeAction::neighbors(const TreeVertex& v) const {
  check(v);
  std::vector<TreeVertex> out;
  if (kind_ == Kind::Cayley) {
    for (const auto& s : group_.symmetric_generators()) out.push_back({0, group_.multiply(v.rep, s)});
  } else if (v.type < 0) {
    for (int i = 0; i < static_cast<int>(group_.spec().orders.size()); ++i) out.push_back(coset(i, v.rep));
  } else {
    const int n = group_.spec().orders[v.type];
    const GroupElement a = group_.generator(v.type);
    GroupElement r = v.rep;
    for (int e = 0; e < n; ++e) {
      if (star())
        out.push_back({-1, r});
      else
        out.push_back(coset(1 - v.type, r));
      r = group_.multiply(r, a);
    }
  }
  std::sort(out.begin(), out.end(), VertexLess{});
  return out;
}

std::vector<TreeVertex> TreeAction::ball(const TreeVertex& center, long r, std::size_t cap) const {
  std::unordered_set<std::string> seen{vertex_key(center)};
  std::vector<TreeVertex> all{center};
  std::vector<TreeVertex> frontier{center};
  for (long k = 1; k <= r && !frontier.empty(); ++k) {
    std::vector<TreeVertex> next;
    for (const auto& v : frontier)
      for (auto& w : neighbors(v))
        if (seen.insert(vertex_key(w)).second) {
          if (seen.size() > cap) throw ResourceLimitError("tree ball exceeds the cap of " + std::to_string(cap));
          next.push_back(std::move(w));
        }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end(), VertexLess{});
  return all;
}

TreeVertex TreeAction::point_on_geodesic(const TreeVertex& u, const TreeVertex& v, long k) const {
  long remaining = dist(u, v);
  k = std::clamp(k, 0L, remaining);
  TreeVertex cur = u;
  for (long step = 0; step < k; ++step) {
    bool moved = false;
    for (auto& w : neighbors(cur)) {
      if (dist(w, v) == remaining - 1) {
        cur = std::move(w);
        moved = true;
        break;
      }
    }
    if (!moved) throw InvariantViolation("no geodesic step found in tree");
    --remaining;
  }
  return cur;
}

std::vector<TreeVertex> TreeAction::geodesic(const TreeVertex& u, const TreeVertex& v) const {
  std::vector<TreeVertex> path{u};
  const long d = dist(u, v);
  for (long k = 1; k <= d; ++k) path.push_back(point_on_geodesic(path.back(), v, 1));
  return path;
}

HalfInteger TreeAction::gromov_product(const TreeVertex& a, const TreeVertex& c, const TreeVertex& at) const {
  return {dist(a, at) + dist(c, at) - dist(a, c)};
}

long TreeAction::translation_length(const GroupElement& g) const {
  const TreeVertex o = base();
  const TreeVertex go = act(g, o);
  return std::max(0L, dist(o, act(g, go)) - dist(o, go));
}

namespace {

struct CyclicForm {
  GroupElement conjugator;
  GroupElement core;
};

// g = conjugator · core · conjugator^-1 with core cyclically reduced.
CyclicForm cyclic_reduce(const Group& group, const GroupElement& g) {
  GroupElement c = group.identity();
  GroupElement w = g;
  for (;;) {
    const auto ls = group.letters(w);
    if (ls.size() < 2) break;
    const auto& first = ls.front();
    const auto& last = ls.back();
    if (first.generator != last.generator) break;
    if (group.kind() == GroupSpec::Kind::Free && first.exponent == last.exponent) break;
    const GroupElement x = group.from_letters({first});
    c = group.multiply(c, x);
    w = group.conjugate(w, x);
  }
  return {c, w};
}

}  // namespace

AxisFingerprint TreeAction::fingerprint(const GroupElement& g) const {
  const long tau = translation_length(g);
  if (tau == 0) throw PreconditionError("element " + group_.format(g) + " is elliptic");
  const auto [c, core] = cyclic_reduce(group_, g);
  const auto ls = group_.letters(core);
  const std::size_t n = ls.size();
  std::size_t period = n;
  for (std::size_t m = 1; m < n; ++m) {
    if (n % m != 0) continue;
    bool periodic = true;
    for (std::size_t i = m; i < n && periodic; ++i)
      periodic = ls[i].generator == ls[i % m].generator && ls[i].exponent == ls[i % m].exponent;
    if (periodic) {
      period = m;
      break;
    }
  }
  const std::vector<Letter> root_letters(ls.begin(), ls.begin() + static_cast<long>(period));
  const GroupElement root = group_.from_letters(root_letters);

  AxisFingerprint fp;
  fp.exponent = static_cast<long>(n / period);
  fp.primitive = group_.multiply(group_.multiply(c, root), group_.inverse(c));

  // Least rotation over both orientations.
  std::optional<GroupElement> best;
  const auto inverse_letters = group_.letters(group_.inverse(root));
  for (int orientation : {1, -1}) {
    const auto& base_letters = orientation == 1 ? root_letters : inverse_letters;
    for (std::size_t r = 0; r < period; ++r) {
      std::vector<Letter> rotated(base_letters.begin() + static_cast<long>(r), base_letters.end());
      rotated.insert(rotated.end(), base_letters.begin(), base_letters.begin() + static_cast<long>(r));
      GroupElement candidate = group_.from_letters(rotated);
      if (!best || shortlex_less(candidate, *best)) {
        best = std::move(candidate);
        fp.orientation = orientation;
      }
    }
  }
  fp.core = group_.format(*best);

  if (kind_ == Kind::Cayley)
    fp.anchor = {0, c};
  else if (star())
    fp.anchor = {-1, c};
  else
    fp.anchor = coset(static_cast<int>(ls.front().generator), c);
  if (dist(fp.anchor, act(g, fp.anchor)) != tau)
    throw InvariantViolation("fingerprint anchor of " + group_.format(g) + " is not on its axis");
  return fp;
}

Classification TreeAction::classify(const GroupElement& g) const {
  Classification out;
  out.tau = translation_length(g);
  out.loxodromic = out.tau > 0;
  if (out.loxodromic) {
    out.axis = fingerprint(g);
    return out;
  }
  // The midpoint of [o, go] is fixed: actions here preserve vertex types, so no edge is inverted.
  const TreeVertex o = base();
  const TreeVertex go = act(g, o);
  const long d = dist(o, go);
  if (d % 2 != 0) throw InvariantViolation("elliptic element moves the base vertex an odd distance");
  TreeVertex m = point_on_geodesic(o, go, d / 2);
  if (!(act(g, m) == m)) throw InvariantViolation("midpoint of [o, go] is not fixed by elliptic element");
  out.fixed = std::move(m);
  return out;
}

LoxodromicCriterion TreeAction::loxodromic_criterion(const GroupElement& g, const TreeVertex& o) const {
  LoxodromicCriterion out;
  const TreeVertex go = act(g, o);
  out.distance = dist(o, go);
  out.product = gromov_product(o, act(g, go), go);
  // Strict with delta = 0: an order-3 rotation has |o - go| = 2<o, g^2 o>_{go}.
  out.holds = 2 * out.distance > 2 * out.product.twice;
  return out;
}

bool TreeAction::same_axis(const GroupElement& g, const GroupElement& h) const {
  const auto pg = fingerprint(g).primitive;
  const auto ph = fingerprint(h).primitive;
  return pg == ph || pg == group_.inverse(ph);
}

bool TreeAction::same_endpoint_pair(const GroupElement& g, const GroupElement& h) const {
  return same_axis(g, group_.multiply(group_.multiply(h, g), group_.inverse(h)));
}

bool TreeAction::independent(const GroupElement& g, const GroupElement& h) const {
  if (translation_length(g) == 0 || translation_length(h) == 0) return false;
  return !same_axis(g, h);
}

TreeVertex TreeAction::project_to_axis(const GroupElement& g, const TreeVertex& x) const {
  const auto fp = fingerprint(g);
  const long tau = translation_length(g);
  const long n = dist(x, fp.anchor) / tau + 2;
  const TreeVertex a = act(group_.power(g, -n), fp.anchor);
  const TreeVertex b = act(group_.power(g, n), fp.anchor);
  return point_on_geodesic(a, b, gromov_product(x, b, a).twice / 2);
}

MetricPoint TreeAction::canonical(MetricPoint p) const {
  if (p.q < 0 || p.q > 4) throw PreconditionError("quarter offset out of range");
  if (p.q == 0) return MetricPoint::at(p.from);
  if (p.q == 4) return MetricPoint::at(p.to);
  if (dist(p.from, p.to) != 1) throw PreconditionError("metric point endpoints are not adjacent");
  if (vertex_less(p.to, p.from)) {
    std::swap(p.from, p.to);
    p.q = 4 - p.q;
  }
  return p;
}

MetricPoint TreeAction::act(const GroupElement& g, const MetricPoint& p) const {
  if (p.is_vertex()) return MetricPoint::at(act(g, p.from));
  return canonical({act(g, p.from), act(g, p.to), p.q});
}

long TreeAction::dist4(const MetricPoint& p, const MetricPoint& q) const {
  if (!p.is_vertex() && !q.is_vertex() && p.from == q.from && p.to == q.to) return std::abs(p.q - q.q);
  long best = -1;
  for (int i = 0; i < (p.is_vertex() ? 1 : 2); ++i)
    for (int j = 0; j < (q.is_vertex() ? 1 : 2); ++j) {
      const TreeVertex& x = i == 0 ? p.from : p.to;
      const TreeVertex& y = j == 0 ? q.from : q.to;
      const long off_p = i == 0 ? p.q : 4 - p.q;
      const long off_q = j == 0 ? q.q : 4 - q.q;
      const long d = off_p + 4 * dist(x, y) + off_q;
      if (best < 0 || d < best) best = d;
    }
  return best;
}

std::vector<MetricPoint> TreeAction::metric_ball(const TreeVertex& center, long r, std::size_t cap) const {
  const auto vertices = ball(center, r, cap);
  std::vector<MetricPoint> out;
  for (const auto& v : vertices) {
    out.push_back(MetricPoint::at(v));
    for (const auto& w : neighbors(v)) {
      if (!vertex_less(v, w) || dist(center, w) > r) continue;
      for (int q = 1; q < 4; ++q) out.push_back({v, w, q});
    }
  }
  return out;
}

MetricPoint TreeAction::metric_point_on_geodesic(const MetricPoint& p, const MetricPoint& q, long k) const {
  const long total = dist4(p, q);
  if (k <= 0) return p;
  if (k >= total) return q;
  if (!p.is_vertex() && !q.is_vertex() && p.from == q.from && p.to == q.to)
    return canonical({p.from, p.to, p.q + static_cast<int>(q.q > p.q ? k : -k)});
  // Pick the endpoints realizing the distance, then walk p -> x -> ... -> y -> q.
  for (int i = 0; i < (p.is_vertex() ? 1 : 2); ++i)
    for (int j = 0; j < (q.is_vertex() ? 1 : 2); ++j) {
      const TreeVertex& x = i == 0 ? p.from : p.to;
      const TreeVertex& y = j == 0 ? q.from : q.to;
      const long off_p = i == 0 ? p.q : 4 - p.q;
      const long off_q = j == 0 ? q.q : 4 - q.q;
      const long dxy = dist(x, y);
      if (off_p + 4 * dxy + off_q != total) continue;
      if (k <= off_p) return canonical({p.from, p.to, static_cast<int>(i == 0 ? p.q - k : p.q + k)});
      const long k1 = k - off_p;
      if (k1 <= 4 * dxy) {
        const TreeVertex u = point_on_geodesic(x, y, k1 / 4);
        if (k1 % 4 == 0) return MetricPoint::at(u);
        return canonical({u, point_on_geodesic(u, y, 1), static_cast<int>(k1 % 4)});
      }
      const TreeVertex& other = j == 0 ? q.to : q.from;
      return canonical({y, other, static_cast<int>(k1 - 4 * dxy)});
    }
  throw InvariantViolation("metric geodesic endpoints not found");
}

TreeVertex TreeAction::parse_vertex(std::string_view text) const {
  const std::string_view t = text::trim(text);
  if (kind_ == Kind::Cayley) return {0, group_.parse_word(t)};
  if (!t.empty() && t.front() == '[' && t.back() == ']') {
    if (!star()) throw PreconditionError("this Bass-Serre tree has no [g] vertices");
    return {-1, group_.parse_word(t.substr(1, t.size() - 2))};
  }
  const auto open = t.rfind('<');
  if (t.empty() || t.back() != '>' || open == std::string_view::npos)
    throw PreconditionError("Bass-Serre vertex must look like 'w <s>' or '[w]', got '" + std::string(t) + "'");
  const std::string label(text::trim(t.substr(open + 1, t.size() - open - 2)));
  const auto& labels = group_.labels();
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw PreconditionError("unknown factor '" + label + "'");
  const std::string_view word = text::trim(t.substr(0, open));
  return coset(static_cast<int>(it - labels.begin()), word.empty() ? group_.identity() : group_.parse_word(word));
}

std::string TreeAction::format(const TreeVertex& v) const {
  check(v);
  if (kind_ == Kind::Cayley) return group_.format(v.rep);
  if (v.type < 0) return "[" + group_.format(v.rep) + "]";
  const std::string coset_label = "<" + group_.labels()[v.type] + ">";
  return group_.is_identity(v.rep) ? coset_label : group_.format(v.rep) + " " + coset_label;
}

std::string TreeAction::format(const MetricPoint& p) const {
  if (p.is_vertex()) return format(p.from);
  return format(p.from) + " -> " + format(p.to) + " @ " + std::to_string(p.q) + "/4";
}

}  // namespace psg
