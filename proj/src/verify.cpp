#include <algorithm>
#include <set>

#include <yaml-cpp/yaml.h>

#include "commands_internal.hpp"
#include "psg/commands.hpp"
#include "psg/displacement.hpp"
#include "psg/error.hpp"
#include "psg/growth.hpp"
#include "psg/loxodromic.hpp"
#include "psg/schreier.hpp"
#include "psg/suite.hpp"

namespace psg {
namespace {

using detail::product_of;
using detail::single_tree;
using detail::subset;

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) out.failures.push_back(what);
  }
  template <typename T>
  void same(const T& certified, const T& recomputed, const std::string& what) {
    if (!(certified == recomputed)) out.failures.push_back(what + " does not match the recomputation");
  }
  VerifyOutcome out;
};

template <typename T>
T get(const YAML::Node& n, const std::string& key) {
  if (!n[key]) throw ConfigError("certificate: missing key '" + key + "'");
  return n[key].as<T>();
}

std::vector<std::string> strings(const YAML::Node& n, const std::string& key) {
  return get<std::vector<std::string>>(n, key);
}

bool in_ball(const std::vector<GroupElement>& ball, const Group& g, const GroupElement& x) {
  return g.is_identity(x) || std::binary_search(ball.begin(), ball.end(), x, ShortlexLess{});
}

MarkedSubset conjugated(const MarkedSubset& s, const GroupElement& by) {
  const Group& g = s.group();
  std::vector<GroupElement> out;
  for (const auto& x : s.elements()) out.push_back(g.conjugate(x, by));
  return MarkedSubset(g, out);
}

void displace(Checker& c, const ExperimentConfig& cfg, const YAML::Node& y) {
  const Group g(cfg.group);
  const auto s = subset(cfg, g, "displace");
  const auto p = product_of(cfg, g);
  const auto factors = y["factors"];
  c.expect(factors && factors.size() == p.size(), "factor count");
  long lower = 0;
  for (std::size_t i = 0; i < p.size() && i < factors.size(); ++i) {
    const auto& tree = p.factor(i);
    const auto fs = factor_subset(s, p, i);
    const auto brute = min_displacement_exhaustive(fs, tree, tree.base());
    const long claimed = get<long>(factors[i], "lambda_min");
    c.same(claimed, brute.value, "factor " + std::to_string(i + 1) + " lambda_min");
    const auto v = tree.parse_vertex(get<std::string>(factors[i], "minimizer"));
    c.same(displacement(fs, tree, v), claimed, "factor " + std::to_string(i + 1) + " minimizer value");
    c.same(get<long>(factors[i], "lambda_at_base"), displacement(fs, tree, tree.base()),
           "factor " + std::to_string(i + 1) + " lambda_at_base");
    lower = std::max(lower, brute.value);
  }
  const auto sw = y["sandwich"];
  c.same(get<long>(sw, "lower"), lower, "sandwich lower");
  const auto by = g.parse_word(get<std::string>(sw, "best_conjugator"));
  const long upper = get<long>(sw, "orbit_upper");
  c.same(upper, displacement_at(conjugated(s, by), p, p.base()).value, "sandwich orbit_upper");
  const long c1 = get<long>(sw, "c1");
  c.same(get<bool>(sw, "holds"), lower <= upper && upper <= c1 * lower + c1, "sandwich verdict");
  const auto red = y["reduction"];
  const auto rg = g.parse_word(get<std::string>(red, "g"));
  const long lc = get<long>(red, "lambda_conjugated");
  c.same(lc, displacement_at(conjugated(s, rg), p, p.base()).value, "reduction lambda_conjugated");
  c.same(get<long>(red, "m"), lower, "reduction M");
  c.same(get<long>(red, "final_bound"), get<long>(red, "c1") * (lower + 1), "reduction final_bound");
  c.same(get<bool>(red, "holds"), lc <= get<long>(red, "final_bound"), "reduction verdict");
}

void transfer(Checker& c, const ExperimentConfig& cfg, const YAML::Node& y) {
  const Group g(cfg.group);
  const auto s = subset(cfg, g, "transfer");
  const auto p = product_of(cfg, g);
  const auto values = get<std::vector<long>>(y, "values");
  const auto mins = strings(y, "minimizers");
  const long m = get<long>(y, "m");
  c.same(m, cfg.transfer.m, "M");
  c.expect(values.size() == p.size() && mins.size() == p.size(), "factor count");
  std::string first = "none";
  for (std::size_t i = 0; i < p.size() && i < values.size() && i < mins.size(); ++i) {
    const auto fs = factor_subset(s, p, i);
    const auto& tree = p.factor(i);
    c.same(values[i], min_displacement_exhaustive(fs, tree, tree.base()).value,
           "factor " + std::to_string(i + 1) + " lambda");
    c.same(displacement(fs, tree, tree.parse_vertex(mins[i])), values[i],
           "factor " + std::to_string(i + 1) + " minimizer value");
    if (first == "none" && values[i] > m) first = std::to_string(i + 1);
  }
  c.same(get<std::string>(y, "factor"), first, "transferring factor");
}

void loxo(Checker& c, const ExperimentConfig& cfg, const YAML::Node& y) {
  const Group g(cfg.group);
  const auto s = subset(cfg, g, "loxo");
  const auto tree = single_tree(cfg, g, "loxo");
  const auto b = g.parse_word(get<std::string>(y, "b"));
  c.expect(in_ball(semigroup_ball(s, 2), g, b), "b lies in S^{<=2}");
  const auto cl = tree.classify(b);
  c.expect(cl.loxodromic, "b is loxodromic");
  c.same(get<long>(y, "tau"), cl.tau, "tau");
  const Ratio lambda(min_displacement_metric(s, tree).value4, 4);
  c.same(parse_ratio(get<std::string>(y, "lambda")), lambda, "lambda");
  const Ratio distance = parse_ratio(get<std::string>(y, "distance"));
  c.expect(distance >= lambda - 10, "|o - b o| >= lambda - 10");
  c.expect(distance >= Ratio(cl.tau), "|o - b o| >= tau");
  c.same(parse_ratio(get<std::string>(y, "axis_offset")), distance - Ratio(cl.tau), "axis offset");
}

void free_base(Checker& c, const Group& g, const YAML::Node& y) {
  std::vector<GroupElement> base;
  for (const auto& w : strings(y, "base")) base.push_back(g.parse_word(w));
  const int depth = get<int>(y, "depth");
  const auto check = free_rank_verify(g, base, depth);
  c.expect(check.free, "free_rank_verify of the base at depth " + std::to_string(depth));
  c.same(get<bool>(y, "verified"), check.free, "verified flag");
  c.same(get<std::size_t>(y, "words_checked"), check.words, "words checked");
}

void pingpong(Checker& c, const ExperimentConfig& cfg, const YAML::Node& y) {
  const Group g(cfg.group);
  free_base(c, g, y);
  const auto x = g.parse_word(cfg.pingpong.g), h = g.parse_word(cfg.pingpong.h);
  std::set<GroupElement, ShortlexLess> pool;
  for (const auto& p : {x, h}) {
    pool.insert(p);
    pool.insert(g.inverse(p));
  }
  for (const auto& w : strings(y, "base")) c.expect(pool.contains(g.parse_word(w)), "base element from {g, h}^{+-1}");
}

void freebase(Checker& c, const ExperimentConfig& cfg, const YAML::Node& y) {
  const Group g(cfg.group);
  const auto u = subset(cfg, g, "freebase");
  free_base(c, g, y);
  const auto base = strings(y, "base");
  const auto words = strings(y, "t_words");
  const long kappa = get<long>(y, "kappa");
  c.expect(words.size() == base.size(), "one U-word per base element");
  for (std::size_t i = 0; i < words.size() && i < base.size(); ++i) {
    std::size_t len = 0;
    const auto x = detail::evaluate_u_word(g, u, words[i], &len);
    c.expect(x && *x == g.parse_word(base[i]), "T element " + std::to_string(i + 1) + " equals its U-word");
    c.expect(static_cast<long>(len) <= kappa, "T element " + std::to_string(i + 1) + " inside U^{<=kappa}");
  }
}

// Orbit of the point, or the image group, by closure over the generator images.
std::size_t recount_index(const FiniteQuotient& q, const SubgroupDesignator& h) {
  if (h.kind == SubgroupDesignator::Kind::Stabilizer) {
    std::set<int> seen{h.point};
    std::vector<int> todo{h.point};
    while (!todo.empty()) {
      const int x = todo.back();
      todo.pop_back();
      for (const auto& p : q.images())
        for (const auto& y : {p[x], invert(p)[x]})
          if (seen.insert(y).second) todo.push_back(y);
    }
    return seen.size();
  }
  Permutation id(q.degree());
  for (int i = 0; i < q.degree(); ++i) id[i] = i;
  std::set<Permutation> seen{id};
  std::vector<Permutation> todo{id};
  while (!todo.empty()) {
    const auto x = todo.back();
    todo.pop_back();
    for (const auto& p : q.images())
      for (const auto& y : {compose(x, p), compose(x, invert(p))})
        if (seen.insert(y).second) todo.push_back(y);
  }
  return seen.size();
}

void schreier(Checker& c, const ExperimentConfig& cfg, const YAML::Node& y) {
  const Group g(cfg.group);
  const auto u = subset(cfg, g, "schreier");
  const auto q = FiniteQuotient::parse(g, cfg.schreier.degree, cfg.schreier.images);
  const auto hs = cfg.schreier.subgroup;
  const auto h = hs == "ker" ? SubgroupDesignator::kernel()
                             : SubgroupDesignator::stabilizer(std::stoi(hs.substr(hs.find(' ') + 1)) - 1);
  const auto in_h = [&](const GroupElement& x) {
    const auto p = q.image(x);
    if (h.kind == SubgroupDesignator::Kind::Stabilizer) return p[h.point] == h.point;
    for (int i = 0; i < q.degree(); ++i)
      if (p[i] != i) return false;
    return true;
  };
  const std::size_t index = recount_index(q, h);
  c.same(get<std::size_t>(y, "index"), index, "index");
  const auto w = strings(y, "w");
  const auto words = strings(y, "w_words");
  const long bound = get<long>(y, "exponent_bound");
  c.expect(w.size() == words.size(), "one U-word per element of W");
  std::vector<GroupElement> elems;
  for (std::size_t i = 0; i < w.size() && i < words.size(); ++i) {
    const auto x = g.parse_word(w[i]);
    elems.push_back(x);
    std::size_t len = 0;
    const auto e = detail::evaluate_u_word(g, u, words[i], &len);
    c.expect(e && *e == x, "W element " + std::to_string(i + 1) + " equals its U-word");
    c.expect(static_cast<long>(len) <= bound, "W element " + std::to_string(i + 1) + " within the exponent bound");
    c.expect(in_h(x), "W element " + std::to_string(i + 1) + " lies in H");
  }
  const Ratio size_bound = parse_ratio(get<std::string>(y, "size_bound"));
  c.expect(Ratio(static_cast<long>(w.size())) >= size_bound, "|W| >= size bound");
  const auto transversal = strings(y, "transversal");
  c.same(transversal.size(), index, "transversal size");
  std::set<Permutation> cosets;
  for (const auto& t : transversal) {
    const auto x = detail::evaluate_u_word(g, u, t);
    c.expect(x.has_value(), "transversal word over U");
    if (!x) continue;
    auto p = q.image(*x);
    if (h.kind == SubgroupDesignator::Kind::Stabilizer) p = {p[h.point]};
    cosets.insert(p);
  }
  c.same(cosets.size(), index, "distinct transversal cosets");
  if (g.kind() == GroupSpec::Kind::Free) c.same(folded_index(g, elems), index, "index of <W> by folding");
}

GrowthSeries recount(const MarkedSubset& u, int n_max, std::size_t cap) {
  // The naive path enumerates words; fall back to one thread of the layered path beyond its reach.
  std::size_t words = 1, total = 1;
  for (int n = 1; n <= n_max && total <= 5'000'000; ++n) total += (words *= u.size());
  if (total <= 5'000'000) return naive_product_set_counts(u, n_max);
  GrowthOptions o;
  o.threads = 1;
  o.cap_elements = cap;
  return product_set_counts(u, n_max, o);
}

void growth(Checker& c, const ExperimentConfig& cfg, const YAML::Node& y) {
  const Group g(cfg.group);
  const auto u = subset(cfg, g, "growth");
  const auto s = recount(u, cfg.growth.n_max, cfg.cap_elements);
  const auto exact = get<std::vector<long>>(y, "exact");
  const auto cumulative = get<std::vector<long>>(y, "cumulative");
  const auto completed = get<int>(y, "completed");
  c.expect(completed <= s.completed, "completed layers");
  for (int n = 0; n <= completed && n < static_cast<int>(exact.size()) && n <= s.completed; ++n) {
    c.same(static_cast<std::uint64_t>(exact[n]), s.exact[n], "|U^" + std::to_string(n) + "|");
    c.same(static_cast<std::uint64_t>(cumulative[n]), s.cumulative[n], "|U^{<=" + std::to_string(n) + "}|");
  }
  const auto fit = psg_check(s, cfg.growth.alpha, cfg.growth.beta);
  const auto psg = y["psg"];
  if (completed == s.completed) {
    c.same(get<bool>(psg, "satisfied"), fit.satisfied, "psg verdict");
    c.same(get<int>(psg, "satisfied_through"), fit.satisfied_through, "psg satisfied_through");
  }
}

std::vector<std::string> split_witness(const std::string& w) {
  // "c = [h, k]"
  const auto eq = w.find(" = [");
  const auto comma = w.rfind(", ");
  if (eq == std::string::npos || comma == std::string::npos || w.back() != ']')
    throw ConfigError("certificate: malformed witness '" + w + "'");
  return {w.substr(0, eq), w.substr(eq + 4, comma - eq - 4), w.substr(comma + 2, w.size() - comma - 3)};
}

void commutators(Checker& c, const ExperimentConfig& cfg, const YAML::Node& y) {
  const Group g(cfg.group);
  const auto s = subset(cfg, g, "commutators");
  GrowthOptions o;
  o.threads = 1;
  o.cap_elements = cfg.cap_elements;
  const auto rows = strings(y, "rows");
  c.same(rows.size(), static_cast<std::size_t>(cfg.commutators.n), "row count");
  bool all = true;
  for (int n = 1; n <= cfg.commutators.n && n <= static_cast<int>(rows.size()); ++n) {
    const auto r = commutator_set(s, n, o, 0);
    const bool meets = r.meets(cfg.commutators.c);
    all = all && meets;
    c.same(rows[n - 1], std::to_string(n) + " " + std::to_string(r.ball) + " " + std::to_string(r.size) + " " +
                            (meets ? "true" : "false"),
           "row " + std::to_string(n));
  }
  c.same(get<bool>(y, "meets"), all, "declared bound verdict");
  const auto ball = semigroup_ball(s, cfg.commutators.n, cfg.cap_elements);
  for (const auto& w : strings(y, "witnesses")) {
    const auto parts = split_witness(w);
    const auto x = g.parse_word(parts[0]), h = g.parse_word(parts[1]), k = g.parse_word(parts[2]);
    c.expect(g.commutator(h, k) == x, "witness " + w + " multiplies out");
    c.expect(in_ball(ball, g, h) && in_ball(ball, g, k), "witness " + w + " factors lie in S^{<=n}");
  }
}

void classify(Checker& c, const ExperimentConfig& cfg, const YAML::Node& y) {
  const Group g(cfg.group);
  const auto tree = single_tree(cfg, g, "classify");
  std::vector<GroupElement> wit;
  for (const auto& w : strings(y, "witnesses")) wit.push_back(g.parse_word(w));
  for (const auto& w : wit) c.expect(tree.classify(w).loxodromic, "witness " + g.format(w) + " is loxodromic");
  const auto kind = get<std::string>(y, "kind");
  c.same(kind, to_string(classify_action(subset(cfg, g, "classify"), tree, cfg.classify.radius).kind), "kind");
  if (kind == "general") {
    c.expect(wit.size() >= 2 && tree.independent(wit[0], wit[1]), "two independent loxodromics");
  } else if (kind == "bounded") {
    c.expect(wit.empty(), "no loxodromic witness");
    const auto s = subset(cfg, g, "classify");
    if (y["fixed"]) {
      const auto v = tree.parse_vertex(get<std::string>(y, "fixed"));
      for (const auto& x : s.elements()) c.expect(tree.act(x, v) == v, "U fixes the certified vertex");
    }
  } else {
    c.expect(!wit.empty(), "a loxodromic witness");
  }
}

void suite(Checker& c, const ExperimentConfig& cfg, std::string_view certificate) {
  const auto again = run_suite_command(cfg);
  c.same(std::string(certificate), again.certificate, "suite certificate");
}

}  // namespace

VerifyOutcome verify_certificate(const std::string& command, const ExperimentConfig& config,
                                 std::string_view certificate) {
  Checker c;
  YAML::Node y;
  try {
    y = YAML::Load(std::string(certificate));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("certificate: ") + e.what());
  }
  if (!y.IsMap()) throw ConfigError("certificate: expected a mapping");
  c.same(get<std::string>(y, "command"), command, "command");
  if (command != "suite") {
    c.same(get<std::string>(y, "group"), config.group.describe(), "group");
    c.same(get<std::vector<std::string>>(y, "u"), config.u, "U");
  }
  try {
    if (command == "displace") displace(c, config, y);
    else if (command == "transfer") transfer(c, config, y);
    else if (command == "loxo") loxo(c, config, y);
    else if (command == "pingpong") pingpong(c, config, y);
    else if (command == "freebase") freebase(c, config, y);
    else if (command == "schreier") schreier(c, config, y);
    else if (command == "growth") growth(c, config, y);
    else if (command == "commutators") commutators(c, config, y);
    else if (command == "classify") classify(c, config, y);
    else if (command == "suite") suite(c, config, certificate);
    else throw ConfigError("unknown subcommand '" + command + "'");
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("certificate: ") + e.what());
  }
  c.out.ok = c.out.failures.empty();
  return c.out;
}

}  // namespace psg
