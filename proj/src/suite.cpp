#include "psg/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include <yaml-cpp/yaml.h>

#include "psg/displacement.hpp"
#include "psg/error.hpp"
#include "psg/growth.hpp"
#include "psg/loxodromic.hpp"
#include "psg/rng.hpp"
#include "psg/schreier.hpp"

namespace psg {
namespace {

using boost::multiprecision::cpp_int;

// Outcome of one criterion before timing is attached.
struct Tally {
  long checked = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  bool passed() const { return failures.empty(); }
  std::string detail() const {
    std::ostringstream out;
    out << checked << " checks";
    for (const auto& n : notes) out << "; " << n;
    for (const auto& f : failures) out << "; FAIL " << f;
    return out.str();
  }
};

GroupElement random_word(const Group& g, SplitMix64& rng, int length) {
  const auto gens = g.symmetric_generators();
  GroupElement x = g.identity();
  for (int i = 0; i < length; ++i) x = g.multiply(x, gens[rng.below(gens.size())]);
  return x;
}

MarkedSubset random_set(const Group& g, SplitMix64& rng, int min_size, int max_size, int max_len) {
  std::vector<GroupElement> elems;
  const auto n = rng.between(min_size, max_size);
  for (long i = 0; i < n; ++i) elems.push_back(random_word(g, rng, static_cast<int>(rng.between(0, max_len))));
  return MarkedSubset(g, elems);
}

struct Bed {
  std::string name;
  Group group;
  TreeAction tree;
};

std::vector<Bed> core_beds() {
  Group f2(GroupSpec::free(2)), z(GroupSpec::free_product({2, 3}));
  return {{"F2/Cayley", f2, TreeAction::cayley(f2)}, {"Z2*Z3/Bass-Serre", z, TreeAction::bass_serre(z)}};
}

int count_of(const SuiteOptions& o, int full, int reduced) { return o.scale > 0 ? full : reduced; }

SplitMix64 rng_for(const SuiteOptions& o, int id) { return SplitMix64(o.seed * 1000003ULL + static_cast<std::uint64_t>(id)); }

Tally short_loxodromic_suite(const SuiteOptions& o) {
  Tally t;
  auto rng = rng_for(o, 1);
  const int per_bed = count_of(o, 200, 20);
  for (const auto& bed : core_beds()) {
    int done = 0, drawn = 0;
    while (done < per_bed) {
      ++drawn;
      const auto s = random_set(bed.group, rng, 2, 6, 4);
      const auto metric = min_displacement_metric(s, bed.tree);
      if (metric.value4 == 0) continue;
      ++done;
      const auto c = short_loxodromic(s, bed.tree);
      const Rational lambda(metric.value4, 4);
      const auto ball = semigroup_ball(s, 2);
      const std::string at = bed.name + " instance " + std::to_string(done);
      t.expect(std::binary_search(ball.begin(), ball.end(), c.b, ShortlexLess{}), at + ": b in S^{<=2}");
      const auto cl = bed.tree.classify(c.b);
      t.expect(cl.loxodromic && cl.tau > 0, at + ": b loxodromic");
      // Orbit growth confirms loxodromy without the classifier: d(o, b^k o) is linear in k.
      const auto o0 = bed.tree.base();
      const long d2 = bed.tree.dist(o0, bed.tree.act(bed.group.power(c.b, 2), o0));
      const long d4 = bed.tree.dist(o0, bed.tree.act(bed.group.power(c.b, 4), o0));
      t.expect(d4 - d2 == 2 * cl.tau, at + ": orbit of b grows linearly");
      t.expect(c.lambda == lambda, at + ": lambda matches the metric minimum");
      t.expect(Rational(bed.tree.dist4(c.o, bed.tree.act(c.b, c.o)), 4) >= lambda - 10, at + ": |o - b o| >= lambda - 10");
    }
    t.notes.push_back(bed.name + " " + std::to_string(done) + " of " + std::to_string(drawn) + " drawn sets with lambda > 0");
  }
  return t;
}

Tally quasi_center_suite(const SuiteOptions& o) {
  Tally t;
  auto rng = rng_for(o, 2);
  const int per_bed = count_of(o, 200, 20);
  for (const auto& bed : core_beds()) {
    long worst = 0;
    for (int i = 0; i < per_bed; ++i) {
      const auto s = random_set(bed.group, rng, 1, 4, 6);
      const auto base = bed.tree.base();
      const auto x0 = bed.tree.act(random_word(bed.group, rng, static_cast<int>(rng.between(0, 4))), base);
      const auto x = bed.tree.act(random_word(bed.group, rng, static_cast<int>(rng.between(0, 4))), base);
      const auto qc = quasi_center(s, x0, x, bed.tree);
      const std::string at = bed.name + " instance " + std::to_string(i + 1);
      t.expect(qc.lambda_z == displacement(s, bed.tree, qc.z), at + ": lambda(S, z) recomputed");
      t.expect(qc.lambda_x == displacement(s, bed.tree, x), at + ": lambda(S, x) recomputed");
      t.expect(qc.lambda_z <= 6 * qc.lambda_x + 3, at + ": lambda(S, z) <= 6 lambda(S, x) + 3");
      long brute = -1;
      for (const auto& u : s.elements())
        for (const auto& v : bed.tree.geodesic(x0, bed.tree.act(u, x0))) {
          const long f = displacement(s, bed.tree, v);
          if (brute < 0 || f < brute) brute = f;
        }
      t.expect(brute <= qc.lambda_z, at + ": brute minimum over the segments is at most lambda(S, z)");
      t.expect(brute <= 6 * qc.lambda_x + 3, at + ": brute minimum within the bound");
      worst = std::max(worst, qc.lambda_z - 6 * qc.lambda_x);
    }
    t.notes.push_back(bed.name + " max lambda(S,z) - 6 lambda(S,x) = " + std::to_string(worst));
  }
  return t;
}

Tally transfer_suite(const SuiteOptions& o) {
  Tally t;
  auto rng = rng_for(o, 3);
  Group g(GroupSpec::direct({GroupSpec::free(2), GroupSpec::free(2)}));
  const auto p = ProductAction::standard(g);
  const int want = count_of(o, 50, 10);
  int done = 0, degenerate = 0;
  while (done < want) {
    const auto s = random_set(g, rng, 8, 10, 4);
    if (s.size() < 8) {
      ++degenerate;
      continue;
    }
    bool trivial_factor = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto fs = factor_subset(s, p, i);
      trivial_factor = trivial_factor || std::all_of(fs.elements().begin(), fs.elements().end(),
                                                     [&](const auto& x) { return p.factor(i).group().is_identity(x); });
    }
    if (trivial_factor) {
      ++degenerate;
      continue;
    }
    ++done;
    const std::string at = "instance " + std::to_string(done);
    const auto r = factor_transfer(s, p, 1);
    t.expect(r.factor.has_value(), at + ": some factor has lambda > 1");
    for (std::size_t i = 0; i < p.size(); ++i) {
      const auto fs = factor_subset(s, p, i);
      const auto& tree = p.factor(i);
      // Ball oracle: every vertex within lambda(S, o_i) of o_i, scanned directly.
      const long r0 = displacement(fs, tree, tree.base());
      long brute = r0;
      for (const auto& v : tree.ball(tree.base(), r0)) brute = std::min(brute, displacement(fs, tree, v));
      t.expect(r.values[i] == brute, at + ": factor " + std::to_string(i + 1) + " matches the ball oracle");
      t.expect(displacement(fs, tree, r.minimizers[i]) == r.values[i], at + ": minimizer attains the value");
    }
  }
  t.notes.push_back(std::to_string(degenerate) + " draws skipped (|S| < 8 after deduplication, or a trivial factor)");
  return t;
}

Tally translation_suite(const SuiteOptions& o) {
  Tally t;
  auto rng = rng_for(o, 4);
  const int radius = count_of(o, 6, 4);
  auto beds = core_beds();
  Group z3(GroupSpec::free_product({2, 2, 3}));
  beds.push_back({"Z2*Z2*Z3/Bass-Serre", z3, TreeAction::bass_serre(z3)});
  for (const auto& bed : beds) {
    const auto elements = word_ball(bed.group, radius);
    for (const auto& g : elements) {
      const long tau = bed.tree.translation_length(g);
      const MarkedSubset single(bed.group, {g});
      const std::string at = bed.name + " " + bed.group.format(g);
      t.expect(min_displacement_exhaustive(single, bed.tree, bed.tree.base()).value == tau, at + ": tau = lambda");
      for (long n = 2; n <= 4; ++n)
        t.expect(bed.tree.translation_length(bed.group.power(g, n)) == n * tau, at + ": tau(g^n) = n tau(g)");
    }
    for (int i = 0; i < 100; ++i) {
      const auto g = random_word(bed.group, rng, static_cast<int>(rng.between(0, 6)));
      const auto h = random_word(bed.group, rng, static_cast<int>(rng.between(0, 6)));
      t.expect(bed.tree.translation_length(bed.group.conjugate(g, h)) == bed.tree.translation_length(g),
               bed.name + ": conjugacy invariance");
    }
    t.notes.push_back(bed.name + " " + std::to_string(elements.size()) + " elements");
  }
  return t;
}

std::vector<std::size_t> power_sizes(const Group& g, const std::vector<GroupElement>& base, int depth) {
  const MarkedSubset t(g, base);
  GrowthOptions opt;
  opt.threads = 1;
  const auto s = product_set_counts(t, depth, opt);
  return {s.exact.begin() + 1, s.exact.end()};
}

Tally free_semigroup_suite(const SuiteOptions&) {
  Tally t;
  Group f2(GroupSpec::free(2)), z(GroupSpec::free_product({2, 3}));
  const auto cayley = TreeAction::cayley(f2);
  const auto bs = TreeAction::bass_serre(z);
  const auto geometric = [](std::size_t k) {
    std::vector<std::size_t> v;
    std::size_t x = 1;
    for (int n = 1; n <= 6; ++n) v.push_back(x *= k);
    return v;
  };
  const auto pf = pingpong_pair(f2.parse_word("a"), f2.parse_word("b a b^-1"), cayley, 6);
  t.expect(pf.verified && pf.depth == 6, "F2 (a, b a b^-1) verified at depth 6");
  t.expect(power_sizes(f2, pf.base, 6) == geometric(2), "F2 pair: |T^n| = 2^n by recount");
  const auto pz = pingpong_pair(z.parse_word("s t"), z.parse_word("t s"), bs, 6);
  t.expect(pz.verified && pz.depth == 6, "Z2*Z3 (st, ts) verified at depth 6");
  t.expect(power_sizes(z, pz.base, 6) == geometric(2), "Z2*Z3 pair: |T^n| = 2^n by recount");
  const auto fb = build_free_base(MarkedSubset(f2, f2.symmetric_generators()), cayley, 6);
  t.expect(fb.base.size() == 4, "|T| = 4");
  const auto check = free_rank_verify(f2, fb.base, 6);
  t.expect(check.free, "free_rank_verify(T, 6)");
  t.expect(power_sizes(f2, fb.base, 6) == geometric(4), "|T^n| = 4^n by recount");
  t.notes.push_back("pairs " + pf.pair + ", " + pz.pair + "; kappa = " +
                    std::to_string(fb.construction ? fb.construction->kappa : -1));
  return t;
}

Permutation cycle_power(int degree, int k) {
  Permutation p(degree);
  for (int i = 0; i < degree; ++i) p[i] = (i + k) % degree;
  return p;
}

Permutation random_permutation(SplitMix64& rng, int degree) {
  Permutation p(degree);
  for (int i = 0; i < degree; ++i) p[i] = i;
  for (int i = degree - 1; i > 0; --i) std::swap(p[i], p[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  return p;
}

std::size_t factorial(std::size_t d) { return d <= 1 ? 1 : d * factorial(d - 1); }

Tally schreier_suite(const SuiteOptions& o) {
  Tally t;
  auto rng = rng_for(o, 6);
  Group f2(GroupSpec::free(2));
  const MarkedSubset sym(f2, f2.symmetric_generators());
  const MarkedSubset ab(f2, {f2.parse_word("a"), f2.parse_word("b")});
  const int want = count_of(o, 20, 6);
  int normal = 0, general = 0, longest = 0;
  for (int i = 0; i < want; ++i) {
    const auto& u = rng.below(2) ? sym : ab;
    const int degree = static_cast<int>(rng.between(2, 4));
    const std::string at = "instance " + std::to_string(i + 1);
    SchreierResult r;
    std::size_t d = 0;
    std::size_t bound = 0;
    if (i % 2 == 0) {
      // Kernel of a map onto the cyclic group of order `degree`, a normal subgroup of index `degree`.
      const FiniteQuotient q(f2, degree, {cycle_power(degree, static_cast<int>(rng.below(degree))),
                                          cycle_power(degree, static_cast<int>(rng.below(degree)))});
      const auto cs = coset_structure(u, q, SubgroupDesignator::kernel());
      d = cs.index();
      r = schreier_generators_normal(u, cs);
      bound = d * d - d + 1;
      t.expect(Rational(static_cast<long>(r.w.size())) >= Rational(static_cast<long>(u.size()), static_cast<long>(d)),
               at + ": |W| >= |U|/d");
      ++normal;
    } else {
      const FiniteQuotient q(f2, degree, {random_permutation(rng, degree), random_permutation(rng, degree)});
      r = schreier_generators(u, q, SubgroupDesignator::stabilizer(static_cast<int>(rng.below(degree))));
      d = r.index;
      const std::size_t df = factorial(d);
      bound = df * df - df + 1;
      t.expect(Rational(static_cast<long>(r.w.size())) >= Rational(static_cast<long>(u.size()), static_cast<long>(df)),
               at + ": |W| >= |U|/d!");
      ++general;
    }
    t.expect(d >= 1 && d <= 4, at + ": index at most 4");
    for (std::size_t k = 0; k < r.w.size(); ++k) {
      GroupElement x = f2.identity();
      for (auto l : r.w_words[k]) x = f2.multiply(x, u.elements()[l]);
      t.expect(x == r.w[k], at + ": W element equals its U-word");
      t.expect(r.w_words[k].size() <= bound, at + ": W inside U^{<=" + std::to_string(bound) + "}");
      longest = std::max(longest, static_cast<int>(r.w_words[k].size()));
    }
    t.expect(r.containment && r.in_subgroup, at + ": W inside H");
    t.expect(r.generation.verified, at + ": H cap U^{<=L} generated by W, L = " + std::to_string(r.generation.depth));
    t.expect(folded_index(f2, r.w) == d, at + ": folding gives index d, so <W> = H");
  }
  t.notes.push_back(std::to_string(normal) + " normal, " + std::to_string(general) + " general; longest W word " +
                    std::to_string(longest));
  return t;
}

Tally growth_suite(const SuiteOptions& o) {
  Tally t;
  Group f2(GroupSpec::free(2));
  GrowthOptions opt;
  opt.threads = o.threads;
  opt.cap_elements = o.cap_elements;
  const int n_free = count_of(o, 14, 8), n_sym = count_of(o, 12, 6);
  const auto free_series = product_set_counts(MarkedSubset(f2, {f2.parse_word("a"), f2.parse_word("b")}), n_free, opt);
  t.expect(free_series.completed == n_free, "{a, b} completed");
  for (int n = 0; n <= free_series.completed; ++n)
    t.expect(free_series.exact[n] == (std::uint64_t{1} << n), "|{a,b}^" + std::to_string(n) + "| = 2^n");
  const auto sym = product_set_counts(MarkedSubset(f2, f2.symmetric_generators()), n_sym, opt);
  t.expect(sym.completed == n_sym, "symmetric completed");
  std::uint64_t p3 = 1, largest = 0;
  for (int n = 0; n <= sym.completed; ++n, p3 *= 3) {
    t.expect(sym.cumulative[n] == 2 * p3 - 1, "|S^{<=" + std::to_string(n) + "}| = 2 3^n - 1");
    largest = std::max<std::uint64_t>(largest, sym.frontier[n]);
  }
  const auto rates = growth_rate(sym);
  bool decreasing = true;
  for (std::size_t i = 1; i < rates.size(); ++i) decreasing = decreasing && rates[i].estimate < rates[i - 1].estimate;
  t.expect(decreasing, "omega estimates decrease");
  const double last = rates.empty() ? 0 : rates.back().estimate;
  t.expect(std::abs(last - 3.0) <= 0.05, "omega estimate at n = " + std::to_string(n_sym) + " within 0.05 of 3");
  t.notes.push_back("omega(" + std::to_string(n_sym) + ") = " + display(last));
  t.notes.push_back("largest layer " + std::to_string(largest));
  t.expect(largest <= 1'100'000, "largest layer within 1.1M");
  return t;
}

Tally commutator_suite(const SuiteOptions& o) {
  Tally t;
  Group f2(GroupSpec::free(2));
  const MarkedSubset sym(f2, f2.symmetric_generators());
  GrowthOptions opt;
  opt.threads = o.threads;
  opt.cap_elements = o.cap_elements;
  const int n_max = count_of(o, 6, 4);
  std::string sizes;
  for (int n = 1; n <= n_max; ++n) {
    const auto c = commutator_set(sym, n, opt);
    t.expect(!c.truncated, "n = " + std::to_string(n) + " not truncated");
    t.expect(c.meets(Ratio(1, 2)), "|C| >= n/2 at n = " + std::to_string(n));
    for (const auto& w : c.witnesses)
      t.expect(f2.commutator(w.h, w.k) == w.commutator, "witness multiplies out at n = " + std::to_string(n));
    sizes += (sizes.empty() ? "" : " ") + std::to_string(c.size);
  }
  t.notes.push_back("sizes " + sizes);
  return t;
}

// (num/den)^e for an integer numerator and denominator, as a pair of big integers.
cpp_int ipow(cpp_int b, long e) {
  cpp_int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Tally chaining_suite(const SuiteOptions& o) {
  Tally t;
  Group f2(GroupSpec::free(2));
  GrowthOptions opt;
  opt.threads = o.threads;
  const int n_max = 10;
  const int d = 2;
  const long df = 2, r = df * df - df + 1;
  for (const auto& u : {MarkedSubset(f2, {f2.parse_word("a"), f2.parse_word("b")}),
                        MarkedSubset(f2, f2.symmetric_generators())}) {
    const auto s = product_set_counts(u, n_max, opt);
    const long usize = static_cast<long>(u.size());
    for (const auto& [alpha, beta] : std::vector<std::pair<Ratio, Ratio>>{
             {1, 1}, {8, 1}, {16, 1}, {Ratio(1, 2), Ratio(1, 3)}, {64, 3}, {4, 2}}) {
      const auto v = chain_psg_bound(s, d, alpha, beta);
      const auto vq = quotient_psg_bound(s, d, alpha, beta);
      const long a = alpha.numerator(), b = alpha.denominator(), p = beta.numerator(), q = beta.denominator();
      t.expect(v.r == r, "r = (d!)^2 - d! + 1");
      t.expect(v.rows.size() == static_cast<std::size_t>(n_max) && vq.rows.size() == static_cast<std::size_t>(n_max),
               "one row per n");
      bool all = true;
      for (std::size_t i = 0; i < v.rows.size() && i < vq.rows.size(); ++i) {
        const long n = v.rows[i].n;
        const cpp_int c = s.exact[n];
        // c^{rq} (b d!)^{pn} 2^{rqn} >= (a |U|)^{pn}
        const bool chain = ipow(c, r * q) * ipow(cpp_int(b * df), p * n) * ipow(cpp_int(2), r * q * n) >=
                           ipow(cpp_int(a * usize), p * n);
        // c^q (b |ker|)^{pn} >= (a |W|)^{pn}
        const bool quotient = ipow(c, q) * ipow(cpp_int(b * d), p * n) >= ipow(cpp_int(a * usize), p * n);
        const std::string at = "alpha " + format_ratio(alpha) + " beta " + format_ratio(beta) + " n " + std::to_string(n);
        t.expect(v.rows[i].satisfied == chain, at + ": chained verdict");
        t.expect(vq.rows[i].satisfied == quotient, at + ": quotient verdict");
        const double chain_bound = std::pow(boost::rational_cast<double>(alpha) * usize /
                                                (df * std::pow(2.0, r / boost::rational_cast<double>(beta))),
                                            boost::rational_cast<double>(beta) / r * n);
        t.expect(std::abs(v.rows[i].bound - chain_bound) <= 1e-9 * std::max(1.0, chain_bound), at + ": chained value");
        all = all && chain;
      }
      t.expect(v.satisfied == all, "overall chained verdict");
    }
  }
  return t;
}

Tally determinism_suite(const SuiteOptions& o) {
  Tally t;
  for (const auto& [command, base] : reference_configs()) {
    std::vector<Artifacts> runs;
    for (unsigned threads : {1u, 4u, 1u}) {
      auto c = base;
      c.seed = o.seed;
      c.threads = threads;
      if (o.scale == 0) c.growth.n_max = std::min(c.growth.n_max, 6);
      runs.push_back(run_command(command, c));
    }
    for (std::size_t i = 1; i < runs.size(); ++i) {
      t.expect(runs[i].csv == runs[0].csv, command + ": CSV bytes identical across runs");
      t.expect(runs[i].certificate == runs[0].certificate, command + ": certificate bytes identical across runs");
      t.expect(runs[i].status == runs[0].status, command + ": status identical across runs");
    }
  }
  // The seeded criteria rerun with more threads.
  for (int id : {7, 8}) {
    SuiteOptions other = o;
    other.threads = o.threads == 4 ? 1 : 4;
    other.scale = 0;
    SuiteOptions same = o;
    same.scale = 0;
    t.expect(run_criterion(id, other).detail == run_criterion(id, same).detail,
             "criterion " + std::to_string(id) + " detail identical across thread counts");
  }
  return t;
}

struct Spec {
  int id;
  const char* name;
  double budget;
  std::function<Tally(const SuiteOptions&)> run;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> s{
      {1, "short loxodromic suite", 10, short_loxodromic_suite},
      {2, "quasi-center suite", 10, quasi_center_suite},
      {3, "displacement transfer", 30, transfer_suite},
      {4, "translation length identities", 20, translation_suite},
      {5, "free semigroup certificates", 60, free_semigroup_suite},
      {6, "schreier suite", 30, schreier_suite},
      {7, "growth counts vs closed forms", 120, growth_suite},
      {8, "commutator growth", 60, commutator_suite},
      {9, "chaining arithmetic", 5, chaining_suite},
      {10, "determinism", 120, determinism_suite},
  };
  return s;
}

ExperimentConfig base_config(GroupSpec g, std::vector<std::string> u) {
  ExperimentConfig c;
  c.group = std::move(g);
  c.u = std::move(u);
  return c;
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& options) {
  const auto& all = specs();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Spec& s) { return s.id == id; });
  if (it == all.end()) throw ConfigError("no acceptance criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.name = it->name;
  r.budget = it->budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Tally t = it->run(options);
    r.passed = t.passed();
    r.detail = t.detail();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const SuiteOptions& options, const std::vector<int>& only) {
  std::vector<CriterionResult> out;
  for (const auto& s : specs())
    if (only.empty() || std::find(only.begin(), only.end(), s.id) != only.end())
      out.push_back(run_criterion(s.id, options));
  return out;
}

std::vector<std::pair<std::string, ExperimentConfig>> reference_configs() {
  const auto f2 = GroupSpec::free(2);
  const auto z = GroupSpec::free_product({2, 3});
  const auto f2f2 = GroupSpec::direct({f2, f2});
  std::vector<std::pair<std::string, ExperimentConfig>> out;

  auto displace = base_config(f2f2, {"a1 b2", "b1^-1 a2", "a1^2 b2^-1 a2", "b1 a1"});
  out.emplace_back("displace", displace);

  auto transfer = base_config(f2f2, {"1"});
  transfer.transfer.m = 1;
  out.emplace_back("transfer", transfer);

  out.emplace_back("loxo", base_config(z, {"s", "t"}));

  auto pingpong = base_config(f2, {"a", "b"});
  pingpong.pingpong.g = "a";
  pingpong.pingpong.h = "b a b^-1";
  out.emplace_back("pingpong", pingpong);

  out.emplace_back("freebase", base_config(f2, {"a", "b", "a^-1", "b^-1"}));

  auto schreier = base_config(f2, {"a", "b"});
  schreier.schreier.degree = 3;
  schreier.schreier.images = "a=(1 2 3), b=(1 2)";
  schreier.schreier.subgroup = "stab 1";
  out.emplace_back("schreier", schreier);

  auto growth = base_config(f2, {"a", "b", "a^-1", "b^-1"});
  growth.growth.n_max = 10;
  growth.growth.chain_d = 2;
  growth.growth.kernel_order = 2;
  out.emplace_back("growth", growth);

  auto commutators = base_config(f2, {"a", "b", "a^-1", "b^-1"});
  commutators.commutators.n = 4;
  out.emplace_back("commutators", commutators);

  out.emplace_back("classify", base_config(z, {"s t", "t s"}));
  return out;
}

Artifacts run_suite_command(const ExperimentConfig& config) {
  SuiteOptions o;
  o.seed = config.seed;
  o.threads = config.threads;
  o.cap_elements = config.cap_elements;
  o.scale = config.suite.scale;
  const auto results = run_acceptance(o);
  Artifacts a;
  CsvWriter csv({"criterion", "name", "verdict", "detail"});
  YAML::Emitter e;
  e << YAML::BeginMap << YAML::Key << "command" << YAML::Value << YAML::DoubleQuoted << "suite";
  e << YAML::Key << "seed" << YAML::Value << o.seed << YAML::Key << "scale" << YAML::Value << o.scale;
  e << YAML::Key << "criteria" << YAML::Value << YAML::BeginSeq;
  bool all = true;
  for (const auto& r : results) {
    const std::string verdict = r.passed ? "pass" : "fail";
    csv.row({std::to_string(r.id), r.name, verdict, r.detail});
    e << YAML::BeginMap << YAML::Key << "id" << YAML::Value << r.id << YAML::Key << "name" << YAML::Value
      << YAML::DoubleQuoted << r.name << YAML::Key << "verdict" << YAML::Value << verdict << YAML::Key << "detail"
      << YAML::Value << YAML::DoubleQuoted << r.detail << YAML::EndMap;
    a.summary.push_back(std::to_string(r.id) + ". " + r.name + ": " + verdict);
    all = all && r.passed;
  }
  e << YAML::EndSeq << YAML::EndMap;
  a.csv = csv.str();
  a.certificate = std::string(e.c_str()) + "\n";
  a.status = all ? kOk : kViolation;
  return a;
}

}  // namespace psg
