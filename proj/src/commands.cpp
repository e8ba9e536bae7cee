#include "psg/commands.hpp"

#include <cstdio>
#include <functional>
#include <map>

#include <yaml-cpp/yaml.h>

#include "commands_internal.hpp"
#include "psg/displacement.hpp"
#include "psg/error.hpp"
#include "psg/growth.hpp"
#include "psg/loxodromic.hpp"
#include "psg/schreier.hpp"
#include "psg/suite.hpp"

namespace psg {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) { line(header); }

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != width_) throw InvariantViolation("CSV row width differs from the header");
  line(fields);
}

void CsvWriter::line(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ += ',';
    out_ += csv_field(fields[i]);
  }
  out_ += "\r\n";
}

std::string display(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"displace", "transfer",    "loxo",     "pingpong", "freebase",
                                              "schreier", "growth",      "commutators", "classify", "suite"};
  return names;
}

namespace detail {

MarkedSubset subset(const ExperimentConfig& c, const Group& g, const std::string& command) {
  if (c.u.empty()) throw ConfigError("config: u is required for " + command);
  std::vector<GroupElement> elems;
  for (const auto& w : c.u) elems.push_back(g.parse_word(w));
  return MarkedSubset(g, elems);
}

TreeAction tree_of(const std::string& kind, const Group& g) {
  try {
    if (kind == "cayley") return TreeAction::cayley(g);
    if (kind == "bass_serre") return TreeAction::bass_serre(g);
    return TreeAction::standard(g);
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("config: action: ") + e.what());
  }
}

TreeAction single_tree(const ExperimentConfig& c, const Group& g, const std::string& command) {
  if (g.kind() == GroupSpec::Kind::DirectProduct)
    throw ConfigError("config: " + command + " acts on one tree, but the group is a direct product");
  return tree_of(c.actions.empty() ? "standard" : c.actions[0], g);
}

ProductAction product_of(const ExperimentConfig& c, const Group& g) {
  if (c.actions.empty()) {
    try {
      return ProductAction::standard(g);
    } catch (const PreconditionError& e) {
      throw ConfigError(std::string("config: action: ") + e.what());
    }
  }
  std::vector<TreeAction> trees;
  if (g.kind() == GroupSpec::Kind::DirectProduct) {
    for (std::size_t i = 0; i < g.factor_count(); ++i) trees.push_back(tree_of(c.actions[i], g.factor(i)));
  } else {
    trees.push_back(tree_of(c.actions[0], g));
  }
  return ProductAction(g, std::move(trees));
}

std::string u_word(const Group& g, const MarkedSubset& u, const std::vector<std::size_t>& letters) {
  std::string out;
  for (auto l : letters) {
    const std::string w = g.format(u.elements()[l]);
    if (!out.empty()) out += " . ";
    out += w.find(' ') != std::string::npos ? "(" + w + ")" : w;
  }
  return out.empty() ? "1" : out;
}

std::optional<GroupElement> evaluate_u_word(const Group& g, const MarkedSubset& u, std::string_view text,
                                            std::size_t* length) {
  GroupElement x = g.identity();
  std::size_t n = 0;
  std::string_view rest = text;
  if (rest == "1") {
    if (length) *length = 0;
    return x;
  }
  while (!rest.empty()) {
    const auto cut = rest.find(" . ");
    std::string_view part = rest.substr(0, cut);
    rest = cut == std::string_view::npos ? std::string_view{} : rest.substr(cut + 3);
    if (part.size() >= 2 && part.front() == '(' && part.back() == ')') part = part.substr(1, part.size() - 2);
    const GroupElement y = g.parse_word(part);
    if (!u.contains(y)) return std::nullopt;
    x = g.multiply(x, y);
    ++n;
  }
  if (length) *length = n;
  return x;
}

}  // namespace detail

namespace {

using detail::product_of;
using detail::single_tree;
using detail::subset;

std::string yes(bool b) { return b ? "true" : "false"; }

// Key/value emission in a fixed order; the only route to certificate text.
class Cert {
 public:
  explicit Cert(const std::string& command, const ExperimentConfig& c) {
    e_ << YAML::BeginMap;
    kv("command", command);
    kv("group", c.group.describe());
    e_ << YAML::Key << "u" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& w : c.u) e_ << YAML::DoubleQuoted << w;
    e_ << YAML::EndSeq;
  }
  Cert& kv(const std::string& k, const std::string& v) {
    e_ << YAML::Key << k << YAML::Value << YAML::DoubleQuoted << v;
    return *this;
  }
  Cert& kv(const std::string& k, const char* v) { return kv(k, std::string(v)); }
  Cert& kv(const std::string& k, long v) {
    e_ << YAML::Key << k << YAML::Value << v;
    return *this;
  }
  Cert& kv(const std::string& k, int v) { return kv(k, static_cast<long>(v)); }
  Cert& kv(const std::string& k, std::size_t v) {
    e_ << YAML::Key << k << YAML::Value << static_cast<unsigned long long>(v);
    return *this;
  }
  Cert& kv(const std::string& k, unsigned long long v) {
    e_ << YAML::Key << k << YAML::Value << v;
    return *this;
  }
  Cert& flag(const std::string& k, bool v) {
    e_ << YAML::Key << k << YAML::Value << v;
    return *this;
  }
  Cert& list(const std::string& k, const std::vector<std::string>& v) {
    e_ << YAML::Key << k << YAML::Value << YAML::BeginSeq;
    for (const auto& x : v) e_ << YAML::DoubleQuoted << x;
    e_ << YAML::EndSeq;
    return *this;
  }
  Cert& list(const std::string& k, const std::vector<long>& v) {
    e_ << YAML::Key << k << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto x : v) e_ << x;
    e_ << YAML::EndSeq;
    return *this;
  }
  Cert& open(const std::string& k) {
    e_ << YAML::Key << k << YAML::Value << YAML::BeginMap;
    return *this;
  }
  Cert& open_list(const std::string& k) {
    e_ << YAML::Key << k << YAML::Value << YAML::BeginSeq;
    return *this;
  }
  Cert& item() {
    e_ << YAML::BeginMap;
    return *this;
  }
  Cert& close() {
    e_ << YAML::EndMap;
    return *this;
  }
  Cert& close_list() {
    e_ << YAML::EndSeq;
    return *this;
  }
  std::string str() {
    e_ << YAML::EndMap;
    return std::string(e_.c_str()) + "\n";
  }

 private:
  YAML::Emitter e_;
};

std::string ratio_text(const Rational& r) { return format_ratio(Ratio(r.numerator(), r.denominator())); }

Artifacts displace(const ExperimentConfig& c) {
  const Group g(c.group);
  const auto s = subset(c, g, "displace");
  const auto p = product_of(c, g);
  Artifacts a;
  CsvWriter csv({"factor", "tree", "lambda_at_base", "lambda_min", "minimizer"});
  Cert cert("displace", c);
  cert.open_list("factors");
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto fs = factor_subset(s, p, i);
    const auto& tree = p.factor(i);
    const long at_base = displacement(fs, tree, tree.base());
    const auto m = min_displacement(fs, tree);
    csv.row({std::to_string(i + 1), tree.name(), std::to_string(at_base), std::to_string(m.value),
             tree.format(m.vertex)});
    cert.item()
        .kv("factor", i + 1)
        .kv("tree", tree.name())
        .kv("lambda_at_base", at_base)
        .kv("lambda_min", m.value)
        .kv("minimizer", tree.format(m.vertex))
        .close();
    a.summary.push_back("factor " + std::to_string(i + 1) + ": lambda(S, X) = " + std::to_string(m.value));
  }
  cert.close_list();
  const auto sw = displacement_sandwich(s, p, c.displace.radius);
  cert.open("sandwich")
      .kv("lower", sw.lower)
      .kv("orbit_upper", sw.orbit_upper)
      .kv("search_radius", sw.search_radius)
      .kv("best_conjugator", g.format(sw.best_conjugator))
      .kv("c1", sw.c1)
      .flag("holds", sw.holds)
      .close();
  const auto tr = conjugate_reduce(s, p);
  cert.open("reduction")
      .kv("g", g.format(tr.g))
      .kv("m", tr.m)
      .kv("d_total", tr.d_total)
      .kv("lambda_conjugated", tr.lambda_conjugated)
      .kv("final_bound", tr.final_bound)
      .kv("c1", tr.c1)
      .flag("holds", tr.holds())
      .close();
  a.summary.push_back("sandwich " + std::to_string(sw.lower) + " <= " + std::to_string(sw.orbit_upper) +
                      (sw.holds ? " holds" : " FAILS"));
  a.summary.push_back("conjugated lambda " + std::to_string(tr.lambda_conjugated) + " <= " +
                      std::to_string(tr.final_bound) + (tr.holds() ? " holds" : " FAILS"));
  a.status = sw.holds && tr.holds() ? kOk : kViolation;
  a.csv = csv.str();
  a.certificate = cert.str();
  return a;
}

Artifacts transfer(const ExperimentConfig& c) {
  const Group g(c.group);
  const auto s = subset(c, g, "transfer");
  const auto p = product_of(c, g);
  const auto r = factor_transfer(s, p, c.transfer.m);
  Artifacts a;
  CsvWriter csv({"factor", "lambda", "minimizer", "exceeds_m"});
  for (std::size_t i = 0; i < r.values.size(); ++i)
    csv.row({std::to_string(i + 1), std::to_string(r.values[i]), p.factor(i).format(r.minimizers[i]),
             yes(r.values[i] > r.m)});
  Cert cert("transfer", c);
  cert.kv("m", r.m).kv("factor", r.factor ? std::to_string(*r.factor + 1) : std::string("none")).list("values", r.values);
  std::vector<std::string> mins;
  for (std::size_t i = 0; i < r.minimizers.size(); ++i) mins.push_back(p.factor(i).format(r.minimizers[i]));
  cert.list("minimizers", mins);
  if (r.factor) {
    a.summary.push_back("factor " + std::to_string(*r.factor + 1) + " has lambda = " +
                        std::to_string(r.values[*r.factor]) + " > M = " + std::to_string(r.m));
  } else {
    a.summary.push_back("hypothesis unmet: no factor with lambda(S, X_i) > M = " + std::to_string(r.m));
    a.status = kInconclusive;
  }
  cert.kv("verdict", r.factor ? "transferred" : "hypothesis unmet");
  a.csv = csv.str();
  a.certificate = cert.str();
  return a;
}

Artifacts loxo(const ExperimentConfig& c) {
  const Group g(c.group);
  const auto s = subset(c, g, "loxo");
  const auto tree = single_tree(c, g, "loxo");
  const auto r = short_loxodromic(s, tree);
  Artifacts a;
  CsvWriter csv({"b", "case", "lambda", "distance", "tau", "delta", "l0", "t", "s", "o"});
  csv.row({g.format(r.b), to_string(r.which), ratio_text(r.lambda), ratio_text(r.distance), std::to_string(r.tau),
           ratio_text(r.delta), ratio_text(r.l0), g.format(r.t), g.format(r.s), tree.format(r.o)});
  Cert cert("loxo", c);
  cert.kv("tree", tree.name())
      .kv("b", g.format(r.b))
      .kv("case", to_string(r.which))
      .kv("t", g.format(r.t))
      .kv("s", g.format(r.s))
      .kv("o", tree.format(r.o))
      .kv("lambda", ratio_text(r.lambda))
      .kv("distance", ratio_text(r.distance))
      .kv("delta", ratio_text(r.delta))
      .kv("l0", ratio_text(r.l0))
      .kv("tau", r.tau)
      .kv("axis", r.axis.core)
      .flag("one_sided", r.one_sided)
      .kv("axis_offset", ratio_text(r.axis_offset));
  a.summary.push_back("b = " + g.format(r.b) + " (" + to_string(r.which) + "), tau = " + std::to_string(r.tau) +
                      ", |o - b o| = " + ratio_text(r.distance) + " >= lambda - 10 = " +
                      ratio_text(r.lambda - 10));
  a.csv = csv.str();
  a.certificate = cert.str();
  return a;
}

void emit_base(Cert& cert, CsvWriter& csv, const Group& g, const TreeAction& tree,
               const FreeSemigroupCertificate& r, const std::vector<std::string>& words) {
  std::vector<std::string> base;
  for (std::size_t i = 0; i < r.base.size(); ++i) {
    base.push_back(g.format(r.base[i]));
    csv.row({std::to_string(i + 1), base.back(), words.empty() ? base.back() : words[i],
             std::to_string(tree.translation_length(r.base[i]))});
  }
  cert.list("base", base).kv("depth", r.depth).flag("verified", r.verified).kv("words_checked", r.check.words);
}

Artifacts pingpong(const ExperimentConfig& c) {
  const Group g(c.group);
  if (c.pingpong.g.empty() || c.pingpong.h.empty()) throw ConfigError("config: pingpong needs g and h");
  const auto tree = single_tree(c, g, "pingpong");
  const auto r = pingpong_pair(g.parse_word(c.pingpong.g), g.parse_word(c.pingpong.h), tree, c.pingpong.depth);
  Artifacts a;
  CsvWriter csv({"index", "element", "word", "translation_length"});
  Cert cert("pingpong", c);
  cert.kv("tree", tree.name()).kv("g", c.pingpong.g).kv("h", c.pingpong.h).kv("pair", r.pair);
  emit_base(cert, csv, g, tree, r, {});
  a.summary.push_back("pair " + r.pair + " is a free basis to depth " + std::to_string(r.depth));
  a.status = r.verified ? kOk : kViolation;
  a.csv = csv.str();
  a.certificate = cert.str();
  return a;
}

Artifacts freebase(const ExperimentConfig& c) {
  const Group g(c.group);
  const auto s = subset(c, g, "freebase");
  const auto tree = single_tree(c, g, "freebase");
  const auto r = build_free_base(s, tree, c.freebase.depth, c.freebase.f_bound);
  const auto& k = *r.construction;
  Artifacts a;
  CsvWriter csv({"index", "element", "u_word", "translation_length"});
  Cert cert("freebase", c);
  std::vector<std::string> fset, u0;
  for (const auto& x : k.f_set) fset.push_back(g.format(x));
  for (const auto& x : k.u0) u0.push_back(g.format(x));
  cert.kv("tree", tree.name())
      .kv("b", g.format(k.loxodromic.b))
      .kv("f", g.format(k.f))
      .kv("n", k.n)
      .kv("h", g.format(k.h))
      .kv("tau_h", k.tau_h)
      .kv("f_bound", k.f_bound)
      .list("f_set", fset)
      .kv("d1", ratio_text(k.d1))
      .list("u0", u0)
      .kv("n3", k.n3)
      .open("local_pingpong")
      .flag("holds", k.local.holds)
      .kv("max_backtrack", ratio_text(k.local.max_backtrack))
      .kv("max_divergence", ratio_text(k.local.max_divergence))
      .kv("min_core", ratio_text(k.local.min_core))
      .close()
      .kv("kappa", k.kappa)
      .list("t_words", k.t_words);
  emit_base(cert, csv, g, tree, r, k.t_words);
  a.summary.push_back("|T| = " + std::to_string(r.base.size()) + " inside U^{<=" + std::to_string(k.kappa) +
                      "}, free to depth " + std::to_string(r.depth));
  a.status = r.verified ? kOk : kViolation;
  a.csv = csv.str();
  a.certificate = cert.str();
  return a;
}

SubgroupDesignator designator(const std::string& text, int degree) {
  if (text == "ker") return SubgroupDesignator::kernel();
  const long p = std::stol(text.substr(text.find(' ') + 1));
  if (p < 1 || p > degree) throw ConfigError("config: schreier.subgroup point out of range");
  return SubgroupDesignator::stabilizer(static_cast<int>(p - 1));
}

Artifacts schreier(const ExperimentConfig& c) {
  const Group g(c.group);
  const auto u = subset(c, g, "schreier");
  std::optional<FiniteQuotient> q;
  try {
    q.emplace(FiniteQuotient::parse(g, c.schreier.degree, c.schreier.images));
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("config: schreier.images: ") + e.what());
  }
  const auto h = designator(c.schreier.subgroup, c.schreier.degree);
  const auto cs = coset_structure(u, *q, h);
  const auto r = c.schreier.general ? schreier_generators(u, *q, h, c.schreier.l_ver)
                                    : schreier_generators_normal(u, cs, c.schreier.l_ver);
  Artifacts a;
  CsvWriter csv({"index", "element", "u_word", "length"});
  std::vector<std::string> w, words, transversal;
  for (std::size_t i = 0; i < r.w.size(); ++i) {
    w.push_back(g.format(r.w[i]));
    words.push_back(detail::u_word(g, u, r.w_words[i]));
    csv.row({std::to_string(i + 1), w.back(), words.back(), std::to_string(r.w_words[i].size())});
  }
  for (std::size_t i = 0; i < cs.index(); ++i) transversal.push_back(detail::u_word(g, u, cs.words()[i]));
  Cert cert("schreier", c);
  cert.kv("quotient", q->describe())
      .kv("subgroup", h.describe())
      .kv("construction", c.schreier.general ? "general" : "normal")
      .kv("index", r.index)
      .flag("normal", r.normal)
      .kv("exponent_bound", r.exponent_bound)
      .kv("core_index", r.core_index)
      .kv("core_bound", r.core_bound)
      .kv("longest_word", r.longest_word)
      .flag("containment", r.containment)
      .flag("ball_confirmed", r.ball_confirmed)
      .flag("in_subgroup", r.in_subgroup)
      .kv("size_bound", format_ratio(r.size_bound))
      .flag("size_ok", r.size_ok)
      .open("generation")
      .kv("depth", r.generation.depth)
      .kv("ball", r.generation.ball)
      .kv("checked", r.generation.checked)
      .flag("verified", r.generation.verified)
      .kv("folded", r.generation.folded ? yes(*r.generation.folded) : std::string("n/a"))
      .close()
      .list("transversal", transversal)
      .list("w", w)
      .list("w_words", words);
  const bool ok = r.containment && r.size_ok && r.in_subgroup && r.generation.verified &&
                  r.generation.folded.value_or(true);
  a.summary.push_back("index " + std::to_string(r.index) + ", |W| = " + std::to_string(r.w.size()) +
                      ", W inside U^{<=" + std::to_string(r.longest_word) + "} (bound " +
                      std::to_string(r.exponent_bound) + "), generation checked to depth " +
                      std::to_string(r.generation.depth) + (ok ? "" : ": ASSERTION FAILED"));
  a.status = ok ? kOk : kViolation;
  a.csv = csv.str();
  a.certificate = cert.str();
  return a;
}

GrowthOptions options_of(const ExperimentConfig& c) {
  GrowthOptions o;
  o.threads = c.threads;
  o.cap_elements = c.cap_elements;
  return o;
}

void emit_chain(Cert& cert, const std::string& key, const ChainVerdict& v) {
  cert.open(key).kv("formula", v.formula).kv("r", v.r).flag("satisfied", v.satisfied);
  cert.kv("first_violation", v.first_violation ? std::to_string(*v.first_violation) : std::string("none"));
  std::vector<std::string> rows;
  for (const auto& row : v.rows)
    rows.push_back(std::to_string(row.n) + " " + std::to_string(row.count) + " " + display(row.bound) + " " +
                   yes(row.satisfied));
  cert.list("rows", rows).close();
}

Artifacts growth(const ExperimentConfig& c) {
  const Group g(c.group);
  const auto u = subset(c, g, "growth");
  const auto s = product_set_counts(u, c.growth.n_max, options_of(c));
  const auto fit = psg_check(s, c.growth.alpha, c.growth.beta);
  const auto rates = growth_rate(s);
  Artifacts a;
  CsvWriter csv({"n", "count_exact", "cumulative", "new_elements", "bound_value", "verdict"});
  for (std::size_t i = 0; i < fit.rows.size(); ++i) {
    const auto& row = fit.rows[i];
    csv.row({std::to_string(row.n), std::to_string(row.count), std::to_string(row.cumulative),
             std::to_string(s.frontier[static_cast<std::size_t>(row.n)]), display(row.bound),
             row.satisfied ? "satisfied" : "violated"});
  }
  Cert cert("growth", c);
  cert.kv("u_size", s.u_size).kv("n_max", s.n_max).kv("completed", s.completed).flag("truncated", s.truncated);
  std::vector<long> exact, cumulative;
  for (auto x : s.exact) exact.push_back(static_cast<long>(x));
  for (auto x : s.cumulative) cumulative.push_back(static_cast<long>(x));
  cert.list("exact", exact).list("cumulative", cumulative);
  std::vector<std::string> omega, envelope;
  for (const auto& r : rates) {
    omega.push_back(display(r.estimate));
    envelope.push_back(display(r.envelope));
  }
  cert.list("omega", omega).list("envelope", envelope);
  cert.open("psg")
      .kv("alpha", format_ratio(fit.alpha))
      .kv("beta", format_ratio(fit.beta))
      .flag("satisfied", fit.satisfied)
      .kv("satisfied_through", fit.satisfied_through)
      .kv("max_beta", fit.max_beta ? display(*fit.max_beta) : std::string("unbounded"))
      .close();
  if (c.growth.chain_d) emit_chain(cert, "chain", chain_psg_bound(s, *c.growth.chain_d, c.growth.alpha, c.growth.beta));
  if (c.growth.kernel_order)
    emit_chain(cert, "quotient", quotient_psg_bound(s, *c.growth.kernel_order, c.growth.alpha, c.growth.beta));
  a.summary.push_back("|U^{<=" + std::to_string(s.completed) + "}| = " + std::to_string(s.cumulative.back()) +
                      ", omega estimate " + (rates.empty() ? std::string("-") : display(rates.back().estimate)));
  a.summary.push_back("|U^n| >= (" + format_ratio(fit.alpha) + " |U|)^(" + format_ratio(fit.beta) + " n) " +
                      (fit.satisfied ? "holds for n <= " + std::to_string(s.completed)
                                     : "fails from n = " + std::to_string(fit.satisfied_through + 1)));
  if (s.truncated) {
    a.summary.push_back("truncated at n = " + std::to_string(s.completed) + " by the element cap");
    a.status = kInconclusive;
  }
  a.csv = csv.str();
  a.certificate = cert.str();
  return a;
}

Artifacts commutators(const ExperimentConfig& c) {
  const Group g(c.group);
  const auto s = subset(c, g, "commutators");
  const auto o = options_of(c);
  Artifacts a;
  CsvWriter csv({"n", "ball", "size", "declared_bound", "meets"});
  Cert cert("commutators", c);
  cert.kv("c", format_ratio(c.commutators.c));
  std::vector<std::string> rows;
  bool all = true, truncated = false;
  CommutatorSet last;
  for (int n = 1; n <= c.commutators.n; ++n) {
    last = commutator_set(s, n, o);
    const bool meets = last.meets(c.commutators.c);
    all = all && meets;
    truncated = truncated || last.truncated;
    const Ratio bound = c.commutators.c * static_cast<long>(n);
    csv.row({std::to_string(n), std::to_string(last.ball), std::to_string(last.size), format_ratio(bound), yes(meets)});
    rows.push_back(std::to_string(n) + " " + std::to_string(last.ball) + " " + std::to_string(last.size) + " " +
                   yes(meets));
  }
  std::vector<std::string> wit;
  for (const auto& w : last.witnesses)
    wit.push_back(g.format(w.commutator) + " = [" + g.format(w.h) + ", " + g.format(w.k) + "]");
  cert.list("rows", rows).list("witnesses", wit).flag("meets", all).flag("truncated", truncated);
  a.summary.push_back("|C(S^{<=" + std::to_string(c.commutators.n) + "}, S^{<=" + std::to_string(c.commutators.n) +
                      "})| = " + std::to_string(last.size) + (all ? ", declared bound met" : ", declared bound FAILS"));
  a.status = truncated ? kInconclusive : all ? kOk : kViolation;
  a.csv = csv.str();
  a.certificate = cert.str();
  return a;
}

Artifacts classify(const ExperimentConfig& c) {
  const Group g(c.group);
  const auto s = subset(c, g, "classify");
  const auto tree = single_tree(c, g, "classify");
  const auto r = classify_action(s, tree, c.classify.radius);
  Artifacts a;
  CsvWriter csv({"kind", "witness", "translation_length"});
  std::vector<std::string> wit;
  for (const auto& w : r.witnesses) {
    wit.push_back(g.format(w));
    csv.row({to_string(r.kind), wit.back(), std::to_string(tree.translation_length(w))});
  }
  if (r.witnesses.empty()) csv.row({to_string(r.kind), "", ""});
  Cert cert("classify", c);
  cert.kv("tree", tree.name()).kv("kind", to_string(r.kind)).list("witnesses", wit).kv("radius", r.radius);
  if (r.fixed) cert.kv("fixed", tree.format(*r.fixed));
  cert.kv("horocyclic", r.horocyclic);
  a.summary.push_back("action of <U> is " + to_string(r.kind));
  a.csv = csv.str();
  a.certificate = cert.str();
  return a;
}

}  // namespace

Artifacts run_command(const std::string& command, const ExperimentConfig& config) {
  static const std::map<std::string, std::function<Artifacts(const ExperimentConfig&)>> table{
      {"displace", displace}, {"transfer", transfer}, {"loxo", loxo},         {"pingpong", pingpong},
      {"freebase", freebase}, {"schreier", schreier}, {"growth", growth},     {"commutators", commutators},
      {"classify", classify}, {"suite", run_suite_command}};
  const auto it = table.find(command);
  if (it == table.end()) throw ConfigError("unknown subcommand '" + command + "'");
  Artifacts a = it->second(config);
  a.command = command;
  return a;
}

}  // namespace psg
