#include "psg/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "psg/error.hpp"
#include "text.hpp"

namespace psg {

namespace {

std::vector<std::string> default_labels(GroupSpec::Kind kind, std::size_t n) {
  std::vector<std::string> out;
  const std::string_view alphabet = kind == GroupSpec::Kind::Free ? "abcdefghijklmnopqr" : "stuvwxyz";
  const char* prefix = kind == GroupSpec::Kind::Permutation ? "p" : "x";
  for (std::size_t i = 0; i < n; ++i) {
    if (kind != GroupSpec::Kind::Permutation && n <= alphabet.size())
      out.emplace_back(1, alphabet[i]);
    else
      out.push_back(prefix + std::to_string(i + 1));
  }
  return out;
}

bool valid_label(const std::string& s) {
  if (s.empty() || s == "1") return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

void check_labels(const std::vector<std::string>& labels, std::size_t expected) {
  if (labels.size() != expected)
    throw PreconditionError("expected " + std::to_string(expected) + " generator labels, got " +
                            std::to_string(labels.size()));
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!valid_label(l)) throw PreconditionError("invalid generator label '" + l + "'");
    if (!seen.insert(l).second) throw PreconditionError("duplicate generator label '" + l + "'");
  }
}

std::vector<std::string> all_labels(const GroupSpec& spec) {
  if (spec.kind != GroupSpec::Kind::DirectProduct) return spec.labels;
  std::vector<std::string> out;
  for (const auto& f : spec.factors) {
    auto sub = all_labels(f);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

void suffix_labels(GroupSpec& spec, const std::string& suffix) {
  if (spec.kind == GroupSpec::Kind::DirectProduct) {
    for (auto& f : spec.factors) suffix_labels(f, suffix);
    return;
  }
  for (auto& l : spec.labels) l += suffix;
}

bool is_permutation(const Permutation& p, int degree) {
  if (static_cast<int>(p.size()) != degree) return false;
  std::vector<bool> hit(p.size(), false);
  for (int x : p) {
    if (x < 0 || x >= degree || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

GroupSpec GroupSpec::free(int rank, std::vector<std::string> labels) {
  if (rank < 1) throw PreconditionError("free group rank must be at least 1");
  GroupSpec s;
  s.kind = Kind::Free;
  s.rank = rank;
  s.labels = labels.empty() ? default_labels(Kind::Free, rank) : std::move(labels);
  check_labels(s.labels, rank);
  return s;
}

GroupSpec GroupSpec::free_product(std::vector<int> orders, std::vector<std::string> labels) {
  if (orders.empty()) throw PreconditionError("free product needs at least one factor");
  for (int n : orders)
    if (n < 2) throw PreconditionError("cyclic factor order must be at least 2");
  GroupSpec s;
  s.kind = Kind::FreeProduct;
  s.orders = std::move(orders);
  s.labels = labels.empty() ? default_labels(Kind::FreeProduct, s.orders.size()) : std::move(labels);
  check_labels(s.labels, s.orders.size());
  return s;
}

GroupSpec GroupSpec::direct(std::vector<GroupSpec> factors) {
  if (factors.empty()) throw PreconditionError("direct product needs at least one factor");
  GroupSpec s;
  s.kind = Kind::DirectProduct;
  s.factors = std::move(factors);
  auto labels = all_labels(s);
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    // Colliding factor alphabets: a, b in two F_2 factors become a1, b1, a2, b2.
    for (std::size_t i = 0; i < s.factors.size(); ++i) suffix_labels(s.factors[i], std::to_string(i + 1));
    labels = all_labels(s);
  }
  check_labels(labels, labels.size());
  return s;
}

GroupSpec GroupSpec::permutation(int degree, std::vector<Permutation> generators, std::vector<std::string> labels) {
  if (degree < 1) throw PreconditionError("permutation degree must be at least 1");
  for (const auto& p : generators)
    if (!is_permutation(p, degree)) throw PreconditionError("not a permutation of degree " + std::to_string(degree));
  GroupSpec s;
  s.kind = Kind::Permutation;
  s.degree = degree;
  s.perm_generators = std::move(generators);
  s.labels = labels.empty() ? default_labels(Kind::Permutation, s.perm_generators.size()) : std::move(labels);
  check_labels(s.labels, s.perm_generators.size());
  return s;
}

std::string GroupSpec::describe() const {
  switch (kind) {
    case Kind::Free:
      return "free(" + std::to_string(rank) + ")";
    case Kind::FreeProduct: {
      std::string out = "free_product(";
      for (std::size_t i = 0; i < orders.size(); ++i) out += (i ? "," : "") + std::to_string(orders[i]);
      return out + ")";
    }
    case Kind::DirectProduct: {
      std::string out = "direct(";
      for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? ", " : "") + factors[i].describe();
      return out + ")";
    }
    case Kind::Permutation: {
      std::string out = "perm(" + std::to_string(degree);
      for (const auto& p : perm_generators) out += "; " + format_permutation(p);
      return out + ")";
    }
  }
  return {};
}

GroupSpec parse_group_spec(std::string_view text) {
  const std::string_view t = text::trim(text);
  const auto open = t.find('(');
  if (open == std::string_view::npos || t.back() != ')')
    throw PreconditionError("group must look like free(2), free_product(2,3), direct(...) or perm(...)");
  const std::string_view name = text::trim(t.substr(0, open));
  const std::string_view body = t.substr(open + 1, t.size() - open - 2);
  if (name == "free") return GroupSpec::free(text::parse_int(body));
  if (name == "free_product") {
    std::vector<int> orders;
    for (auto part : text::split_top_level(body, ',')) orders.push_back(text::parse_int(part));
    return GroupSpec::free_product(std::move(orders));
  }
  if (name == "direct") {
    std::vector<GroupSpec> factors;
    for (auto part : text::split_top_level(body, ',')) factors.push_back(parse_group_spec(part));
    return GroupSpec::direct(std::move(factors));
  }
  if (name == "perm") {
    auto parts = text::split_top_level(body, ';');
    const int degree = text::parse_int(parts.at(0));
    std::vector<Permutation> gens;
    for (std::size_t i = 1; i < parts.size(); ++i) gens.push_back(parse_permutation(parts[i], degree));
    return GroupSpec::permutation(degree, std::move(gens));
  }
  throw PreconditionError("unknown group kind '" + std::string(name) + "'");
}

Permutation parse_permutation(std::string_view text, int degree) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::vector<bool> used(degree, false);
  std::string_view rest = text::trim(text);
  while (!rest.empty()) {
    if (rest.front() != '(') throw PreconditionError("cycle notation expected, got '" + std::string(text) + "'");
    const auto close = rest.find(')');
    if (close == std::string_view::npos) throw PreconditionError("unbalanced cycle in '" + std::string(text) + "'");
    std::vector<int> cycle;
    for (auto tok : text::split_ws(rest.substr(1, close - 1))) {
      const int x = text::parse_int(tok) - 1;
      if (x < 0 || x >= degree) throw PreconditionError("point out of range in '" + std::string(text) + "'");
      if (used[x]) throw PreconditionError("point repeated in '" + std::string(text) + "'");
      used[x] = true;
      cycle.push_back(x);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
    rest = text::trim(rest.substr(close + 1));
  }
  return p;
}

std::string format_permutation(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += '(';
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      if (j != i) out += ' ';
      out += std::to_string(j + 1);
      seen[j] = true;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

bool shortlex_less(const GroupElement& a, const GroupElement& b) {
  if (a.code.size() != b.code.size()) return a.code.size() < b.code.size();
  return a.code < b.code;
}

std::string element_key(const GroupElement& g) {
  std::string out;
  out.reserve(g.code.size() + 1);
  for (std::int32_t v : g.code) {
    auto x = static_cast<std::uint32_t>(v);
    while (x >= 0x80) {
      out.push_back(static_cast<char>((x & 0x7F) | 0x80));
      x >>= 7;
    }
    out.push_back(static_cast<char>(x));
  }
  return out;
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const {
  std::uint64_t h = 1469598103934665603ULL ^ g.tag;
  for (std::int32_t v : g.code) {
    h ^= static_cast<std::uint32_t>(v);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Group::Group(GroupSpec spec) : spec_(std::move(spec)) {
  labels_ = all_labels(spec_);
  std::string canon = spec_.describe();
  for (const auto& l : labels_) canon += " " + l;
  tag_ = fnv1a(canon);
  if (spec_.kind == GroupSpec::Kind::DirectProduct) {
    std::size_t offset = 0;
    for (const auto& f : spec_.factors) {
      factors_.push_back(std::make_shared<const Group>(f));
      factor_offset_.push_back(offset);
      offset += factors_.back()->generator_count();
    }
  }
}

void Group::check(const GroupElement& g) const {
  if (g.tag != tag_) throw StructuralError("element belongs to a different group than " + spec_.describe());
}

GroupElement Group::identity() const {
  switch (spec_.kind) {
    case GroupSpec::Kind::DirectProduct:
      return make(std::vector<std::int32_t>(factors_.size(), 0));
    case GroupSpec::Kind::Permutation: {
      std::vector<std::int32_t> code(spec_.degree);
      std::iota(code.begin(), code.end(), 0);
      return make(std::move(code));
    }
    default:
      return make({});
  }
}

bool Group::is_identity(const GroupElement& g) const {
  check(g);
  return g == identity();
}

std::vector<GroupElement> Group::split(const GroupElement& g) const {
  std::vector<GroupElement> parts;
  std::size_t pos = 0;
  for (const auto& f : factors_) {
    const auto len = static_cast<std::size_t>(g.code.at(pos));
    parts.push_back(GroupElement{f->tag(), std::vector<std::int32_t>(g.code.begin() + pos + 1,
                                                                     g.code.begin() + pos + 1 + len)});
    pos += len + 1;
  }
  return parts;
}

GroupElement Group::assemble(const std::vector<GroupElement>& components) const {
  if (spec_.kind != GroupSpec::Kind::DirectProduct) throw StructuralError("assemble on a non-product group");
  if (components.size() != factors_.size()) throw StructuralError("wrong number of components");
  std::vector<std::int32_t> code;
  for (std::size_t i = 0; i < components.size(); ++i) {
    factors_[i]->check(components[i]);
    code.push_back(static_cast<std::int32_t>(components[i].code.size()));
    code.insert(code.end(), components[i].code.begin(), components[i].code.end());
  }
  return make(std::move(code));
}

GroupElement Group::component(const GroupElement& g, std::size_t i) const {
  check(g);
  if (spec_.kind != GroupSpec::Kind::DirectProduct) {
    if (i != 0) throw StructuralError("component index out of range");
    return g;
  }
  return split(g).at(i);
}

GroupElement Group::embed(std::size_t i, const GroupElement& x) const {
  if (spec_.kind != GroupSpec::Kind::DirectProduct) {
    if (i != 0) throw StructuralError("factor index out of range");
    check(x);
    return x;
  }
  std::vector<GroupElement> parts;
  for (const auto& f : factors_) parts.push_back(f->identity());
  factors_.at(i)->check(x);
  parts[i] = x;
  return assemble(parts);
}

GroupElement Group::multiply(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  switch (spec_.kind) {
    case GroupSpec::Kind::Free: {
      std::vector<std::int32_t> out = a.code;
      for (std::int32_t x : b.code) {
        if (!out.empty() && out.back() == (x ^ 1))
          out.pop_back();
        else
          out.push_back(x);
      }
      return make(std::move(out));
    }
    case GroupSpec::Kind::FreeProduct: {
      std::vector<std::int32_t> out = a.code;
      for (std::size_t k = 0; k < b.code.size(); k += 2) {
        const std::int32_t gen = b.code[k];
        const std::int32_t e = b.code[k + 1];
        if (!out.empty() && out[out.size() - 2] == gen) {
          const std::int32_t sum = (out.back() + e) % spec_.orders[gen];
          if (sum == 0) {
            out.resize(out.size() - 2);
          } else {
            out.back() = sum;
          }
        } else {
          out.push_back(gen);
          out.push_back(e);
        }
      }
      return make(std::move(out));
    }
    case GroupSpec::Kind::DirectProduct: {
      auto pa = split(a);
      const auto pb = split(b);
      for (std::size_t i = 0; i < pa.size(); ++i) pa[i] = factors_[i]->multiply(pa[i], pb[i]);
      return assemble(pa);
    }
    case GroupSpec::Kind::Permutation: {
      std::vector<std::int32_t> out(a.code.size());
      for (std::size_t x = 0; x < out.size(); ++x) out[x] = a.code[b.code[x]];
      return make(std::move(out));
    }
  }
  return identity();
}

GroupElement Group::inverse(const GroupElement& g) const {
  check(g);
  switch (spec_.kind) {
    case GroupSpec::Kind::Free: {
      std::vector<std::int32_t> out(g.code.rbegin(), g.code.rend());
      for (auto& x : out) x ^= 1;
      return make(std::move(out));
    }
    case GroupSpec::Kind::FreeProduct: {
      std::vector<std::int32_t> out;
      out.reserve(g.code.size());
      for (std::size_t k = g.code.size(); k >= 2; k -= 2) {
        const std::int32_t gen = g.code[k - 2];
        out.push_back(gen);
        out.push_back(spec_.orders[gen] - g.code[k - 1]);
      }
      return make(std::move(out));
    }
    case GroupSpec::Kind::DirectProduct: {
      auto parts = split(g);
      for (std::size_t i = 0; i < parts.size(); ++i) parts[i] = factors_[i]->inverse(parts[i]);
      return assemble(parts);
    }
    case GroupSpec::Kind::Permutation: {
      std::vector<std::int32_t> out(g.code.size());
      for (std::size_t x = 0; x < out.size(); ++x) out[g.code[x]] = static_cast<std::int32_t>(x);
      return make(std::move(out));
    }
  }
  return identity();
}

GroupElement Group::power(const GroupElement& g, long n) const {
  GroupElement base = n < 0 ? inverse(g) : g;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  GroupElement result = identity();
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return result;
}

GroupElement Group::conjugate(const GroupElement& g, const GroupElement& by) const {
  return multiply(multiply(inverse(by), g), by);
}

GroupElement Group::commutator(const GroupElement& g, const GroupElement& h) const {
  return multiply(multiply(g, h), multiply(inverse(g), inverse(h)));
}

GroupElement Group::product(const std::vector<GroupElement>& factors) const {
  GroupElement out = identity();
  for (const auto& f : factors) out = multiply(out, f);
  return out;
}

GroupElement Group::generator(std::size_t i) const {
  if (i >= generator_count()) throw PreconditionError("generator index out of range");
  switch (spec_.kind) {
    case GroupSpec::Kind::Free:
      return make({static_cast<std::int32_t>(2 * i)});
    case GroupSpec::Kind::FreeProduct:
      return make({static_cast<std::int32_t>(i), 1});
    case GroupSpec::Kind::DirectProduct: {
      std::size_t f = factors_.size() - 1;
      while (factor_offset_[f] > i) --f;
      return embed(f, factors_[f]->generator(i - factor_offset_[f]));
    }
    case GroupSpec::Kind::Permutation: {
      const auto& p = spec_.perm_generators[i];
      return make(std::vector<std::int32_t>(p.begin(), p.end()));
    }
  }
  return identity();
}

std::vector<GroupElement> Group::symmetric_generators() const {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < generator_count(); ++i) {
    out.push_back(generator(i));
    out.push_back(inverse(out.back()));
  }
  std::sort(out.begin(), out.end(), ShortlexLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase_if(out, [this](const GroupElement& g) { return g == identity(); });
  return out;
}

std::vector<Letter> Group::letters(const GroupElement& g) const {
  check(g);
  std::vector<Letter> out;
  switch (spec_.kind) {
    case GroupSpec::Kind::Free:
      for (std::int32_t x : g.code) out.push_back({static_cast<std::size_t>(x >> 1), (x & 1) ? -1 : 1});
      break;
    case GroupSpec::Kind::FreeProduct:
      for (std::size_t k = 0; k < g.code.size(); k += 2)
        out.push_back({static_cast<std::size_t>(g.code[k]), g.code[k + 1]});
      break;
    case GroupSpec::Kind::DirectProduct: {
      const auto parts = split(g);
      for (std::size_t i = 0; i < parts.size(); ++i)
        for (auto l : factors_[i]->letters(parts[i])) out.push_back({l.generator + factor_offset_[i], l.exponent});
      break;
    }
    case GroupSpec::Kind::Permutation:
      throw PreconditionError("permutation elements have no normal-form word");
  }
  return out;
}

GroupElement Group::from_letters(const std::vector<Letter>& letters) const {
  GroupElement out = identity();
  for (const auto& l : letters) out = multiply(out, power(generator(l.generator), l.exponent));
  return out;
}

GroupElement Group::parse_word(std::string_view text) const {
  const std::string_view t = text::trim(text);
  if (t.empty()) throw PreconditionError("empty word");
  if (spec_.kind == GroupSpec::Kind::DirectProduct && t.front() == '(') {
    if (t.back() != ')') throw PreconditionError("unbalanced tuple '" + std::string(t) + "'");
    const auto parts = text::split_top_level(t.substr(1, t.size() - 2), ',');
    if (parts.size() != factors_.size())
      throw PreconditionError("tuple '" + std::string(t) + "' has the wrong number of components");
    std::vector<GroupElement> comps;
    for (std::size_t i = 0; i < parts.size(); ++i) comps.push_back(factors_[i]->parse_word(parts[i]));
    return assemble(comps);
  }
  if (spec_.kind == GroupSpec::Kind::Permutation && t.front() == '(') {
    const auto p = parse_permutation(t, spec_.degree);
    return make(std::vector<std::int32_t>(p.begin(), p.end()));
  }
  GroupElement out = identity();
  for (auto tok : text::split_ws(t)) {
    if (tok == "1") continue;
    std::string_view name = tok;
    long exponent = 1;
    if (const auto caret = tok.find('^'); caret != std::string_view::npos) {
      name = tok.substr(0, caret);
      exponent = text::parse_int(tok.substr(caret + 1));
    }
    const auto it = std::find(labels_.begin(), labels_.end(), name);
    if (it == labels_.end()) throw PreconditionError("unknown generator '" + std::string(name) + "'");
    out = multiply(out, power(generator(static_cast<std::size_t>(it - labels_.begin())), exponent));
  }
  return out;
}

std::string Group::format(const GroupElement& g) const {
  check(g);
  if (spec_.kind == GroupSpec::Kind::Permutation)
    return format_permutation(Permutation(g.code.begin(), g.code.end()));
  if (spec_.kind == GroupSpec::Kind::DirectProduct) {
    const auto parts = split(g);
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + factors_[i]->format(parts[i]);
    return out + ")";
  }
  const auto ls = letters(g);
  if (ls.empty()) return "1";
  // Merge runs (free groups) and print the exponent of least absolute value (free products).
  std::vector<Letter> runs;
  for (const auto& l : ls) {
    if (spec_.kind == GroupSpec::Kind::Free && !runs.empty() && runs.back().generator == l.generator &&
        (runs.back().exponent > 0) == (l.exponent > 0))
      runs.back().exponent += l.exponent;
    else
      runs.push_back(l);
  }
  std::string out;
  for (const auto& r : runs) {
    int e = r.exponent;
    if (spec_.kind == GroupSpec::Kind::FreeProduct) {
      const int n = spec_.orders[r.generator];
      if (2 * e > n) e -= n;
    }
    if (!out.empty()) out += ' ';
    out += labels_[r.generator];
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::size_t Group::syllable_length(const GroupElement& g) const {
  check(g);
  switch (spec_.kind) {
    case GroupSpec::Kind::Free:
      return g.code.size();
    case GroupSpec::Kind::FreeProduct:
      return g.code.size() / 2;
    case GroupSpec::Kind::DirectProduct: {
      std::size_t n = 0;
      const auto parts = split(g);
      for (std::size_t i = 0; i < parts.size(); ++i) n += factors_[i]->syllable_length(parts[i]);
      return n;
    }
    case GroupSpec::Kind::Permutation:
      return 0;
  }
  return 0;
}

MarkedSubset::MarkedSubset(const Group& group, const std::vector<GroupElement>& elements)
    : group_(std::make_shared<const Group>(group)) {
  std::unordered_set<GroupElement, GroupElementHash> seen;
  for (const auto& g : elements) {
    group.check(g);
    if (seen.insert(g).second) elements_.push_back(g);
  }
  if (elements_.empty()) throw PreconditionError("a marked subset needs at least one element");
  contains_identity_ = seen.count(group.identity()) > 0;
  symmetric_ = std::all_of(elements_.begin(), elements_.end(),
                           [&](const GroupElement& g) { return seen.count(group.inverse(g)) > 0; });
}

bool MarkedSubset::contains(const GroupElement& g) const {
  return std::find(elements_.begin(), elements_.end(), g) != elements_.end();
}

std::string MarkedSubset::format() const {
  std::string out;
  for (const auto& g : elements_) out += (out.empty() ? "" : ", ") + group_->format(g);
  return out;
}

MarkedSubset parse_subset(const Group& group, std::string_view text) {
  std::vector<GroupElement> elems;
  for (auto part : text::split_top_level(text, ',')) elems.push_back(group.parse_word(part));
  return MarkedSubset(group, elems);
}

MarkedSubset symmetrize(const MarkedSubset& u) {
  std::vector<GroupElement> elems = u.elements();
  for (const auto& g : u.elements()) elems.push_back(u.group().inverse(g));
  return MarkedSubset(u.group(), elems);
}

std::vector<GroupElement> semigroup_ball(const MarkedSubset& u, int n, std::size_t cap) {
  if (n < 0) throw PreconditionError("ball radius must be nonnegative");
  const Group& g = u.group();
  std::unordered_set<std::string> seen;
  std::vector<GroupElement> all{g.identity()};
  seen.insert(element_key(all[0]));
  std::vector<GroupElement> frontier = all;
  for (int k = 1; k <= n && !frontier.empty(); ++k) {
    std::vector<GroupElement> next;
    for (const auto& f : frontier) {
      for (const auto& s : u.elements()) {
        GroupElement x = g.multiply(f, s);
        if (seen.insert(element_key(x)).second) {
          if (seen.size() > cap)
            throw ResourceLimitError("U^{<=" + std::to_string(n) + "} exceeds the cap of " + std::to_string(cap) +
                                     " elements");
          next.push_back(std::move(x));
        }
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end(), ShortlexLess{});
  return all;
}

std::vector<GroupElement> word_ball(const Group& group, int n, std::size_t cap) {
  return semigroup_ball(MarkedSubset(group, group.symmetric_generators()), n, cap);
}

SemigroupCheck verify_semigroup_generation(const MarkedSubset& u, int depth, std::size_t cap) {
  const Group& g = u.group();
  std::unordered_map<std::string, GroupElement> wanted;
  for (const auto& x : u.elements()) {
    auto inv = g.inverse(x);
    wanted.emplace(element_key(inv), inv);
  }
  std::unordered_set<std::string> seen{element_key(g.identity())};
  wanted.erase(element_key(g.identity()));
  std::vector<GroupElement> frontier{g.identity()};
  SemigroupCheck out;
  for (int k = 1; k <= depth && !wanted.empty() && !frontier.empty(); ++k) {
    std::vector<GroupElement> next;
    for (const auto& f : frontier)
      for (const auto& s : u.elements()) {
        GroupElement x = g.multiply(f, s);
        auto key = element_key(x);
        if (!seen.insert(key).second) continue;
        wanted.erase(key);
        next.push_back(std::move(x));
      }
    out.depth = k;
    if (seen.size() > cap) break;
    frontier = std::move(next);
  }
  out.verified = wanted.empty();
  for (auto& [key, x] : wanted) out.missing_inverses.push_back(x);
  std::sort(out.missing_inverses.begin(), out.missing_inverses.end(), ShortlexLess{});
  return out;
}

}  // namespace psg
