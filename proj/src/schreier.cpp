#include "psg/schreier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "psg/error.hpp"
#include "text.hpp"

namespace psg {

using boost::multiprecision::cpp_int;

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw StructuralError("composing permutations of different degrees");
  Permutation r(p.size());
  for (std::size_t x = 0; x < q.size(); ++x) r[x] = p[static_cast<std::size_t>(q[x])];
  return r;
}

Permutation invert(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[static_cast<std::size_t>(p[x])] = static_cast<int>(x);
  return r;
}

namespace {

Permutation identity_permutation(int degree) {
  Permutation p(static_cast<std::size_t>(degree));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation permutation_power(const Permutation& p, long n) {
  const Permutation base = n < 0 ? invert(p) : p;
  Permutation r = identity_permutation(static_cast<int>(p.size()));
  for (long i = 0; i < (n < 0 ? -n : n); ++i) r = compose(r, base);
  return r;
}

std::string permutation_key(const Permutation& p) {
  std::string k;
  k.reserve(p.size());
  for (int x : p) k.push_back(static_cast<char>(x & 0xff));
  if (p.size() > 255) {
    for (int x : p) k.push_back(static_cast<char>(x >> 8));
  }
  return k;
}

bool is_permutation(const Permutation& p, int degree) {
  if (static_cast<int>(p.size()) != degree) return false;
  std::vector<bool> hit(p.size(), false);
  for (int x : p) {
    if (x < 0 || x >= degree || hit[static_cast<std::size_t>(x)]) return false;
    hit[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

// (generator offset, spec) for every free or free-product block of the source.
void collect_blocks(const GroupSpec& spec, std::size_t offset, std::vector<std::pair<std::size_t, const GroupSpec*>>& out) {
  if (spec.kind == GroupSpec::Kind::DirectProduct) {
    for (const auto& f : spec.factors) {
      collect_blocks(f, offset, out);
      offset += Group(f).generator_count();
    }
    return;
  }
  if (spec.kind == GroupSpec::Kind::Permutation)
    throw PreconditionError("finite quotients of permutation groups are not supported");
  out.emplace_back(offset, &spec);
}

std::size_t block_size(const GroupSpec& spec) {
  return spec.kind == GroupSpec::Kind::Free ? static_cast<std::size_t>(spec.rank) : spec.orders.size();
}

}  // namespace

FiniteQuotient::FiniteQuotient(const Group& source, int degree, std::vector<Permutation> images)
    : source_(source), degree_(degree), images_(std::move(images)) {
  if (degree < 1) throw PreconditionError("quotient degree must be positive");
  if (images_.size() != source_.generator_count())
    throw PreconditionError("a finite quotient needs one image per generator (" +
                            std::to_string(source_.generator_count()) + "), got " + std::to_string(images_.size()));
  for (const auto& p : images_)
    if (!is_permutation(p, degree)) throw PreconditionError("generator image is not a permutation of degree " +
                                                            std::to_string(degree));

  std::vector<std::pair<std::size_t, const GroupSpec*>> blocks;
  collect_blocks(source_.spec(), 0, blocks);
  const Permutation id = identity_permutation(degree);
  for (const auto& [offset, spec] : blocks) {
    if (spec->kind != GroupSpec::Kind::FreeProduct) continue;
    for (std::size_t i = 0; i < spec->orders.size(); ++i)
      if (permutation_power(images_[offset + i], spec->orders[i]) != id)
        throw PreconditionError("image of " + source_.labels()[offset + i] + " does not have order dividing " +
                                std::to_string(spec->orders[i]));
  }
  for (std::size_t a = 0; a < blocks.size(); ++a)
    for (std::size_t b = a + 1; b < blocks.size(); ++b)
      for (std::size_t i = 0; i < block_size(*blocks[a].second); ++i)
        for (std::size_t j = 0; j < block_size(*blocks[b].second); ++j) {
          const auto& p = images_[blocks[a].first + i];
          const auto& q = images_[blocks[b].first + j];
          if (compose(p, q) != compose(q, p))
            throw PreconditionError("images of " + source_.labels()[blocks[a].first + i] + " and " +
                                    source_.labels()[blocks[b].first + j] + " do not commute");
        }
}

Permutation FiniteQuotient::image(const GroupElement& g) const {
  Permutation r = identity_permutation(degree_);
  for (const auto& l : source_.letters(g)) r = compose(r, permutation_power(images_[l.generator], l.exponent));
  return r;
}

FiniteQuotient FiniteQuotient::parse(const Group& source, int degree, std::string_view spec) {
  std::vector<std::optional<Permutation>> images(source.generator_count());
  for (auto part : text::split_top_level(spec, ',')) {
    part = text::trim(part);
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw PreconditionError("expected label=cycles, got '" + std::string(part) + "'");
    const auto label = text::trim(part.substr(0, eq));
    const auto it = std::find(source.labels().begin(), source.labels().end(), label);
    if (it == source.labels().end()) throw PreconditionError("unknown generator '" + std::string(label) + "'");
    auto& slot = images[static_cast<std::size_t>(it - source.labels().begin())];
    if (slot) throw PreconditionError("generator '" + std::string(label) + "' given twice");
    slot = parse_permutation(part.substr(eq + 1), degree);
  }
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i]) throw PreconditionError("no image for generator '" + source.labels()[i] + "'");
    out.push_back(*images[i]);
  }
  return FiniteQuotient(source, degree, std::move(out));
}

std::string FiniteQuotient::describe() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ", ";
    out += source_.labels()[i] + "=" + format_permutation(images_[i]);
  }
  return out;
}

std::string SubgroupDesignator::describe() const {
  return kind == Kind::Kernel ? "ker" : "stab " + std::to_string(point + 1);
}

std::string CosetStructure::label(const Permutation& image) const {
  if (subgroup_.kind == SubgroupDesignator::Kind::Kernel) return permutation_key(image);
  return std::to_string(image[static_cast<std::size_t>(subgroup_.point)]);
}

std::size_t CosetStructure::coset_of(const GroupElement& g) const {
  const auto it = coset_.find(label(quotient_.image(g)));
  if (it == coset_.end()) throw InvariantViolation("element outside every recorded coset");
  return it->second;
}

namespace {

constexpr std::size_t kImageCap = 2'000'000;

// All elements of the group generated by `gens`, as permutations.
std::vector<Permutation> closure(const std::vector<Permutation>& gens, int degree) {
  std::vector<Permutation> steps;
  for (const auto& g : gens) {
    steps.push_back(g);
    steps.push_back(invert(g));
  }
  std::vector<Permutation> all{identity_permutation(degree)};
  std::unordered_set<std::string> seen{permutation_key(all[0])};
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const auto& s : steps) {
      Permutation x = compose(all[i], s);
      if (seen.insert(permutation_key(x)).second) {
        if (seen.size() > kImageCap) throw ResourceLimitError("finite quotient image exceeds the cap");
        all.push_back(std::move(x));
      }
    }
  return all;
}

}  // namespace

CosetStructure coset_structure(const MarkedSubset& u, const FiniteQuotient& q, const SubgroupDesignator& h) {
  const Group& g = u.group();
  if (g.tag() != q.source().tag()) throw StructuralError("subset and quotient live in different groups");
  if (h.kind == SubgroupDesignator::Kind::Stabilizer && (h.point < 0 || h.point >= q.degree()))
    throw PreconditionError("stabilized point out of range");

  CosetStructure c(u, q, h);
  const std::vector<Permutation> image_group = closure(q.images(), q.degree());
  c.image_order_ = image_group.size();

  std::vector<Permutation> steps;
  for (const auto& x : u.elements()) steps.push_back(q.image(x));

  // BFS over rho(G) by right multiplication: the first state reaching a coset carries the
  // lexicographically least among the shortest U-words for it.
  struct State {
    Permutation p;
    std::size_t parent;
    std::size_t letter;
  };
  std::vector<State> states{{identity_permutation(q.degree()), 0, 0}};
  std::unordered_set<std::string> seen{permutation_key(states[0].p)};
  auto word_of = [&](std::size_t i) {
    std::vector<std::size_t> w;
    for (; i != 0; i = states[i].parent) w.push_back(states[i].letter);
    std::reverse(w.begin(), w.end());
    return w;
  };
  auto record = [&](std::size_t i) {
    if (!c.coset_.emplace(c.label(states[i].p), c.transversal_.size()).second) return;
    auto w = word_of(i);
    std::vector<GroupElement> factors;
    for (auto l : w) factors.push_back(u.elements()[l]);
    c.transversal_.push_back(g.product(factors));
    c.words_.push_back(std::move(w));
  };
  record(0);
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t l = 0; l < steps.size(); ++l) {
      Permutation x = compose(states[i].p, steps[l]);
      if (!seen.insert(permutation_key(x)).second) continue;
      states.push_back({std::move(x), i, l});
      record(states.size() - 1);
    }
  if (states.size() != image_group.size())
    throw PreconditionError("U does not generate as semigroup at this quotient: " + std::to_string(states.size()) +
                            " of " + std::to_string(image_group.size()) + " quotient elements reached");

  if (h.kind == SubgroupDesignator::Kind::Kernel) {
    c.normal_ = true;
  } else {
    // Normal iff the action on the orbit of the point is regular.
    std::vector<std::size_t> orbit;
    for (const auto& a : c.transversal_) orbit.push_back(static_cast<std::size_t>(q.image(a)[static_cast<std::size_t>(h.point)]));
    std::unordered_set<std::string> restricted;
    for (const auto& p : image_group) {
      Permutation r;
      for (auto x : orbit) r.push_back(p[x]);
      restricted.insert(permutation_key(r));
    }
    c.normal_ = restricted.size() == orbit.size();
  }
  return c;
}

namespace {

// W of the normal case, with the positions needed by the rewriting.
struct NormalConstruction {
  std::vector<GroupElement> w;
  std::vector<std::vector<std::size_t>> words;
  std::vector<std::size_t> power;              // a_i^d
  std::vector<std::vector<std::size_t>> step;  // [u][a_i]: phi(u a_i)^{d-1} u a_i
  std::unordered_map<std::string, std::size_t> position;

  std::size_t add(GroupElement x, std::vector<std::size_t> word) {
    const auto [it, fresh] = position.emplace(element_key(x), w.size());
    if (fresh) {
      w.push_back(std::move(x));
      words.push_back(std::move(word));
    }
    return it->second;
  }
};

std::vector<std::size_t> repeat(const std::vector<std::size_t>& word, long times) {
  std::vector<std::size_t> out;
  for (long i = 0; i < times; ++i) out.insert(out.end(), word.begin(), word.end());
  return out;
}

GroupElement evaluate(const MarkedSubset& u, const std::vector<std::size_t>& word) {
  std::vector<GroupElement> factors;
  factors.reserve(word.size());
  for (auto l : word) factors.push_back(u.elements()[l]);
  return u.group().product(factors);
}

NormalConstruction normal_construction(const MarkedSubset& u, const CosetStructure& c) {
  const Group& g = u.group();
  const auto& t = c.transversal();
  const long d = static_cast<long>(c.index());
  NormalConstruction nc;
  for (std::size_t i = 0; i < t.size(); ++i) nc.power.push_back(nc.add(g.power(t[i], d), repeat(c.words()[i], d)));
  for (std::size_t j = 0; j < u.size(); ++j) {
    std::vector<std::size_t> row;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const GroupElement ua = g.multiply(u.elements()[j], t[i]);
      const std::size_t k = c.coset_of(ua);
      auto word = repeat(c.words()[k], d - 1);
      word.push_back(j);
      word.insert(word.end(), c.words()[i].begin(), c.words()[i].end());
      row.push_back(nc.add(g.multiply(g.power(t[k], d - 1), ua), std::move(word)));
    }
    nc.step.push_back(std::move(row));
  }
  return nc;
}

struct WLetter {
  std::size_t index;
  bool inverse;
};

// h = u_1 ... u_n becomes a_final (phi(u a)^{-1} u a) ... over the normal structure c, each
// factor being (phi(u a)^d)^{-1} (phi(u a)^{d-1} u a).
std::pair<std::size_t, std::vector<WLetter>> rewrite(const MarkedSubset& u, const CosetStructure& c,
                                                      const NormalConstruction& nc,
                                                      const std::vector<std::size_t>& word) {
  const Group& g = u.group();
  std::size_t a = 0;
  std::vector<WLetter> out;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const std::size_t k = c.coset_of(g.multiply(u.elements()[*it], c.transversal()[a]));
    out.push_back({nc.step[*it][a], false});
    out.push_back({nc.power[k], true});
    a = k;
  }
  std::reverse(out.begin(), out.end());
  return {a, std::move(out)};
}

struct BallEntry {
  GroupElement x;
  std::size_t parent;
  std::size_t letter;
};

std::vector<BallEntry> ball_with_words(const MarkedSubset& u, int depth, std::size_t cap) {
  const Group& g = u.group();
  std::vector<BallEntry> all{{g.identity(), 0, 0}};
  std::unordered_set<std::string> seen{element_key(all[0].x)};
  std::size_t begin = 0;
  for (int k = 1; k <= depth; ++k) {
    const std::size_t end = all.size();
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t l = 0; l < u.size(); ++l) {
        GroupElement x = g.multiply(all[i].x, u.elements()[l]);
        if (!seen.insert(element_key(x)).second) continue;
        if (all.size() >= cap) throw ResourceLimitError("verification ball exceeds the cap");
        all.push_back({std::move(x), i, l});
      }
    begin = end;
  }
  return all;
}

std::vector<std::size_t> word_in_ball(const std::vector<BallEntry>& ball, std::size_t i) {
  std::vector<std::size_t> w;
  for (; i != 0; i = ball[i].parent) w.push_back(ball[i].letter);
  std::reverse(w.begin(), w.end());
  return w;
}

// cK is the normal structure the rewriting runs on; elements of H land in the coset of a
// transversal element that `extra` maps to its position in W.
GenerationCheck check_generation(const MarkedSubset& u, const CosetStructure& ch, const CosetStructure& ck,
                                 const NormalConstruction& nc, const std::vector<GroupElement>& w,
                                 const std::unordered_map<std::size_t, std::size_t>& extra, int depth) {
  const Group& g = u.group();
  GenerationCheck out;
  out.depth = depth;
  const auto ball = ball_with_words(u, depth, 4'000'000);
  out.ball = ball.size();
  out.verified = true;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    if (!ch.in_subgroup(ball[i].x)) continue;
    ++out.checked;
    auto [a, letters] = rewrite(u, ck, nc, word_in_ball(ball, i));
    std::vector<GroupElement> factors;
    if (a != 0) {
      const auto it = extra.find(a);
      if (it == extra.end()) {
        out.verified = false;
        break;
      }
      factors.push_back(w[it->second]);
    }
    for (const auto& l : letters) factors.push_back(l.inverse ? g.inverse(w[l.index]) : w[l.index]);
    if (g.product(factors) != ball[i].x) {
      out.verified = false;
      break;
    }
  }
  return out;
}

long factorial(std::size_t d) {
  if (d > 12) throw ResourceLimitError("index too large for the factorial bound");
  long f = 1;
  for (std::size_t i = 2; i <= d; ++i) f *= static_cast<long>(i);
  return f;
}

void finish(SchreierResult& r, const MarkedSubset& u, const CosetStructure& ch) {
  const Group& g = u.group();
  r.in_subgroup = true;
  for (std::size_t i = 0; i < r.w.size(); ++i) {
    if (evaluate(u, r.w_words[i]) != r.w[i]) throw InvariantViolation("Schreier generator differs from its U-word");
    r.longest_word = std::max(r.longest_word, r.w_words[i].size());
    r.in_subgroup = r.in_subgroup && ch.in_subgroup(r.w[i]);
  }
  r.containment = static_cast<long>(r.longest_word) <= r.exponent_bound;
  try {
    const auto ball = semigroup_ball(u, static_cast<int>(r.longest_word), 200'000);
    r.ball_confirmed = std::all_of(r.w.begin(), r.w.end(), [&](const GroupElement& x) {
      return std::binary_search(ball.begin(), ball.end(), x, ShortlexLess{});
    });
  } catch (const ResourceLimitError&) {
    r.ball_confirmed = false;
  }
  r.size_ok = boost::rational<long>(static_cast<long>(r.w.size())) >= r.size_bound;
  if (g.kind() == GroupSpec::Kind::Free) {
    r.generation.folded_vertices = folded_index(g, r.w);
    r.generation.folded = r.in_subgroup && r.generation.folded_vertices == r.index;
  }
}

int default_depth(const MarkedSubset& u, long bound, std::optional<int> l_ver) {
  if (l_ver) {
    if (*l_ver < 0) throw PreconditionError("verification depth must be nonnegative");
    return *l_ver;
  }
  return verification_depth(u, static_cast<int>(std::min<long>(2 * bound, 1'000)));
}

}  // namespace

int verification_depth(const MarkedSubset& u, int max_depth, std::size_t cap) {
  const Group& g = u.group();
  std::unordered_set<std::string> seen{element_key(g.identity())};
  std::vector<GroupElement> frontier{g.identity()};
  int depth = 0;
  for (int k = 1; k <= max_depth && !frontier.empty(); ++k) {
    std::vector<GroupElement> next;
    for (const auto& f : frontier)
      for (const auto& s : u.elements()) {
        GroupElement x = g.multiply(f, s);
        if (!seen.insert(element_key(x)).second) continue;
        if (seen.size() > cap) return depth;
        next.push_back(std::move(x));
      }
    depth = k;
    frontier = std::move(next);
  }
  return max_depth < 0 ? 0 : max_depth;
}

SchreierResult schreier_generators_normal(const MarkedSubset& u, const CosetStructure& c, std::optional<int> l_ver) {
  if (!c.normal()) throw PreconditionError("the subgroup " + c.subgroup().describe() + " is not normal");
  if (u.group().tag() != c.u().group().tag() || u.elements() != c.u().elements())
    throw PreconditionError("coset structure was built for a different subset");
  const long d = static_cast<long>(c.index());
  const NormalConstruction nc = normal_construction(u, c);

  SchreierResult r;
  r.w = nc.w;
  r.w_words = nc.words;
  r.index = c.index();
  r.normal = true;
  r.exponent_bound = d * d - d + 1;
  r.core_index = c.index();
  r.core_bound = r.exponent_bound;
  r.size_bound = boost::rational<long>(static_cast<long>(u.size()), d);
  r.generation = check_generation(u, c, c, nc, r.w, {}, default_depth(u, r.exponent_bound, l_ver));
  finish(r, u, c);
  return r;
}

SchreierResult schreier_generators(const MarkedSubset& u, const FiniteQuotient& q, const SubgroupDesignator& h,
                                   std::optional<int> l_ver) {
  const CosetStructure ch = coset_structure(u, q, h);
  const long d = static_cast<long>(ch.index());
  const long df = factorial(ch.index());

  // The action on G/H is the action on the orbit of the point; its kernel has index r <= d!.
  std::optional<CosetStructure> ck_store;
  if (h.kind == SubgroupDesignator::Kind::Kernel) {
    ck_store.emplace(ch);
  } else {
    std::vector<int> orbit;
    for (const auto& a : ch.transversal()) orbit.push_back(q.image(a)[static_cast<std::size_t>(h.point)]);
    std::vector<int> where(static_cast<std::size_t>(q.degree()), -1);
    for (std::size_t i = 0; i < orbit.size(); ++i) where[static_cast<std::size_t>(orbit[i])] = static_cast<int>(i);
    std::vector<Permutation> restricted;
    for (const auto& p : q.images()) {
      Permutation x;
      for (int o : orbit) x.push_back(where[static_cast<std::size_t>(p[static_cast<std::size_t>(o)])]);
      restricted.push_back(std::move(x));
    }
    ck_store.emplace(coset_structure(u, FiniteQuotient(q.source(), static_cast<int>(orbit.size()), restricted),
                                     SubgroupDesignator::kernel()));
  }
  const CosetStructure& ck = *ck_store;
  const long r_core = static_cast<long>(ck.index());

  NormalConstruction nc = normal_construction(u, ck);
  SchreierResult r;
  std::unordered_map<std::size_t, std::size_t> extra;
  for (std::size_t i = 0; i < ck.index(); ++i)
    if (ch.in_subgroup(ck.transversal()[i])) {
      r.transversal_in_h.push_back(i);
      extra.emplace(i, nc.add(ck.transversal()[i], ck.words()[i]));
    }
  r.w = nc.w;
  r.w_words = nc.words;
  r.index = ch.index();
  r.normal = ch.normal();
  r.exponent_bound = df * df - df + 1;
  r.core_index = ck.index();
  r.core_bound = r_core * r_core - r_core + 1;
  r.size_bound = boost::rational<long>(static_cast<long>(u.size()), df);
  (void)d;
  r.generation = check_generation(u, ch, ck, nc, r.w, extra, default_depth(u, r.exponent_bound, l_ver));
  finish(r, u, ch);
  return r;
}

std::size_t folded_index(const Group& group, const std::vector<GroupElement>& w) {
  if (group.kind() != GroupSpec::Kind::Free) throw PreconditionError("folding needs a free group");
  const std::size_t rank = group.generator_count();
  std::vector<std::size_t> parent{0};
  std::vector<std::vector<long>> out{std::vector<long>(rank, -1)}, in{std::vector<long>(rank, -1)};
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto fresh = [&] {
    parent.push_back(parent.size());
    out.emplace_back(rank, -1);
    in.emplace_back(rank, -1);
    return parent.size() - 1;
  };
  std::vector<std::pair<std::size_t, std::size_t>> pending;
  auto settle = [&] {
    while (!pending.empty()) {
      auto [x, y] = pending.back();
      pending.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      parent[y] = x;
      for (std::size_t s = 0; s < rank; ++s) {
        for (auto* table : {&out, &in}) {
          const long ty = (*table)[y][s];
          if (ty < 0) continue;
          long& tx = (*table)[x][s];
          if (tx < 0)
            tx = ty;
          else
            pending.emplace_back(static_cast<std::size_t>(tx), static_cast<std::size_t>(ty));
        }
      }
    }
  };
  auto edge = [&](std::size_t from, std::size_t s, std::size_t to) {
    from = find(from);
    to = find(to);
    if (out[from][s] < 0)
      out[from][s] = static_cast<long>(to);
    else
      pending.emplace_back(static_cast<std::size_t>(out[from][s]), to);
    if (in[to][s] < 0)
      in[to][s] = static_cast<long>(from);
    else
      pending.emplace_back(static_cast<std::size_t>(in[to][s]), from);
    settle();
  };
  for (const auto& x : w) {
    const auto letters = group.letters(x);
    std::size_t v = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const std::size_t next = i + 1 == letters.size() ? 0 : fresh();
      if (letters[i].exponent > 0)
        edge(v, letters[i].generator, next);
      else
        edge(next, letters[i].generator, v);
      v = next;
    }
  }
  std::size_t vertices = 0;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (find(v) != v) continue;
    ++vertices;
    for (std::size_t s = 0; s < rank; ++s)
      if (out[v][s] < 0 || in[v][s] < 0) return 0;
  }
  return vertices;
}

namespace {

ChainVerdict power_comparison(const GrowthSeries& counts, long r, const cpp_int& lhs_scale_num,
                              const cpp_int& x_num, const cpp_int& x_den, boost::rational<long> beta, bool halve) {
  if (beta <= 0) throw PreconditionError("beta must be positive");
  const unsigned p = static_cast<unsigned>(beta.numerator());
  const unsigned q = static_cast<unsigned>(beta.denominator());
  ChainVerdict v;
  v.r = r;
  const double log_x = std::log(static_cast<double>(x_num.convert_to<long double>())) -
                       std::log(static_cast<double>(x_den.convert_to<long double>()));
  for (int n = 1; n <= counts.completed; ++n) {
    const std::uint64_t c = counts.exact[static_cast<std::size_t>(n)];
    // (c 2^n)^{r q} x_den^{p n} >= x_num^{p n}, or c^q x_den^{p n} >= x_num^{p n} without halving.
    cpp_int lhs = cpp_int(c) * lhs_scale_num;
    if (halve) lhs <<= n;
    lhs = boost::multiprecision::pow(lhs, static_cast<unsigned>(r) * q) *
          boost::multiprecision::pow(x_den, p * static_cast<unsigned>(n));
    const cpp_int rhs = boost::multiprecision::pow(x_num, p * static_cast<unsigned>(n));
    ChainRow row;
    row.n = n;
    row.count = c;
    const double b = static_cast<double>(beta.numerator()) / static_cast<double>(beta.denominator());
    row.bound = std::exp(b * n / static_cast<double>(r) * log_x - (halve ? n * std::log(2.0) : 0.0));
    row.satisfied = lhs >= rhs;
    if (!row.satisfied && v.satisfied) {
      v.satisfied = false;
      v.first_violation = n;
    }
    v.rows.push_back(row);
  }
  return v;
}

std::string rational_text(boost::rational<long> x) {
  return x.denominator() == 1 ? std::to_string(x.numerator())
                              : std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

}  // namespace

ChainVerdict chain_psg_bound(const GrowthSeries& counts, int d, boost::rational<long> alpha,
                             boost::rational<long> beta) {
  if (d < 1) throw PreconditionError("index must be positive");
  if (alpha <= 0) throw PreconditionError("alpha must be positive");
  const long df = factorial(static_cast<std::size_t>(d));
  const long r = df * df - df + 1;
  const cpp_int x_num = cpp_int(alpha.numerator()) * counts.u_size;
  const cpp_int x_den = cpp_int(alpha.denominator()) * df;
  ChainVerdict v = power_comparison(counts, r, 1, x_num, x_den, beta, true);
  v.formula = "|U^n| >= (" + rational_text(alpha) + " * " + std::to_string(counts.u_size) + " / (" +
              std::to_string(df) + " * 2^(" + std::to_string(r) + "/" + rational_text(beta) + ")))^((" +
              rational_text(beta) + "/" + std::to_string(r) + ") n)";
  return v;
}

ChainVerdict quotient_psg_bound(const GrowthSeries& counts, std::uint64_t kernel_order, boost::rational<long> alpha,
                                boost::rational<long> beta) {
  if (kernel_order == 0) throw PreconditionError("kernel order must be positive");
  if (alpha <= 0) throw PreconditionError("alpha must be positive");
  const cpp_int x_num = cpp_int(alpha.numerator()) * counts.u_size;
  const cpp_int x_den = cpp_int(alpha.denominator()) * kernel_order;
  ChainVerdict v = power_comparison(counts, 1, 1, x_num, x_den, beta, false);
  v.formula = "|W^n| >= (" + rational_text(alpha) + " * " + std::to_string(counts.u_size) + " / " +
              std::to_string(kernel_order) + ")^(" + rational_text(beta) + " n)";
  return v;
}

}  // namespace psg
