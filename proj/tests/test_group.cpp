#include <doctest.h>

#include <set>
#include <unordered_set>

#include "psg/error.hpp"
#include "psg/group.hpp"
#include "support.hpp"

using namespace psg;
using psg::testing::naive_reduce;
using psg::testing::random_element;

namespace {

// Letters of a free-group element as a string over a, A, b, B, ...
std::string as_string(const Group& f, const GroupElement& g) {
  std::string out;
  for (auto l : f.letters(g)) {
    const char c = static_cast<char>('a' + l.generator);
    out += l.exponent > 0 ? c : static_cast<char>(std::toupper(c));
  }
  return out;
}

std::size_t naive_ball_size(const std::vector<std::string>& u, int n) {
  std::set<std::string> seen{""};
  std::vector<std::string> layer{""};
  for (int k = 1; k <= n; ++k) {
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (const auto& s : u) next.push_back(w + s);
    for (const auto& w : next) seen.insert(naive_reduce(w));
    layer = next;
  }
  return seen.size();
}

}  // namespace

TEST_CASE("multiply examples") {
  Group f2(GroupSpec::free(2));
  CHECK(f2.multiply(f2.parse_word("a b^-1"), f2.parse_word("b a")) == f2.parse_word("a a"));
  CHECK(f2.format(f2.parse_word("a a")) == "a^2");

  Group z2z3(GroupSpec::free_product({2, 3}));
  const auto x = z2z3.generator(0);
  CHECK(z2z3.is_identity(z2z3.multiply(x, x)));
  CHECK(z2z3.format(z2z3.parse_word("t t")) == "t^-1");

  Group f2f2(GroupSpec::direct({GroupSpec::free(2), GroupSpec::free(2)}));
  CHECK(f2f2.labels() == std::vector<std::string>{"a1", "b1", "a2", "b2"});
  CHECK(f2f2.multiply(f2f2.parse_word("(a1, 1)"), f2f2.parse_word("(1, b2)")) == f2f2.parse_word("a1 b2"));
  CHECK(f2f2.format(f2f2.parse_word("b2 a1")) == "(a1, b2)");
}

TEST_CASE("mismatched groups are a structural error") {
  Group f2(GroupSpec::free(2));
  Group f3(GroupSpec::free(3));
  CHECK_THROWS_AS(f2.multiply(f2.generator(0), f3.generator(0)), StructuralError);
  Group f2b(GroupSpec::free(2, {"x", "y"}));
  CHECK_THROWS_AS(f2.multiply(f2.generator(0), f2b.generator(0)), StructuralError);
}

TEST_CASE("group description validation") {
  CHECK_THROWS_AS(GroupSpec::free(0), PreconditionError);
  CHECK_THROWS_AS(GroupSpec::free_product({2, 1}), PreconditionError);
  CHECK_THROWS_AS(GroupSpec::direct({}), PreconditionError);
  CHECK_THROWS_AS(GroupSpec::free(2, {"a", "a"}), PreconditionError);
  CHECK_THROWS_AS(GroupSpec::permutation(3, {{0, 0, 1}}), PreconditionError);
  for (const char* text : {"free(2)", "free_product(2,3)", "direct(free(2), free_product(2,3))", "perm(4; (1 2); (1 2 3 4))"}) {
    CHECK(parse_group_spec(text).describe() == text);
  }
}

TEST_CASE("symmetrize") {
  Group f2(GroupSpec::free(2));
  auto s = symmetrize(parse_subset(f2, "a, b"));
  CHECK(s.size() == 4);
  CHECK(s.symmetric());
  CHECK(s.format() == "a, b, a^-1, b^-1");
  CHECK(symmetrize(s).elements() == s.elements());
  CHECK(symmetrize(parse_subset(f2, "a, a^-1")).size() == 2);

  Group z2z3(GroupSpec::free_product({2, 3}));
  auto x = symmetrize(parse_subset(z2z3, "s"));
  CHECK(x.size() == 1);
  CHECK(x.symmetric());
}

TEST_CASE("marked subsets keep the identity and drop duplicates") {
  Group f2(GroupSpec::free(2));
  auto u = parse_subset(f2, "a, 1, b a b^-1 b, b a");
  CHECK(u.size() == 3);
  CHECK(u.contains_identity());
  CHECK_FALSE(u.symmetric());
  CHECK_THROWS_AS(MarkedSubset(f2, {}), PreconditionError);
}

TEST_CASE("semigroup ball examples") {
  Group f2(GroupSpec::free(2));
  auto ball = semigroup_ball(parse_subset(f2, "a, b"), 2);
  std::vector<std::string> printed;
  for (const auto& g : ball) printed.push_back(f2.format(g));
  CHECK(printed == std::vector<std::string>{"1", "a", "b", "a^2", "a b", "b a", "b^2"});

  CHECK(semigroup_ball(symmetrize(parse_subset(f2, "a, b")), 2).size() == naive_ball_size({"a", "A", "b", "B"}, 2));
  CHECK(naive_ball_size({"a", "A", "b", "B"}, 2) == 17);
  CHECK(semigroup_ball(parse_subset(f2, "a b, b^-1"), 0).size() == 1);
  CHECK_THROWS_AS(semigroup_ball(symmetrize(parse_subset(f2, "a, b")), 8, 1000), ResourceLimitError);
}

TEST_CASE("semigroup ball matches naive enumeration and the layer recursion") {
  Group f2(GroupSpec::free(2));
  const std::vector<std::pair<const char*, std::vector<std::string>>> cases{
      {"a, b", {"a", "b"}}, {"a, b^-1, a b", {"a", "B", "ab"}}, {"a, a^-1, b, b^-1", {"a", "A", "b", "B"}},
      {"a^2, b a^-1", {"aa", "bA"}}};
  for (const auto& [text, strings] : cases) {
    auto u = parse_subset(f2, text);
    for (int n = 0; n <= 6; ++n) {
      const auto ball = semigroup_ball(u, n);
      CHECK(ball.size() == naive_ball_size(strings, n));
      if (n == 0) continue;
      // U^{<=n} = U^{<=n-1} ∪ U^{<=n-1}·U
      const auto prev = semigroup_ball(u, n - 1);
      std::set<std::string> rebuilt;
      for (const auto& x : prev) {
        rebuilt.insert(element_key(x));
        for (const auto& s : u.elements()) rebuilt.insert(element_key(f2.multiply(x, s)));
      }
      std::set<std::string> got;
      for (const auto& x : ball) got.insert(element_key(x));
      CHECK(got == rebuilt);
    }
  }
}

TEST_CASE("free normal form agrees with naive reduction") {
  Group f2(GroupSpec::free(2));
  SplitMix64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::string w;
    GroupElement x = f2.identity();
    const int len = static_cast<int>(rng.between(0, 20));
    for (int k = 0; k < len; ++k) {
      const auto gen = rng.below(2);
      const bool inv = rng.below(2) != 0;
      w += static_cast<char>(inv ? 'A' + gen : 'a' + gen);
      x = f2.multiply(x, f2.power(f2.generator(gen), inv ? -1 : 1));
    }
    CHECK(as_string(f2, x) == naive_reduce(w));
  }
}

TEST_CASE("normal forms are unique under inserted relators") {
  const std::vector<GroupSpec> specs{GroupSpec::free(2), GroupSpec::free_product({2, 3}),
                                     GroupSpec::free_product({3, 4, 2}),
                                     GroupSpec::direct({GroupSpec::free(2), GroupSpec::free_product({2, 3})})};
  SplitMix64 rng(2024);
  int samples = 0;
  for (const auto& spec : specs) {
    Group g(spec);
    const auto gens = g.symmetric_generators();
    for (int i = 0; i < 2500; ++i, ++samples) {
      // Build a word as a letter list, then splice in a trivial subword and compare normal forms.
      std::vector<GroupElement> word;
      const int len = static_cast<int>(rng.between(0, 12));
      for (int k = 0; k < len; ++k) word.push_back(gens[rng.below(gens.size())]);
      std::vector<GroupElement> padded = word;
      const auto pos = padded.begin() + static_cast<long>(rng.below(padded.size() + 1));
      const auto& s = gens[rng.below(gens.size())];
      if (spec.kind == GroupSpec::Kind::FreeProduct && rng.below(2) == 0) {
        const auto l = g.letters(s).front();
        std::vector<GroupElement> relator(g.factor_order(l.generator), g.generator(l.generator));
        padded.insert(pos, relator.begin(), relator.end());
      } else {
        padded.insert(pos, {s, g.inverse(s)});
      }
      const auto a = g.product(word);
      const auto b = g.product(padded);
      CHECK(element_key(a) == element_key(b));
      CHECK(g.parse_word(g.format(a)) == a);
    }
  }
  CHECK(samples == 10000);
}

TEST_CASE("group axioms on sampled triples") {
  const std::vector<GroupSpec> specs{GroupSpec::free(3), GroupSpec::free_product({2, 3}),
                                     GroupSpec::direct({GroupSpec::free(2), GroupSpec::free(2)}),
                                     GroupSpec::permutation(5, {{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}})};
  SplitMix64 rng(7);
  for (const auto& spec : specs) {
    Group g(spec);
    for (int i = 0; i < 300; ++i) {
      const auto a = random_element(g, rng, 10), b = random_element(g, rng, 10), c = random_element(g, rng, 10);
      CHECK(g.multiply(a, g.multiply(b, c)) == g.multiply(g.multiply(a, b), c));
      CHECK(g.is_identity(g.multiply(a, g.inverse(a))));
      CHECK(g.multiply(g.identity(), a) == a);
      CHECK(g.multiply(a, g.identity()) == a);
      CHECK(g.power(a, 3) == g.product({a, a, a}));
      CHECK(g.power(a, -2) == g.inverse(g.multiply(a, a)));
    }
  }
}

TEST_CASE("permutation groups compose right to left") {
  Group s3(GroupSpec::permutation(3, {parse_permutation("(1 2)", 3), parse_permutation("(1 2 3)", 3)}));
  const auto p = s3.generator(0), q = s3.generator(1);
  // (1 2)(1 2 3) sends 1 -> 2 -> 1, 2 -> 3, 3 -> 1 -> 2
  CHECK(s3.format(s3.multiply(p, q)) == "(2 3)");
  CHECK(s3.format(s3.identity()) == "()");
  CHECK(s3.parse_word("p1 p2") == s3.multiply(p, q));
}

TEST_CASE("shortlex order puts a before a^-1 before b") {
  Group f2(GroupSpec::free(2));
  const auto gens = f2.symmetric_generators();
  std::vector<std::string> printed;
  for (const auto& g : gens) printed.push_back(f2.format(g));
  CHECK(printed == std::vector<std::string>{"a", "a^-1", "b", "b^-1"});
}

TEST_CASE("bounded semigroup generation check") {
  Group f2(GroupSpec::free(2));
  auto ok = verify_semigroup_generation(parse_subset(f2, "a, b, a^-1 b^-1"), 4);
  CHECK(ok.verified);
  auto positive = verify_semigroup_generation(parse_subset(f2, "a, b"), 5);
  CHECK_FALSE(positive.verified);
  CHECK(positive.missing_inverses.size() == 2);
  Group z2z3(GroupSpec::free_product({2, 3}));
  CHECK(verify_semigroup_generation(parse_subset(z2z3, "s, t"), 3).verified);
}
