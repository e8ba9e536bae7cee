#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "psg/error.hpp"
#include "psg/schreier.hpp"
#include "support.hpp"

using namespace psg;
using psg::testing::random_element;

namespace {

// Image computed letter by letter from the cycle data, independent of FiniteQuotient::image.
Permutation naive_image(const Group& g, const std::vector<Permutation>& images, const GroupElement& x) {
  const std::size_t n = images.front().size();
  Permutation r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<int>(i);
  for (const auto& l : g.letters(x)) {
    for (int k = 0; k < std::abs(l.exponent); ++k) {
      const auto& p = images[l.generator];
      Permutation step(n);
      if (l.exponent > 0) {
        step = p;
      } else {
        for (std::size_t i = 0; i < n; ++i) step[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
      }
      Permutation next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = r[static_cast<std::size_t>(step[i])];
      r = next;
    }
  }
  return r;
}

// Label of the coset gH, computed from the naive image.
std::vector<int> naive_coset(const Group& g, const std::vector<Permutation>& images, const SubgroupDesignator& h,
                             const GroupElement& x) {
  const auto p = naive_image(g, images, x);
  if (h.kind == SubgroupDesignator::Kind::Kernel) return p;
  return {p[static_cast<std::size_t>(h.point)]};
}

Permutation random_permutation(SplitMix64& rng, int degree) {
  Permutation p(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) p[static_cast<std::size_t>(i)] = i;
  for (int i = degree - 1; i > 0; --i)
    std::swap(p[static_cast<std::size_t>(i)], p[rng.below(static_cast<std::uint64_t>(i + 1))]);
  return p;
}

GrowthSeries series_of(std::size_t u_size, std::vector<std::uint64_t> exact) {
  GrowthSeries s;
  s.u_size = u_size;
  exact.insert(exact.begin(), 1);
  s.exact = exact;
  s.n_max = s.completed = static_cast<int>(exact.size()) - 1;
  std::uint64_t total = 0;
  for (auto c : exact) s.cumulative.push_back(total += c);
  return s;
}

std::set<std::string> keys(const std::vector<GroupElement>& w) {
  std::set<std::string> out;
  for (const auto& x : w) out.insert(element_key(x));
  return out;
}

void check_result(const SchreierResult& r, const MarkedSubset& u, const CosetStructure& ch) {
  CHECK(r.containment);
  CHECK(r.size_ok);
  CHECK(r.in_subgroup);
  CHECK(r.generation.verified);
  CHECK(r.generation.depth >= 1);
  CHECK(static_cast<long>(r.longest_word) <= r.exponent_bound);
  CHECK(boost::rational<long>(static_cast<long>(r.w.size())) >= r.size_bound);
  for (std::size_t i = 0; i < r.w.size(); ++i) {
    std::vector<GroupElement> f;
    for (auto l : r.w_words[i]) f.push_back(u.elements()[l]);
    CHECK(u.group().product(f) == r.w[i]);
    CHECK(ch.in_subgroup(r.w[i]));
  }
  if (u.group().kind() == GroupSpec::Kind::Free) CHECK(r.generation.folded == std::optional<bool>(true));
}

}  // namespace

TEST_CASE("finite quotients check relators and compose as homomorphisms") {
  Group f2(GroupSpec::free(2));
  const auto q = FiniteQuotient::parse(f2, 3, "a=(1 2 3), b=(1 2)");
  CHECK(q.describe() == "a=(1 2 3), b=(1 2)");
  SplitMix64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto x = random_element(f2, rng, 8), y = random_element(f2, rng, 8);
    CHECK(q.image(f2.multiply(x, y)) == compose(q.image(x), q.image(y)));
    CHECK(q.image(x) == naive_image(f2, q.images(), x));
  }

  Group z23(GroupSpec::free_product({2, 3}));
  CHECK_NOTHROW(FiniteQuotient::parse(z23, 3, "s=(1 2), t=(1 2 3)"));
  CHECK_THROWS_AS(FiniteQuotient::parse(z23, 3, "s=(1 2 3), t=(1 2 3)"), PreconditionError);
  CHECK_THROWS_AS(FiniteQuotient::parse(z23, 3, "s=(1 2)"), PreconditionError);
  CHECK_THROWS_AS(FiniteQuotient::parse(f2, 3, "a=(1 2), c=()"), PreconditionError);

  Group f1xf1(GroupSpec::direct({GroupSpec::free(1), GroupSpec::free(1)}));
  CHECK_THROWS_AS(FiniteQuotient(f1xf1, 3, {{1, 0, 2}, {0, 2, 1}}), PreconditionError);
  CHECK_NOTHROW(FiniteQuotient(f1xf1, 4, {{1, 0, 2, 3}, {0, 1, 3, 2}}));
}

TEST_CASE("coset structure examples") {
  Group f2(GroupSpec::free(2));
  const MarkedSubset sym(f2, f2.symmetric_generators());
  const MarkedSubset ab = parse_subset(f2, "a, b, b^-1 a^-1");

  SUBCASE("kernel of a -> (1 2), b -> id") {
    const auto c = coset_structure(ab, FiniteQuotient::parse(f2, 2, "a=(1 2), b=()"), SubgroupDesignator::kernel());
    CHECK(c.index() == 2);
    CHECK(c.normal());
    CHECK(f2.format(c.transversal()[0]) == "1");
    CHECK(f2.format(c.transversal()[1]) == "a");
  }
  SUBCASE("stabilizer in S3") {
    const auto q = FiniteQuotient::parse(f2, 3, "a=(1 2 3), b=(1 2)");
    const auto c = coset_structure(ab, q, SubgroupDesignator::stabilizer(0));
    CHECK(c.index() == 3);
    CHECK_FALSE(c.normal());
    CHECK(c.image_order() == 6);
    for (const auto& w : c.words()) CHECK(w.size() <= 2);
  }
  SUBCASE("trivial quotient") {
    const auto c = coset_structure(sym, FiniteQuotient::parse(f2, 1, "a=(), b=()"), SubgroupDesignator::kernel());
    CHECK(c.index() == 1);
    CHECK(f2.is_identity(c.transversal()[0]));
  }
  SUBCASE("U must generate at the quotient") {
    const MarkedSubset a_only(f2, {f2.parse_word("a"), f2.parse_word("b")});
    // The semigroup generated by a, b maps onto the group generated by their images.
    CHECK_NOTHROW(coset_structure(a_only, FiniteQuotient::parse(f2, 3, "a=(1 2 3), b=(1 2)"),
                                  SubgroupDesignator::kernel()));
    const MarkedSubset b_only(f2, {f2.parse_word("b")});
    CHECK_THROWS_AS(coset_structure(b_only, FiniteQuotient::parse(f2, 3, "a=(1 2 3), b=(1 2)"),
                                    SubgroupDesignator::kernel()),
                    PreconditionError);
  }
}

TEST_CASE("transversal is directed-length minimal and phi is a retraction") {
  Group f2(GroupSpec::free(2));
  SplitMix64 rng(23);
  const std::vector<MarkedSubset> subsets{MarkedSubset(f2, f2.symmetric_generators()),
                                          parse_subset(f2, "a, b, b^-1 a^-1"),
                                          parse_subset(f2, "a b, b, a^-1 b^-1, b^-1 a")};
  int built = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int degree = static_cast<int>(rng.between(2, 4));
    const std::vector<Permutation> images{random_permutation(rng, degree), random_permutation(rng, degree)};
    const FiniteQuotient q(f2, degree, images);
    const auto h = rng.below(2) ? SubgroupDesignator::kernel()
                                : SubgroupDesignator::stabilizer(static_cast<int>(rng.below(degree)));
    const auto& u = subsets[rng.below(subsets.size())];
    std::optional<CosetStructure> c;
    try {
      c.emplace(coset_structure(u, q, h));
    } catch (const PreconditionError&) {
      continue;
    }
    ++built;
    // Oracle: minimal directed length of each coset, over balls up to the longest recorded word.
    std::size_t depth = 0;
    for (const auto& w : c->words()) depth = std::max(depth, w.size());
    std::map<std::vector<int>, std::size_t> best;
    for (std::size_t k = 0; k <= depth; ++k) {
      for (const auto& x : semigroup_ball(u, static_cast<int>(k))) best.emplace(naive_coset(f2, images, h, x), k);
    }
    CHECK(best.size() == c->index());
    for (std::size_t i = 0; i < c->index(); ++i) {
      CHECK(c->words()[i].size() == best.at(naive_coset(f2, images, h, c->transversal()[i])));
      CHECK(c->words()[i].size() + 1 <= c->index());
    }
    for (int s = 0; s < 30; ++s) {
      const auto g = random_element(f2, rng, 8);
      const auto& a = c->phi(g);
      CHECK(c->phi(a) == a);
      CHECK(c->in_subgroup(f2.multiply(f2.inverse(a), g)));
      CHECK(c->phi(f2.multiply(a, f2.power(g, 0))) == a);
    }
  }
  CHECK(built > 20);
}

TEST_CASE("stallings folding index") {
  Group f2(GroupSpec::free(2));
  auto w = [&](std::initializer_list<const char*> words) {
    std::vector<GroupElement> out;
    for (auto s : words) out.push_back(f2.parse_word(s));
    return out;
  };
  CHECK(folded_index(f2, w({"a", "b"})) == 1);
  CHECK(folded_index(f2, w({"a"})) == 0);
  CHECK(folded_index(f2, w({"a^2", "b", "a b a^-1"})) == 2);
  CHECK(folded_index(f2, w({"a^3", "b", "a b a^-1", "a^2 b a^-2"})) == 3);
  CHECK(folded_index(f2, w({"a^2", "b^2", "a b", "b a"})) == 2);
  CHECK(folded_index(f2, w({"a^2", "b^2", "a b"})) == 2);
  CHECK(folded_index(f2, w({"a^2", "b^2"})) == 0);
  CHECK(folded_index(f2, w({"1"})) == 0);
  Group z23(GroupSpec::free_product({2, 3}));
  CHECK_THROWS_AS(folded_index(z23, {}), PreconditionError);
}

TEST_CASE("normal Schreier generators") {
  Group f2(GroupSpec::free(2));
  const MarkedSubset sym(f2, f2.symmetric_generators());

  SUBCASE("kernel of a -> (1 2)") {
    const auto q = FiniteQuotient::parse(f2, 2, "a=(1 2), b=()");
    const auto c = coset_structure(sym, q, SubgroupDesignator::kernel());
    const auto r = schreier_generators_normal(sym, c, 4);
    check_result(r, sym, c);
    CHECK(r.exponent_bound == 3);
    CHECK(r.size_bound == boost::rational<long>(2));
    CHECK(r.generation.depth == 4);
    CHECK(r.generation.checked > 0);
    const auto k = keys(r.w);
    for (auto s : {"1", "a^2", "b", "b^-1", "a b a", "a b^-1 a"}) CHECK(k.count(element_key(f2.parse_word(s))) == 1);
  }
  SUBCASE("d = 1 gives U and the identity") {
    const auto c = coset_structure(sym, FiniteQuotient::parse(f2, 1, "a=(), b=()"), SubgroupDesignator::kernel());
    const auto r = schreier_generators_normal(sym, c);
    check_result(r, sym, c);
    auto expected = sym.elements();
    expected.push_back(f2.identity());
    CHECK(keys(r.w) == keys(expected));
    CHECK(r.exponent_bound == 1);
  }
  SUBCASE("non-normal subgroup is rejected") {
    const auto c = coset_structure(sym, FiniteQuotient::parse(f2, 3, "a=(1 2 3), b=(1 2)"),
                                   SubgroupDesignator::stabilizer(0));
    CHECK_THROWS_AS(schreier_generators_normal(sym, c), PreconditionError);
  }
  SUBCASE("free product source") {
    Group z23(GroupSpec::free_product({2, 3}));
    const MarkedSubset st = parse_subset(z23, "s, t");
    const auto c = coset_structure(st, FiniteQuotient::parse(z23, 3, "s=(1 2), t=(1 2 3)"), SubgroupDesignator::kernel());
    CHECK(c.index() == 6);
    const auto r = schreier_generators_normal(st, c);
    check_result(r, st, c);
    CHECK(r.exponent_bound == 31);
  }
}

TEST_CASE("general Schreier generators") {
  Group f2(GroupSpec::free(2));
  const MarkedSubset sym(f2, f2.symmetric_generators());
  const MarkedSubset ab = parse_subset(f2, "a, b, b^-1 a^-1");

  SUBCASE("index 3, not normal") {
    const auto q = FiniteQuotient::parse(f2, 3, "a=(1 2 3), b=(1 2)");
    const auto h = SubgroupDesignator::stabilizer(0);
    const auto r = schreier_generators(ab, q, h);
    check_result(r, ab, coset_structure(ab, q, h));
    CHECK(r.index == 3);
    CHECK_FALSE(r.normal);
    CHECK(r.exponent_bound == 31);
    CHECK(r.core_index == 6);
    CHECK(r.core_bound == 31);
    CHECK(r.longest_word < 31);
    CHECK(r.transversal_in_h.size() == 2);
    CHECK(r.size_bound == boost::rational<long>(1, 2));
  }
  SUBCASE("normal subgroup agrees with the normal construction") {
    for (const char* spec : {"a=(1 2), b=()", "a=(1 2 3), b=(1 3 2)", "a=(1 2)(3 4), b=(1 3)(2 4)"}) {
      const int degree = std::string(spec).find('4') != std::string::npos ? 4 : 3;
      const auto q = FiniteQuotient::parse(f2, degree, spec);
      for (const auto h : {SubgroupDesignator::kernel(), SubgroupDesignator::stabilizer(0)}) {
        const auto c = coset_structure(sym, q, h);
        REQUIRE(c.normal());
        const auto general = schreier_generators(sym, q, h);
        const auto normal = schreier_generators_normal(sym, c);
        CHECK(keys(general.w) == keys(normal.w));
        CHECK(general.core_index == c.index());
        CHECK(general.exponent_bound >= normal.exponent_bound);
      }
    }
  }
  SUBCASE("H = G") {
    const auto q = FiniteQuotient::parse(f2, 2, "a=(), b=()");
    const auto r = schreier_generators(ab, q, SubgroupDesignator::stabilizer(0));
    const auto k = keys(r.w);
    for (const auto& x : ab.elements()) CHECK(k.count(element_key(x)) == 1);
  }
  SUBCASE("seeded quotients") {
    SplitMix64 rng(97);
    int done = 0;
    for (int trial = 0; trial < 40; ++trial) {
      const int degree = static_cast<int>(rng.between(2, 4));
      const FiniteQuotient q(f2, degree, {random_permutation(rng, degree), random_permutation(rng, degree)});
      const auto h = SubgroupDesignator::stabilizer(static_cast<int>(rng.below(degree)));
      const auto& u = rng.below(2) ? sym : ab;
      const auto r = schreier_generators(u, q, h, 6);
      check_result(r, u, coset_structure(u, q, h));
      std::size_t df = 1;
      for (std::size_t i = 2; i <= r.index; ++i) df *= i;
      CHECK(r.core_index <= df);
      CHECK(r.size_bound == boost::rational<long>(static_cast<long>(u.size()), static_cast<long>(df)));
      CHECK(r.longest_word <= static_cast<std::size_t>(r.core_bound));
      ++done;
    }
    CHECK(done == 40);
  }
}

TEST_CASE("verification depth") {
  Group f2(GroupSpec::free(2));
  const MarkedSubset sym(f2, f2.symmetric_generators());
  // |S^{<=L}| = 2 3^L - 1: 4373 at L = 7, 13121 at L = 8.
  CHECK(verification_depth(sym, 20, 5000) == 7);
  CHECK(verification_depth(sym, 5, 5000) == 5);
  const MarkedSubset a(f2, {f2.parse_word("a")});
  CHECK(verification_depth(a, 50, 20) == 19);
}

TEST_CASE("chain arithmetic") {
  SUBCASE("free semigroup counts satisfy the chained bound") {
    std::vector<std::uint64_t> c;
    for (int n = 1; n <= 12; ++n) c.push_back(std::uint64_t{1} << n);
    const auto s = series_of(2, c);
    for (int d = 1; d <= 4; ++d) {
      const auto v = chain_psg_bound(s, d, 1, 1);
      CHECK(v.satisfied);
      CHECK(v.rows.size() == 12);
    }
    CHECK(chain_psg_bound(s, 2, 1, 1).r == 3);
    CHECK(chain_psg_bound(s, 3, 1, 1).r == 31);
  }
  SUBCASE("trivial counts violate once alpha |U| > 1") {
    const auto s = series_of(2, std::vector<std::uint64_t>(8, 1));
    const auto v = chain_psg_bound(s, 1, 2, 1);
    CHECK_FALSE(v.satisfied);
    CHECK(v.first_violation == std::optional<int>(1));
  }
  SUBCASE("exact at equality") {
    std::vector<std::uint64_t> c;
    for (int n = 1; n <= 10; ++n) c.push_back(std::uint64_t{1} << n);
    const auto s = series_of(2, c);
    // d = 1, r = 1: bound is (2 * 2)^n / 2^n = 2^n, met with equality.
    CHECK(chain_psg_bound(s, 1, 2, 1).satisfied);
    CHECK(chain_psg_bound(s, 1, boost::rational<long>(2001, 1000), 1).first_violation == std::optional<int>(1));
    CHECK(quotient_psg_bound(s, 2, 2, 1).satisfied);
    CHECK(quotient_psg_bound(s, 2, boost::rational<long>(2001, 1000), 1).first_violation == std::optional<int>(1));
    CHECK(quotient_psg_bound(s, 1, 1, 1).satisfied);
  }
  SUBCASE("symmetric F2 counts at (1/8, 1/4), d = 2") {
    // |S^n| counts reduced words of length <= n with the parity of n.
    std::vector<std::uint64_t> c;
    for (int n = 1; n <= 10; ++n) {
      std::uint64_t total = 0, sphere = 1;
      for (int k = 0; k <= n; ++k) {
        if (k > 0) sphere = k == 1 ? 4 : sphere * 3;
        if ((n - k) % 2 == 0) total += sphere;
      }
      c.push_back(total);
    }
    CHECK(c[1] == 13);
    const auto s = series_of(4, c);
    const auto v = chain_psg_bound(s, 2, boost::rational<long>(1, 8), boost::rational<long>(1, 4));
    CHECK(v.satisfied);
    CHECK(v.rows.front().bound < 1);
    const auto vq = quotient_psg_bound(s, 2, boost::rational<long>(1, 8), boost::rational<long>(1, 4));
    CHECK(vq.satisfied);
    // Largest alpha with beta = 1 met by |S^1| = 4: alpha |U| / 2 <= 4 at the quotient.
    CHECK(quotient_psg_bound(s, 2, 2, 1).rows.front().satisfied);
    CHECK_FALSE(quotient_psg_bound(s, 2, boost::rational<long>(21, 10), 1).rows.front().satisfied);
  }
}
