#include <doctest.h>

#include <cctype>
#include <cmath>
#include <set>

#include "psg/error.hpp"
#include "psg/growth.hpp"
#include "psg/loxodromic.hpp"
#include "support.hpp"

using namespace psg;
using psg::testing::beds;
using psg::testing::naive_reduce;
using psg::testing::random_element;
using psg::testing::random_subset;
using Q = boost::rational<long>;

namespace {

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

// F2 words over a, A, b, B as strings.
std::string inverse_word(const std::string& w) {
  std::string r(w.rbegin(), w.rend());
  for (auto& ch : r) ch = std::islower(ch) ? static_cast<char>(std::toupper(ch)) : static_cast<char>(std::tolower(ch));
  return r;
}

}  // namespace

TEST_CASE("free rank verification") {
  Group f2(GroupSpec::free(2));
  const auto a = f2.parse_word("a"), b = f2.parse_word("b");
  const auto ok = free_rank_verify(f2, {a, b}, 10);
  CHECK(ok.free);
  CHECK(ok.words == 2047);
  CHECK_FALSE(ok.collision);

  const auto bad = free_rank_verify(f2, {a, f2.parse_word("a^2")}, 2);
  CHECK_FALSE(bad.free);
  REQUIRE(bad.collision);
  CHECK(bad.collision->first != bad.collision->second);

  CHECK_THROWS_AS(free_rank_verify(f2, {}, 3), PreconditionError);
  CHECK_THROWS_AS(free_rank_verify(f2, {f2.identity()}, 3), PreconditionError);
  CHECK_THROWS_AS(free_rank_verify(f2, {a, b}, 30, 1000), ResourceLimitError);

  const auto tree = TreeAction::standard(f2);
  const auto cert = build_free_base(MarkedSubset(f2, f2.symmetric_generators()), tree, 6);
  CHECK(cert.base.size() == 4);
  CHECK(free_rank_verify(f2, cert.base, 6).free);
}

TEST_CASE("product set counts, examples") {
  Group f2(GroupSpec::free(2));
  SUBCASE("positive words") {
    const auto s = product_set_counts(parse_subset(f2, "a, b"), 12);
    for (int n = 0; n <= 12; ++n) CHECK(s.exact[static_cast<std::size_t>(n)] == (std::uint64_t{1} << n));
    CHECK(s.cumulative[12] == (std::uint64_t{1} << 13) - 1);
    CHECK_FALSE(s.truncated);
  }
  SUBCASE("symmetric generators") {
    const auto s = product_set_counts(MarkedSubset(f2, f2.symmetric_generators()), 6);
    CHECK(s.exact[1] == 4);
    CHECK(s.exact[2] == 13);
    std::uint64_t p = 1;
    for (int n = 0; n <= 6; ++n, p *= 3) CHECK(s.cumulative[static_cast<std::size_t>(n)] == 2 * p - 1);
  }
  SUBCASE("an involution") {
    Group z23(GroupSpec::free_product({2, 3}));
    const auto s = product_set_counts(parse_subset(z23, "s"), 9);
    for (int n = 1; n <= 9; ++n) CHECK(s.exact[static_cast<std::size_t>(n)] == 1);
    CHECK(s.cumulative[9] == 2);
  }
  SUBCASE("truncation") {
    GrowthOptions o;
    o.cap_elements = 100;
    const auto s = product_set_counts(MarkedSubset(f2, f2.symmetric_generators()), 10, o);
    CHECK(s.truncated);
    CHECK(s.completed == 3);
    CHECK(s.exact.size() == 4);
  }
  CHECK_THROWS_AS(product_set_counts(parse_subset(f2, "a"), 0), PreconditionError);
}

TEST_CASE("product set counts agree with naive enumeration under any thread count") {
  SplitMix64 rng(5);
  for (const auto& bed : beds()) {
    for (int trial = 0; trial < 12; ++trial) {
      const auto u = random_subset(bed.group, rng, 4, 3);
      const auto naive = naive_product_set_counts(u, 6);
      for (unsigned threads : {1u, 3u, 8u}) {
        GrowthOptions o;
        o.threads = threads;
        const auto s = product_set_counts(u, 6, o);
        CHECK(s.exact == naive.exact);
        CHECK(s.cumulative == naive.cumulative);
        CHECK(s.frontier == naive.frontier);
      }
    }
  }
}

TEST_CASE("growth series invariants") {
  SplitMix64 rng(17);
  for (const auto& bed : beds()) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto u = random_subset(bed.group, rng, 4, 3);
      const auto s = product_set_counts(u, 7);
      for (int n = 1; n <= s.completed; ++n) {
        CHECK(s.exact[static_cast<std::size_t>(n)] >= s.exact[static_cast<std::size_t>(n - 1)]);
        CHECK(s.cumulative[static_cast<std::size_t>(n)] ==
              s.cumulative[static_cast<std::size_t>(n - 1)] + s.frontier[static_cast<std::size_t>(n)]);
        for (int m = 1; n + m <= s.completed; ++m)
          CHECK(s.cumulative[static_cast<std::size_t>(n + m)] <=
                s.cumulative[static_cast<std::size_t>(n)] * s.cumulative[static_cast<std::size_t>(m)]);
      }
      // Conjugation invariance.
      const auto g = random_element(bed.group, rng, 4);
      std::vector<GroupElement> conj;
      for (const auto& x : u.elements()) conj.push_back(bed.group.conjugate(x, g));
      const auto c = product_set_counts(MarkedSubset(bed.group, conj), 7);
      CHECK(c.exact == s.exact);
      CHECK(c.cumulative == s.cumulative);
    }
  }
}

TEST_CASE("commutator sets") {
  Group f2(GroupSpec::free(2));
  const MarkedSubset sym(f2, f2.symmetric_generators());

  SUBCASE("agrees with string-level enumeration") {
    for (int n = 1; n <= 3; ++n) {
      // Oracle: all reduced words of length <= n over a, A, b, B.
      std::vector<std::string> ball{""};
      for (int k = 1; k <= n; ++k) {
        std::vector<std::string> next;
        for (const auto& w : ball)
          if (static_cast<int>(w.size()) == k - 1)
            for (char c : std::string("aAbB")) {
              const auto x = naive_reduce(w + c);
              if (static_cast<int>(x.size()) == k) next.push_back(x);
            }
        ball.insert(ball.end(), next.begin(), next.end());
      }
      std::set<std::string> comms;
      for (const auto& h : ball)
        for (const auto& k : ball) comms.insert(naive_reduce(h + k + inverse_word(h) + inverse_word(k)));
      const auto c = commutator_set(parse_subset(f2, "a, b"), n);
      CHECK(c.ball == ball.size());
      CHECK(c.size == comms.size());
      CHECK(c.meets(Q(1, 2)));
      CHECK(c.meets(Q(1)));
      CHECK_FALSE(c.truncated);
    }
  }
  SUBCASE("n = 1 contains [a, b]") {
    const auto c = commutator_set(sym, 1);
    CHECK(c.ball == 5);
    REQUIRE_FALSE(c.witnesses.empty());
    CHECK(f2.is_identity(c.witnesses.front().commutator));
    bool found = false;
    for (auto& w : commutator_set(sym, 1, {}, 100).witnesses) {
      CHECK(f2.commutator(w.h, w.k) == w.commutator);
      found = found || w.commutator == f2.parse_word("a b a^-1 b^-1");
    }
    CHECK(found);
  }
  SUBCASE("abelian testbed") {
    Group z(GroupSpec::free(1));
    for (int n = 1; n <= 5; ++n) {
      const auto c = commutator_set(parse_subset(z, "a"), n);
      CHECK(c.size == 1);
      CHECK(c.meets(Q(1, 2)) == (n <= 2));
    }
  }
  SUBCASE("growth in n is nondecreasing and at least n/2") {
    std::size_t last = 0;
    for (int n = 1; n <= 5; ++n) {
      const auto c = commutator_set(sym, n);
      CHECK(c.size >= last);
      CHECK(c.meets(Q(1, 2)));
      last = c.size;
    }
  }
  SUBCASE("thread count does not change the result") {
    const auto one = commutator_set(sym, 3, {1});
    GrowthOptions o;
    o.threads = 5;
    const auto five = commutator_set(sym, 3, o);
    CHECK(one.size == five.size);
    REQUIRE(one.witnesses.size() == five.witnesses.size());
    for (std::size_t i = 0; i < one.witnesses.size(); ++i) {
      CHECK(one.witnesses[i].commutator == five.witnesses[i].commutator);
      CHECK(one.witnesses[i].h == five.witnesses[i].h);
      CHECK(one.witnesses[i].k == five.witnesses[i].k);
    }
  }
  SUBCASE("cap marks a partial result") {
    GrowthOptions o;
    o.cap_elements = 20;
    const auto c = commutator_set(sym, 4, o);
    CHECK(c.truncated);
    CHECK(c.ball == 20);
  }
}

TEST_CASE("psg inequality check") {
  std::vector<std::uint64_t> pow2;
  for (int n = 1; n <= 12; ++n) pow2.push_back(std::uint64_t{1} << n);
  SUBCASE("free semigroup meets (1, 1)") {
    const auto f = psg_check(series_of(2, pow2), 1, 1);
    CHECK(f.satisfied);
    CHECK(f.satisfied_through == 12);
    REQUIRE(f.max_beta);
    CHECK(*f.max_beta == doctest::Approx(1.0));
  }
  SUBCASE("trivial counts fail at n = 1") {
    const auto f = psg_check(series_of(2, std::vector<std::uint64_t>(6, 1)), 1, 1);
    CHECK_FALSE(f.satisfied);
    CHECK(f.satisfied_through == 0);
    CHECK_FALSE(f.rows.front().satisfied);
  }
  SUBCASE("exact at equality") {
    CHECK(psg_check(series_of(2, pow2), Q(1), Q(1)).satisfied);
    CHECK_FALSE(psg_check(series_of(2, pow2), Q(1001, 1000), Q(1)).satisfied);
    CHECK_FALSE(psg_check(series_of(2, pow2), Q(1), Q(1001, 1000)).satisfied);
    // alpha |U| <= 1: the bound is at most 1.
    const auto f = psg_check(series_of(2, std::vector<std::uint64_t>(6, 1)), Q(1, 2), Q(3));
    CHECK(f.satisfied);
    CHECK_FALSE(f.max_beta);
  }
  SUBCASE("symmetric F2 at (1/4, 1/2)") {
    Group f2(GroupSpec::free(2));
    const auto s = product_set_counts(MarkedSubset(f2, f2.symmetric_generators()), 10);
    const auto f = psg_check(s, Q(1, 4), Q(1, 2));
    CHECK(f.satisfied);  // (1/4 * 4)^{n/2} = 1
    const auto g = psg_check(s, Q(3, 4), Q(1));
    CHECK(g.satisfied);  // 3^n <= |S^n|
    const auto h = psg_check(s, Q(1), Q(1));
    CHECK_FALSE(h.satisfied);
    CHECK(h.satisfied_through == 1);  // |S| = 4 meets 4^1, |S^2| = 13 < 16
    CHECK(h.rows[0].satisfied);
    const auto again = psg_check(s, Q(1, 4), Q(1, 2));
    CHECK(again.omega == f.omega);
  }
  CHECK_THROWS_AS(psg_check(series_of(2, pow2), 0, 1), PreconditionError);
}

TEST_CASE("growth rate estimates") {
  Group f2(GroupSpec::free(2));
  const auto positive = growth_rate(product_set_counts(parse_subset(f2, "a, b"), 12));
  for (std::size_t i = 0; i < positive.size(); ++i) {
    // (2^{n+1} - 1)^{1/n} decreases to 2.
    CHECK(positive[i].estimate > 2.0);
    if (i) CHECK(positive[i].estimate < positive[i - 1].estimate);
    CHECK(positive[i].envelope == positive[i].estimate);
  }
  const auto sym = growth_rate(product_set_counts(MarkedSubset(f2, f2.symmetric_generators()), 10));
  for (std::size_t i = 0; i < sym.size(); ++i) {
    const int n = sym[i].n;
    CHECK(sym[i].estimate == doctest::Approx(std::pow(2 * std::pow(3.0, n) - 1, 1.0 / n)));
    CHECK(sym[i].estimate > 3.0);
  }
  Group z23(GroupSpec::free_product({2, 3}));
  for (const auto& r : growth_rate(product_set_counts(parse_subset(z23, "s"), 8)))
    CHECK(r.estimate == doctest::Approx(std::pow(2.0, 1.0 / r.n)));
  CHECK_THROWS_AS(growth_rate(GrowthSeries{}), PreconditionError);
}
