#include <doctest.h>

#include "psg/displacement.hpp"
#include "psg/error.hpp"
#include "support.hpp"

using namespace psg;
using psg::testing::random_element;

using psg::testing::Bed;
using psg::testing::beds;
using psg::testing::random_subset;

TEST_CASE("displacement at a point") {
  Group f2(GroupSpec::free(2));
  auto tree = TreeAction::cayley(f2);
  CHECK(displacement(parse_subset(f2, "a, b"), tree, tree.base()) == 1);
  CHECK(displacement(parse_subset(f2, "1"), tree, tree.parse_vertex("a b")) == 0);

  Group f2f2(GroupSpec::direct({GroupSpec::free(2), GroupSpec::free(2)}));
  auto p = ProductAction::standard(f2f2);
  auto r = displacement_at(parse_subset(f2f2, "(a1, 1), (1, b2)"), p, p.base());
  CHECK(r.value == 1);
  CHECK(r.per_factor == std::vector<long>{1, 1});
  auto both = displacement_at(parse_subset(f2f2, "(a1, b2)"), p, p.base());
  CHECK(both.value == 2);
}

TEST_CASE("minimal displacement examples") {
  Group f2(GroupSpec::free(2));
  auto tree = TreeAction::cayley(f2);
  auto m = min_displacement(parse_subset(f2, "a, b"), tree);
  CHECK(m.value == 1);
  CHECK(tree.format(m.vertex) == "1");
  // Brute force over the radius-3 ball.
  long brute = 100;
  for (const auto& v : tree.ball(tree.base(), 3)) brute = std::min(brute, displacement(parse_subset(f2, "a, b"), tree, v));
  CHECK(brute == 1);

  Group z(GroupSpec::free_product({2, 3}));
  auto bs = TreeAction::bass_serre(z);
  const auto st = parse_subset(z, "s, t");
  auto ms = min_displacement(st, bs);
  CHECK(ms.value == 2);
  long brute_bs = 100;
  for (const auto& v : bs.ball(bs.base(), 4)) brute_bs = std::min(brute_bs, displacement(st, bs, v));
  CHECK(brute_bs == 2);
  // Both fixed vertices attain it.
  CHECK(displacement(st, bs, bs.parse_vertex("<s>")) == 2);
  CHECK(displacement(st, bs, bs.parse_vertex("<t>")) == 2);
  auto metric = min_displacement_metric(st, bs);
  CHECK(metric.value4 == 4);  // 1 on the subdivided tree, at the midpoint of the edge
  CHECK(metric.point.q == 2);

  auto single = min_displacement(parse_subset(z, "s"), bs);
  CHECK(single.value == 0);
  CHECK(bs.act(z.parse_word("s"), single.vertex) == single.vertex);
}

TEST_CASE("descent agrees with exhaustive ball search") {
  SplitMix64 rng(2);
  for (const auto& b : beds()) {
    INFO(b.name);
    for (int i = 0; i < 120; ++i) {
      const auto s = random_subset(b.group, rng, 5, 3);
      const auto start = b.tree.act(random_element(b.group, rng, 2), b.tree.base());
      const auto d = min_displacement(s, b.tree, start);
      const auto e = min_displacement_exhaustive(s, b.tree, start);
      CHECK(d.value == e.value);
      CHECK(displacement(s, b.tree, d.vertex) == d.value);
    }
  }
}

TEST_CASE("metric minimum is at most the vertex minimum and matches a quarter-point scan") {
  SplitMix64 rng(4);
  for (const auto& b : beds()) {
    INFO(b.name);
    for (int i = 0; i < 40; ++i) {
      const auto s = random_subset(b.group, rng, 4, 4);
      const auto v = min_displacement(s, b.tree);
      const auto m = min_displacement_metric(s, b.tree);
      CHECK(m.value4 <= 4 * v.value);
      long brute = -1;
      for (const auto& p : b.tree.metric_ball(v.vertex, 3)) {
        const long f = displacement4(s, b.tree, p);
        if (brute < 0 || f < brute) brute = f;
      }
      CHECK(brute == m.value4);
    }
  }
}

TEST_CASE("conjugacy invariance and monotonicity") {
  SplitMix64 rng(6);
  for (const auto& b : beds()) {
    for (int i = 0; i < 80; ++i) {
      const auto s = random_subset(b.group, rng, 4, 5);
      const auto g = random_element(b.group, rng, 5);
      std::vector<GroupElement> conj;
      for (const auto& x : s.elements()) conj.push_back(b.group.conjugate(x, g));
      CHECK(min_displacement(MarkedSubset(b.group, conj), b.tree).value == min_displacement(s, b.tree).value);
      auto bigger = s.elements();
      bigger.push_back(random_element(b.group, rng, 5));
      const auto v = b.tree.act(random_element(b.group, rng, 3), b.tree.base());
      CHECK(displacement(s, b.tree, v) <= displacement(MarkedSubset(b.group, bigger), b.tree, v));
    }
  }
}

TEST_CASE("quasi-center examples") {
  Group f2(GroupSpec::free(2));
  auto tree = TreeAction::cayley(f2);
  const auto s = parse_subset(f2, "a, b");
  auto qc = quasi_center(s, tree.base(), tree.base(), tree);
  CHECK(qc.lambda_z <= 6 * qc.lambda_x);
  auto far = quasi_center(s, tree.base(), tree.parse_vertex("a b a b"), tree);
  CHECK(far.lambda_x == 9);
  CHECK(far.within_bound());
  CHECK(far.lambda_z == 1);

  const auto g = parse_subset(f2, "b a^3 b^-1");
  auto single = quasi_center(g, tree.parse_vertex("a^2"), tree.parse_vertex("b a"), tree);
  CHECK(single.within_bound());
}

TEST_CASE("quasi-center suite") {
  SplitMix64 rng(2718);
  for (const auto& b : beds()) {
    INFO(b.name);
    for (int i = 0; i < 200; ++i) {
      const auto s = random_subset(b.group, rng, 4, 6);
      const auto o = b.tree.act(random_element(b.group, rng, 4), b.tree.base());
      const auto x = b.tree.act(random_element(b.group, rng, 4), b.tree.base());
      const auto qc = quasi_center(s, o, x, b.tree);
      const auto to = b.tree.act(qc.t, o);
      CHECK(b.tree.dist(o, qc.z) + b.tree.dist(qc.z, to) == b.tree.dist(o, to));
      CHECK(qc.lambda_z <= 6 * qc.lambda_x + 3);
      CHECK(b.tree.dist(x, qc.y_hat) + b.tree.dist(qc.y_hat, o) == b.tree.dist(x, o));
      long brute = -1;
      for (const auto& u : s.elements())
        for (const auto& v : b.tree.geodesic(o, b.tree.act(u, o))) {
          const long f = displacement(s, b.tree, v);
          if (brute < 0 || f < brute) brute = f;
        }
      CHECK(brute <= qc.lambda_z);
      CHECK(brute <= 6 * qc.lambda_x + 3);
    }
  }
}

TEST_CASE("coarse density of the testbed orbits") {
  Group f2(GroupSpec::free(2));
  CHECK(coarse_density(TreeAction::cayley(f2), TreeAction::cayley(f2).base()) == 0);
  Group z(GroupSpec::free_product({2, 3}));
  CHECK(coarse_density(TreeAction::bass_serre(z), TreeAction::bass_serre(z).base()) == 1);
  Group z3(GroupSpec::free_product({2, 2, 3}));
  CHECK(coarse_density(TreeAction::bass_serre(z3), TreeAction::bass_serre(z3).base()) == 2);
}

TEST_CASE("conjugation reduction") {
  Group f2(GroupSpec::free(2));
  auto single = ProductAction::standard(f2);
  auto centered = conjugate_reduce(parse_subset(f2, "a, b"), single);
  CHECK(f2.is_identity(centered.g));
  CHECK(centered.holds());

  Group f2f2(GroupSpec::direct({GroupSpec::free(2), GroupSpec::free(2)}));
  auto p = ProductAction::standard(f2f2);
  auto tr = conjugate_reduce(parse_subset(f2f2, "(a1, b2), (b1, a2)"), p);
  CHECK(tr.d_total == 0);
  CHECK(tr.m == 1);
  CHECK(tr.holds());
  CHECK(tr.lambda_conjugated <= tr.final_bound);

  auto far = parse_subset(f2f2, "(b1 a1 b1^-1, a2^2 b2 a2^-2), (b1 a1^2 b1^-1, a2^2 b2^-1 a2^-2)");
  auto tf = conjugate_reduce(far, p);
  CHECK(tf.holds());
  CHECK(tf.lambda_conjugated < displacement_at(far, p, p.base()).value);

  auto sw = displacement_sandwich(parse_subset(f2f2, "(a1, b2), (b1, a2)"), p);
  CHECK(sw.holds);
}

TEST_CASE("conjugation reduction and sandwich on random product instances") {
  SplitMix64 rng(77);
  for (const auto& spec : {GroupSpec::direct({GroupSpec::free(2), GroupSpec::free(2)}),
                           GroupSpec::direct({GroupSpec::free(2), GroupSpec::free_product({2, 3})}),
                           GroupSpec::direct({GroupSpec::free_product({2, 3}), GroupSpec::free_product({2, 2, 3})})}) {
    Group g(spec);
    auto p = ProductAction::standard(g);
    for (int i = 0; i < 15; ++i) {
      auto s = random_subset(g, rng, 4, 5);
      // Push S away from o so the reduction has work to do.
      const auto h = random_element(g, rng, 6);
      std::vector<GroupElement> moved;
      for (const auto& x : s.elements()) moved.push_back(g.conjugate(x, h));
      const MarkedSubset sm(g, moved);
      const auto tr = conjugate_reduce(sm, p);
      CHECK(tr.holds());
      for (const auto& step : tr.steps) CHECK(step.measured_m <= step.recursion_bound);
      CHECK(displacement_sandwich(sm, p, 2).holds);
    }
  }
}

TEST_CASE("factor transfer examples") {
  Group f2f2(GroupSpec::direct({GroupSpec::free(2), GroupSpec::free(2)}));
  auto p = ProductAction::standard(f2f2);
  auto all = factor_transfer(parse_subset(f2f2, "(1, 1), (a1, 1), (b1, 1), (1, a2), (1, b2), (a1, a2), (a1, b2), (b1, a2), (b1, b2)"), p, 0);
  REQUIRE(all.factor);
  CHECK(*all.factor == 0);
  CHECK(all.values == std::vector<long>{1, 1});

  auto powers = factor_transfer(parse_subset(f2f2, "(a1, 1), (a1^2, 1)"), p, 1);
  REQUIRE(powers.factor);
  CHECK(*powers.factor == 0);
  CHECK(powers.values == std::vector<long>{2, 0});
  long brute = 100;
  const auto s1 = parse_subset(p.factor(0).group(), "a1, a1^2");
  for (const auto& v : p.factor(0).ball(p.factor(0).base(), 4)) brute = std::min(brute, displacement(s1, p.factor(0), v));
  CHECK(brute == 2);

  auto trivial = factor_transfer(parse_subset(f2f2, "1"), p, 3);
  CHECK_FALSE(trivial.factor);
  CHECK(trivial.values == std::vector<long>{0, 0});
}

TEST_CASE("orbit ball sizes agree with enumeration") {
  for (const auto& spec : {GroupSpec::free(2), GroupSpec::free_product({2, 3}), GroupSpec::free_product({2, 2, 3}),
                           GroupSpec::direct({GroupSpec::free(2), GroupSpec::free_product({2, 3})})}) {
    Group g(spec);
    auto p = ProductAction::standard(g);
    const auto o = p.base();
    const auto elements = word_ball(g, 6);
    for (long r = 0; r <= 3; ++r) {
      long count = 0;
      for (const auto& x : elements)
        if (p.dist(o, p.act(x, o)) <= r) ++count;
      CHECK(orbit_ball_size(p, r) == count);
      CHECK(orbit_ball_size_saturating(p, r, 1'000'000) == static_cast<std::uint64_t>(count));
    }
  }
  Group f2(GroupSpec::free(2));
  CHECK(orbit_ball_size(ProductAction::standard(f2), 2) == 17);
}

TEST_CASE("properness spot check: small displacement forces few elements") {
  // Contrapositive of the transfer theorem at M = 1, 2: every sampled S on which transfer fails
  // has fewer elements than the orbit-ball bound N0(M).
  Group f2f2(GroupSpec::direct({GroupSpec::free(2), GroupSpec::free(2)}));
  auto p = ProductAction::standard(f2f2);
  SplitMix64 rng(5);
  const auto ball = word_ball(f2f2, 2);
  for (long m : {1L, 2L}) {
    for (int i = 0; i < 20; ++i) {
      std::vector<GroupElement> elems;
      const auto n = rng.between(1, 12);
      for (int k = 0; k < n; ++k) elems.push_back(ball[rng.below(ball.size())]);
      const MarkedSubset s(f2f2, elems);
      const auto tr = factor_transfer(s, p, m);
      if (tr.factor) continue;
      const long c1 = conjugate_reduce(s, p).c1;
      CHECK(s.size() < orbit_ball_size_saturating(p, c1 * (c1 * m + c1) + c1, 1'000'000'000));
    }
  }
}
