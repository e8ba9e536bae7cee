#include "psg/growth.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>

#include "psg/error.hpp"

namespace psg {

FreeRankCheck free_rank_verify(const Group& group, const std::vector<GroupElement>& t, int depth,
                               std::size_t cap) {
  if (t.empty()) throw PreconditionError("free_rank_verify needs a nonempty set");
  if (depth < 1) throw PreconditionError("verification depth must be positive");
  for (const auto& x : t)
    if (group.is_identity(x)) throw PreconditionError("the identity cannot belong to a free basis");

  FreeRankCheck out;
  out.depth = depth;
  std::size_t total = 1, layer_size = 1;
  for (int k = 1; k <= depth; ++k) {
    if (layer_size > cap / t.size()) throw ResourceLimitError("free_rank_verify: too many words");
    layer_size *= t.size();
    total += layer_size;
    if (total > cap) throw ResourceLimitError("free_rank_verify: too many words");
  }
  out.words = total;

  // Word i of a layer is stored by index; its letters are recovered from the layer structure.
  struct Entry {
    std::size_t parent;
    std::size_t letter;
  };
  std::vector<std::vector<Entry>> layers{{Entry{0, 0}}};
  std::vector<std::vector<GroupElement>> values{{group.identity()}};
  std::unordered_map<std::string, std::pair<int, std::size_t>> seen{{element_key(group.identity()), {0, 0}}};

  auto word_of = [&](int k, std::size_t i) {
    std::vector<std::size_t> w(static_cast<std::size_t>(k));
    for (int j = k; j > 0; --j) {
      w[static_cast<std::size_t>(j - 1)] = layers[j][i].letter;
      i = layers[j][i].parent;
    }
    return w;
  };

  for (int k = 1; k <= depth; ++k) {
    std::vector<Entry> entries;
    std::vector<GroupElement> vals;
    entries.reserve(values.back().size() * t.size());
    vals.reserve(values.back().size() * t.size());
    for (std::size_t p = 0; p < values.back().size(); ++p) {
      for (std::size_t l = 0; l < t.size(); ++l) {
        GroupElement g = group.multiply(values.back()[p], t[l]);
        entries.push_back({p, l});
        const auto [it, fresh] = seen.emplace(element_key(g), std::pair{k, entries.size() - 1});
        if (!fresh) {
          layers.push_back(std::move(entries));
          out.collision = std::pair{word_of(it->second.first, it->second.second), word_of(k, layers.back().size() - 1)};
          return out;
        }
        vals.push_back(std::move(g));
      }
    }
    layers.push_back(std::move(entries));
    values.push_back(std::move(vals));
  }
  out.free = true;
  return out;
}

namespace {

using boost::multiprecision::cpp_int;

// Runs body(begin, end, part) on contiguous ranges of [0, total); part order matches range order.
template <class Body>
void run_parts(std::size_t total, unsigned threads, Body body) {
  const std::size_t parts = std::max<std::size_t>(1, std::min<std::size_t>(threads, total));
  const std::size_t chunk = (total + parts - 1) / std::max<std::size_t>(parts, 1);
  if (parts <= 1) {
    body(std::size_t{0}, total, std::size_t{0});
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < parts; ++t) {
    const std::size_t begin = std::min(total, t * chunk), end = std::min(total, begin + chunk);
    pool.emplace_back([=, &body] { body(begin, end, t); });
  }
  for (auto& th : pool) th.join();
}

void assert_series(const GrowthSeries& s) {
  for (int n = 1; n <= s.completed; ++n)
    if (s.exact[static_cast<std::size_t>(n)] < s.exact[static_cast<std::size_t>(n - 1)])
      throw InvariantViolation("|U^n| decreased at n = " + std::to_string(n));
  for (int n = 1; n <= s.completed; ++n)
    for (int m = 1; n + m <= s.completed; ++m) {
      const auto lhs = static_cast<unsigned __int128>(s.cumulative[static_cast<std::size_t>(n + m)]);
      const auto rhs = static_cast<unsigned __int128>(s.cumulative[static_cast<std::size_t>(n)]) *
                       s.cumulative[static_cast<std::size_t>(m)];
      if (lhs > rhs)
        throw InvariantViolation("|U^{<=n+m}| > |U^{<=n}| |U^{<=m}| at n = " + std::to_string(n) +
                                 ", m = " + std::to_string(m));
    }
}

GrowthSeries start_series(const MarkedSubset& u, int n_max) {
  if (n_max < 1) throw PreconditionError("n_max must be at least 1");
  GrowthSeries s;
  s.u_size = u.size();
  s.n_max = n_max;
  s.exact = {1};
  s.cumulative = {1};
  s.frontier = {1};
  s.seconds = {0.0};
  return s;
}

}  // namespace

GrowthSeries product_set_counts(const MarkedSubset& u, int n_max, const GrowthOptions& options) {
  GrowthSeries s = start_series(u, n_max);
  const Group& g = u.group();
  const unsigned threads = std::max(1u, options.threads);
  std::unordered_set<std::string> all{element_key(g.identity())};
  std::vector<GroupElement> layer{g.identity()};

  for (int n = 1; n <= n_max; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::vector<std::pair<std::string, GroupElement>>> parts(threads);
    run_parts(layer.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t part) {
      auto& out = parts[part];
      out.reserve((end - begin) * u.size());
      for (std::size_t i = begin; i < end; ++i)
        for (const auto& x : u.elements()) {
          GroupElement y = g.multiply(layer[i], x);
          std::string k = element_key(y);
          out.emplace_back(std::move(k), std::move(y));
        }
    });
    std::unordered_set<std::string> layer_keys;
    std::vector<GroupElement> next;
    std::uint64_t fresh = 0;
    for (auto& part : parts) {
      for (auto& [k, y] : part) {
        if (!layer_keys.insert(k).second) continue;
        if (all.insert(std::move(k)).second) ++fresh;
        next.push_back(std::move(y));
      }
      part.clear();
      part.shrink_to_fit();
      if (all.size() > options.cap_elements) break;
    }
    if (all.size() > options.cap_elements) {
      s.truncated = true;
      break;
    }
    s.exact.push_back(next.size());
    s.frontier.push_back(fresh);
    s.cumulative.push_back(s.cumulative.back() + fresh);
    s.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    s.completed = n;
    layer = std::move(next);
  }
  assert_series(s);
  return s;
}

GrowthSeries naive_product_set_counts(const MarkedSubset& u, int n_max) {
  GrowthSeries s = start_series(u, n_max);
  const Group& g = u.group();
  std::unordered_set<std::string> all{element_key(g.identity())};
  std::size_t words = 1;
  for (int n = 1; n <= n_max; ++n) {
    words *= u.size();
    if (words > 5'000'000) throw ResourceLimitError("naive enumeration: too many words");
    std::unordered_set<std::string> layer;
    std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
    for (std::size_t w = 0; w < words; ++w) {
      std::vector<GroupElement> f;
      for (auto d : digits) f.push_back(u.elements()[d]);
      const auto k = element_key(g.product(f));
      layer.insert(k);
      all.insert(k);
      for (std::size_t i = 0; i < digits.size() && ++digits[i] == u.size(); ++i) digits[i] = 0;
    }
    s.exact.push_back(layer.size());
    s.frontier.push_back(all.size() - s.cumulative.back());
    s.cumulative.push_back(all.size());
    s.seconds.push_back(0.0);
    s.completed = n;
  }
  return s;
}

bool CommutatorSet::meets(boost::rational<long> c) const {
  return static_cast<__int128>(size) * c.denominator() >= static_cast<__int128>(c.numerator()) * n;
}

CommutatorSet commutator_set(const MarkedSubset& s, int n, const GrowthOptions& options, std::size_t witness_count) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  const Group& g = s.group();
  const MarkedSubset sym = symmetrize(s);
  CommutatorSet out;
  out.n = n;

  // S^{<=n}, stopped at the cap.
  std::vector<GroupElement> ball{g.identity()};
  std::unordered_set<std::string> seen{element_key(ball[0])};
  std::size_t begin = 0;
  for (int k = 1; k <= n && !out.truncated; ++k) {
    const std::size_t end = ball.size();
    for (std::size_t i = begin; i < end && !out.truncated; ++i)
      for (const auto& x : sym.elements()) {
        GroupElement y = g.multiply(ball[i], x);
        if (!seen.insert(element_key(y)).second) continue;
        if (ball.size() >= options.cap_elements) {
          out.truncated = true;
          break;
        }
        ball.push_back(std::move(y));
      }
    begin = end;
  }
  std::sort(ball.begin(), ball.end(), ShortlexLess{});
  out.ball = ball.size();

  using Pair = std::pair<std::size_t, std::size_t>;
  const unsigned threads = std::max(1u, options.threads);
  std::vector<std::unordered_map<std::string, Pair>> parts(threads);
  run_parts(ball.size(), threads, [&](std::size_t b, std::size_t e, std::size_t part) {
    auto& m = parts[part];
    for (std::size_t i = b; i < e; ++i)
      for (std::size_t j = 0; j < ball.size(); ++j) m.emplace(element_key(g.commutator(ball[i], ball[j])), Pair{i, j});
  });
  // Keep the least (i, j) per commutator, so witnesses do not depend on the partition.
  std::unordered_map<std::string, Pair> merged = std::move(parts[0]);
  for (std::size_t t = 1; t < parts.size(); ++t)
    for (auto& [k, p] : parts[t]) {
      auto [it, fresh] = merged.emplace(k, p);
      if (!fresh && p < it->second) it->second = p;
    }
  out.size = merged.size();

  std::vector<Pair> pairs;
  pairs.reserve(merged.size());
  for (const auto& [k, p] : merged) pairs.push_back(p);
  const std::size_t keep = std::min(witness_count, pairs.size());
  std::partial_sort(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(keep), pairs.end());
  for (std::size_t i = 0; i < keep; ++i) {
    const auto& [a, b] = pairs[i];
    out.witnesses.push_back({g.commutator(ball[a], ball[b]), ball[a], ball[b]});
  }
  return out;
}

GrowthFit psg_check(const GrowthSeries& series, boost::rational<long> alpha, boost::rational<long> beta) {
  if (alpha <= 0 || beta <= 0) throw PreconditionError("alpha and beta must be positive");
  GrowthFit fit;
  fit.alpha = alpha;
  fit.beta = beta;
  const unsigned p = static_cast<unsigned>(beta.numerator()), q = static_cast<unsigned>(beta.denominator());
  const cpp_int base_num = cpp_int(alpha.numerator()) * series.u_size;
  const cpp_int base_den = alpha.denominator();
  const double base = static_cast<double>(alpha.numerator()) * static_cast<double>(series.u_size) /
                      static_cast<double>(alpha.denominator());
  const double b = static_cast<double>(beta.numerator()) / static_cast<double>(beta.denominator());
  bool ok = true;
  double max_beta = INFINITY;
  for (int n = 1; n <= series.completed; ++n) {
    GrowthRow row;
    row.n = n;
    row.count = series.exact[static_cast<std::size_t>(n)];
    row.cumulative = series.cumulative[static_cast<std::size_t>(n)];
    row.bound = std::pow(base, b * n);
    // c^q den^{pn} >= num^{pn}
    row.satisfied = boost::multiprecision::pow(cpp_int(row.count), q) *
                        boost::multiprecision::pow(base_den, p * static_cast<unsigned>(n)) >=
                    boost::multiprecision::pow(base_num, p * static_cast<unsigned>(n));
    ok = ok && row.satisfied;
    if (ok) fit.satisfied_through = n;
    if (base > 1) max_beta = std::min(max_beta, std::log(static_cast<double>(row.count)) / (n * std::log(base)));
    fit.rows.push_back(row);
    fit.omega.push_back(std::pow(static_cast<double>(row.cumulative), 1.0 / n));
  }
  fit.satisfied = ok;
  if (base > 1) fit.max_beta = max_beta;
  return fit;
}

std::vector<GrowthRate> growth_rate(const GrowthSeries& series) {
  if (series.completed < 1) throw PreconditionError("growth_rate needs a nonempty series");
  std::vector<GrowthRate> out;
  double envelope = INFINITY;
  for (int n = 1; n <= series.completed; ++n) {
    const double e = std::pow(static_cast<double>(series.cumulative[static_cast<std::size_t>(n)]), 1.0 / n);
    envelope = std::min(envelope, e);
    out.push_back({n, e, envelope});
  }
  return out;
}

}  // namespace psg
