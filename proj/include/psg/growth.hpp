#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <boost/rational.hpp>
#include <utility>
#include <vector>

#include "psg/group.hpp"

namespace psg {

// Exact |U^n| and |U^{<=n}|, index n = 0..completed (entry 0 is the identity alone).
struct GrowthSeries {
  std::size_t u_size = 0;
  int n_max = 0;
  int completed = 0;                    // last n whose layer was fully counted
  bool truncated = false;               // the element cap stopped the run before n_max
  std::vector<std::uint64_t> exact;     // |U^n|
  std::vector<std::uint64_t> cumulative;  // |U^{<=n}|
  std::vector<std::uint64_t> frontier;  // new elements of layer n, |U^{<=n}| - |U^{<=n-1}|
  std::vector<double> seconds;          // wall clock per layer, telemetry only
};

// Distinctness of all words of length <= L over T.
struct FreeRankCheck {
  bool free = false;
  int depth = 0;
  std::size_t words = 0;   // number of words enumerated, sum of |T|^k for k <= L
  // First collision found, as index sequences into T.
  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> collision;
};

FreeRankCheck free_rank_verify(const Group& group, const std::vector<GroupElement>& t, int depth,
                               std::size_t cap = 50'000'000);

struct GrowthOptions {
  unsigned threads = 1;
  std::size_t cap_elements = 20'000'000;  // on |U^{<=n}|
};

// Layered expansion U^n = U^{n-1} U. Counts do not depend on the thread count. Monotonicity
// and submultiplicativity are asserted (InvariantViolation) on the completed range.
GrowthSeries product_set_counts(const MarkedSubset& u, int n_max, const GrowthOptions& options = {});

// Same counts by the obvious serial loop over all words, for small n only.
GrowthSeries naive_product_set_counts(const MarkedSubset& u, int n_max);

struct CommutatorSet {
  int n = 0;
  std::size_t ball = 0;        // |S^{<=n}| for symmetric S
  std::size_t size = 0;        // |C(S^{<=n}, S^{<=n})|
  bool truncated = false;      // the ball cap was hit; size then counts a partial set
  // Shortlex-first commutators with a pair (h, k) realizing each.
  struct Witness {
    GroupElement commutator, h, k;
  };
  std::vector<Witness> witnesses;

  bool meets(boost::rational<long> c) const;  // size >= c n
};

CommutatorSet commutator_set(const MarkedSubset& s, int n, const GrowthOptions& options = {},
                             std::size_t witness_count = 8);

struct GrowthRow {
  int n = 0;
  std::uint64_t count = 0;       // |U^n|
  std::uint64_t cumulative = 0;  // |U^{<=n}|
  double bound = 0;              // (alpha |U|)^{beta n}, display only
  bool satisfied = false;        // exact
};

struct GrowthFit {
  boost::rational<long> alpha, beta;
  std::vector<GrowthRow> rows;
  std::vector<double> omega;          // |U^{<=n}|^{1/n}
  int satisfied_through = 0;          // largest N with every n <= N satisfied
  bool satisfied = false;             // on the whole recorded range
  std::optional<double> max_beta;     // largest beta satisfied on the range for this alpha; empty if unbounded
};

GrowthFit psg_check(const GrowthSeries& series, boost::rational<long> alpha, boost::rational<long> beta);

struct GrowthRate {
  int n = 0;
  double estimate = 0;  // |U^{<=n}|^{1/n}
  double envelope = 0;  // min over k <= n of the estimate; the limit is the infimum
};

std::vector<GrowthRate> growth_rate(const GrowthSeries& series);

}  // namespace psg
