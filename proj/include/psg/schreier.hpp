#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>

#include "psg/group.hpp"
#include "psg/growth.hpp"

namespace psg {

// A homomorphism from a free, free-product or direct-product group onto a permutation group.
// Composition is (p q)[x] = p[q[x]], so image(g h) = image(g) image(h).
class FiniteQuotient {
 public:
  // Checks the relators of the source: generator orders of free-product factors, and
  // commuting images across direct factors.
  FiniteQuotient(const Group& source, int degree, std::vector<Permutation> images);

  const Group& source() const { return source_; }
  int degree() const { return degree_; }
  const std::vector<Permutation>& images() const { return images_; }

  Permutation image(const GroupElement& g) const;

  // "a=(1 2), b=()" with one entry per generator label.
  static FiniteQuotient parse(const Group& source, int degree, std::string_view text);
  std::string describe() const;

 private:
  Group source_;
  int degree_ = 0;
  std::vector<Permutation> images_;
};

Permutation compose(const Permutation& p, const Permutation& q);  // p after q
Permutation invert(const Permutation& p);

struct SubgroupDesignator {
  enum class Kind { Kernel, Stabilizer };
  Kind kind = Kind::Kernel;
  int point = 0;  // 0-based, Stabilizer only

  static SubgroupDesignator kernel() { return {}; }
  static SubgroupDesignator stabilizer(int point) { return {Kind::Stabilizer, point}; }
  std::string describe() const;  // "ker", "stab 1" (1-based)
};

// Left cosets gH with a transversal of minimal directed U-length.
class CosetStructure {
 public:
  const FiniteQuotient& quotient() const { return quotient_; }
  const SubgroupDesignator& subgroup() const { return subgroup_; }
  const MarkedSubset& u() const { return u_; }

  std::size_t index() const { return transversal_.size(); }
  bool normal() const { return normal_; }
  std::size_t image_order() const { return image_order_; }  // |rho(G)|

  // a_1 = identity; a_i realized by a U-word (indices into U) of minimal length.
  const std::vector<GroupElement>& transversal() const { return transversal_; }
  const std::vector<std::vector<std::size_t>>& words() const { return words_; }

  std::size_t coset_of(const GroupElement& g) const;
  const GroupElement& phi(const GroupElement& g) const { return transversal_[coset_of(g)]; }
  bool in_subgroup(const GroupElement& g) const { return coset_of(g) == 0; }

  friend CosetStructure coset_structure(const MarkedSubset& u, const FiniteQuotient& q, const SubgroupDesignator& h);

 private:
  CosetStructure(MarkedSubset u, FiniteQuotient q, SubgroupDesignator h)
      : u_(std::move(u)), quotient_(std::move(q)), subgroup_(h) {}
  std::string label(const Permutation& image) const;

  MarkedSubset u_;
  FiniteQuotient quotient_;
  SubgroupDesignator subgroup_;
  std::vector<GroupElement> transversal_;
  std::vector<std::vector<std::size_t>> words_;
  std::unordered_map<std::string, std::size_t> coset_;  // label -> transversal index
  bool normal_ = false;
  std::size_t image_order_ = 0;
};

// Throws PreconditionError when the directed coset graph is not strongly connected, i.e. U
// does not generate as a semigroup at this quotient.
CosetStructure coset_structure(const MarkedSubset& u, const FiniteQuotient& q, const SubgroupDesignator& h);

// Every element of H cap U^{<=depth} is rewritten over W^{+-1} by the coset rewriting and the
// word is evaluated back.
struct GenerationCheck {
  int depth = 0;                  // L_ver
  std::size_t ball = 0;           // |U^{<=L_ver}|
  std::size_t checked = 0;        // |H cap U^{<=L_ver}|, each rewritten over W and re-evaluated
  bool verified = false;
  std::optional<bool> folded;     // free groups only: <W> has index d, hence equals H
  std::size_t folded_vertices = 0;
};

struct SchreierResult {
  std::vector<GroupElement> w;
  std::vector<std::vector<std::size_t>> w_words;  // U-words
  std::size_t index = 0;                          // d
  bool normal = false;
  long exponent_bound = 0;                        // d^2-d+1, or (d!)^2-d!+1
  std::size_t core_index = 0;                     // general case: r = [G : ker], r <= d!
  long core_bound = 0;                            // r^2-r+1
  std::size_t longest_word = 0;
  bool containment = false;                       // every U-word length <= exponent_bound
  bool ball_confirmed = false;                    // W also found inside U^{<=longest_word}
  bool in_subgroup = false;                       // kernel test on every w
  boost::rational<long> size_bound;               // |U|/d or |U|/d!
  bool size_ok = false;
  std::vector<std::size_t> transversal_in_h;      // general case: indices of a_i in H
  GenerationCheck generation;
};

// Largest L <= max_depth with |U^{<=L}| <= cap, L >= 1 if possible.
int verification_depth(const MarkedSubset& u, int max_depth, std::size_t cap = 100'000);

// Normal case from an existing coset structure; precondition error if H is not normal.
SchreierResult schreier_generators_normal(const MarkedSubset& u, const CosetStructure& c,
                                          std::optional<int> l_ver = std::nullopt);

// Any H of index d: pass to the kernel of the action on G/H.
SchreierResult schreier_generators(const MarkedSubset& u, const FiniteQuotient& q, const SubgroupDesignator& h,
                                   std::optional<int> l_ver = std::nullopt);

// Free groups only: index of <W> via Stallings folding, 0 when infinite.
std::size_t folded_index(const Group& group, const std::vector<GroupElement>& w);

struct ChainRow {
  int n = 0;
  std::uint64_t count = 0;
  double bound = 0;      // display only
  bool satisfied = false;
};

struct ChainVerdict {
  std::string formula;
  long r = 0;
  bool satisfied = true;
  std::optional<int> first_violation;
  std::vector<ChainRow> rows;
};

// |U^n| >= (alpha |U| / (d! 2^{r/beta}))^{(beta/r) n} with r = (d!)^2 - d! + 1, for n = 1..completed.
ChainVerdict chain_psg_bound(const GrowthSeries& counts, int d, boost::rational<long> alpha,
                             boost::rational<long> beta);

// |W^n| >= (alpha |W| / |ker|)^{beta n}.
ChainVerdict quotient_psg_bound(const GrowthSeries& counts, std::uint64_t kernel_order, boost::rational<long> alpha,
                                boost::rational<long> beta);

}  // namespace psg
