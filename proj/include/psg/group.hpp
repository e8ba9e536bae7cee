#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace psg {

using Permutation = std::vector<int>;  // 0-based image array

struct GroupSpec {
  enum class Kind { Free, FreeProduct, DirectProduct, Permutation };

  Kind kind = Kind::Free;
  int rank = 0;                             // Free
  std::vector<int> orders;                  // FreeProduct: cyclic factor orders
  std::vector<GroupSpec> factors;           // DirectProduct
  int degree = 0;                           // Permutation
  std::vector<Permutation> perm_generators; // Permutation
  std::vector<std::string> labels;          // one per generator; DirectProduct: empty (factors own theirs)

  static GroupSpec free(int rank, std::vector<std::string> labels = {});
  static GroupSpec free_product(std::vector<int> orders, std::vector<std::string> labels = {});
  static GroupSpec direct(std::vector<GroupSpec> factors);
  static GroupSpec permutation(int degree, std::vector<Permutation> generators,
                               std::vector<std::string> labels = {});

  // Canonical text, parseable by parse_group_spec (labels excluded).
  std::string describe() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

// Canonical normal form. `code` is interpreted by the owning Group:
//   free          letters, 2i for generator i and 2i+1 for its inverse (freely reduced)
//   free product  (generator, exponent) pairs, exponent in [1, order), alternating factors
//   direct        per factor: length, then that factor's code
//   permutation   image array
// Equal elements have equal codes; `tag` identifies the group.
struct GroupElement {
  std::uint64_t tag = 0;
  std::vector<std::int32_t> code;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

// Shortlex on codes: the library-wide deterministic tie-break.
bool shortlex_less(const GroupElement& a, const GroupElement& b);

struct ShortlexLess {
  bool operator()(const GroupElement& a, const GroupElement& b) const { return shortlex_less(a, b); }
};

// Compact byte key (LEB128 of the code) for hash-set deduplication.
std::string element_key(const GroupElement& g);

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const;
};

// A generator raised to a power: the letters of a normal form.
struct Letter {
  std::size_t generator;
  int exponent;
};

class Group {
 public:
  explicit Group(GroupSpec spec);

  const GroupSpec& spec() const { return spec_; }
  GroupSpec::Kind kind() const { return spec_.kind; }
  std::uint64_t tag() const { return tag_; }

  GroupElement identity() const;
  bool is_identity(const GroupElement& g) const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& g) const;
  GroupElement power(const GroupElement& g, long n) const;
  GroupElement conjugate(const GroupElement& g, const GroupElement& by) const;  // by^-1 g by
  GroupElement commutator(const GroupElement& g, const GroupElement& h) const;  // g h g^-1 h^-1
  GroupElement product(const std::vector<GroupElement>& factors) const;

  std::size_t generator_count() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  GroupElement generator(std::size_t i) const;
  // Generators and their inverses, deduplicated, in shortlex order.
  std::vector<GroupElement> symmetric_generators() const;

  // Normal-form letters; generator indices are global (across direct factors).
  std::vector<Letter> letters(const GroupElement& g) const;
  GroupElement from_letters(const std::vector<Letter>& letters) const;

  // Words are whitespace-separated labels with optional ^k suffix; "1" is the identity.
  GroupElement parse_word(std::string_view text) const;
  std::string format(const GroupElement& g) const;

  // Direct products.
  std::size_t factor_count() const { return factors_.size(); }
  const Group& factor(std::size_t i) const { return *factors_.at(i); }
  GroupElement component(const GroupElement& g, std::size_t i) const;
  GroupElement embed(std::size_t i, const GroupElement& x) const;
  GroupElement assemble(const std::vector<GroupElement>& components) const;

  // Number of letters (free) or syllables (free product) of the normal form.
  std::size_t syllable_length(const GroupElement& g) const;

  // Order of the cyclic factor a free-product generator belongs to.
  int factor_order(std::size_t generator) const { return spec_.orders.at(generator); }

  void check(const GroupElement& g) const;

 private:
  GroupElement make(std::vector<std::int32_t> code) const { return GroupElement{tag_, std::move(code)}; }
  std::vector<GroupElement> split(const GroupElement& g) const;

  GroupSpec spec_;
  std::uint64_t tag_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::shared_ptr<const Group>> factors_;
  std::vector<std::size_t> factor_offset_;  // first global generator index of each factor
};

GroupSpec parse_group_spec(std::string_view text);

// Cycle notation with 1-based points, e.g. "(1 2)(3 4 5)"; "()" is the identity.
Permutation parse_permutation(std::string_view text, int degree);
std::string format_permutation(const Permutation& p);

// A finite, possibly non-symmetric subset U of a group.
class MarkedSubset {
 public:
  MarkedSubset(const Group& group, const std::vector<GroupElement>& elements);

  const Group& group() const { return *group_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains_identity() const { return contains_identity_; }
  bool symmetric() const { return symmetric_; }
  bool contains(const GroupElement& g) const;

  std::string format() const;

 private:
  std::shared_ptr<const Group> group_;
  std::vector<GroupElement> elements_;  // first-occurrence order, duplicates removed
  bool contains_identity_ = false;
  bool symmetric_ = false;
};

MarkedSubset parse_subset(const Group& group, std::string_view text);  // comma-separated words

MarkedSubset symmetrize(const MarkedSubset& u);

// U^{<=n} as a shortlex-sorted list. Throws ResourceLimitError above `cap` elements.
std::vector<GroupElement> semigroup_ball(const MarkedSubset& u, int n, std::size_t cap = 20'000'000);

// Ball of radius n for the symmetric generating set of the group.
std::vector<GroupElement> word_ball(const Group& group, int n, std::size_t cap = 20'000'000);

// Bounded check that U generates <U> as a semigroup: every u^-1 lies in U^{<=depth}.
struct SemigroupCheck {
  bool verified = false;
  int depth = 0;
  std::vector<GroupElement> missing_inverses;
};
SemigroupCheck verify_semigroup_generation(const MarkedSubset& u, int depth, std::size_t cap = 5'000'000);

}  // namespace psg
