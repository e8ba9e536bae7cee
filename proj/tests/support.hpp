#pragma once

#include <string>
#include <vector>

#include "psg/group.hpp"
#include "psg/rng.hpp"
#include "psg/tree.hpp"

namespace psg::testing {

// Product of `length` uniformly drawn symmetric generators (not necessarily reduced).
inline GroupElement random_word(const Group& g, SplitMix64& rng, int length) {
  const auto gens = g.symmetric_generators();
  GroupElement x = g.identity();
  for (int i = 0; i < length; ++i) x = g.multiply(x, gens[rng.below(gens.size())]);
  return x;
}

inline GroupElement random_element(const Group& g, SplitMix64& rng, int max_length) {
  return random_word(g, rng, static_cast<int>(rng.between(0, max_length)));
}

// Free reduction on strings over a, A, b, B, ... done the slow way.
inline std::string naive_reduce(std::string w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const char x = w[i], y = w[i + 1];
      if (x != y && std::tolower(x) == std::tolower(y)) {
        w.erase(i, 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

struct Bed {
  const char* name;
  Group group;
  TreeAction tree;
};

// Free groups on their Cayley trees, free products on their Bass-Serre trees (bipartite and star).
inline std::vector<Bed> beds() {
  std::vector<Bed> out;
  for (auto [name, spec] : std::vector<std::pair<const char*, GroupSpec>>{
           {"F2", GroupSpec::free(2)},
           {"Z2*Z3", GroupSpec::free_product({2, 3})},
           {"Z2*Z2*Z3", GroupSpec::free_product({2, 2, 3})},
           {"F3", GroupSpec::free(3)}}) {
    Group g(spec);
    out.push_back({name, g, TreeAction::standard(g)});
  }
  return out;
}

inline MarkedSubset random_subset(const Group& g, SplitMix64& rng, int max_size, int max_len) {
  std::vector<GroupElement> elems;
  const int n = static_cast<int>(rng.between(1, max_size));
  for (int i = 0; i < n; ++i) elems.push_back(random_element(g, rng, max_len));
  return MarkedSubset(g, elems);
}

}  // namespace psg::testing
