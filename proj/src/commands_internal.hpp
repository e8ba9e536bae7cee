#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psg/config.hpp"
#include "psg/displacement.hpp"
#include "psg/group.hpp"
#include "psg/tree.hpp"

namespace psg::detail {

MarkedSubset subset(const ExperimentConfig& c, const Group& g, const std::string& command);
TreeAction tree_of(const std::string& kind, const Group& g);
TreeAction single_tree(const ExperimentConfig& c, const Group& g, const std::string& command);
ProductAction product_of(const ExperimentConfig& c, const Group& g);

// "x . (y z) . w": elements of U in order, multi-letter ones parenthesized; "1" when empty.
std::string u_word(const Group& g, const MarkedSubset& u, const std::vector<std::size_t>& letters);
// Inverse of u_word; nullopt when a factor is not in U.
std::optional<GroupElement> evaluate_u_word(const Group& g, const MarkedSubset& u, std::string_view text,
                                            std::size_t* length = nullptr);

}  // namespace psg::detail
