#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "psg/group.hpp"

namespace psg {

using Ratio = boost::rational<long>;

// One experiment. Command sections are optional; a command reads only its own section and
// falls back to the defaults below.
struct ExperimentConfig {
  GroupSpec group;
  std::vector<std::string> actions;  // one tree kind per factor ("cayley", "bass_serre"); empty = standard
  std::vector<std::string> u;        // words over the generator labels
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t cap_elements = 20'000'000;

  struct Displace {
    int radius = 4;  // conjugator search for the sandwich
    friend bool operator==(const Displace&, const Displace&) = default;
  };
  struct Transfer {
    long m = 1;
    friend bool operator==(const Transfer&, const Transfer&) = default;
  };
  struct PingPong {
    std::string g, h;
    int depth = 6;
    friend bool operator==(const PingPong&, const PingPong&) = default;
  };
  struct FreeBase {
    int depth = 6;
    int f_bound = 4;
    friend bool operator==(const FreeBase&, const FreeBase&) = default;
  };
  struct Schreier {
    int degree = 1;
    std::string images;          // "a=(1 2), b=()"
    std::string subgroup = "ker";  // "ker" or "stab <point>", 1-based
    std::optional<int> l_ver;
    bool general = true;         // false: normal construction only
    friend bool operator==(const Schreier&, const Schreier&) = default;
  };
  struct Growth {
    int n_max = 10;
    Ratio alpha{1}, beta{1};
    std::optional<int> chain_d;                // chain_psg_bound at this index
    std::optional<std::uint64_t> kernel_order;  // quotient_psg_bound with this kernel
    friend bool operator==(const Growth&, const Growth&) = default;
  };
  struct Commutators {
    int n = 4;
    Ratio c{1, 2};  // declared constant of the expected case
    friend bool operator==(const Commutators&, const Commutators&) = default;
  };
  struct Classify {
    int radius = 4;
    friend bool operator==(const Classify&, const Classify&) = default;
  };
  struct Suite {
    int scale = 1;  // 1: acceptance sizes; 0: reduced sizes for smoke runs
    friend bool operator==(const Suite&, const Suite&) = default;
  };

  Displace displace;
  Transfer transfer;
  PingPong pingpong;
  FreeBase freebase;
  Schreier schreier;
  Growth growth;
  Commutators commutators;
  Classify classify;
  Suite suite;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// YAML document; unknown keys, wrong types and words that do not parse are ConfigErrors
// carrying "source:line:column".
ExperimentConfig parse_config(std::string_view text, const std::string& source = "config");
ExperimentConfig load_config(const std::string& path);

// Every field, in a fixed order; parse_config(to_yaml(c)) == c.
std::string to_yaml(const ExperimentConfig& c);

Ratio parse_ratio(std::string_view text);
std::string format_ratio(Ratio r);

}  // namespace psg
