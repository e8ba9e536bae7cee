#include <doctest.h>

#include <string>

#include "psg/commands.hpp"
#include "psg/config.hpp"
#include "psg/error.hpp"
#include "psg/rng.hpp"
#include "psg/suite.hpp"

using namespace psg;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "t.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config round trip") {
  for (const auto& [name, c] : reference_configs()) {
    INFO(name);
    const auto text = to_yaml(c);
    CHECK(parse_config(text) == c);
    CHECK(to_yaml(parse_config(text)) == text);
  }
  auto c = parse_config("group: direct(free(2), free_product(2, 3))\n"
                        "action: [cayley, bass_serre]\n"
                        "u: [\"a s\", b^-1]\n"
                        "seed: 77\n"
                        "schreier: {degree: 2, images: \"a=(1 2), b=(), s=(), t=()\", subgroup: stab 2, l_ver: 5}\n"
                        "growth: {alpha: 3/4, beta: 1/2, chain_d: 3}\n");
  CHECK(c.actions == std::vector<std::string>{"cayley", "bass_serre"});
  CHECK(c.seed == 77);
  CHECK(c.schreier.l_ver == std::optional<int>(5));
  CHECK(c.growth.alpha == Ratio(3, 4));
  CHECK(parse_config(to_yaml(c)) == c);
}

TEST_CASE("seeded configs round trip") {
  SplitMix64 rng(404);
  for (int i = 0; i < 50; ++i) {
    auto c = reference_configs()[rng.below(reference_configs().size())].second;
    c.seed = rng.next();
    c.threads = static_cast<unsigned>(rng.between(1, 16));
    c.growth.alpha = Ratio(static_cast<long>(rng.between(1, 9)), static_cast<long>(rng.between(1, 9)));
    c.commutators.c = Ratio(static_cast<long>(rng.between(1, 9)), static_cast<long>(rng.between(1, 9)));
    if (rng.below(2)) c.schreier.l_ver = static_cast<int>(rng.between(0, 20));
    if (rng.below(2)) c.growth.kernel_order = rng.between(1, 100);
    CHECK(parse_config(to_yaml(c)) == c);
  }
}

TEST_CASE("malformed configs carry positions") {
  CHECK(error_of("group: free(2)\nu: [a, c]\n").starts_with("t.yaml:2:8:"));
  CHECK(error_of("group: free(2)\nbogus: 1\n").starts_with("t.yaml:2:1:"));
  CHECK(error_of("group: free(2)\nthreads: 0\n").starts_with("t.yaml:2:10:"));
  CHECK(error_of("group: free(2)\ngrowth:\n  n_max: ten\n").starts_with("t.yaml:3:10:"));
  CHECK(error_of("group: nope(2)\n").starts_with("t.yaml:1:8:"));
  CHECK(error_of("group: free(2)\nu: [a\n").starts_with("t.yaml:"));
  CHECK(error_of("u: [a]\n").find("missing key 'group'") != std::string::npos);
  CHECK(error_of("group: direct(free(2), free(2))\naction: [cayley]\n").find("1 trees for 2 factors") !=
        std::string::npos);
  CHECK(error_of("group: free(2)\nschreier: {subgroup: center}\n").find("'ker' or 'stab <point>'") !=
        std::string::npos);
  CHECK(error_of("group: free(2)\ngrowth: {alpha: 1/0}\n").starts_with("t.yaml:2:17:"));
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CsvWriter w({"x", "y"});
  w.row({"1", "[a, b]"});
  CHECK(w.str() == "x,y\r\n1,\"[a, b]\"\r\n");
  CHECK_THROWS_AS(w.row({"1"}), InvariantViolation);
}

TEST_CASE("commands on the reference configs") {
  for (const auto& [name, c] : reference_configs()) {
    INFO(name);
    const auto a = run_command(name, c);
    CHECK(a.command == name);
    CHECK(a.status == (name == "transfer" ? kInconclusive : kOk));
    const auto v = verify_certificate(name, c, a.certificate);
    for (const auto& f : v.failures) INFO(f);
    CHECK(v.ok);
  }
}

TEST_CASE("growth artifact matches the closed form") {
  auto c = reference_configs()[6].second;
  REQUIRE(c.growth.n_max == 10);
  const auto a = run_command("growth", c);
  CHECK(a.csv.starts_with("n,count_exact,cumulative,new_elements,bound_value,verdict\r\n"
                          "1,4,5,4,4.000000,satisfied\r\n"
                          "2,13,17,12,16.000000,violated\r\n"));
  long lines = 0;
  for (char ch : a.csv) lines += ch == '\n';
  CHECK(lines == 11);
  CHECK(a.certificate.find("cumulative: [1, 5, 17, 53, 161, 485, 1457, 4373, 13121, 39365, 118097]") !=
        std::string::npos);
}

TEST_CASE("loxo on Z2*Z3 certifies a short element") {
  const auto a = run_command("loxo", reference_configs()[2].second);
  CHECK(a.certificate.find("tau: 2") != std::string::npos);
}

static bool rejected(const std::string& command, const ExperimentConfig& c, const std::string& cert) {
  try {
    return !verify_certificate(command, c, cert).ok;
  } catch (const ConfigError&) {
    return true;
  }
}

TEST_CASE("verify rejects tampered certificates") {
  // One recomputable field per command, and a replacement value.
  const std::vector<std::pair<std::string, std::string>> edits{
      {"lambda_min: 2", "lambda_min: 1"},   {"", ""},
      {"tau: 2", "tau: 3"},                 {"words_checked: 127", "words_checked: 126"},
      {"kappa: 7", "kappa: 3"},    {"index: 3", "index: 2"},
      {"exact: [1, 4, 13,", "exact: [1, 4, 12,"}, {"\"2 17 97 ", "\"2 17 96 "},
      {"kind: \"general\"", "kind: \"lineal\""}};
  const auto configs = reference_configs();
  REQUIRE(configs.size() == edits.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& [name, c] = configs[i];
    if (edits[i].first.empty()) continue;
    INFO(name);
    auto cert = run_command(name, c).certificate;
    const auto pos = cert.find(edits[i].first);
    REQUIRE(pos != std::string::npos);
    CHECK_FALSE(rejected(name, c, cert));
    cert.replace(pos, edits[i].first.size(), edits[i].second);
    CHECK(rejected(name, c, cert));
  }
  CHECK(rejected("growth", configs[6].second, "command: \"loxo\"\ngroup: \"free(2)\"\nu: []\n"));
  CHECK(rejected("growth", configs[6].second, "[not, a, map]"));
}

TEST_CASE("command preconditions map to statuses") {
  auto c = reference_configs()[3].second;  // pingpong
  c.pingpong.h = "";
  CHECK_THROWS_AS(run_command("pingpong", c), ConfigError);
  c = reference_configs()[2].second;  // loxo
  c.group = GroupSpec::direct({GroupSpec::free(2), GroupSpec::free(2)});
  c.u = {"a1"};
  CHECK_THROWS_AS(run_command("loxo", c), ConfigError);
  CHECK_THROWS_AS(run_command("nonsense", c), ConfigError);
  c = reference_configs()[6].second;
  c.cap_elements = 100;
  CHECK(run_command("growth", c).status == kInconclusive);
}

TEST_CASE("repeated runs are byte identical") {
  for (const auto& [name, c] : reference_configs()) {
    INFO(name);
    auto other = c;
    other.threads = 3;
    const auto a = run_command(name, c), b = run_command(name, other);
    CHECK(a.csv == b.csv);
    CHECK(a.certificate == b.certificate);
  }
}

TEST_CASE("suite smoke run") {
  SuiteOptions o;
  o.scale = 0;
  const auto r = run_acceptance(o, {1, 2, 3, 5, 9});
  REQUIRE(r.size() == 5);
  for (const auto& x : r) {
    INFO(x.detail);
    CHECK(x.passed);
  }
}

TEST_CASE("shipped configs are the reference configs") {
  for (const auto& [name, c] : reference_configs()) {
    INFO(name);
    CHECK(load_config(std::string(PSG_CONFIG_DIR) + "/" + name + ".yaml") == c);
  }
  const auto suite = load_config(std::string(PSG_CONFIG_DIR) + "/suite.yaml");
  CHECK(suite.suite.scale == 1);
}
