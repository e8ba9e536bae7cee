#include "psg/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "psg/error.hpp"
#include "text.hpp"

namespace psg {

Ratio parse_ratio(std::string_view text) {
  const auto t = text::trim(text);
  const auto slash = t.find('/');
  const long num = text::parse_int(t.substr(0, slash));
  const long den = slash == std::string_view::npos ? 1 : text::parse_int(t.substr(slash + 1));
  if (den == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
  return Ratio(num, den);
}

std::string format_ratio(Ratio r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& msg) const {
    const auto m = n.Mark();
    if (m.is_null()) throw ConfigError(source_ + ": " + msg);
    throw ConfigError(source_ + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1) + ": " + msg);
  }

  void map(const YAML::Node& n, const std::string& where, std::initializer_list<std::string_view> keys) const {
    if (!n.IsMap()) fail(n, where + " must be a mapping");
    for (const auto& kv : n) {
      const auto key = kv.first.as<std::string>();
      bool known = false;
      for (auto k : keys) known = known || k == key;
      if (!known) fail(kv.first, "unknown key '" + key + "' in " + where);
    }
  }

  std::string string(const YAML::Node& n, const std::string& what) const {
    if (!n.IsScalar()) fail(n, what + " must be a scalar");
    return n.Scalar();
  }

  template <class T>
  T integer(const YAML::Node& n, const std::string& what, T lo, T hi) const {
    if (!n.IsScalar()) fail(n, what + " must be an integer");
    T v{};
    try {
      v = n.as<T>();
    } catch (const YAML::BadConversion&) {
      fail(n, what + " must be an integer, got '" + n.Scalar() + "'");
    }
    if (v < lo || v > hi) fail(n, what + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  bool boolean(const YAML::Node& n, const std::string& what) const {
    if (!n.IsScalar()) fail(n, what + " must be true or false");
    try {
      return n.as<bool>();
    } catch (const YAML::BadConversion&) {
      fail(n, what + " must be true or false, got '" + n.Scalar() + "'");
    }
  }

  Ratio ratio(const YAML::Node& n, const std::string& what) const {
    Ratio r;
    try {
      r = parse_ratio(string(n, what));
    } catch (const PreconditionError& e) {
      fail(n, what + ": " + e.what());
    }
    if (r <= 0) fail(n, what + " must be positive");
    return r;
  }

  std::vector<std::string> strings(const YAML::Node& n, const std::string& what) const {
    if (!n.IsSequence()) fail(n, what + " must be a list");
    std::vector<std::string> out;
    for (const auto& x : n) out.push_back(string(x, what + " entry"));
    return out;
  }

 private:
  std::string source_;
};

constexpr long kBig = 1'000'000'000;

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" + std::to_string(e.mark.column + 1) +
                      ": " + e.msg);
  }
  const Reader r(source);
  if (!root.IsMap()) r.fail(root, "the config must be a mapping");
  r.map(root, "the config",
        {"group", "action", "u", "seed", "threads", "cap_elements", "displace", "transfer", "pingpong", "freebase",
         "schreier", "growth", "commutators", "classify", "suite"});

  ExperimentConfig c;
  if (!root["group"]) r.fail(root, "missing key 'group'");
  try {
    c.group = parse_group_spec(r.string(root["group"], "group"));
  } catch (const PreconditionError& e) {
    r.fail(root["group"], std::string("group: ") + e.what());
  }
  const Group group(c.group);

  if (const auto a = root["action"]) {
    if (a.IsScalar()) {
      if (a.Scalar() != "standard") r.fail(a, "action must be 'standard' or a list of tree kinds");
    } else {
      c.actions = r.strings(a, "action");
      for (std::size_t i = 0; i < c.actions.size(); ++i)
        if (c.actions[i] != "cayley" && c.actions[i] != "bass_serre")
          r.fail(a[i], "tree kind must be cayley or bass_serre, got '" + c.actions[i] + "'");
      const std::size_t factors = c.group.kind == GroupSpec::Kind::DirectProduct ? c.group.factors.size() : 1;
      if (c.actions.size() != factors)
        r.fail(a, "action lists " + std::to_string(c.actions.size()) + " trees for " + std::to_string(factors) +
                      " factors");
    }
  }
  auto word = [&](const YAML::Node& n, const std::string& what) {
    const auto w = r.string(n, what);
    try {
      (void)group.parse_word(w);
    } catch (const std::exception& e) {
      r.fail(n, what + ": " + e.what());
    }
    return w;
  };
  if (const auto u = root["u"]) {
    if (!u.IsSequence()) r.fail(u, "u must be a list of words");
    for (const auto& x : u) c.u.push_back(word(x, "u entry"));
  }
  if (const auto n = root["seed"]) c.seed = r.integer<std::uint64_t>(n, "seed", 0, UINT64_MAX);
  if (const auto n = root["threads"]) c.threads = r.integer<unsigned>(n, "threads", 1, 256);
  if (const auto n = root["cap_elements"])
    c.cap_elements = r.integer<std::size_t>(n, "cap_elements", 1, std::size_t{1} << 40);

  if (const auto s = root["displace"]) {
    r.map(s, "displace", {"radius"});
    if (s["radius"]) c.displace.radius = r.integer<int>(s["radius"], "displace.radius", 0, 12);
  }
  if (const auto s = root["transfer"]) {
    r.map(s, "transfer", {"m"});
    if (s["m"]) c.transfer.m = r.integer<long>(s["m"], "transfer.m", 0, kBig);
  }
  if (const auto s = root["pingpong"]) {
    r.map(s, "pingpong", {"g", "h", "depth"});
    if (s["g"]) c.pingpong.g = word(s["g"], "pingpong.g");
    if (s["h"]) c.pingpong.h = word(s["h"], "pingpong.h");
    if (s["depth"]) c.pingpong.depth = r.integer<int>(s["depth"], "pingpong.depth", 1, 24);
  }
  if (const auto s = root["freebase"]) {
    r.map(s, "freebase", {"depth", "f_bound"});
    if (s["depth"]) c.freebase.depth = r.integer<int>(s["depth"], "freebase.depth", 1, 24);
    if (s["f_bound"]) c.freebase.f_bound = r.integer<int>(s["f_bound"], "freebase.f_bound", 0, 8);
  }
  if (const auto s = root["schreier"]) {
    r.map(s, "schreier", {"degree", "images", "subgroup", "l_ver", "general"});
    if (s["degree"]) c.schreier.degree = r.integer<int>(s["degree"], "schreier.degree", 1, 12);
    if (s["images"]) c.schreier.images = r.string(s["images"], "schreier.images");
    if (s["subgroup"]) {
      c.schreier.subgroup = r.string(s["subgroup"], "schreier.subgroup");
      const auto parts = text::split_ws(c.schreier.subgroup);
      const bool ok = (parts.size() == 1 && parts[0] == "ker") || (parts.size() == 2 && parts[0] == "stab");
      if (!ok) r.fail(s["subgroup"], "schreier.subgroup must be 'ker' or 'stab <point>'");
    }
    if (s["l_ver"]) c.schreier.l_ver = r.integer<int>(s["l_ver"], "schreier.l_ver", 0, 64);
    if (s["general"]) c.schreier.general = r.boolean(s["general"], "schreier.general");
  }
  if (const auto s = root["growth"]) {
    r.map(s, "growth", {"n_max", "alpha", "beta", "chain_d", "kernel_order"});
    if (s["n_max"]) c.growth.n_max = r.integer<int>(s["n_max"], "growth.n_max", 1, 64);
    if (s["alpha"]) c.growth.alpha = r.ratio(s["alpha"], "growth.alpha");
    if (s["beta"]) c.growth.beta = r.ratio(s["beta"], "growth.beta");
    if (s["chain_d"]) c.growth.chain_d = r.integer<int>(s["chain_d"], "growth.chain_d", 1, 6);
    if (s["kernel_order"])
      c.growth.kernel_order = r.integer<std::uint64_t>(s["kernel_order"], "growth.kernel_order", 1, kBig);
  }
  if (const auto s = root["commutators"]) {
    r.map(s, "commutators", {"n", "c"});
    if (s["n"]) c.commutators.n = r.integer<int>(s["n"], "commutators.n", 1, 16);
    if (s["c"]) c.commutators.c = r.ratio(s["c"], "commutators.c");
  }
  if (const auto s = root["classify"]) {
    r.map(s, "classify", {"radius"});
    if (s["radius"]) c.classify.radius = r.integer<int>(s["radius"], "classify.radius", 1, 8);
  }
  if (const auto s = root["suite"]) {
    r.map(s, "suite", {"scale"});
    if (s["scale"]) c.suite.scale = r.integer<int>(s["scale"], "suite.scale", 0, 1);
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string to_yaml(const ExperimentConfig& c) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "group" << YAML::Value << YAML::DoubleQuoted << c.group.describe();
  out << YAML::Key << "action" << YAML::Value;
  if (c.actions.empty()) {
    out << "standard";
  } else {
    out << YAML::Flow << YAML::BeginSeq;
    for (const auto& a : c.actions) out << a;
    out << YAML::EndSeq;
  }
  out << YAML::Key << "u" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const auto& w : c.u) out << YAML::DoubleQuoted << w;
  out << YAML::EndSeq;
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "threads" << YAML::Value << c.threads;
  out << YAML::Key << "cap_elements" << YAML::Value << c.cap_elements;

  auto section = [&](const char* name) { out << YAML::Key << name << YAML::Value << YAML::BeginMap; };
  auto end = [&] { out << YAML::EndMap; };
  auto text = [&](const char* key, const std::string& v) {
    out << YAML::Key << key << YAML::Value << YAML::DoubleQuoted << v;
  };

  section("displace");
  out << YAML::Key << "radius" << YAML::Value << c.displace.radius;
  end();
  section("transfer");
  out << YAML::Key << "m" << YAML::Value << c.transfer.m;
  end();
  section("pingpong");
  if (!c.pingpong.g.empty()) text("g", c.pingpong.g);
  if (!c.pingpong.h.empty()) text("h", c.pingpong.h);
  out << YAML::Key << "depth" << YAML::Value << c.pingpong.depth;
  end();
  section("freebase");
  out << YAML::Key << "depth" << YAML::Value << c.freebase.depth;
  out << YAML::Key << "f_bound" << YAML::Value << c.freebase.f_bound;
  end();
  section("schreier");
  out << YAML::Key << "degree" << YAML::Value << c.schreier.degree;
  text("images", c.schreier.images);
  text("subgroup", c.schreier.subgroup);
  if (c.schreier.l_ver) out << YAML::Key << "l_ver" << YAML::Value << *c.schreier.l_ver;
  out << YAML::Key << "general" << YAML::Value << c.schreier.general;
  end();
  section("growth");
  out << YAML::Key << "n_max" << YAML::Value << c.growth.n_max;
  text("alpha", format_ratio(c.growth.alpha));
  text("beta", format_ratio(c.growth.beta));
  if (c.growth.chain_d) out << YAML::Key << "chain_d" << YAML::Value << *c.growth.chain_d;
  if (c.growth.kernel_order) out << YAML::Key << "kernel_order" << YAML::Value << *c.growth.kernel_order;
  end();
  section("commutators");
  out << YAML::Key << "n" << YAML::Value << c.commutators.n;
  text("c", format_ratio(c.commutators.c));
  end();
  section("classify");
  out << YAML::Key << "radius" << YAML::Value << c.classify.radius;
  end();
  section("suite");
  out << YAML::Key << "scale" << YAML::Value << c.suite.scale;
  end();
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace psg
