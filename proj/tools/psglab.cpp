// psglab: run one experiment from a YAML config and write its CSV table and certificate.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "psg/commands.hpp"
#include "psg/config.hpp"
#include "psg/error.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw psg::ConfigError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw psg::ConfigError("cannot write " + p.string());
  out << text;
}

struct Args {
  std::string command;
  std::string config;
  std::string out;
  bool verify = false;
  unsigned threads = 0;
  std::size_t cap = 0;
};

// Certificate location: <out>/<command>.cert.yaml when --out is a directory, else --out itself.
fs::path certificate_path(const Args& a) {
  const fs::path out(a.out);
  if (fs::is_directory(out) || a.out.ends_with('/')) return out / (a.command + ".cert.yaml");
  return out;
}

int run(const Args& a) {
  psg::ExperimentConfig config;
  if (!a.config.empty()) {
    config = psg::load_config(a.config);
  } else if (a.command != "suite") {
    throw psg::ConfigError("--config is required for " + a.command);
  }
  if (a.threads) config.threads = a.threads;
  if (a.cap) config.cap_elements = a.cap;

  if (a.verify) {
    if (a.out.empty()) throw psg::ConfigError("--verify reads the certificate named by --out");
    const auto path = certificate_path(a);
    const auto outcome = psg::verify_certificate(a.command, config, read_file(path));
    for (const auto& f : outcome.failures) std::cerr << "verify: " << f << "\n";
    std::cout << path.string() << ": " << (outcome.ok ? "verified" : "REJECTED") << "\n";
    return outcome.ok ? psg::kOk : psg::kViolation;
  }

  const auto art = psg::run_command(a.command, config);
  if (a.out.empty()) {
    std::cout << art.csv;
    for (const auto& line : art.summary) std::cerr << line << "\n";
  } else {
    fs::path dir(a.out);
    fs::create_directories(dir);
    write_file(dir / (a.command + ".csv"), art.csv);
    write_file(dir / (a.command + ".cert.yaml"), art.certificate);
    for (const auto& line : art.summary) std::cout << line << "\n";
  }
  return art.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Product-set growth experiments on groups acting on trees"};
  Args a;
  std::string names;
  for (const auto& n : psg::command_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("command", a.command, "one of: " + names)->required()->check(CLI::IsMember(psg::command_names()));
  app.add_option("--config", a.config, "YAML experiment config");
  app.add_option("--out", a.out, "directory for <command>.csv and <command>.cert.yaml");
  app.add_flag("--verify", a.verify, "re-check the certificate under --out instead of running");
  app.add_option("--threads", a.threads, "worker threads for enumeration")->check(CLI::Range(1u, 256u));
  app.add_option("--cap-elements", a.cap, "element cap for enumeration")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : psg::kConfigError;
  }
  try {
    return run(a);
  } catch (const psg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return psg::kConfigError;
  } catch (const psg::StructuralError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return psg::kConfigError;
  } catch (const psg::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return psg::kViolation;
  } catch (const psg::InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return psg::kInconclusive;
  } catch (const psg::ResourceLimitError& e) {
    std::cerr << "inconclusive (resource cap): " << e.what() << "\n";
    return psg::kInconclusive;
  } catch (const psg::PreconditionError& e) {
    std::cerr << "hypothesis unmet: " << e.what() << "\n";
    return psg::kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return psg::kViolation;
  }
}
