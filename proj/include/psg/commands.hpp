#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "psg/config.hpp"

namespace psg {

// Exit statuses shared by the driver and the suite.
enum Status : int { kOk = 0, kConfigError = 2, kInconclusive = 3, kViolation = 4 };

// RFC 4180: fields with a comma, quote, CR or LF are quoted, quotes doubled, lines end in CRLF.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return out_; }

 private:
  void line(const std::vector<std::string>& fields);
  std::size_t width_;
  std::string out_;
};

std::string csv_field(std::string_view s);

// Fixed-precision decimal used for every float that reaches an artifact.
std::string display(double x);

struct Artifacts {
  std::string command;
  std::string csv;
  std::string certificate;            // YAML
  std::vector<std::string> summary;   // human-readable lines
  int status = kOk;
};

const std::vector<std::string>& command_names();

// Runs one subcommand. Domain exceptions are mapped to statuses by the caller.
Artifacts run_command(const std::string& command, const ExperimentConfig& config);

struct VerifyOutcome {
  bool ok = true;
  std::vector<std::string> failures;
};

// Re-checks a certificate against the config that produced it, by recomputation that does
// not reuse the certificate's own derivation where an independent route exists.
VerifyOutcome verify_certificate(const std::string& command, const ExperimentConfig& config,
                                 std::string_view certificate);

}  // namespace psg
