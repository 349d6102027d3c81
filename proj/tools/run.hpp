#pragma once

// Batch driver behind the koszulcheck binary. Exit codes: 0 every selected
// check passed, 1 a mathematical verdict is negative, 2 input or usage error.

#include <iosfwd>
#include <set>

#include "koszul/io.hpp"

namespace koszul::cli {

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"condition_I", "condition_J", "oracle",          "pbw",
                                              "ec",          "tor3",        "koszul_complex",  "equivariance",
                                              "theorem44",   "dN_zero",     "contraction",     "wedge_agreement"};
  return names;
}

struct RunConfig {
  std::string input;
  std::size_t degree_bound = 6;
  std::vector<std::string> checks{"all"};
  std::string format = "text";
  unsigned seed = 0;
  std::string out;
};

/// Usage problems detected after parsing (exit code 2).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CheckOutcome {
  std::string name;
  std::string status;  // pass, fail, skipped
  std::string summary;
  json report;
  friend bool operator==(const CheckOutcome&, const CheckOutcome&) = default;
};

struct RunReport {
  std::string input;
  std::size_t degree_bound = 0;
  unsigned seed = 0;
  json presentation;
  std::vector<CheckOutcome> checks;
  int exit_code = 0;
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

void to_json(json& j, const CheckOutcome& c);
void from_json(const json& j, CheckOutcome& c);
void to_json(json& j, const RunReport& r);
void from_json(const json& j, RunReport& r);

/// Parses the document and runs the selected checks; throws InputError or UsageError.
RunReport run(const RunConfig& cfg, const json& document);
/// Reads cfg.input, runs, writes the report; returns the exit code. Errors go to err.
int run_main(const RunConfig& cfg, std::ostream& out, std::ostream& err);

std::string render_text(const RunReport& r);
/// Statement checked by a named check; throws UsageError for unknown names.
std::string explain(const std::string& check);

}  // namespace koszul::cli
