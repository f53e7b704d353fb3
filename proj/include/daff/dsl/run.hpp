#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "daff/dsl/document.hpp"
#include "daff/verify/suites.hpp"

namespace daff::dsl {

struct Record {
  std::string name;
  verify::Status status = verify::Status::Pass;
  std::optional<std::string> witness;
  std::uint64_t seed = 0;
  std::optional<std::string> detail;  // construction output for build commands

  friend bool operator==(const Record&, const Record&) = default;
};

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<Record> records;  // sorted by name
  Document produced;            // objects emitted by build commands

  bool passed() const;
};

extern const std::vector<std::string> kSuites;
extern const std::vector<std::string> kOps;

// command is "check", "build:<op>" or "verify:<suite>". Throws UnknownOp,
// UnknownSuite and the lowering errors.
Report run(const Document& doc, const std::string& command, std::uint64_t seed = 0, int trials = 100);

std::string render_text(const Report& r);
std::string render_json(const Report& r);

}  // namespace daff::dsl
