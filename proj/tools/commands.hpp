#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gvb::cli {

enum ExitCode : int { kOk = 0, kFails = 1, kInputError = 2 };

enum class Format { text, kv };

/// Ordered key/value report. Text format writes "key: value", kv writes "key=value".
class Report {
 public:
  void add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
  void flag(const std::string& key, bool value) { add(key, value ? "true" : "false"); }
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  void write(std::ostream& out, Format format) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct Options {
  std::string command;
  /// Optional for selftest only.
  std::string model_path;
  std::optional<std::string> report_path;
  Format format = Format::text;
  int max_jet_order = 8;
  std::uint64_t seed = 1;
};

const std::vector<std::string>& command_names();

/// Runs one command. The report goes to `out` (or the --report file); diagnostics to `err`.
int run_command(const Options& options, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and runs the command.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gvb::cli
