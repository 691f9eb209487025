#pragma once

// Summarization corpus data model and JSONL exchange format.
//
// One JSON object per line. Required keys: "reference", "summary" (strings).
// Optional: "id" (string, defaults to the 0-based line index), "split"
// ("train" | "validation" | "test"). Every other key is carried through
// untouched in Sample::extra.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sumaudit {

using Json = nlohmann::ordered_json;

enum class Split { train, validation, test };

std::string_view to_string(Split split);
std::optional<Split> parse_split(std::string_view name);

struct Sample {
  std::string id;
  std::string reference;
  std::string summary;
  std::optional<Split> split;
  Json extra = Json::object();

  bool operator==(const Sample&) const = default;
};

struct Corpus {
  std::vector<Sample> samples;
  std::optional<std::string> split_label;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }

  bool operator==(const Corpus&) const = default;
};

// Raised for any malformed input record. line() is 1-based; 0 when the error
// is not tied to a line.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Corpus read_jsonl(std::istream& in);
Corpus load_jsonl(const std::filesystem::path& path);

void write_jsonl(const Corpus& corpus, std::ostream& out);
void write_jsonl(const Corpus& corpus, const std::filesystem::path& path);

// Serialized form of a single sample (no trailing newline).
std::string to_json_line(const Sample& sample);

/// A system-generated summary keyed by sample id; {"id":…, "summary":…}.
struct SystemSummary {
  std::string id;
  std::string summary;

  bool operator==(const SystemSummary&) const = default;
};

std::vector<SystemSummary> read_system_jsonl(std::istream& in);
std::vector<SystemSummary> load_system_jsonl(const std::filesystem::path& path);
void write_system_jsonl(const std::vector<SystemSummary>& outputs, std::ostream& out);
void write_system_jsonl(const std::vector<SystemSummary>& outputs,
                        const std::filesystem::path& path);

// Helpers shared by the file writers.
std::ofstream open_for_write(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);

}  // namespace sumaudit
