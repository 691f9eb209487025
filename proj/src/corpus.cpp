#include "sumaudit/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace sumaudit {

std::string_view to_string(Split split) {
  switch (split) {
    case Split::train: return "train";
    case Split::validation: return "validation";
    case Split::test: return "test";
  }
  return "train";
}

std::optional<Split> parse_split(std::string_view name) {
  if (name == "train") return Split::train;
  if (name == "validation") return Split::validation;
  if (name == "test") return Split::test;
  return std::nullopt;
}

namespace {

// Calls fn(line_text, zero_based_index) for every line. A single trailing
// newline does not start a new line; CRLF endings are accepted.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t index = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(line, index++);
  }
}

Json parse_object(const std::string& line, std::size_t index) {
  Json obj;
  try {
    obj = Json::parse(line);
  } catch (const Json::exception& e) {
    throw FormatError("malformed JSON at line " + std::to_string(index + 1) + ": " + e.what(),
                      index + 1);
  }
  if (!obj.is_object()) {
    throw FormatError("expected a JSON object at line " + std::to_string(index + 1), index + 1);
  }
  return obj;
}

std::string take_string(Json& obj, const char* key, std::size_t index) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FormatError("missing key " + std::string(key) + " at line " + std::to_string(index + 1),
                      index + 1);
  }
  if (!it->is_string()) {
    throw FormatError("key " + std::string(key) + " is not a string at line " +
                          std::to_string(index + 1),
                      index + 1);
  }
  std::string value = it->get<std::string>();
  obj.erase(it);
  return value;
}

}  // namespace

Corpus read_jsonl(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> ids;
  for_each_line(in, [&](const std::string& line, std::size_t index) {
    Json obj = parse_object(line, index);
    Sample sample;
    sample.reference = take_string(obj, "reference", index);
    sample.summary = take_string(obj, "summary", index);
    if (obj.contains("id")) {
      sample.id = take_string(obj, "id", index);
      if (sample.id.empty()) {
        throw FormatError("empty id at line " + std::to_string(index + 1), index + 1);
      }
    } else {
      sample.id = std::to_string(index);
    }
    if (obj.contains("split")) {
      const std::string name = take_string(obj, "split", index);
      sample.split = parse_split(name);
      if (!sample.split) {
        throw FormatError("unknown split '" + name + "' at line " + std::to_string(index + 1),
                          index + 1);
      }
    }
    if (!ids.insert(sample.id).second) {
      throw FormatError("duplicate id '" + sample.id + "' at line " + std::to_string(index + 1),
                        index + 1);
    }
    sample.extra = std::move(obj);
    corpus.samples.push_back(std::move(sample));
  });
  return corpus;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Corpus load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_jsonl(in);
}

std::string to_json_line(const Sample& sample) {
  Json obj = Json::object();
  obj["id"] = sample.id;
  obj["reference"] = sample.reference;
  obj["summary"] = sample.summary;
  if (sample.split) obj["split"] = std::string(to_string(*sample.split));
  for (const auto& [key, value] : sample.extra.items()) obj[key] = value;
  return obj.dump(-1, ' ', false, Json::error_handler_t::replace);
}

void write_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& sample : corpus.samples) out << to_json_line(sample) << '\n';
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void write_jsonl(const Corpus& corpus, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_jsonl(corpus, out);
  if (!out.flush()) throw IoError("write failed for " + path.string());
}

std::vector<SystemSummary> read_system_jsonl(std::istream& in) {
  std::vector<SystemSummary> outputs;
  for_each_line(in, [&](const std::string& line, std::size_t index) {
    Json obj = parse_object(line, index);
    SystemSummary s;
    s.id = take_string(obj, "id", index);
    s.summary = take_string(obj, "summary", index);
    outputs.push_back(std::move(s));
  });
  return outputs;
}

std::vector<SystemSummary> load_system_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_system_jsonl(in);
}

void write_system_jsonl(const std::vector<SystemSummary>& outputs, std::ostream& out) {
  for (const auto& s : outputs) {
    Json obj = Json::object();
    obj["id"] = s.id;
    obj["summary"] = s.summary;
    out << obj.dump(-1, ' ', false, Json::error_handler_t::replace) << '\n';
  }
}

void write_system_jsonl(const std::vector<SystemSummary>& outputs,
                        const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_system_jsonl(outputs, out);
  if (!out.flush()) throw IoError("write failed for " + path.string());
}

}  // namespace sumaudit
