#pragma once

// File formats for the command-line tool: fixed 17-digit JSON/CSV output,
// config schemas, SHA-256 digests.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace dwl::io {

using Json = nlohmann::json;

// "%.17g"; non-finite values become null (JSON) or nan/inf (CSV).
std::string format_double(double x);

// Sorted keys, two-space indent, every float through format_double.
std::string dump(const Json& j);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
  std::string csv() const;
  Json json() const;  // {"columns": [...], "rows": [[...]]}
};

enum class Format { csv, json };

Json read_json_file(const std::filesystem::path& p);  // missing -> missing_input, bad JSON -> usage
std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& content);

std::string sha256_hex(const std::string& data);

// Minimal structural schema: every key typed, unknown keys rejected.
struct Schema {
  enum class Type { any, boolean, integer, number, string, array, object };
  struct Field {
    Type type = Type::any;
    bool required = false;
    const Schema* nested = nullptr;  // for objects
  };
  std::map<std::string, Field> fields;
  bool open = false;  // accept keys not listed (params blocks)

  // Throws a usage error naming the offending path.
  void validate(const Json& j, const std::string& path = "config") const;
};

// "a.b.c=value": value parsed as JSON when possible, else kept as a string.
void apply_override(Json& config, const std::string& assignment);

}  // namespace dwl::io
