#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "dwl/errors.hpp"

namespace dwl::io {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void emit(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        emit(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const Json& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        emit(e, out, depth + 1);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  emit(j, out, 0);
  out += "\n";
  return out;
}

void Table::add(std::vector<double> row) {
  require(row.size() == columns.size(), ErrorKind::invariant, "table row width mismatch");
  rows.push_back(std::move(row));
}

std::string Table::csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

Json Table::json() const {
  Json j;
  j["columns"] = columns;
  j["rows"] = Json::array();
  for (const auto& row : rows) j["rows"].push_back(row);
  return j;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::missing_input, "cannot open " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_json_file(const std::filesystem::path& p) {
  require(std::filesystem::is_regular_file(p), ErrorKind::missing_input, "missing file " + p.string());
  const std::string text = read_file(p);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::usage, p.string() + ": invalid JSON: " + e.what());
  }
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorKind::missing_input, "cannot write " + p.string());
  out << content;
  require(static_cast<bool>(out), ErrorKind::missing_input, "write failed for " + p.string());
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  require(EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) == 1, ErrorKind::integrity,
          "SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

namespace {

bool matches(const Json& v, Schema::Type t) {
  switch (t) {
    case Schema::Type::any: return true;
    case Schema::Type::boolean: return v.is_boolean();
    case Schema::Type::integer: return v.is_number_integer();
    case Schema::Type::number: return v.is_number();
    case Schema::Type::string: return v.is_string();
    case Schema::Type::array: return v.is_array();
    case Schema::Type::object: return v.is_object();
  }
  return false;
}

const char* type_name(Schema::Type t) {
  switch (t) {
    case Schema::Type::any: return "any";
    case Schema::Type::boolean: return "boolean";
    case Schema::Type::integer: return "integer";
    case Schema::Type::number: return "number";
    case Schema::Type::string: return "string";
    case Schema::Type::array: return "array";
    case Schema::Type::object: return "object";
  }
  return "?";
}

}  // namespace

void Schema::validate(const Json& j, const std::string& path) const {
  require(j.is_object(), ErrorKind::usage, path + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto f = fields.find(it.key());
    if (f == fields.end()) {
      require(open, ErrorKind::usage, path + ": unknown key \"" + it.key() + "\"");
      continue;
    }
    require(matches(it.value(), f->second.type), ErrorKind::usage,
            path + "." + it.key() + ": expected " + type_name(f->second.type));
    if (f->second.nested) f->second.nested->validate(it.value(), path + "." + it.key());
  }
  for (const auto& [key, f] : fields)
    require(!f.required || j.contains(key), ErrorKind::usage, path + ": missing required key \"" + key + "\"");
}

void apply_override(Json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  require(eq != std::string::npos && eq > 0, ErrorKind::usage, "--set expects key=value, got \"" + assignment + "\"");
  const std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(text);
  } catch (const Json::parse_error&) {
    value = text;
  }
  Json* node = &config;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    require(!part.empty(), ErrorKind::usage, "--set: empty key segment in \"" + key + "\"");
    if (!node->is_object()) *node = Json::object();
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

}  // namespace dwl::io
