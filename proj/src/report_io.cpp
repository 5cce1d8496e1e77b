#include "morreykit/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "morreykit/errors.hpp"

namespace morreykit {

std::string format_double(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

void JsonWriter::comma() {
  if (!first_.empty()) {
    if (!first_.back()) out_ += ",";
    first_.back() = false;
  }
}

void JsonWriter::emit_key(const std::string& key) {
  comma();
  out_ += "\"" + json_escape(key) + "\":";
}

JsonWriter& JsonWriter::begin_object() {
  if (!first_.empty() && out_.back() != ':') comma();
  out_ += "{";
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += "}";
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& key) {
  if (!key.empty()) emit_key(key);
  out_ += "[";
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += "]";
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, double value) {
  emit_key(key);
  out_ += format_double(value);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, int value) {
  emit_key(key);
  out_ += std::to_string(value);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, long value) {
  emit_key(key);
  out_ += std::to_string(value);
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, bool value) {
  emit_key(key);
  out_ += value ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const std::string& value) {
  emit_key(key);
  out_ += "\"" + json_escape(value) + "\"";
  return *this;
}

JsonWriter& JsonWriter::field(const std::string& key, const char* value) {
  return field(key, std::string(value));
}

JsonWriter& JsonWriter::key(const std::string& k) {
  emit_key(k);
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  comma();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  comma();
  out_ += "\"" + json_escape(v) + "\"";
  return *this;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ += ",";
    out_ += header[i];
  }
  out_ += "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_)
    throw std::logic_error("csv: row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ",";
    out_ += cells[i];
  }
  out_ += "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw config_error("cannot open output file: " + path);
  os << content;
}

}  // namespace morreykit
