#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace morreykit {

/// Fixed-format float: 17 significant digits, C locale, so identical inputs
/// serialize to identical bytes.
std::string format_double(double v);

/// Minimal ordered JSON emitter. Keys keep insertion order and numbers go
/// through format_double, which pins the summary bytes for a given run.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array(const std::string& key = "");
  JsonWriter& end_array();
  JsonWriter& field(const std::string& key, double value);
  JsonWriter& field(const std::string& key, int value);
  JsonWriter& field(const std::string& key, long value);
  JsonWriter& field(const std::string& key, bool value);
  JsonWriter& field(const std::string& key, const std::string& value);
  JsonWriter& field(const std::string& key, const char* value);
  JsonWriter& key(const std::string& key);  // followed by begin_object/array
  JsonWriter& value(double v);
  JsonWriter& value(const std::string& v);

  std::string str() const { return out_; }

 private:
  void comma();
  void emit_key(const std::string& key);
  std::string out_;
  std::vector<bool> first_;
};

std::string json_escape(const std::string& s);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const { return out_; }

  static std::string cell(double v) { return format_double(v); }

 private:
  std::string out_;
  std::size_t width_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace morreykit
