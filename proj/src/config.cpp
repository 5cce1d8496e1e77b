#include "morreykit/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "morreykit/errors.hpp"

namespace morreykit {

namespace {

struct Token {
  enum class Kind { word, string, lbrace, rbrace, lbracket, rbracket, equals, comma, end };
  Kind kind = Kind::end;
  std::string text;
  int line = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    switch (c) {
      case '{': ++pos_; t.kind = Token::Kind::lbrace; return t;
      case '}': ++pos_; t.kind = Token::Kind::rbrace; return t;
      case '[': ++pos_; t.kind = Token::Kind::lbracket; return t;
      case ']': ++pos_; t.kind = Token::Kind::rbracket; return t;
      case '=': ++pos_; t.kind = Token::Kind::equals; return t;
      case ',': ++pos_; t.kind = Token::Kind::comma; return t;
      case '"': {
        ++pos_;
        t.kind = Token::Kind::string;
        while (pos_ < text_.size() && text_[pos_] != '"') {
          if (text_[pos_] == '\n') ++line_;
          t.text += text_[pos_++];
        }
        if (pos_ >= text_.size())
          throw config_error("config line " + std::to_string(t.line) +
                             ": unterminated string");
        ++pos_;
        return t;
      }
      default: {
        t.kind = Token::Kind::word;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               std::string("{}[]=,#\"").find(text_[pos_]) == std::string::npos) {
          t.text += text_[pos_++];
        }
        if (t.text.empty())
          throw config_error("config line " + std::to_string(line_) +
                             ": unexpected character '" + std::string(1, c) + "'");
        return t;
      }
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) { advance(); }

  std::unique_ptr<ConfigNode> parse() {
    auto root = std::make_unique<ConfigNode>();
    parse_body(*root, /*top_level=*/true);
    return root;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw config_error("config line " + std::to_string(current_.line) + ": " + msg);
  }

  void parse_body(ConfigNode& node, bool top_level) {
    for (;;) {
      if (current_.kind == Token::Kind::end) {
        if (!top_level) fail("missing closing brace");
        return;
      }
      if (current_.kind == Token::Kind::rbrace) {
        if (top_level) fail("unmatched closing brace");
        advance();
        return;
      }
      if (current_.kind != Token::Kind::word && current_.kind != Token::Kind::string)
        fail("expected a key");
      const std::string key = current_.text;
      const int key_line = current_.line;
      advance();
      if (current_.kind == Token::Kind::lbrace) {
        advance();
        auto child = std::make_unique<ConfigNode>();
        child->line = key_line;
        parse_body(*child, false);
        if (!node.sections.emplace(key, std::move(child)).second)
          fail("duplicate section '" + key + "'");
      } else if (current_.kind == Token::Kind::equals) {
        advance();
        if (current_.kind == Token::Kind::lbracket) {
          advance();
          std::vector<ConfigNode::Scalar> items;
          while (current_.kind != Token::Kind::rbracket) {
            if (current_.kind == Token::Kind::comma) {
              advance();
              continue;
            }
            if (current_.kind != Token::Kind::word &&
                current_.kind != Token::Kind::string)
              fail("expected a list item");
            items.push_back({current_.text, current_.line});
            advance();
          }
          advance();
          if (!node.lists.emplace(key, std::move(items)).second)
            fail("duplicate key '" + key + "'");
        } else {
          if (current_.kind != Token::Kind::word &&
              current_.kind != Token::Kind::string)
            fail("expected a value for '" + key + "'");
          if (!node.scalars.emplace(key, ConfigNode::Scalar{current_.text, current_.line})
                   .second)
            fail("duplicate key '" + key + "'");
          advance();
        }
      } else {
        fail("expected '=' or '{' after '" + key + "'");
      }
    }
  }

  Lexer lexer_;
  Token current_;
};

double parse_double(const ConfigNode::Scalar& s, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(s.text.c_str(), &end);
  if (end == s.text.c_str() || *end != '\0')
    throw config_error("config line " + std::to_string(s.line) + ": key '" + key +
                       "' is not a number: '" + s.text + "'");
  return v;
}

}  // namespace

bool ConfigNode::has(const std::string& key) const {
  return scalars.count(key) > 0 || lists.count(key) > 0 || sections.count(key) > 0;
}

const ConfigNode::Scalar& ConfigNode::scalar(const std::string& key) const {
  auto it = scalars.find(key);
  if (it == scalars.end())
    throw config_error("config: missing required key '" + key + "'");
  consumed_.insert(key);
  return it->second;
}

double ConfigNode::get_double(const std::string& key) const {
  return parse_double(scalar(key), key);
}

double ConfigNode::get_double(const std::string& key, double fallback) const {
  if (scalars.find(key) == scalars.end()) return fallback;
  return get_double(key);
}

int ConfigNode::get_int(const std::string& key) const {
  const double v = get_double(key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw config_error("config: key '" + key + "' must be an integer");
  return i;
}

int ConfigNode::get_int(const std::string& key, int fallback) const {
  if (scalars.find(key) == scalars.end()) return fallback;
  return get_int(key);
}

bool ConfigNode::get_bool(const std::string& key, bool fallback) const {
  if (scalars.find(key) == scalars.end()) return fallback;
  const std::string v = scalar(key).text;
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw config_error("config: key '" + key + "' must be true or false");
}

std::string ConfigNode::get_string(const std::string& key) const {
  return scalar(key).text;
}

std::string ConfigNode::get_string(const std::string& key,
                                   const std::string& fallback) const {
  if (scalars.find(key) == scalars.end()) return fallback;
  return get_string(key);
}

std::vector<std::string> ConfigNode::get_list(const std::string& key) const {
  auto it = lists.find(key);
  if (it == lists.end())
    throw config_error("config: missing required list '" + key + "'");
  consumed_.insert(key);
  std::vector<std::string> out;
  for (const auto& s : it->second) out.push_back(s.text);
  return out;
}

std::vector<double> ConfigNode::get_double_list(const std::string& key) const {
  auto it = lists.find(key);
  if (it == lists.end())
    throw config_error("config: missing required list '" + key + "'");
  consumed_.insert(key);
  std::vector<double> out;
  for (const auto& s : it->second) out.push_back(parse_double(s, key));
  return out;
}

Vec ConfigNode::get_vec(const std::string& key, Vec fallback) const {
  if (lists.count(key)) {
    const auto v = get_double_list(key);
    if (v.empty() || v.size() > 2)
      throw config_error("config: key '" + key + "' needs 1 or 2 coordinates");
    return {v[0], v.size() > 1 ? v[1] : 0.0};
  }
  if (scalars.count(key)) return {get_double(key), 0.0};
  return fallback;
}

const ConfigNode* ConfigNode::section(const std::string& key) const {
  auto it = sections.find(key);
  if (it == sections.end()) return nullptr;
  consumed_.insert(key);
  return it->second.get();
}

const ConfigNode& ConfigNode::require_section(const std::string& key) const {
  const ConfigNode* s = section(key);
  if (s == nullptr)
    throw config_error("config: missing required section '" + key + "'");
  return *s;
}

void ConfigNode::ensure_all_consumed(const std::string& prefix) const {
  for (const auto& [key, s] : scalars) {
    if (!consumed_.count(key))
      throw config_error("config line " + std::to_string(s.line) +
                         ": unknown key '" + prefix + key + "'");
  }
  for (const auto& [key, items] : lists) {
    if (!consumed_.count(key))
      throw config_error("config line " +
                         std::to_string(items.empty() ? 0 : items.front().line) +
                         ": unknown key '" + prefix + key + "'");
  }
  for (const auto& [key, child] : sections) {
    if (!consumed_.count(key))
      throw config_error("config line " + std::to_string(child->line) +
                         ": unknown section '" + prefix + key + "'");
    child->ensure_all_consumed(prefix + key + ".");
  }
}

std::unique_ptr<ConfigNode> parse_config(const std::string& text) {
  Parser parser(text);
  return parser.parse();
}

std::unique_ptr<ConfigNode> parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str());
}

std::vector<double> read_csv_column(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot open data file: " + path);
  std::vector<double> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::string field = line.substr(0, line.find(','));
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str()) continue;  // header or junk line
    out.push_back(v);
  }
  return out;
}

}  // namespace morreykit
