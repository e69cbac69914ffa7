#include "ara/config_text.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "ara/errors.hpp"

namespace ara::config {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::map<std::string, Value> run() {
    std::map<std::string, Value> out;
    std::string section;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        ++pos_;
        section = read_key();
        skip_inline_space();
        expect(']');
        end_of_line();
        continue;
      }
      const std::size_t key_line = line_;
      std::string key = read_key();
      if (!section.empty()) key = section + "." + key;
      skip_inline_space();
      expect('=');
      skip_inline_space();
      Value v = read_value();
      end_of_line();
      if (out.count(key)) throw ConfigError("duplicate key", key_line, key);
      out.emplace(std::move(key), std::move(v));
    }
    return out;
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(message, line_);
  }

  void skip_inline_space() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!eof() && peek() != '\n') ++pos_;
    }
  }

  // Whitespace, comments and newlines; used between lines and inside arrays.
  void skip_blank_lines() {
    while (!eof()) {
      skip_inline_space();
      skip_comment();
      if (peek() != '\n') return;
      ++pos_;
      ++line_;
    }
  }

  void end_of_line() {
    skip_inline_space();
    skip_comment();
    if (eof()) return;
    if (peek() != '\n') fail(fmt::format("unexpected '{}' after value", peek()));
    ++pos_;
    ++line_;
  }

  void expect(char c) {
    if (peek() != c) fail(fmt::format("expected '{}'", c));
    ++pos_;
  }

  std::string read_key() {
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                      peek() == '_' || peek() == '-' || peek() == '.')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a key");
    return std::string(text_.substr(start, pos_ - start));
  }

  Value read_value() {
    Value v;
    v.line = line_;
    const char c = peek();
    if (c == '"') {
      v.kind = Value::Kind::kString;
      v.text = read_string();
    } else if (c == '[') {
      v.kind = Value::Kind::kArray;
      ++pos_;
      while (true) {
        skip_blank_lines();
        if (peek() == ']') {
          ++pos_;
          break;
        }
        v.items.push_back(read_value());
        skip_blank_lines();
        if (peek() == ',') {
          ++pos_;
        } else if (peek() != ']') {
          fail("expected ',' or ']' in array");
        }
      }
    } else if (text_.substr(pos_, 4) == "true") {
      v.kind = Value::Kind::kBool;
      v.boolean = true;
      pos_ += 4;
    } else if (text_.substr(pos_, 5) == "false") {
      v.kind = Value::Kind::kBool;
      pos_ += 5;
    } else {
      v.kind = Value::Kind::kNumber;
      const std::size_t start = pos_;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                        peek() == '.' || peek() == '-' || peek() == '+' ||
                        peek() == '_')) {
        ++pos_;
      }
      v.text = std::string(text_.substr(start, pos_ - start));
      std::erase(v.text, '_');
      const char* first = v.text.data();
      const char* last = first + v.text.size();
      if (!v.text.empty() && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, v.number);
      if (v.text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v.number)) {
        fail(fmt::format("invalid value '{}'", v.text));
      }
    }
    return v;
  }

  std::string read_string() {
    expect('"');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (eof()) fail("unterminated string");
        const char e = text_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(fmt::format("unknown escape '\\{}'", e));
        }
      }
      out += c;
    }
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

const char* kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::kString: return "string";
    case Value::Kind::kNumber: return "number";
    case Value::Kind::kBool: return "boolean";
    case Value::Kind::kArray: return "array";
  }
  return "value";
}

void require_kind(const Value& v, Value::Kind kind, const std::string& key) {
  if (v.kind != kind) {
    throw ConfigError(fmt::format("expected {}, found {}", kind_name(kind),
                                  kind_name(v.kind)),
                      v.line, key);
  }
}

}  // namespace

Document Document::parse(std::string_view text) {
  Document doc;
  doc.values_ = Parser(text).run();
  return doc;
}

const Value* Document::find(const std::string& key) const {
  auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

const Value& Document::at(const std::string& key) const {
  const Value* v = find(key);
  if (!v) throw ConfigError("missing required key", 0, key);
  return *v;
}

void Document::require_known(const std::set<std::string>& allowed) const {
  for (const auto& [key, value] : values_) {
    if (!allowed.count(key)) throw ConfigError("unknown key", value.line, key);
  }
}

std::string Document::get_string(const std::string& key) const {
  const Value& v = at(key);
  require_kind(v, Value::Kind::kString, key);
  return v.text;
}

double Document::get_number(const std::string& key) const {
  const Value& v = at(key);
  require_kind(v, Value::Kind::kNumber, key);
  return v.number;
}

std::int64_t Document::get_int(const std::string& key) const {
  const Value& v = at(key);
  require_kind(v, Value::Kind::kNumber, key);
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
  if (ec != std::errc() || ptr != v.text.data() + v.text.size()) {
    throw ConfigError(fmt::format("expected an integer, found '{}'", v.text), v.line, key);
  }
  return out;
}

std::uint64_t Document::get_u64(const std::string& key) const {
  const Value& v = at(key);
  require_kind(v, Value::Kind::kNumber, key);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.text.data(), v.text.data() + v.text.size(), out);
  if (ec != std::errc() || ptr != v.text.data() + v.text.size()) {
    throw ConfigError(
        fmt::format("expected an unsigned 64-bit integer, found '{}'", v.text), v.line,
        key);
  }
  return out;
}

bool Document::get_bool(const std::string& key) const {
  const Value& v = at(key);
  require_kind(v, Value::Kind::kBool, key);
  return v.boolean;
}

std::vector<double> Document::get_numbers(const std::string& key) const {
  const Value& v = at(key);
  require_kind(v, Value::Kind::kArray, key);
  std::vector<double> out;
  for (const auto& item : v.items) {
    require_kind(item, Value::Kind::kNumber, key);
    out.push_back(item.number);
  }
  return out;
}

std::vector<std::vector<double>> Document::get_number_rows(const std::string& key) const {
  const Value& v = at(key);
  require_kind(v, Value::Kind::kArray, key);
  std::vector<std::vector<double>> out;
  for (const auto& row : v.items) {
    require_kind(row, Value::Kind::kArray, key);
    auto& dst = out.emplace_back();
    for (const auto& item : row.items) {
      require_kind(item, Value::Kind::kNumber, key);
      dst.push_back(item.number);
    }
  }
  return out;
}

std::vector<std::string> Document::get_strings(const std::string& key) const {
  const Value& v = at(key);
  require_kind(v, Value::Kind::kArray, key);
  std::vector<std::string> out;
  for (const auto& item : v.items) {
    require_kind(item, Value::Kind::kString, key);
    out.push_back(item.text);
  }
  return out;
}

std::string format_number(double x) {
  // fmt's default formatting is the shortest round-tripping representation.
  std::string s = fmt::format("{}", x);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string format_numbers(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += format_number(xs[i]);
  }
  return out + "]";
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

}  // namespace ara::config
