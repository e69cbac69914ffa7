#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ara::config {

/// A parsed right-hand side. Numbers keep their source text so 64-bit
/// integers survive parsing.
struct Value {
  enum class Kind { kString, kNumber, kBool, kArray };
  Kind kind = Kind::kString;
  std::string text;  // string contents or the number's literal
  double number = 0.0;
  bool boolean = false;
  std::vector<Value> items;
  std::size_t line = 0;
};

/// Key/value text in a small TOML subset:
///
///   # comment
///   key = "string" | 1.5 | -3 | true | [1, 2, [3, 4]]
///   [section]
///
/// Keys under a section are stored as "section.key". Arrays may span
/// lines. Duplicate keys are errors.
class Document {
 public:
  /// Throws ConfigError with the offending line.
  static Document parse(std::string_view text);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const Value* find(const std::string& key) const;
  const std::map<std::string, Value>& values() const { return values_; }

  /// Throws ConfigError for the first key not in `allowed`.
  void require_known(const std::set<std::string>& allowed) const;

  std::string get_string(const std::string& key) const;
  double get_number(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  std::uint64_t get_u64(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::vector<double> get_numbers(const std::string& key) const;
  std::vector<std::vector<double>> get_number_rows(const std::string& key) const;
  std::vector<std::string> get_strings(const std::string& key) const;

 private:
  const Value& at(const std::string& key) const;

  std::map<std::string, Value> values_;
};

/// Shortest text that parses back to the same double.
std::string format_number(double x);
std::string format_numbers(const std::vector<double>& xs);
std::string quote(std::string_view s);

}  // namespace ara::config
