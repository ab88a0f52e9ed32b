#pragma once

#include <cctype>
#include <string>

#include "json.hpp"
#include "reflab/errors.hpp"
#include "reflab/scalar.hpp"

namespace reflab::detail {

/// Reader for the TOML subset used by matrix and config files: key = value
/// lines, [table] headers, strings, integers, decimals, inf, booleans,
/// nested arrays and comments. Non-integer numbers come back as strings.
class TomlReader {
 public:
  explicit TomlReader(const std::string& text) : s_(text) {}

  nlohmann::json parse() {
    nlohmann::json doc = nlohmann::json::object();
    nlohmann::json* table = &doc;
    while (true) {
      skip_space(true);
      if (pos_ >= s_.size()) return doc;
      if (s_[pos_] == '[') {
        ++pos_;
        const std::string name = key();
        expect(']');
        table = &doc[name];
        if (table->is_null()) *table = nlohmann::json::object();
      } else {
        const std::string k = key();
        skip_space(false);
        expect('=');
        (*table)[k] = value();
      }
      skip_space(false);
      if (pos_ < s_.size() && s_[pos_] != '\n') fail("expected end of line");
    }
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) line += s_[i] == '\n';
    throw ParseError("line " + std::to_string(line) + ": " + what);
  }

  void skip_space(bool newlines) {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_space(false);
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string key() {
    skip_space(false);
    if (pos_ < s_.size() && s_[pos_] == '"') return string_literal();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a key");
    return s_.substr(start, pos_ - start);
  }

  std::string string_literal() {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\n') fail("unterminated string");
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
      out += s_[pos_++];
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  nlohmann::json value() {
    skip_space(false);
    if (pos_ >= s_.size()) fail("expected a value");
    const char c = s_[pos_];
    if (c == '"') return string_literal();
    if (c == '[') {
      ++pos_;
      nlohmann::json arr = nlohmann::json::array();
      while (true) {
        skip_space(true);
        if (pos_ < s_.size() && s_[pos_] == ']') {
          ++pos_;
          return arr;
        }
        arr.push_back(value());
        skip_space(true);
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
        } else if (pos_ >= s_.size() || s_[pos_] != ']') {
          fail("expected ',' or ']'");
        }
      }
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != ',' &&
           s_[pos_] != ']' && s_[pos_] != '#') {
      ++pos_;
    }
    const std::string tok = s_.substr(start, pos_ - start);
    if (tok == "true") return true;
    if (tok == "false") return false;
    if (tok == "inf" || tok == "+inf") return "inf";
    if (tok.empty()) fail("expected a value");
    std::size_t used = 0;
    try {
      const long long v = std::stoll(tok, &used);
      if (used == tok.size()) return v;
    } catch (const std::exception&) {
    }
    try {
      Scalar::parse(tok);
    } catch (const std::invalid_argument&) {
      fail("bad value '" + tok + "'");
    }
    return tok;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace reflab::detail
