#include "termlat/syntax.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace termlat {

SyntaxError::SyntaxError(const std::string& message, std::size_t offset, std::size_t line,
                         std::size_t column)
    : std::runtime_error("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + " (offset " + std::to_string(offset) +
                         "): " + message),
      offset_(offset),
      line_(line),
      column_(column) {}

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_lower_or_digit(char c) {
  return std::islower(static_cast<unsigned char>(c)) != 0 ||
         std::isdigit(static_cast<unsigned char>(c)) != 0;
}

bool is_var_start(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0 || c == '_'; }

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  Term parse() {
    skip_ws();
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SyntaxError(message, pos_, line, column);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
      ++pos_;
    }
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Term term() {
    if (pos_ >= text_.size()) fail("unexpected end of input, expected a term");
    const char c = text_[pos_];
    if (is_var_start(c)) {
      const std::size_t start = pos_;
      std::string name = identifier();
      if (options_.reserve_fresh_names && is_fresh_name(name)) {
        pos_ = start;
        fail("variable name '" + name + "' is reserved for fresh variables");
      }
      return Term::var(std::move(name));
    }
    if (!is_lower_or_digit(c)) fail("unexpected '" + std::string(1, c) + "', expected a term");

    const std::size_t start = pos_;
    std::string name = identifier();
    skip_ws();
    std::vector<Term> args;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      skip_ws();
      args.push_back(term());
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        skip_ws();
        args.push_back(term());
        skip_ws();
      }
      if (pos_ >= text_.size()) fail("unexpected end of input, expected ')'");
      if (text_[pos_] != ')') fail("unexpected '" + std::string(1, text_[pos_]) + "', expected ',' or ')'");
      ++pos_;
    }
    if (options_.strict_arity != nullptr) {
      auto [it, inserted] = options_.strict_arity->emplace(name, args.size());
      if (!inserted && it->second != args.size()) {
        pos_ = start;
        fail("functor '" + name + "' used with arity " + std::to_string(args.size()) +
             " and arity " + std::to_string(it->second));
      }
    }
    return Term::app(std::move(name), std::move(args));
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
};

void print_into(const Term& t, std::string& out) {
  out += t.name();
  if (t.is_var() || t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i > 0) out += ',';
    print_into(t.arg(i), out);
  }
  out += ')';
}

}  // namespace

Term parse_term(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).parse();
}

std::string print_term(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

bool is_fresh_name(std::string_view name) {
  return name.size() > 2 && name[0] == '_' && name[1] == 'G' &&
         std::isdigit(static_cast<unsigned char>(name[2])) != 0;
}

bool is_valid_functor_name(std::string_view name) {
  if (name.empty() || !is_lower_or_digit(name[0])) return false;
  for (char c : name) {
    if (!is_name_char(c)) return false;
  }
  return true;
}

bool is_valid_variable_name(std::string_view name) {
  if (name.empty() || !is_var_start(name[0])) return false;
  for (char c : name) {
    if (!is_name_char(c)) return false;
  }
  return true;
}

}  // namespace termlat
