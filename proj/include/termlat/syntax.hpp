// Prolog-like concrete syntax for terms.
//
//   TERM := VAR | NAME | NAME '(' TERM (',' TERM)* ')'
//   NAME := [a-z0-9][a-zA-Z0-9_]*
//   VAR  := [A-Z_][a-zA-Z0-9_]*
//
// Whitespace is insignificant outside names. Constants print without
// parentheses, and print_term output always parses back to the same term.

#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "termlat/term.hpp"

namespace termlat {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t offset, std::size_t line,
              std::size_t column);

  // 0-based byte offset; line and column are 1-based.
  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t offset_;
  std::size_t line_;
  std::size_t column_;
};

// Functor name -> arity seen so far in one problem.
using ArityTable = std::map<std::string, std::size_t>;

struct ParseOptions {
  // Reject user variables spelled like fresh variables (_G<digit>...).
  bool reserve_fresh_names = false;
  // When set, a functor name used at two arities is a SyntaxError.
  ArityTable* strict_arity = nullptr;
};

Term parse_term(std::string_view text, const ParseOptions& options = {});

std::string print_term(const Term& t);

bool is_fresh_name(std::string_view name);
bool is_valid_functor_name(std::string_view name);
bool is_valid_variable_name(std::string_view name);

}  // namespace termlat
