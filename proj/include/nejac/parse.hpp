#ifndef NEJAC_PARSE_HPP
#define NEJAC_PARSE_HPP

#include "nejac/poly.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nejac {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

// Grammar: sums of terms; a term is a product of factors joined by '*', '/'
// (constant divisors only) or juxtaposition; a factor is a number, a declared
// variable or a parenthesized expression, optionally raised to '^' n.
// Concatenated variable names such as Z1Z2 are split on the declared names.
Poly parse_poly(std::string_view text, const std::vector<std::string>& variables, int line = 1, int column_offset = 0);

// Uses Z1..Zn.
Poly parse_poly(std::string_view text, std::size_t nvars);

// System file: one polynomial per line (or ';'-separated), '#' comments, and
// optional directives
//   vars: Z1, Z2
//   name: some label
//   expect: key = value
struct SystemFile {
  std::vector<std::string> variables;
  std::vector<std::string> polynomials;
  std::vector<int> lines;    // source line of each polynomial
  std::vector<int> columns;  // column offset of each polynomial within its line
  std::string name;
  std::map<std::string, std::string> expected;
};

SystemFile read_system(std::string_view text);
PolyMap to_polymap(const SystemFile& sys);
PolyMap parse_system(std::string_view text);

}  // namespace nejac

#endif
