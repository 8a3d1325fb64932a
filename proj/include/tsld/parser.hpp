#pragma once

#include <stdexcept>
#include <string>

#include "tsld/term.hpp"

namespace tsld {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(std::string msg, int line, int column)
      : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line(line),
        column(column) {}
};

// Mini-Prolog syntax: clauses `p(t1,...,tn).` or `h(...) :- b1(...), b2(...).`,
// `%` line comments. Constants are typed lexically: digits -> int, digits with
// a fractional part -> float, lowercase-initial identifier -> atom, double
// quoted -> string; uppercase/underscore-initial identifiers are variables.
Program parse_program(const std::string& src);

// A comma-separated atom sequence terminated by `.`.
Query parse_query(const std::string& src);

// A single term (used by tests and the REPL helpers).
Term parse_term(const std::string& src);

}  // namespace tsld
