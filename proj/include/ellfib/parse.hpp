// Shared ASCII expression grammar and input-file formats.
//
// Expressions: identifiers [A-Za-z][A-Za-z0-9_]*, integer literals, rational
// literals p/q (via the division operator restricted to constant divisors),
// sqrt(d) for the quadratic generator, operators + - * / ^, parentheses;
// whitespace is insignificant.
//
// Model files:   `base: tau; field: Q; params: mu1 mu2` header clauses plus
//                assignment lines `A = <expr>`, `B = <expr>` (or a1 .. a6).
// Pencil files:  `point: x0 x1 x2; param: b e; field: Q(sqrt(5))` header
//                clauses plus one polynomial expression per line.
// `#` starts a comment; clause order is free; clauses may share a line
// separated by `;` or occupy their own lines.
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ellfib/poly.hpp"

namespace ellfib {

// Syntax error with the offset of the offending token in the source string.
struct parse_error : std::runtime_error {
  parse_error(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg), pos(pos) {}
  std::size_t pos;
};

// Parses one polynomial expression.  Throws parse_error on bad syntax and on
// division by a non-constant.
MultiPoly parse_poly(const std::string& src);

// Renders "<msg>\n<source>\n   ^" pointing at the error position.
std::string caret_message(const std::string& src, const parse_error& err);

// Field descriptors: 0 = Q, d = Q(sqrt(d)).  Accepts "Q", "Q(sqrt(5))".
long parse_field_descriptor(const std::string& s);
std::string field_descriptor_str(long d);

struct ModelFile {
  std::string base_var;
  long field_d = 0;
  std::vector<std::string> params;
  std::map<std::string, MultiPoly> entries;  // "A", "B" or "a1" .. "a6"
};

struct PencilFile {
  std::vector<std::string> point_vars;
  std::vector<std::string> param_vars;
  long field_d = 0;
  std::vector<MultiPoly> polys;
};

ModelFile parse_model_file(const std::string& text);
PencilFile parse_pencil_file(const std::string& text);

std::string read_text_file(const std::string& path);  // throws on I/O failure

}  // namespace ellfib
