#pragma once

#include <optional>
#include <string>

#include "hopfalg/connections.hpp"

namespace hopfalg {

/// @brief A calculus read from a file, with its second-order data when the kind provides it.
struct CalculusBundle {
  Calculus1 c1;
  std::optional<Calculus2> c2;
};

/// @brief Parses a calculus description in JSON; throws ParseError on malformed input.
///
/// Kinds: "quiver" (vertices, edges as [label, source, target], optional nominations as
/// [p, q, a, b] labels), "group" (elements, table of names, identity, lambda labels, generator
/// matrices and either theta or a zeta table; optional sqrt_d) and "matrix_inner" (n and the
/// 2 n^2 components of theta in M_n (+) M_n). The optional key "ev_override" lists
/// [row, column, value] entries that replace entries of the evaluation matrix.
CalculusBundle parse_calculus(const std::string& text);
CalculusBundle read_calculus_file(const std::string& path);

/// @brief M_n (+) M_n with d a = theta a - a theta, free on the two block identities.
Calculus1 build_matrix_inner_calculus(int n, const Vec& theta, const std::string& name = "matrix_inner");

/// @brief Parses a representation file against the alphabet of alg; throws ParseError.
///
/// Either {"unit": true}, or {"quiver": {"dims": {...}, "arrows": {label: triplets}}}, or
/// {"dim": n, "matrices": {symbol label: triplets}} where triplets are [row, column, value].
ModuleRepSpec parse_module(const std::string& text, const Algebroid& alg);
ModuleRepSpec read_module_file(const std::string& path, const Algebroid& alg);

/// @brief Stable text dump of generators, relations and the coproduct, counit and antipode tables.
std::string dump_presentation(const Algebroid& alg);

/// @brief Reads a whole file; throws ParseError when it cannot be opened.
std::string read_text_file(const std::string& path);

}  // namespace hopfalg
