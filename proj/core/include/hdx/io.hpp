#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "hdx/complex.hpp"
#include "hdx/poset.hpp"

namespace hdx {

/// Complex text format:
///   dim <d>
///   <v0> <v1> ... <vd> : <weight>
/// Blank lines and '#' comments are ignored. Errors name the 1-based line.
WeightedComplex read_complex(std::istream& in);
WeightedComplex read_complex_file(const std::string& path);
void write_complex(std::ostream& out, const WeightedComplex& X);

/// Poset text format:
///   poset <d>
///   element <level> <index> <label> [<weight>]   (weight on top level only)
///   cover <level> <upper-index> <lower-index> <probability>
/// Elements must be listed with consecutive indices per level.
GradedPoset read_poset(std::istream& in);
void write_poset(std::ostream& out, const GradedPoset& P);

using AnyStructure = std::variant<WeightedComplex, GradedPoset>;

/// Dispatches on the header keyword (`dim` or `poset`).
AnyStructure read_structure_file(const std::string& path);

/// Function format: one `<face or label> : <value>` line per element of a
/// single level; every element must appear exactly once.
LevelFunction read_function(std::istream& in, const WeightedComplex& X);
LevelFunction read_function(std::istream& in, const GradedPoset& P);
LevelFunction read_function_file(const std::string& path, const AnyStructure& S);
void write_function(std::ostream& out, const LevelFunction& f, const WeightedComplex& X);

/// Operator export: one `row col value` line per stored entry.
void write_coordinate_list(std::ostream& out, const SparseMatrix& M);

}  // namespace hdx
