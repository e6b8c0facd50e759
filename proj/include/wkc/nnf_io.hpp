#pragma once

#include <iosfwd>
#include <string>

#include "wkc/nnf.hpp"

namespace wkc {

// Textual circuit format, compatible with the c2d convention:
//
//   c var <i> <name>     one per scope variable, i = 1-based scope position
//   nnf <N> <E> <V>      node, edge and variable counts
//   L <±i>               literal over variable i
//   A <k> <ids...>       conjunction of k earlier nodes (A 0 is true)
//   O 0 <k> <ids...>     disjunction of k earlier nodes (O 0 0 is false)
//
// Node ids are 0-based line positions; the last node is the root. Output is
// byte-deterministic for a given circuit.
void write_nnf(const NnfCircuit& c, std::ostream& out);
std::string write_nnf(const NnfCircuit& c);
void write_nnf_file(const NnfCircuit& c, const std::string& path);

// Accepts files without "c var" naming comments by synthesizing names
// v1..vV. Structural problems raise ParseError with the offending line.
NnfCircuit read_nnf(const std::string& text, const std::string& source = "");
NnfCircuit read_nnf_file(const std::string& path);

} // namespace wkc
