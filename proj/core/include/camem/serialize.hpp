#pragma once

#include <string>

#include "camem/lattice.hpp"

namespace camem {

// Line-oriented text format:
//   lattice <kind> <params>
//   vertices <n>
//   <v> <shell|-> <0|1>: <out-edges in argument order>
// Round-trips bit-exactly: serialize(parse(serialize(g))) == serialize(g).
std::string serialize_lattice(const Lattice& lattice);
Lattice parse_lattice(const std::string& text);

// Hex digest of the git blob construction: sha1("blob <len>\0" + bytes).
std::string content_hash(const std::string& bytes);

}  // namespace camem
