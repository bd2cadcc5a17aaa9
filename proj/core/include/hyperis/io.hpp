#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "hyperis/hypergraph.hpp"

namespace hyperis {

// Text format, one record per line, '#' starts a comment:
//   k=<int> sizes=<n0>,<n1>,...
//   e <c>:<i> <c>:<i> ...
// JSON mirror: {"k": 3, "sizes": [..], "edges": [[[c, i], ...], ...]}.
// Both throw InputError with a line number on malformed input.
Hypergraph parse_text(std::string_view text);
Hypergraph parse_json(std::string_view text);
// Picks JSON when the first non-blank character is '{'.
Hypergraph parse_hypergraph(std::string_view text);
// Reads a file, or stdin for "-".
Hypergraph load_hypergraph(const std::string& path);

// Canonical text: header, then edges in the hypergraph's canonical order.
std::string serialize_text(const Hypergraph& g);
std::string serialize_json(const Hypergraph& g);

// Hex SHA-256 of serialize_text(g).
std::string input_digest(const Hypergraph& g);

}  // namespace hyperis
