#include "hyperis/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <sstream>
#include <vector>

#include "hyperis/errors.hpp"

namespace hyperis {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

std::uint32_t parse_uint(std::string_view s, std::size_t line, const char* what) {
  std::uint32_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Hypergraph validation errors carry no line; attach the offending one.
Hypergraph build(std::uint32_t k, const std::vector<std::uint32_t>& sizes,
                 const std::vector<std::vector<VertexId>>& edges, const std::vector<std::size_t>& lines,
                 std::size_t header_line) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].size() != k) fail(lines[i], "edge has " + std::to_string(edges[i].size()) + " vertices, need k");
    std::vector<bool> seen(k, false);
    for (const auto& v : edges[i]) {
      if (v.cls >= k) fail(lines[i], "class " + std::to_string(v.cls) + " out of range");
      if (v.index >= sizes[v.cls]) fail(lines[i], "vertex " + to_string(v) + " out of range");
      if (seen[v.cls]) fail(lines[i], "class " + std::to_string(v.cls) + " appears twice");
      seen[v.cls] = true;
    }
  }
  std::vector<std::vector<VertexId>> sorted(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    sorted[i] = edges[i];
    std::sort(sorted[i].begin(), sorted[i].end());
  }
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sorted[a] < sorted[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (sorted[order[i]] == sorted[order[i - 1]]) {
      fail(lines[order[i]], "duplicate edge (first on line " + std::to_string(lines[order[i - 1]]) + ")");
    }
  }
  try {
    return Hypergraph(k, sizes, edges);
  } catch (const InputError& e) {
    fail(header_line, e.what());
  }
}

}  // namespace

Hypergraph parse_text(std::string_view text) {
  std::optional<std::uint32_t> k;
  std::vector<std::uint32_t> sizes;
  std::size_t header_line = 0;
  std::vector<std::vector<VertexId>> edges;
  std::vector<std::size_t> lines;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto toks = tokens(raw);
    if (toks.empty()) continue;
    if (toks[0] == "e") {
      if (!k) fail(line_no, "edge before header");
      std::vector<VertexId> e;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto parts = split(toks[i], ':');
        if (parts.size() != 2) fail(line_no, "vertex token '" + std::string(toks[i]) + "' is not <class>:<index>");
        e.push_back({parse_uint(parts[0], line_no, "class"), parse_uint(parts[1], line_no, "index")});
      }
      edges.push_back(std::move(e));
      lines.push_back(line_no);
      continue;
    }
    if (k) fail(line_no, "unexpected record '" + std::string(toks[0]) + "'");
    for (auto tok : toks) {
      if (tok.starts_with("k=")) {
        k = parse_uint(tok.substr(2), line_no, "k");
      } else if (tok.starts_with("sizes=")) {
        for (auto part : split(tok.substr(6), ',')) sizes.push_back(parse_uint(part, line_no, "class size"));
      } else {
        fail(line_no, "unknown header field '" + std::string(tok) + "'");
      }
    }
    if (!k) fail(line_no, "header lacks k=");
    if (sizes.size() != *k) {
      fail(line_no, "header lists " + std::to_string(sizes.size()) + " class sizes for k=" + std::to_string(*k));
    }
    header_line = line_no;
  }
  if (!k) throw InputError("missing header line 'k=<int> sizes=...'");
  if (*k < 2) fail(header_line, "k must be at least 2");
  for (auto s : sizes) {
    if (s == 0) fail(header_line, "class sizes must be positive");
  }
  return build(*k, sizes, edges, lines, header_line);
}

Hypergraph parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte offset -> line
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    fail(line, std::string("invalid JSON: ") + e.what());
  }
  try {
    const auto k = doc.at("k").get<std::uint32_t>();
    const auto sizes = doc.at("sizes").get<std::vector<std::uint32_t>>();
    if (k < 2) throw InputError("k must be at least 2");
    if (sizes.size() != k) throw InputError("sizes must list k entries");
    for (auto s : sizes) {
      if (s == 0) throw InputError("class sizes must be positive");
    }
    std::vector<std::vector<VertexId>> edges;
    std::vector<std::size_t> lines;
    for (const auto& e : doc.at("edges")) {
      std::vector<VertexId> ids;
      for (const auto& v : e) {
        const auto pair = v.get<std::vector<std::uint32_t>>();
        if (pair.size() != 2) throw InputError("vertices are [class, index] pairs");
        ids.push_back({pair[0], pair[1]});
      }
      edges.push_back(std::move(ids));
      // JSON carries no line structure; report the edge position instead.
      lines.push_back(edges.size());
    }
    try {
      return build(k, sizes, edges, lines, 0);
    } catch (const InputError& e) {
      std::string what = e.what();
      if (what.starts_with("line ")) what = "edge " + what.substr(5);
      throw InputError(what);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed hypergraph JSON: ") + e.what());
  }
}

Hypergraph parse_hypergraph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_json(text);
  return parse_text(text);
}

Hypergraph load_hypergraph(const std::string& path) {
  std::string data;
  if (path == "-") {
    data.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    data.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  return parse_hypergraph(data);
}

std::string serialize_text(const Hypergraph& g) {
  std::ostringstream out;
  out << "k=" << g.k() << " sizes=";
  for (std::uint32_t c = 0; c < g.k(); ++c) out << (c ? "," : "") << g.class_size(c);
  out << '\n';
  for (const auto& e : g.edges()) {
    out << 'e';
    for (Vertex v : e) {
      const auto id = g.vertex_id(v);
      out << ' ' << id.cls << ':' << id.index;
    }
    out << '\n';
  }
  return out.str();
}

std::string serialize_json(const Hypergraph& g) {
  nlohmann::json doc;
  doc["k"] = g.k();
  doc["sizes"] = g.class_sizes();
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    auto row = nlohmann::json::array();
    for (Vertex v : e) {
      const auto id = g.vertex_id(v);
      row.push_back({id.cls, id.index});
    }
    edges.push_back(std::move(row));
  }
  doc["edges"] = std::move(edges);
  return doc.dump();
}

std::string input_digest(const Hypergraph& g) {
  const std::string text = serialize_text(g);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 15]);
  }
  return hex;
}

}  // namespace hyperis
