#pragma once

#include "diffnet/network.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace diffnet {

// Line/column addressed failure while reading a network document.
struct ParseError : std::runtime_error {
  ParseError(std::size_t line_no, std::size_t column, const std::string& message)
      : std::runtime_error(line_no == 0
                               ? message
                               : "line " + std::to_string(line_no) + ", column " +
                                     std::to_string(column) + ": " + message),
        line(line_no),
        col(column) {}

  std::size_t line;
  std::size_t col;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t col;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    tokens.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return tokens;
}

inline Rational parse_rational(const Token& token, std::size_t line_no) {
  try {
    return Rational::parse(token.text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, token.col, e.what());
  }
}

}  // namespace detail

// Text format, one record per line, '#' starts a comment:
//
//   products t1 t2
//   equitable            (optional; edge weights are then derived as 1/|N(i)|)
//   node <name> <threshold> <product>[,<product>...]
//   edges: edge <from> <to> <weight>   or, when equitable,  edge <from> <to>
//
// Rationals are written "a/b" in lowest terms; plain integers and finite
// decimals are accepted on input and normalized on output.
inline Network parse_document(std::string_view text, bool validate_network = true) {
  NetworkBuilder builder;
  std::set<std::string> products;
  std::set<std::string> nodes;
  std::set<std::pair<std::string, std::string>> edges;
  bool saw_products = false;
  bool equitable = false;
  bool saw_edges = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tokens = detail::tokenize(line);
    if (tokens.empty()) {
      if (pos > text.size()) break;
      continue;
    }
    const std::string& head = tokens[0].text;

    if (head == "products") {
      if (saw_products) throw ParseError(line_no, tokens[0].col, "duplicate products line");
      saw_products = true;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        if (!products.insert(tokens[k].text).second)
          throw ParseError(line_no, tokens[k].col, "duplicate product '" + tokens[k].text + "'");
        builder.add_product(tokens[k].text);
      }
    } else if (head == "equitable") {
      if (tokens.size() != 1) throw ParseError(line_no, tokens[1].col, "unexpected token");
      if (saw_edges)
        throw ParseError(line_no, tokens[0].col, "equitable must appear before edges");
      if (equitable) throw ParseError(line_no, tokens[0].col, "duplicate equitable line");
      equitable = true;
      builder.equitable();
    } else if (head == "node") {
      if (!saw_products)
        throw ParseError(line_no, tokens[0].col, "products must be declared before nodes");
      if (tokens.size() != 4)
        throw ParseError(line_no, tokens[0].col, "expected: node <name> <threshold> <choices>");
      const std::string& name = tokens[1].text;
      if (!nodes.insert(name).second)
        throw ParseError(line_no, tokens[1].col, "duplicate node '" + name + "'");
      Rational theta = detail::parse_rational(tokens[2], line_no);
      if (theta <= 0 || theta > 1)
        throw ParseError(line_no, tokens[2].col, "threshold must be in (0,1]");
      std::vector<std::string> choices;
      const std::string& list = tokens[3].text;
      std::size_t item_start = 0;
      for (std::size_t k = 0; k <= list.size(); ++k) {
        if (k == list.size() || list[k] == ',') {
          std::string item = list.substr(item_start, k - item_start);
          if (item.empty())
            throw ParseError(line_no, tokens[3].col, "empty product name in choices");
          if (!products.contains(item))
            throw ParseError(line_no, tokens[3].col, "unknown product '" + item + "'");
          choices.push_back(std::move(item));
          item_start = k + 1;
        }
      }
      builder.add_node(name, std::move(theta), std::move(choices));
    } else if (head == "edge") {
      saw_edges = true;
      if (tokens.size() != (equitable ? 3u : 4u)) {
        if (equitable && tokens.size() == 4)
          throw ParseError(line_no, tokens[3].col,
                           "unexpected edge weight in equitable network");
        throw ParseError(line_no, tokens[0].col,
                         equitable ? "expected: edge <from> <to>"
                                   : "expected: edge <from> <to> <weight>");
      }
      const std::string& from = tokens[1].text;
      const std::string& to = tokens[2].text;
      if (!nodes.contains(from))
        throw ParseError(line_no, tokens[1].col, "unknown node '" + from + "'");
      if (!nodes.contains(to))
        throw ParseError(line_no, tokens[2].col, "unknown node '" + to + "'");
      if (!edges.emplace(from, to).second)
        throw ParseError(line_no, tokens[1].col, "duplicate edge " + from + "->" + to);
      if (equitable)
        builder.add_edge(from, to);
      else
        builder.add_edge(from, to, detail::parse_rational(tokens[3], line_no));
    } else {
      throw ParseError(line_no, tokens[0].col, "unknown directive '" + head + "'");
    }
    if (pos > text.size()) break;
  }
  if (!saw_products) throw ParseError(0, 0, "document has no products line");

  Network net = builder.build();
  if (validate_network) {
    ValidationReport report = validate(net);
    if (!report.ok()) {
      std::string joined = "invalid network";
      for (const std::string& v : report.violations) joined += "; " + v;
      throw ParseError(0, 0, joined);
    }
  }
  return net;
}

// Canonical text form: products first, the equitable flag, nodes in id order,
// edges sorted by endpoint ids. Serializing a parsed canonical document
// reproduces it byte for byte.
inline std::string serialize_document(const Network& net) {
  std::ostringstream out;
  out << "products";
  for (ProductId t = 0; t < net.product_count(); ++t) out << ' ' << net.product_name(t);
  out << '\n';
  if (net.equitable()) out << "equitable\n";
  for (NodeId i = 0; i < net.node_count(); ++i) {
    out << "node " << net.node_name(i) << ' ' << net.threshold(i).str() << ' ';
    const ProductSet& s = net.initial().at(i);
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k > 0) out << ',';
      out << net.product_name(s[k]);
    }
    out << '\n';
  }
  std::vector<Edge> edges = net.edges();
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  });
  for (const Edge& e : edges) {
    out << "edge " << net.node_name(e.from) << ' ' << net.node_name(e.to);
    if (!net.equitable()) out << ' ' << e.weight.str();
    out << '\n';
  }
  return out.str();
}

}  // namespace diffnet
