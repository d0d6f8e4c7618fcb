#pragma once

#include "diffnet/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace diffnet {

using NodeId = std::uint32_t;
using ProductId = std::uint32_t;

// Sorted set of product ids.
using ProductSet = std::vector<ProductId>;

inline bool contains(const ProductSet& s, ProductId t) {
  return std::binary_search(s.begin(), s.end(), t);
}

// Per-node product choices: the mutable part of a diffusion state. Along any
// reduction a node either still holds its initial set or has adopted a single
// product from it; adoption is irreversible.
class ProductAssignment {
 public:
  ProductAssignment() = default;
  explicit ProductAssignment(std::vector<ProductSet> choices) : choices_(std::move(choices)) {}

  std::size_t size() const { return choices_.size(); }

  const ProductSet& at(NodeId i) const {
    check(i);
    return choices_[i];
  }

  bool is_singleton(NodeId i) const { return at(i).size() == 1; }

  ProductId adopted(NodeId i) const {
    const ProductSet& s = at(i);
    if (s.size() != 1) throw std::logic_error("node has not adopted a single product");
    return s.front();
  }

  void adopt(NodeId i, ProductId t) {
    check(i);
    choices_[i].assign(1, t);
  }

  friend bool operator==(const ProductAssignment&, const ProductAssignment&) = default;

 private:
  void check(NodeId i) const {
    if (i >= choices_.size()) throw std::out_of_range("unknown node id " + std::to_string(i));
  }

  std::vector<ProductSet> choices_;
};

struct Edge {
  NodeId from;
  NodeId to;
  Rational weight;
};

struct InEdge {
  NodeId from;
  Rational weight;
};

struct OutEdge {
  NodeId to;
  Rational weight;
};

class NetworkBuilder;
class Network;
Network make_equitable(const Network& net);

// Immutable social network: a weighted digraph, the product universe, a
// threshold per node and the initial product choices. Analyses never mutate a
// Network; diffusion produces fresh ProductAssignment values instead, so a
// Network can be shared freely across threads.
class Network {
 public:
  std::size_t node_count() const { return node_names_.size(); }
  std::size_t product_count() const { return product_names_.size(); }

  const std::string& node_name(NodeId i) const {
    require_node(i);
    return node_names_[i];
  }
  const std::string& product_name(ProductId t) const {
    require_product(t);
    return product_names_[t];
  }

  std::optional<NodeId> find_node(std::string_view name) const {
    auto it = node_index_.find(std::string(name));
    if (it == node_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<ProductId> find_product(std::string_view name) const {
    auto it = product_index_.find(std::string(name));
    if (it == product_index_.end()) return std::nullopt;
    return it->second;
  }

  const Rational& threshold(NodeId i) const {
    require_node(i);
    return thresholds_[i];
  }
  const std::vector<Rational>& thresholds() const { return thresholds_; }

  const ProductAssignment& initial() const { return initial_; }

  const std::vector<Edge>& edges() const { return edges_; }

  const std::vector<InEdge>& in_edges(NodeId i) const {
    require_node(i);
    return in_[i];
  }
  const std::vector<OutEdge>& out_edges(NodeId i) const {
    require_node(i);
    return out_[i];
  }

  // N(i): the set of nodes with an edge into i, sorted.
  std::vector<NodeId> neighbors(NodeId i) const {
    require_node(i);
    std::vector<NodeId> r;
    r.reserve(in_[i].size());
    for (const InEdge& e : in_[i]) r.push_back(e.from);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  }

  bool equitable() const { return equitable_; }

  void require_node(NodeId i) const {
    if (i >= node_names_.size()) throw std::out_of_range("unknown node id " + std::to_string(i));
  }
  void require_product(ProductId t) const {
    if (t >= product_names_.size())
      throw std::invalid_argument("unknown product id " + std::to_string(t));
  }

 private:
  Network() = default;
  friend class NetworkBuilder;
  friend Network make_equitable(const Network& net);

  std::vector<std::string> node_names_;
  std::unordered_map<std::string, NodeId> node_index_;
  std::vector<std::string> product_names_;
  std::unordered_map<std::string, ProductId> product_index_;
  std::vector<Rational> thresholds_;
  ProductAssignment initial_;
  std::vector<Edge> edges_;
  std::vector<std::vector<InEdge>> in_;
  std::vector<std::vector<OutEdge>> out_;
  bool equitable_ = false;
};

// Collects every violated model constraint. Construction is permissive so
// that broken inputs can be diagnosed in one pass; an empty report means the
// network satisfies all constraints.
struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline ValidationReport validate(const Network& net) {
  ValidationReport report;
  auto add = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  for (NodeId i = 0; i < net.node_count(); ++i) {
    if (net.initial().at(i).empty()) add("empty product set at node " + net.node_name(i));
    const Rational& theta = net.threshold(i);
    if (theta <= 0 || theta > 1) add("threshold out of (0,1] at node " + net.node_name(i));
  }

  std::unordered_set<std::uint64_t> seen;
  for (const Edge& e : net.edges()) {
    const std::string& from = net.node_name(e.from);
    const std::string& to = net.node_name(e.to);
    if (e.from == e.to) add("self-loop at node " + from);
    std::uint64_t code = (std::uint64_t(e.from) << 32) | e.to;
    if (!seen.insert(code).second) add("parallel edge " + from + "->" + to);
    if (e.weight < 0 || e.weight > 1) add("edge weight out of [0,1] on edge " + from + "->" + to);
  }

  for (NodeId i = 0; i < net.node_count(); ++i) {
    const auto& in = net.in_edges(i);
    if (in.empty()) continue;
    Rational sum;
    for (const InEdge& e : in) sum += e.weight;
    if (sum > 1) add("incoming weight sum exceeds 1 at node " + net.node_name(i));
    if (net.equitable()) {
      Rational expect(1, static_cast<long long>(in.size()));
      for (const InEdge& e : in) {
        if (e.weight != expect)
          add("weight is not 1/|N(i)| on edge " + net.node_name(e.from) + "->" +
              net.node_name(i) + " in equitable network");
      }
    }
  }
  return report;
}

class NetworkBuilder {
 public:
  NetworkBuilder& add_product(std::string name) {
    if (product_index_.contains(name))
      throw std::invalid_argument("duplicate product '" + name + "'");
    product_index_.emplace(name, static_cast<ProductId>(products_.size()));
    products_.push_back(std::move(name));
    return *this;
  }

  NetworkBuilder& add_node(std::string name, Rational threshold,
                           std::vector<std::string> choices) {
    if (node_index_.contains(name)) throw std::invalid_argument("duplicate node '" + name + "'");
    node_index_.emplace(name, static_cast<NodeId>(nodes_.size()));
    nodes_.push_back({std::move(name), std::move(threshold), std::move(choices)});
    return *this;
  }

  NetworkBuilder& add_edge(std::string from, std::string to, Rational weight) {
    edges_.push_back({std::move(from), std::move(to), std::move(weight)});
    return *this;
  }

  // Weight left to be derived; only meaningful together with equitable().
  NetworkBuilder& add_edge(std::string from, std::string to) {
    edges_.push_back({std::move(from), std::move(to), std::nullopt});
    return *this;
  }

  NetworkBuilder& equitable(bool value = true) {
    equitable_ = value;
    return *this;
  }

  Network build() const {
    Network net;
    net.equitable_ = equitable_;
    net.product_names_ = products_;
    net.product_index_ = product_index_;
    net.node_names_.reserve(nodes_.size());
    net.thresholds_.reserve(nodes_.size());
    std::vector<ProductSet> choices;
    choices.reserve(nodes_.size());
    for (const PendingNode& pn : nodes_) {
      net.node_names_.push_back(pn.name);
      net.node_index_.emplace(pn.name, static_cast<NodeId>(net.node_names_.size() - 1));
      net.thresholds_.push_back(pn.theta);
      ProductSet set;
      set.reserve(pn.choices.size());
      for (const std::string& c : pn.choices) {
        auto it = product_index_.find(c);
        if (it == product_index_.end())
          throw std::invalid_argument("unknown product '" + c + "' in choices of node '" +
                                      pn.name + "'");
        set.push_back(it->second);
      }
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      choices.push_back(std::move(set));
    }
    net.initial_ = ProductAssignment(std::move(choices));

    net.in_.resize(nodes_.size());
    net.out_.resize(nodes_.size());
    struct Resolved {
      NodeId from;
      NodeId to;
      std::optional<Rational> weight;
    };
    std::vector<Resolved> resolved;
    resolved.reserve(edges_.size());
    std::vector<std::size_t> in_degree(nodes_.size(), 0);
    for (const PendingEdge& pe : edges_) {
      auto f = net.node_index_.find(pe.from);
      if (f == net.node_index_.end())
        throw std::invalid_argument("unknown node '" + pe.from + "' in edge");
      auto t = net.node_index_.find(pe.to);
      if (t == net.node_index_.end())
        throw std::invalid_argument("unknown node '" + pe.to + "' in edge");
      if (equitable_ && pe.weight)
        throw std::invalid_argument("explicit edge weight in equitable network");
      if (!equitable_ && !pe.weight)
        throw std::invalid_argument("edge weight required on edge " + pe.from + "->" + pe.to);
      resolved.push_back({f->second, t->second, pe.weight});
      ++in_degree[t->second];
    }
    for (const Resolved& r : resolved) {
      Rational w = r.weight ? *r.weight
                            : Rational(1, static_cast<long long>(in_degree[r.to]));
      net.edges_.push_back({r.from, r.to, w});
      net.in_[r.to].push_back({r.from, w});
      net.out_[r.from].push_back({r.to, w});
    }
    return net;
  }

 private:
  struct PendingNode {
    std::string name;
    Rational theta;
    std::vector<std::string> choices;
  };
  struct PendingEdge {
    std::string from;
    std::string to;
    std::optional<Rational> weight;
  };

  std::vector<std::string> products_;
  std::unordered_map<std::string, ProductId> product_index_;
  std::vector<PendingNode> nodes_;
  std::unordered_map<std::string, NodeId> node_index_;
  std::vector<PendingEdge> edges_;
  bool equitable_ = false;
};

// Rebuilds the network with every edge into i weighing exactly 1/|N(i)|.
// Requires a simple graph (no self-loops, no parallel edges).
inline Network make_equitable(const Network& net) {
  std::unordered_set<std::uint64_t> seen;
  for (const Edge& e : net.edges()) {
    if (e.from == e.to)
      throw std::invalid_argument("self-loop at node " + net.node_name(e.from));
    std::uint64_t code = (std::uint64_t(e.from) << 32) | e.to;
    if (!seen.insert(code).second)
      throw std::invalid_argument("parallel edge " + net.node_name(e.from) + "->" +
                                  net.node_name(e.to));
  }
  Network out = net;
  out.equitable_ = true;
  std::vector<Rational> share(out.node_count());
  for (NodeId i = 0; i < out.node_count(); ++i)
    if (!out.in_[i].empty()) share[i] = Rational(1, static_cast<long long>(out.in_[i].size()));
  for (Edge& e : out.edges_) e.weight = share[e.to];
  for (NodeId i = 0; i < out.node_count(); ++i)
    for (InEdge& e : out.in_[i]) e.weight = share[i];
  for (auto& outs : out.out_)
    for (OutEdge& e : outs) e.weight = share[e.to];
  return out;
}

// The constant assignment giving every node {t}.
inline ProductAssignment constant_assignment(const Network& net, ProductId t) {
  net.require_product(t);
  return ProductAssignment(std::vector<ProductSet>(net.node_count(), ProductSet{t}));
}

}  // namespace diffnet
