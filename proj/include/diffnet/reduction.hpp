#pragma once

#include "diffnet/network.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace diffnet {

struct AdoptionEvent {
  NodeId node;
  ProductId product;
  std::size_t step;  // 1-based position in the reduction sequence
};

struct ReductionTrace {
  const Network* network = nullptr;
  std::vector<AdoptionEvent> events;
  ProductAssignment terminal;
};

// Adoption condition of product t by node i: the total weight of incoming
// edges from neighbours that adopted t reaches the node's threshold. A node
// without neighbours satisfies the condition for every product.
inline bool adoption_condition(const Network& net, const ProductAssignment& state, NodeId i,
                               ProductId t) {
  net.require_node(i);
  net.require_product(t);
  const auto& in = net.in_edges(i);
  if (in.empty()) return true;
  const Rational& theta = net.threshold(i);
  Rational sum;
  for (const InEdge& e : in) {
    const ProductSet& s = state.at(e.from);
    if (s.size() == 1 && s.front() == t) {
      sum += e.weight;
      if (sum >= theta) return true;
    }
  }
  return false;
}

// Products node i can adopt: empty for nodes that already settled on one.
inline ProductSet adoptable_products(const Network& net, const ProductAssignment& state,
                                     NodeId i) {
  const ProductSet& s = state.at(i);
  ProductSet result;
  if (s.size() < 2) return result;
  for (ProductId t : s)
    if (adoption_condition(net, state, i, t)) result.push_back(t);
  return result;
}

// One reduction: a non-empty set of simultaneous adoptions, each legal in the
// pre-state, at most one per node.
inline ProductAssignment step(const Network& net, const ProductAssignment& state,
                              const std::vector<std::pair<NodeId, ProductId>>& adoptions) {
  if (adoptions.empty())
    throw std::invalid_argument("a reduction must change at least one node");
  std::vector<char> used(net.node_count(), 0);
  for (const auto& [i, t] : adoptions) {
    net.require_node(i);
    net.require_product(t);
    if (used[i]) throw std::invalid_argument("duplicate node in adoption set");
    used[i] = 1;
    const ProductSet& s = state.at(i);
    if (s.size() < 2 || !contains(s, t) || !adoption_condition(net, state, i, t))
      throw std::invalid_argument("node '" + net.node_name(i) + "' cannot adopt product '" +
                                  net.product_name(t) + "'");
  }
  ProductAssignment next = state;
  for (const auto& [i, t] : adoptions) next.adopt(i, t);
  return next;
}

inline bool is_final(const Network& net, const ProductAssignment& state) {
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const ProductSet& s = state.at(i);
    if (s.size() < 2) continue;
    for (ProductId t : s)
      if (adoption_condition(net, state, i, t)) return false;
  }
  return true;
}

// Whether node i, having adopted some product in `state`, also satisfies the
// adoption condition for a different product from its set in `initial_p`.
inline bool can_switch(const Network& net, const ProductAssignment& initial_p,
                       const ProductAssignment& state, NodeId i) {
  const ProductSet& s = state.at(i);
  if (s.size() != 1) return false;
  ProductId t = s.front();
  for (ProductId alt : initial_p.at(i))
    if (alt != t && adoption_condition(net, state, i, alt)) return true;
  return false;
}

enum class AmbivalenceKind { none, multi_adopt, switchable };

struct AmbivalenceReport {
  AmbivalenceKind kind = AmbivalenceKind::none;
  NodeId node = 0;
  // multi_adopt: every adoptable product; switchable: {adopted, alternative}.
  ProductSet products;
};

// First node, in id order, that can adopt more than one product or can switch.
inline AmbivalenceReport ambivalence(const Network& net, const ProductAssignment& initial_p,
                                     const ProductAssignment& state) {
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const ProductSet& s = state.at(i);
    if (s.size() >= 2) {
      ProductSet a = adoptable_products(net, state, i);
      if (a.size() >= 2) return {AmbivalenceKind::multi_adopt, i, std::move(a)};
    } else if (s.size() == 1) {
      ProductId t = s.front();
      for (ProductId alt : initial_p.at(i))
        if (alt != t && adoption_condition(net, state, i, alt))
          return {AmbivalenceKind::switchable, i, ProductSet{t, alt}};
    }
  }
  return {};
}

namespace detail {

// In a non-ambivalent state each node has at most one adoptable product.
inline std::vector<std::pair<NodeId, ProductId>> fast_moves(const Network& net,
                                                            const ProductAssignment& state) {
  std::vector<std::pair<NodeId, ProductId>> moves;
  for (NodeId i = 0; i < net.node_count(); ++i) {
    if (state.at(i).size() < 2) continue;
    ProductSet a = adoptable_products(net, state, i);
    if (!a.empty()) moves.emplace_back(i, a.front());
  }
  return moves;
}

}  // namespace detail

// One fast reduction: every node that can adopt does adopt. Only defined on
// states that are neither ambivalent (given the network's initial assignment)
// nor final.
inline ProductAssignment fast_step(const Network& net, const ProductAssignment& state) {
  AmbivalenceReport amb = ambivalence(net, net.initial(), state);
  if (amb.kind != AmbivalenceKind::none)
    throw std::logic_error("fast step on an ambivalent state");
  auto moves = detail::fast_moves(net, state);
  if (moves.empty()) throw std::logic_error("fast step on a final state");
  ProductAssignment next = state;
  for (const auto& [i, t] : moves) next.adopt(i, t);
  return next;
}

enum class ContractionStatus { maximal, ambivalent };

struct ContractionResult {
  std::vector<ProductAssignment> trace;  // starts at the initial assignment
  ContractionStatus status = ContractionStatus::maximal;
  AmbivalenceReport report;
};

// Iterates fast steps from the initial assignment until the current state is
// ambivalent or no step applies. Deterministic; at most one step per node.
inline ContractionResult contraction_sequence(const Network& net) {
  ContractionResult result;
  result.trace.push_back(net.initial());
  for (;;) {
    const ProductAssignment& current = result.trace.back();
    AmbivalenceReport amb = ambivalence(net, net.initial(), current);
    if (amb.kind != AmbivalenceKind::none) {
      result.status = ContractionStatus::ambivalent;
      result.report = std::move(amb);
      return result;
    }
    auto moves = detail::fast_moves(net, current);
    if (moves.empty()) {
      result.status = ContractionStatus::maximal;
      return result;
    }
    ProductAssignment next = current;
    for (const auto& [i, t] : moves) next.adopt(i, t);
    result.trace.push_back(std::move(next));
  }
}

// Applies the events one at a time as single-node reductions.
inline ProductAssignment replay(const Network& net, const std::vector<AdoptionEvent>& events) {
  ProductAssignment state = net.initial();
  for (const AdoptionEvent& e : events) state = step(net, state, {{e.node, e.product}});
  return state;
}

}  // namespace diffnet
