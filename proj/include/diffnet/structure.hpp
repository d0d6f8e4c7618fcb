#pragma once

#include "diffnet/reduction.hpp"
#include "diffnet/saturation.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace diffnet {

// Read-only view of a network's weighted digraph with the incoming edges of
// selected nodes removed. An empty mask views the graph unchanged.
struct GraphView {
  const Network* net = nullptr;
  std::vector<char> incoming_removed;

  std::size_t node_count() const { return net->node_count(); }
  bool removed(NodeId i) const { return !incoming_removed.empty() && incoming_removed[i]; }

  std::span<const InEdge> in_edges(NodeId i) const {
    if (removed(i)) return {};
    return net->in_edges(i);
  }
  bool is_source(NodeId i) const { return in_edges(i).empty(); }
  const Rational& theta(NodeId i) const { return net->threshold(i); }
};

inline GraphView full_view(const Network& net) { return {&net, {}}; }

// The graph with all edges into initial {t}-adopters removed; those nodes
// become sources, every other node keeps its neighbour set.
class ReducedGraph {
 public:
  ReducedGraph(const Network& base, ProductId product) : base_(&base), product_(product) {
    base.require_product(product);
    removed_.assign(base.node_count(), 0);
    for (NodeId i = 0; i < base.node_count(); ++i) {
      const ProductSet& s = base.initial().at(i);
      if (s.size() == 1 && s.front() == product) removed_[i] = 1;
    }
  }

  const Network& base() const { return *base_; }
  ProductId product() const { return product_; }
  bool incoming_removed(NodeId i) const { return removed_[i] != 0; }

  std::vector<Edge> removed_edges() const {
    std::vector<Edge> out;
    for (const Edge& e : base_->edges())
      if (removed_[e.to]) out.push_back(e);
    return out;
  }

  GraphView view() const { return {base_, removed_}; }

 private:
  const Network* base_;
  ProductId product_;
  std::vector<char> removed_;
};

inline ReducedGraph reduced_graph(const Network& net, ProductId t) { return {net, t}; }

// Witness that a graph is well-structured for the thresholds: every node with
// neighbours receives weight at least theta(i) from strictly lower levels.
struct LevelCertificate {
  std::vector<std::size_t> level;
};

// Decides whether levels can be assigned so that each non-source node gets
// enough in-weight from strictly lower levels. Sources sit at level 0; every
// other node is assigned the smallest level any certificate could give it, or
// no certificate exists. Worklist implementation: each edge is relaxed once
// when its origin gets a level, so a run is O(n + m) rational additions.
inline std::optional<LevelCertificate> well_structured(const GraphView& g) {
  const std::size_t n = g.node_count();
  constexpr std::size_t unassigned = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> level(n, unassigned);
  std::vector<Rational> pending(n);  // in-weight already provided by assigned levels
  std::vector<NodeId> frontier;

  for (NodeId i = 0; i < n; ++i)
    if (g.is_source(i)) {
      level[i] = 0;
      frontier.push_back(i);
    }
  std::size_t assigned = frontier.size();
  if (n > 0 && frontier.empty()) return std::nullopt;

  std::vector<char> touched(n, 0);
  std::vector<NodeId> candidates;
  std::size_t round = 0;
  while (!frontier.empty()) {
    ++round;
    candidates.clear();
    for (NodeId j : frontier) {
      for (const OutEdge& e : g.net->out_edges(j)) {
        if (g.removed(e.to) || level[e.to] != unassigned) continue;
        pending[e.to] += e.weight;
        if (!touched[e.to]) {
          touched[e.to] = 1;
          candidates.push_back(e.to);
        }
      }
    }
    frontier.clear();
    for (NodeId i : candidates) {
      touched[i] = 0;
      if (pending[i] >= g.theta(i)) {
        level[i] = round;
        frontier.push_back(i);
        ++assigned;
      }
    }
  }
  if (assigned != n) return std::nullopt;
  return LevelCertificate{std::move(level)};
}

inline bool verify_certificate(const GraphView& g, const LevelCertificate& cert) {
  if (cert.level.size() != g.node_count())
    throw std::invalid_argument("certificate must assign a level to every node");
  for (NodeId i = 0; i < g.node_count(); ++i) {
    auto in = g.in_edges(i);
    if (in.empty()) continue;
    Rational sum;
    bool ok = false;
    for (const InEdge& e : in) {
      if (cert.level[e.from] < cert.level[i]) {
        sum += e.weight;
        if (sum >= g.theta(i)) {
          ok = true;
          break;
        }
      }
    }
    if (!ok) return false;
  }
  return true;
}

// Decision plus whatever evidence backs it: a level certificate and a trace
// for positive reachability, a counterexample final assignment or an
// ambivalence report for negative answers.
struct AnalysisVerdict {
  bool decision = false;
  std::string reason;
  std::optional<LevelCertificate> certificate;
  std::optional<ReductionTrace> trace;
  std::optional<ProductAssignment> counterexample;
  std::optional<AmbivalenceReport> ambivalence;
  std::optional<ProductAssignment> outcome;
};

namespace detail {

// Level-by-level adoption of `top`, valid whenever the reduced graph has a
// certificate and every node lists `top`.
inline ReductionTrace trace_to_constant(const Network& net, ProductId top,
                                        const LevelCertificate& cert) {
  ReductionTrace trace;
  trace.network = &net;
  std::size_t max_level = 0;
  for (std::size_t l : cert.level) max_level = std::max(max_level, l);
  std::vector<std::vector<NodeId>> by_level(max_level + 1);
  for (NodeId i = 0; i < net.node_count(); ++i) by_level[cert.level[i]].push_back(i);
  ProductAssignment state = net.initial();
  std::size_t step_no = 0;
  for (const auto& nodes : by_level)
    for (NodeId i : nodes)
      if (state.at(i).size() >= 2) {
        trace.events.push_back({i, top, ++step_no});
        state.adopt(i, top);
      }
  trace.terminal = std::move(state);
  return trace;
}

// A final assignment reached by greedy reductions that avoid `avoid` whenever
// a node has another option.
inline ProductAssignment greedy_final(const Network& net, ProductId avoid) {
  SaturationOptions opt;
  opt.prefer_against = avoid;
  return saturate(net, net.initial(), opt).state;
}

}  // namespace detail

// Whether the constant assignment [top] is reachable: top must be available
// everywhere and the reduced graph must admit a level certificate. A positive
// verdict carries the certificate and a replayable trace.
inline AnalysisVerdict reachable_all(const Network& net, ProductId top) {
  net.require_product(top);
  AnalysisVerdict v;
  for (NodeId i = 0; i < net.node_count(); ++i) {
    if (!contains(net.initial().at(i), top)) {
      v.reason = "product '" + net.product_name(top) + "' is not available at node '" +
                 net.node_name(i) + "'";
      return v;
    }
  }
  ReducedGraph rg(net, top);
  auto cert = well_structured(rg.view());
  if (!cert) {
    v.reason = "the graph reduced for '" + net.product_name(top) +
               "' admits no level certificate";
    return v;
  }
  v.decision = true;
  v.trace = detail::trace_to_constant(net, top, *cert);
  v.certificate = std::move(cert);
  return v;
}

// Whether every maximal reduction ends in [top]: all sources must already
// hold exactly {top}, top must be available everywhere, and the reduced graph
// must admit a certificate. A negative verdict carries a final assignment
// different from [top].
inline AnalysisVerdict unavoidable_all(const Network& net, ProductId top) {
  net.require_product(top);
  AnalysisVerdict v;
  for (NodeId i = 0; i < net.node_count(); ++i) {
    if (!net.in_edges(i).empty()) continue;
    const ProductSet& s = net.initial().at(i);
    if (s.size() != 1 || s.front() != top) {
      v.reason = "source node '" + net.node_name(i) + "' does not start with exactly {" +
                 net.product_name(top) + "}";
      v.counterexample = detail::greedy_final(net, top);
      return v;
    }
  }
  for (NodeId i = 0; i < net.node_count(); ++i) {
    if (!contains(net.initial().at(i), top)) {
      v.reason = "product '" + net.product_name(top) + "' is not available at node '" +
                 net.node_name(i) + "'";
      v.counterexample = detail::greedy_final(net, top);
      return v;
    }
  }
  ReducedGraph rg(net, top);
  auto cert = well_structured(rg.view());
  if (!cert) {
    v.reason = "the graph reduced for '" + net.product_name(top) +
               "' admits no level certificate";
    v.counterexample = detail::greedy_final(net, top);
    return v;
  }
  v.decision = true;
  v.trace = detail::trace_to_constant(net, top, *cert);
  v.certificate = std::move(cert);
  return v;
}

// Whether exactly one final network exists: the contraction sequence must run
// to a maximal, non-ambivalent end. Positive verdicts carry the unique final
// assignment, negative ones the ambivalence report.
inline AnalysisVerdict unique_outcome(const Network& net) {
  AnalysisVerdict v;
  ContractionResult c = contraction_sequence(net);
  if (c.status == ContractionStatus::maximal) {
    v.decision = true;
    v.outcome = c.trace.back();
  } else {
    v.reason = "contraction reaches an ambivalent state at node '" +
               net.node_name(c.report.node) + "'";
    v.ambivalence = std::move(c.report);
  }
  return v;
}

// Cheap sufficient condition for a unique outcome: every source holds a
// singleton, and a node can only be undecided with two or more neighbours
// when its threshold exceeds 1/2. Never necessary.
inline bool unique_outcome_sufficient(const Network& net) {
  const Rational half(1, 2);
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const ProductSet& p = net.initial().at(i);
    const auto& in = net.in_edges(i);
    if (in.empty() && p.size() != 1) return false;
    if (net.threshold(i) <= half && in.size() >= 2 && p.size() >= 2) return false;
  }
  return true;
}

}  // namespace diffnet
