#pragma once

#include "diffnet/reduction.hpp"

#include <deque>
#include <optional>
#include <utility>
#include <vector>

namespace diffnet {

struct SaturationOptions {
  // Restrict adoptions to this product.
  std::optional<ProductId> only;
  // When a node may pick among several products, avoid this one if possible.
  std::optional<ProductId> prefer_against;
};

struct SaturationResult {
  ProductAssignment state;
  std::vector<AdoptionEvent> events;
};

// Runs single-node reductions until no allowed adoption remains. Incoming
// weight per (node, product) is accumulated on a worklist, so a full run
// costs O(n + m) rational additions beyond the initial sweep. Every recorded
// event is a legal reduction at the moment it fires (the adoption condition
// is monotone along the run).
inline SaturationResult saturate(const Network& net, ProductAssignment state,
                                 const SaturationOptions& opt = {}) {
  const std::size_t n = net.node_count();
  std::vector<char> undecided(n, 0);
  std::vector<std::vector<Rational>> acc(n);
  std::deque<NodeId> queue;  // singleton nodes whose weight is not propagated yet
  std::vector<AdoptionEvent> events;
  std::size_t step_no = 0;

  auto allowed = [&](ProductId t) { return !opt.only || *opt.only == t; };
  auto pick = [&](const ProductSet& options) {
    if (opt.prefer_against)
      for (ProductId t : options)
        if (t != *opt.prefer_against) return t;
    return options.front();
  };
  auto adopt_now = [&](NodeId i, ProductId t) {
    state.adopt(i, t);
    undecided[i] = 0;
    events.push_back({i, t, ++step_no});
    queue.push_back(i);
  };

  for (NodeId i = 0; i < n; ++i) {
    const ProductSet& s = state.at(i);
    if (s.size() >= 2) {
      undecided[i] = 1;
      acc[i].assign(s.size(), Rational());
    } else if (s.size() == 1) {
      queue.push_back(i);
    }
  }

  // Nodes that are adoptable in the starting state, sources included.
  for (NodeId i = 0; i < n; ++i) {
    if (!undecided[i]) continue;
    ProductSet options;
    for (ProductId t : adoptable_products(net, state, i))
      if (allowed(t)) options.push_back(t);
    if (!options.empty()) adopt_now(i, pick(options));
  }

  while (!queue.empty()) {
    NodeId j = queue.front();
    queue.pop_front();
    ProductId t = state.at(j).front();
    for (const OutEdge& e : net.out_edges(j)) {
      NodeId i = e.to;
      if (!undecided[i]) continue;
      const ProductSet& base = state.at(i);
      auto it = std::lower_bound(base.begin(), base.end(), t);
      if (it == base.end() || *it != t) continue;
      std::size_t slot = static_cast<std::size_t>(it - base.begin());
      acc[i][slot] += e.weight;
      if (allowed(t) && acc[i][slot] >= net.threshold(i)) adopt_now(i, t);
    }
  }

  return {std::move(state), std::move(events)};
}

}  // namespace diffnet
