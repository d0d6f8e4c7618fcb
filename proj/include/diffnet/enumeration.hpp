#pragma once

#include "diffnet/reduction.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace diffnet {

// Canonical key of a reachable state: one byte per node, 0 while the node
// still holds its initial set, otherwise 1 + the index of the adopted product
// within that set.
using StateKey = std::string;

inline StateKey state_key(const Network& net, const ProductAssignment& state) {
  const ProductAssignment& init = net.initial();
  if (state.size() != net.node_count())
    throw std::invalid_argument("state has the wrong number of nodes");
  StateKey key(net.node_count(), '\0');
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const ProductSet& cur = state.at(i);
    const ProductSet& base = init.at(i);
    if (cur == base) continue;
    if (cur.size() != 1) throw std::invalid_argument("state is not reachable-shaped");
    auto it = std::lower_bound(base.begin(), base.end(), cur.front());
    if (it == base.end() || *it != cur.front())
      throw std::invalid_argument("state is not reachable-shaped");
    std::size_t slot = static_cast<std::size_t>(it - base.begin()) + 1;
    if (slot > 255) throw std::invalid_argument("too many products for a one-byte state code");
    key[i] = static_cast<char>(slot);
  }
  return key;
}

inline ProductAssignment state_from_key(const Network& net, const StateKey& key) {
  if (key.size() != net.node_count()) throw std::invalid_argument("state key has the wrong size");
  std::vector<ProductSet> choices;
  choices.reserve(net.node_count());
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const ProductSet& base = net.initial().at(i);
    auto code = static_cast<unsigned char>(key[i]);
    if (code == 0) {
      choices.push_back(base);
    } else {
      if (code > base.size()) throw std::invalid_argument("state key code out of range");
      choices.push_back(ProductSet{base[code - 1]});
    }
  }
  return ProductAssignment(std::move(choices));
}

inline constexpr std::size_t kDefaultStateLimit = 1'000'000;
// Transition edges are kept only while the space stays this small.
inline constexpr std::size_t kTransitionRetention = 4096;

struct StateSpace {
  std::unordered_set<StateKey> states;
  std::unordered_set<StateKey> finals;
  std::optional<std::vector<std::pair<StateKey, StateKey>>> transitions;
  bool overflowed = false;
  std::size_t limit = 0;
};

namespace detail {

template <class SuccessorFn>
StateSpace explore_impl(const Network& net, std::size_t limit, SuccessorFn&& successors_of) {
  StateSpace space;
  space.limit = limit;
  std::vector<std::pair<StateKey, StateKey>> edges;
  bool keep_edges = true;
  std::deque<StateKey> queue;

  StateKey start = state_key(net, net.initial());
  space.states.insert(start);
  if (space.states.size() > limit) {
    space.overflowed = true;
    return space;
  }
  queue.push_back(std::move(start));

  while (!queue.empty() && !space.overflowed) {
    StateKey key = std::move(queue.front());
    queue.pop_front();
    ProductAssignment state = state_from_key(net, key);
    bool any = false;
    successors_of(state, [&](const ProductAssignment& child) {
      any = true;
      if (space.overflowed) return;
      StateKey child_key = state_key(net, child);
      if (keep_edges) {
        edges.emplace_back(key, child_key);
        if (space.states.size() > kTransitionRetention) {
          keep_edges = false;
          edges.clear();
          edges.shrink_to_fit();
        }
      }
      if (space.states.insert(child_key).second) {
        if (space.states.size() > limit) {
          space.overflowed = true;
          return;
        }
        queue.push_back(std::move(child_key));
      }
    });
    if (!any && !space.overflowed) space.finals.insert(key);
  }
  if (!space.overflowed && keep_edges) space.transitions = std::move(edges);
  return space;
}

}  // namespace detail

// Exhaustive breadth-first exploration over single-node adoptions. Exceeding
// the state limit aborts with the overflow flag set; results are never
// silently truncated.
inline StateSpace explore(const Network& net, std::size_t limit = kDefaultStateLimit) {
  return detail::explore_impl(net, limit, [&](const ProductAssignment& state, auto&& emit) {
    for (NodeId i = 0; i < net.node_count(); ++i) {
      const ProductSet& s = state.at(i);
      if (s.size() < 2) continue;
      for (ProductId t : s) {
        if (!adoption_condition(net, state, i, t)) continue;
        ProductAssignment child = state;
        child.adopt(i, t);
        emit(child);
      }
    }
  });
}

// Exploration over arbitrary simultaneous legal adoption sets. The fan-out is
// exponential in the number of adoptable nodes; intended for small instances
// to validate that multi-node steps reach exactly the single-step states.
inline StateSpace multi_step_explore(const Network& net,
                                     std::size_t limit = kDefaultStateLimit) {
  return detail::explore_impl(net, limit, [&](const ProductAssignment& state, auto&& emit) {
    std::vector<std::pair<NodeId, ProductSet>> options;
    for (NodeId i = 0; i < net.node_count(); ++i) {
      if (state.at(i).size() < 2) continue;
      ProductSet a = adoptable_products(net, state, i);
      if (!a.empty()) options.emplace_back(i, std::move(a));
    }
    if (options.empty()) return;
    std::vector<std::pair<NodeId, ProductId>> picked;
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (k == options.size()) {
        if (picked.empty()) return;
        ProductAssignment child = state;
        for (const auto& [i, t] : picked) child.adopt(i, t);
        emit(child);
        return;
      }
      self(self, k + 1);  // node k adopts nothing
      for (ProductId t : options[k].second) {
        picked.emplace_back(options[k].first, t);
        self(self, k + 1);
        picked.pop_back();
      }
    };
    rec(rec, 0);
  });
}

// The quantities the characterization theorems and spread solvers predict,
// aggregated over the complete set of final networks.
struct FinalSummary {
  bool unique = false;
  std::vector<std::vector<ProductSet>> possible;       // per node, sorted distinct final values
  std::vector<std::size_t> min_adopters;               // per product, over finals
  std::vector<std::size_t> max_adopters;               // per product, over finals
  std::vector<bool> constant_reachable;                // per product: [t] is a final network
};

inline FinalSummary oracle_final_predicates(const Network& net, const StateSpace& space) {
  if (space.overflowed)
    throw std::logic_error("state space exploration overflowed; no summary available");
  const std::size_t products = net.product_count();
  FinalSummary summary;
  summary.unique = space.finals.size() == 1;
  summary.min_adopters.assign(products, std::numeric_limits<std::size_t>::max());
  summary.max_adopters.assign(products, 0);
  std::vector<std::set<ProductSet>> possible(net.node_count());

  for (const StateKey& key : space.finals) {
    ProductAssignment final_state = state_from_key(net, key);
    std::vector<std::size_t> count(products, 0);
    for (NodeId i = 0; i < net.node_count(); ++i) {
      const ProductSet& s = final_state.at(i);
      possible[i].insert(s);
      if (s.size() == 1) ++count[s.front()];
    }
    for (ProductId t = 0; t < products; ++t) {
      summary.min_adopters[t] = std::min(summary.min_adopters[t], count[t]);
      summary.max_adopters[t] = std::max(summary.max_adopters[t], count[t]);
    }
  }

  summary.possible.reserve(net.node_count());
  for (auto& set : possible)
    summary.possible.emplace_back(set.begin(), set.end());

  summary.constant_reachable.assign(products, false);
  for (ProductId t = 0; t < products; ++t) {
    bool everywhere = true;
    for (NodeId i = 0; i < net.node_count() && everywhere; ++i)
      everywhere = contains(net.initial().at(i), t);
    if (!everywhere) continue;
    summary.constant_reachable[t] =
        space.finals.contains(state_key(net, constant_assignment(net, t)));
  }
  return summary;
}

}  // namespace diffnet
