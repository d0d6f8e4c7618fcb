#pragma once

#include "diffnet/enumeration.hpp"
#include "diffnet/reduction.hpp"
#include "diffnet/saturation.hpp"

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

namespace diffnet {

// Limits for the exact exponential searches. Exceeding a limit produces an
// explicitly tagged outcome, never a silently wrong answer.
struct SearchBudget {
  std::size_t max_states = 2'000'000;
  std::uint64_t max_millis = 60'000;
};

struct ClosureResult {
  ProductId product;
  std::vector<NodeId> adopters;  // sorted; nodes holding {product} after saturation
  ReductionTrace trace;
};

// Saturates adoptions of `top` alone: sources listing it adopt it outright,
// every other node adopts as soon as the accumulated weight from {top}
// adopters reaches its threshold. Other products are never adopted.
inline ClosureResult top_closure(const Network& net, ProductId top) {
  net.require_product(top);
  SaturationOptions opt;
  opt.only = top;
  SaturationResult run = saturate(net, net.initial(), opt);
  ClosureResult result;
  result.product = top;
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const ProductSet& s = run.state.at(i);
    if (s.size() == 1 && s.front() == top) result.adopters.push_back(i);
  }
  result.trace.network = &net;
  result.trace.events = std::move(run.events);
  result.trace.terminal = std::move(run.state);
  return result;
}

struct SpreadBound {
  ProductId product;
  std::size_t count = 0;
  ProductAssignment witness;  // a final assignment attaining the bound
  bool exact = true;          // false when the search budget ran out
};

namespace detail {

inline std::size_t count_adopters(const ProductAssignment& state, ProductId t) {
  std::size_t count = 0;
  for (NodeId i = 0; i < state.size(); ++i) {
    const ProductSet& s = state.at(i);
    if (s.size() == 1 && s.front() == t) ++count;
  }
  return count;
}

}  // namespace detail

// Maximum number of {top} nodes over all final networks. The closure already
// holds every node that can ever adopt top; the witness extends it by an
// arbitrary maximal reduction, which cannot add top adopters since no
// remaining node meets the condition and other adoptions never help it.
inline SpreadBound max_adoption(const Network& net, ProductId top) {
  ClosureResult closure = top_closure(net, top);
  SaturationOptions opt;
  opt.prefer_against = top;
  SaturationResult extension = saturate(net, std::move(closure.trace.terminal), opt);
  SpreadBound bound;
  bound.product = top;
  bound.count = closure.adopters.size();
  bound.witness = std::move(extension.state);
  bound.exact = true;
  return bound;
}

namespace detail {

class ExactSearch {
 public:
  ExactSearch(const Network& net, const SearchBudget& budget)
      : net_(net),
        budget_(budget),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(budget.max_millis)) {}

  bool exhausted() const { return exhausted_; }

 protected:
  // Returns false when the budget ran out while registering the state, true
  // when the state is new.
  bool enter(const ProductAssignment& state) {
    if (exhausted_) return false;
    if (!visited_.insert(state_key(net_, state)).second) return false;
    if (visited_.size() > budget_.max_states) {
      exhausted_ = true;
      return false;
    }
    if ((visited_.size() & 1023) == 0 &&
        std::chrono::steady_clock::now() > deadline_) {
      exhausted_ = true;
      return false;
    }
    return true;
  }

  // Single-node successors, adoptions of `last` listed after all others.
  std::vector<std::pair<NodeId, ProductId>> moves(const ProductAssignment& state,
                                                  std::optional<ProductId> last) const {
    std::vector<std::pair<NodeId, ProductId>> first, rest;
    for (NodeId i = 0; i < net_.node_count(); ++i) {
      const ProductSet& s = state.at(i);
      if (s.size() < 2) continue;
      for (ProductId t : s) {
        if (!adoption_condition(net_, state, i, t)) continue;
        if (last && t == *last)
          rest.emplace_back(i, t);
        else
          first.emplace_back(i, t);
      }
    }
    first.insert(first.end(), rest.begin(), rest.end());
    return first;
  }

  const Network& net_;
  SearchBudget budget_;
  std::chrono::steady_clock::time_point deadline_;
  std::unordered_set<StateKey> visited_;
  bool exhausted_ = false;
};

class MinAdoptionSearch : public ExactSearch {
 public:
  MinAdoptionSearch(const Network& net, ProductId top, const SearchBudget& budget)
      : ExactSearch(net, budget), top_(top) {
    SaturationOptions opt;
    opt.prefer_against = top;
    best_witness_ = saturate(net, net.initial(), opt).state;
    best_ = count_adopters(best_witness_, top);
  }

  SpreadBound run() {
    dfs(net_.initial(), count_adopters(net_.initial(), top_));
    return {top_, best_, std::move(best_witness_), !exhausted_};
  }

 private:
  void dfs(const ProductAssignment& state, std::size_t top_count) {
    // The adopter count never shrinks below the current one along any
    // continuation, so anything at or above the incumbent is dead.
    if (exhausted_ || top_count >= best_) return;
    if (!enter(state)) return;
    auto ms = moves(state, top_);
    if (ms.empty()) {
      best_ = top_count;
      best_witness_ = state;
      return;
    }
    for (const auto& [i, t] : ms) {
      ProductAssignment child = state;
      child.adopt(i, t);
      dfs(child, top_count + (t == top_ ? 1 : 0));
      if (exhausted_) return;
    }
  }

  ProductId top_;
  std::size_t best_;
  ProductAssignment best_witness_;
};

}  // namespace detail

// Exact minimum number of {top} nodes over all final networks, found by a
// memoized depth-first search over single-node adoptions with the incumbent
// as pruning bound. When the budget runs out the incumbent is returned as an
// upper bound with exact=false.
inline SpreadBound min_adoption(const Network& net, ProductId top, SearchBudget budget = {}) {
  net.require_product(top);
  detail::MinAdoptionSearch search(net, top, budget);
  return search.run();
}

enum class DecisionStatus { decided, budget_exhausted };

struct BudgetedDecision {
  DecisionStatus status = DecisionStatus::decided;
  bool value = false;
  // For negative answers, a final assignment witnessing the counterexample.
  std::optional<ProductAssignment> counterexample;
};

namespace detail {

// Shared scheme of the two universally quantified questions: explore all
// reachable states, prune subtrees where the property can no longer fail,
// stop at the first counterexample final.
template <class PruneFn, class FailsFn>
BudgetedDecision for_all_finals(const Network& net, const SearchBudget& budget, PruneFn&& prune,
                                FailsFn&& fails) {
  class Walker : public ExactSearch {
   public:
    Walker(const Network& net, const SearchBudget& budget, PruneFn& prune, FailsFn& fails)
        : ExactSearch(net, budget), prune_(prune), fails_(fails) {}

    // Returns true when a counterexample was found.
    bool dfs(const ProductAssignment& state) {
      if (exhausted_ || prune_(state)) return false;
      if (!enter(state)) return false;
      auto ms = moves(state, std::nullopt);
      if (ms.empty()) {
        if (fails_(state)) {
          counterexample_ = state;
          return true;
        }
        return false;
      }
      for (const auto& [i, t] : ms) {
        ProductAssignment child = state;
        child.adopt(i, t);
        if (dfs(child)) return true;
        if (exhausted_) return false;
      }
      return false;
    }

    std::optional<ProductAssignment> counterexample_;

   private:
    PruneFn& prune_;
    FailsFn& fails_;
  };

  Walker walker(net, budget, prune, fails);
  bool found = walker.dfs(net.initial());
  BudgetedDecision decision;
  if (found) {
    decision.value = false;
    decision.counterexample = std::move(walker.counterexample_);
  } else if (walker.exhausted()) {
    decision.status = DecisionStatus::budget_exhausted;
  } else {
    decision.value = true;
  }
  return decision;
}

}  // namespace detail

// Whether node i holds a single product in every final network. Subtrees
// where i already adopted cannot fail and are pruned.
inline BudgetedDecision adoption1_unavoidable_some(const Network& net, NodeId i,
                                                   SearchBudget budget = {}) {
  net.require_node(i);
  if (net.initial().at(i).size() <= 1) return {DecisionStatus::decided, true, std::nullopt};
  return detail::for_all_finals(
      net, budget, [&](const ProductAssignment& state) { return state.at(i).size() == 1; },
      [&](const ProductAssignment& final_state) { return final_state.at(i).size() != 1; });
}

// Whether node i holds exactly {top} in every final network.
inline BudgetedDecision adoption2_unavoidable_given(const Network& net, NodeId i, ProductId top,
                                                    SearchBudget budget = {}) {
  net.require_node(i);
  net.require_product(top);
  const ProductSet& p = net.initial().at(i);
  if (p.size() == 1 && p.front() == top) return {DecisionStatus::decided, true, std::nullopt};
  if (!contains(p, top)) {
    // i can never adopt top; any final assignment is a counterexample.
    SaturationOptions opt;
    return {DecisionStatus::decided, false, saturate(net, net.initial(), opt).state};
  }
  return detail::for_all_finals(
      net, budget,
      [&](const ProductAssignment& state) {
        const ProductSet& s = state.at(i);
        return s.size() == 1 && s.front() == top;
      },
      [&](const ProductAssignment& final_state) {
        const ProductSet& s = final_state.at(i);
        return s.size() != 1 || s.front() != top;
      });
}

// Whether node i performs an adoption of `top` in some final network, i.e. it
// started undecided and the closure reaches it.
inline bool adoption4_possible_given(const Network& net, NodeId i, ProductId top) {
  net.require_node(i);
  net.require_product(top);
  if (net.initial().at(i).size() < 2) return false;
  ClosureResult closure = top_closure(net, top);
  return std::binary_search(closure.adopters.begin(), closure.adopters.end(), i);
}

// Whether node i performs an adoption of any of its products in some final
// network; one closure per listed product.
inline bool adoption3_possible_some(const Network& net, NodeId i) {
  net.require_node(i);
  for (ProductId t : net.initial().at(i))
    if (adoption4_possible_given(net, i, t)) return true;
  return false;
}

}  // namespace diffnet
