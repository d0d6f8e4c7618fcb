#pragma once

#include "diffnet/network.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace diffnet {

struct RandomNetworkSpec {
  std::size_t nodes = 6;
  double edge_density = 0.3;  // fraction of ordered node pairs carrying an edge
  std::size_t products = 2;
  Rational theta_lo = Rational(1, 4);
  Rational theta_hi = Rational(3, 4);
  bool equitable = true;
  double singleton_fraction = 0.5;
  std::uint64_t seed = 1;
};

namespace detail {

// Draws come straight from the engine so instances are identical across
// platforms and standard library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return lo + engine_() % (hi - lo + 1);
  }
  bool bernoulli(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace detail

// Deterministic random instance: the seed fixes the network completely.
// Thresholds are drawn on a 24-step grid between the bounds; non-equitable
// incoming weights are drawn as small integers over a per-node common
// denominator scaled so the sum stays in [1/2, 1].
inline Network gen_random(const RandomNetworkSpec& spec) {
  if (spec.nodes == 0) throw std::invalid_argument("node count must be positive");
  if (spec.products == 0) throw std::invalid_argument("product count must be positive");
  if (spec.edge_density < 0.0 || spec.edge_density > 1.0)
    throw std::invalid_argument("edge density must lie in [0,1]");
  if (spec.singleton_fraction < 0.0 || spec.singleton_fraction > 1.0)
    throw std::invalid_argument("singleton fraction must lie in [0,1]");
  if (!(spec.theta_lo > 0) || spec.theta_lo > spec.theta_hi || spec.theta_hi > 1)
    throw std::invalid_argument("threshold range must satisfy 0 < lo <= hi <= 1");

  detail::Rng rng(spec.seed);
  const std::size_t n = spec.nodes;
  const auto products = static_cast<ProductId>(spec.products);

  std::vector<Rational> thetas;
  thetas.reserve(n);
  const Rational span = spec.theta_hi - spec.theta_lo;
  for (std::size_t i = 0; i < n; ++i) {
    auto k = static_cast<long long>(rng.uniform(0, 24));
    thetas.push_back(spec.theta_lo + span * Rational(k, 24));
  }

  std::vector<std::vector<std::string>> choices(n);
  for (std::size_t i = 0; i < n; ++i) {
    bool singleton = rng.bernoulli(spec.singleton_fraction) || products < 2;
    if (singleton) {
      choices[i].push_back("t" + std::to_string(rng.uniform(1, products)));
    } else {
      std::size_t want = rng.uniform(2, products);
      std::vector<ProductId> ids(products);
      for (ProductId t = 0; t < products; ++t) ids[t] = t;
      for (std::size_t j = 0; j < want; ++j) {
        std::size_t k = rng.uniform(j, products - 1);
        std::swap(ids[j], ids[k]);
      }
      ids.resize(want);
      std::sort(ids.begin(), ids.end());
      for (ProductId t : ids) choices[i].push_back("t" + std::to_string(t + 1));
    }
  }

  std::vector<std::pair<NodeId, NodeId>> edge_list;
  if (n >= 2) {
    if (n <= 320) {
      for (NodeId from = 0; from < n; ++from)
        for (NodeId to = 0; to < n; ++to)
          if (from != to && rng.bernoulli(spec.edge_density)) edge_list.emplace_back(from, to);
    } else {
      auto pairs = static_cast<double>(n) * static_cast<double>(n - 1);
      auto target = static_cast<std::size_t>(spec.edge_density * pairs + 0.5);
      std::unordered_set<std::uint64_t> seen;
      std::size_t attempts = 0;
      const std::size_t attempt_cap = 30 * target + 1000;
      while (seen.size() < target) {
        if (++attempts > attempt_cap)
          throw std::invalid_argument("edge density too high for sparse sampling");
        auto from = static_cast<NodeId>(rng.uniform(0, n - 1));
        auto to = static_cast<NodeId>(rng.uniform(0, n - 1));
        if (from == to) continue;
        std::uint64_t code = (std::uint64_t(from) << 32) | to;
        if (seen.insert(code).second) edge_list.emplace_back(from, to);
      }
    }
  }

  NetworkBuilder builder;
  for (ProductId t = 0; t < products; ++t) builder.add_product("t" + std::to_string(t + 1));
  auto name = [](NodeId i) { return "v" + std::to_string(i); };
  for (NodeId i = 0; i < n; ++i) builder.add_node(name(i), thetas[i], choices[i]);

  if (spec.equitable) {
    builder.equitable();
    for (const auto& [from, to] : edge_list) builder.add_edge(name(from), name(to));
  } else {
    std::vector<std::vector<std::size_t>> incoming(n);
    for (std::size_t e = 0; e < edge_list.size(); ++e)
      incoming[edge_list[e].second].push_back(e);
    std::vector<Rational> weights(edge_list.size());
    for (NodeId i = 0; i < n; ++i) {
      if (incoming[i].empty()) continue;
      std::vector<long long> parts;
      long long sum = 0;
      for (std::size_t e = 0; e < incoming[i].size(); ++e) {
        auto k = static_cast<long long>(rng.uniform(1, 8));
        parts.push_back(k);
        sum += k;
      }
      auto slack = static_cast<long long>(rng.uniform(0, static_cast<std::uint64_t>(sum)));
      for (std::size_t e = 0; e < incoming[i].size(); ++e)
        weights[incoming[i][e]] = Rational(parts[e], sum + slack);
    }
    for (std::size_t e = 0; e < edge_list.size(); ++e)
      builder.add_edge(name(edge_list[e].first), name(edge_list[e].second), weights[e]);
  }
  return builder.build();
}

struct GadgetSpec {
  std::vector<Rational> numbers;   // normalized so they sum to 1
  std::size_t chain_length = 1;    // M
  Rational epsilon = Rational(1, 100);
};

// Instance family tying the minimum spread of product `top` to an exact
// bipartition of the input numbers. Number nodes feed two detector inputs a
// and b with identical weights; a settles on t and b on tp exactly when the
// adopted sides split the total weight in half. Detector c escapes `top` only
// when a holds t, detector d only when b holds tp, and e adopts `top` as soon
// as either detector does, feeding the unit-weight chain. Three seed nodes
// hold {top} from the start, so a splittable instance admits a final network
// with exactly 3 adopters of top, while otherwise every final network has at
// least chain_length + 5 and some final network attains it.
inline Network gen_partition_gadget(const GadgetSpec& spec) {
  if (spec.numbers.empty()) throw std::invalid_argument("gadget needs at least one number");
  if (spec.chain_length == 0) throw std::invalid_argument("chain length must be at least 1");
  Rational total;
  for (const Rational& a : spec.numbers) {
    if (!(a > 0)) throw std::invalid_argument("gadget numbers must be positive");
    total += a;
  }
  if (!(spec.epsilon > 0) || spec.epsilon > Rational(1, 4))
    throw std::invalid_argument("epsilon must lie in (0, 1/4]");

  std::vector<Rational> numbers;
  numbers.reserve(spec.numbers.size());
  for (const Rational& a : spec.numbers) numbers.push_back(a / total);

  const Rational half(1, 2);
  const Rational quarter(1, 4);
  NetworkBuilder builder;
  builder.add_product("top").add_product("t").add_product("tp");
  for (std::size_t i = 0; i < numbers.size(); ++i)
    builder.add_node("v" + std::to_string(i + 1), half, {"t", "tp"});
  builder.add_node("a", half, {"t", "tp"});
  builder.add_node("b", half, {"t", "tp"});
  builder.add_node("c", half, {"t", "top"});
  builder.add_node("d", half, {"tp", "top"});
  builder.add_node("e", half + spec.epsilon, {"top", "t", "tp"});
  builder.add_node("s1", half, {"top"});
  builder.add_node("s2", half, {"top"});
  builder.add_node("s3", half, {"top"});
  for (std::size_t k = 1; k <= spec.chain_length; ++k)
    builder.add_node("m" + std::to_string(k), Rational(1), {"top", "t", "tp"});

  for (std::size_t i = 0; i < numbers.size(); ++i) {
    std::string v = "v" + std::to_string(i + 1);
    builder.add_edge(v, "a", numbers[i]);
    builder.add_edge(v, "b", numbers[i]);
  }
  builder.add_edge("a", "c", half);
  builder.add_edge("s1", "c", half);
  builder.add_edge("b", "d", half);
  builder.add_edge("s2", "d", half);
  builder.add_edge("c", "e", quarter);
  builder.add_edge("d", "e", quarter);
  builder.add_edge("s3", "e", half);
  builder.add_edge("e", "m1", Rational(1));
  for (std::size_t k = 2; k <= spec.chain_length; ++k)
    builder.add_edge("m" + std::to_string(k - 1), "m" + std::to_string(k), Rational(1));
  return builder.build();
}

}  // namespace diffnet
