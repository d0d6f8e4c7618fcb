// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit code 0 only if all pass.

#include "diffnet/diffnet.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace diffnet;
using Clock = std::chrono::steady_clock;

namespace {

struct Checker {
  bool ok = true;
  std::ostringstream why;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      why << what;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

NodeId id(const Network& net, const char* name) { return *net.find_node(name); }
ProductId pid(const Network& net, const char* name) { return *net.find_product(name); }

std::set<std::pair<std::string, std::string>> bc_finals(const Network& net,
                                                        const StateSpace& space) {
  std::set<std::pair<std::string, std::string>> out;
  for (const StateKey& key : space.finals) {
    ProductAssignment f = state_from_key(net, key);
    auto show = [&](const char* name) {
      const ProductSet& s = f.at(id(net, name));
      return s.size() == 1 ? net.product_name(s.front()) : std::string("P");
    };
    out.emplace(show("b"), show("c"));
  }
  return out;
}

// criterion 1: the first reference network across its threshold regimes
bool criterion1(std::string& detail) {
  Checker c;
  auto start = Clock::now();

  Network low = net_a(Rational(3, 10));
  StateSpace slow = explore(low);
  c.require(slow.finals.size() == 2, "theta=3/10 should have two final networks");
  ProductAssignment a_t1 = low.initial();
  a_t1.adopt(id(low, "a"), pid(low, "t1"));
  ProductAssignment a_t2 = low.initial();
  a_t2.adopt(id(low, "a"), pid(low, "t2"));
  c.require(slow.finals.contains(state_key(low, a_t1)), "a={t1} final missing at 3/10");
  c.require(slow.finals.contains(state_key(low, a_t2)), "a={t2} final missing at 3/10");
  c.require(!unique_outcome(low).decision, "3/10 must not have a unique outcome");

  Network mid = net_a(Rational(1, 2));
  StateSpace smid = explore(mid);
  ProductAssignment mid_t1 = mid.initial();
  mid_t1.adopt(id(mid, "a"), pid(mid, "t1"));
  c.require(smid.finals.size() == 1 && smid.finals.contains(state_key(mid, mid_t1)),
            "theta=1/2 should reach exactly a={t1}");
  c.require(unique_outcome(mid).decision, "1/2 must have a unique outcome");

  Network high = net_a(Rational(8, 10));
  StateSpace shigh = explore(high);
  c.require(shigh.states.size() == 1 &&
                shigh.finals.contains(state_key(high, high.initial())),
            "theta=8/10 should admit no adoption");
  c.require(unique_outcome(high).decision, "8/10 must have a unique outcome");

  c.require(!unique_outcome(net_a(Rational(1, 3))).decision,
            "theta=1/3 must be ambivalent (condition uses >=)");
  c.require(unique_outcome(net_a(Rational(1, 3) + Rational(1, 1000))).decision,
            "theta=1/3+1/1000 must have a unique outcome");

  double elapsed = seconds_since(start);
  c.require(elapsed < 1.0, "criterion must finish within 1 s");
  std::ostringstream d;
  d << "thresholds {3/10, 1/2, 8/10, 1/3, 1003/3000} in " << elapsed << " s";
  detail = c.ok ? d.str() : c.why.str();
  return c.ok;
}

// criterion 2: the second reference network reproduces all five case rows
bool criterion2(std::string& detail) {
  Checker c;
  auto start = Clock::now();
  using Finals = std::set<std::pair<std::string, std::string>>;

  auto row = [&](const Rational& tb, const Rational& tc, const Finals& expect,
                 const char* label) {
    Network net = net_b(tb, tc);
    StateSpace space = explore(net);
    c.require(!space.overflowed && bc_finals(net, space) == expect,
              std::string("case row mismatch: ") + label);
  };
  row(Rational(1, 3), Rational(1, 2), {{"t1", "t1"}, {"t1", "t2"}, {"t2", "t2"}}, "row 1a");
  row(Rational(1, 4), Rational(2, 5), {{"t1", "t1"}, {"t1", "t2"}, {"t2", "t2"}}, "row 1b");
  row(Rational(1, 3), Rational(3, 5), {{"t1", "P"}, {"t2", "t2"}}, "row 2a");
  row(Rational(3, 10), Rational(2, 3), {{"t1", "P"}, {"t2", "t2"}}, "row 2b");
  row(Rational(1, 2), Rational(2, 5), {{"t2", "t2"}}, "row 3a");
  row(Rational(3, 5), Rational(1, 2), {{"t2", "t2"}}, "row 3b");
  row(Rational(1, 2), Rational(3, 5), {{"P", "P"}}, "row 4a");
  row(Rational(7, 10), Rational(7, 10), {{"P", "P"}}, "row 4b");
  row(Rational(4, 5), Rational(2, 5), {{"P", "t2"}}, "row 5a");
  row(Rational(9, 10), Rational(1, 4), {{"P", "t2"}}, "row 5b");

  // In the row-3 regime b settles only after c has.
  Network seq = net_b(Rational(1, 2), Rational(2, 5));
  ContractionResult contraction = contraction_sequence(seq);
  c.require(contraction.status == ContractionStatus::maximal && contraction.trace.size() == 3,
            "row 3 contraction should take two fast steps");
  if (contraction.trace.size() == 3) {
    c.require(contraction.trace[1].is_singleton(id(seq, "c")) &&
                  !contraction.trace[1].is_singleton(id(seq, "b")) &&
                  contraction.trace[2].is_singleton(id(seq, "b")),
              "b must adopt strictly after c");
  }

  double elapsed = seconds_since(start);
  c.require(elapsed < 1.0, "criterion must finish within 1 s");
  std::ostringstream d;
  d << "5 rows x 2 theta pairs + adoption order in " << elapsed << " s";
  detail = c.ok ? d.str() : c.why.str();
  return c.ok;
}

// criterion 3: all deciders and solvers against the oracle on 500 seeds
bool criterion3(std::string& detail) {
  Checker c;
  auto start = Clock::now();
  std::size_t instances = 0;

  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    RandomNetworkSpec spec;
    spec.nodes = 1 + seed % 7;
    spec.products = 1 + (seed / 2) % 3;
    spec.edge_density = 0.1 + 0.15 * static_cast<double>(seed % 5);
    spec.equitable = seed % 2 == 0;
    spec.singleton_fraction = 0.2 + 0.2 * static_cast<double>(seed % 3);
    spec.theta_lo = seed % 3 == 0 ? Rational(1, 8) : Rational(1, 4);
    spec.theta_hi = seed % 3 == 0 ? Rational(1, 2) : Rational(3, 4);
    spec.seed = 10'000 + seed;
    Network net = gen_random(spec);
    StateSpace space = explore(net);
    if (space.overflowed) {
      c.require(false, "oracle overflow at seed " + std::to_string(seed));
      break;
    }
    FinalSummary summary = oracle_final_predicates(net, space);
    ++instances;
    auto fail = [&](const char* what) {
      c.require(false, std::string(what) + " disagrees at seed " + std::to_string(seed));
    };

    if (unique_outcome(net).decision != summary.unique) fail("unique_outcome");
    for (ProductId t = 0; t < net.product_count(); ++t) {
      bool constant_reachable = summary.constant_reachable[t];
      if (reachable_all(net, t).decision != constant_reachable) fail("reachable_all");
      bool only = space.finals.size() == 1 && constant_reachable;
      if (unavoidable_all(net, t).decision != only) fail("unavoidable_all");
      if (max_adoption(net, t).count != summary.max_adopters[t]) fail("max_adoption");
      SpreadBound mn = min_adoption(net, t);
      if (!mn.exact || mn.count != summary.min_adopters[t]) fail("min_adoption");
    }
    for (NodeId i = 0; i < net.node_count(); ++i) {
      bool always_settled = true;
      std::set<ProductSet> final_values;
      for (const StateKey& key : space.finals) {
        ProductAssignment f = state_from_key(net, key);
        final_values.insert(f.at(i));
        always_settled = always_settled && f.at(i).size() == 1;
      }
      bool undecided = net.initial().at(i).size() >= 2;
      BudgetedDecision a1 = adoption1_unavoidable_some(net, i);
      if (a1.status != DecisionStatus::decided || a1.value != always_settled)
        fail("adoption1");
      bool can_settle = false;
      for (const ProductSet& v : final_values) can_settle = can_settle || v.size() == 1;
      if (adoption3_possible_some(net, i) != (undecided && can_settle)) fail("adoption3");
      for (ProductId t = 0; t < net.product_count(); ++t) {
        bool always_t = true;
        bool sometimes_t = false;
        for (const ProductSet& v : final_values) {
          bool is_t = v.size() == 1 && v.front() == t;
          always_t = always_t && is_t;
          sometimes_t = sometimes_t || is_t;
        }
        BudgetedDecision a2 = adoption2_unavoidable_given(net, i, t);
        if (a2.status != DecisionStatus::decided || a2.value != always_t) fail("adoption2");
        if (adoption4_possible_given(net, i, t) != (undecided && sometimes_t))
          fail("adoption4");
      }
    }
    if (!c.ok) break;
  }

  double elapsed = seconds_since(start);
  c.require(elapsed < 300.0, "suite must finish within 5 minutes");
  std::ostringstream d;
  d << instances << " instances, zero disagreements, " << elapsed << " s";
  detail = c.ok ? d.str() : c.why.str();
  return c.ok;
}

// criterion 4: single-node and multi-node exploration reach identical sets
bool criterion4(std::string& detail) {
  Checker c;
  auto start = Clock::now();
  for (std::uint64_t seed = 1; seed <= 200 && c.ok; ++seed) {
    RandomNetworkSpec spec;
    spec.nodes = 1 + seed % 6;  // at most 6 nodes, so at most 6 undecided
    spec.products = 1 + seed % 3;
    spec.edge_density = 0.15 + 0.15 * static_cast<double>(seed % 4);
    spec.equitable = seed % 2 == 1;
    spec.singleton_fraction = 0.25;
    spec.seed = 20'000 + seed;
    Network net = gen_random(spec);
    StateSpace single = explore(net, 500'000);
    StateSpace multi = multi_step_explore(net, 500'000);
    c.require(!single.overflowed && !multi.overflowed,
              "overflow at seed " + std::to_string(seed));
    c.require(single.states == multi.states && single.finals == multi.finals,
              "reachable/final sets differ at seed " + std::to_string(seed));
  }
  double elapsed = seconds_since(start);
  std::ostringstream d;
  d << "200 instances, identical reachable and final sets, " << elapsed << " s";
  detail = c.ok ? d.str() : c.why.str();
  return c.ok;
}

// criterion 5: certificates verify and are pointwise minimal
bool criterion5(std::string& detail) {
  Checker c;
  auto start = Clock::now();
  std::mt19937_64 rng(5);
  std::size_t tested = 0;

  for (std::uint64_t seed = 1; tested < 200 && seed <= 4000 && c.ok; ++seed) {
    RandomNetworkSpec spec;
    spec.nodes = 2 + seed % 8;
    spec.products = 2;
    spec.edge_density = 0.2 + 0.1 * static_cast<double>(seed % 4);
    spec.equitable = seed % 2 == 0;
    spec.theta_lo = Rational(1, 8);
    spec.theta_hi = Rational(1, 2);
    spec.seed = 30'000 + seed;
    Network net = gen_random(spec);
    GraphView view = full_view(net);
    auto cert = well_structured(view);
    if (!cert) continue;
    ++tested;
    c.require(verify_certificate(view, *cert),
              "certificate fails verification at seed " + std::to_string(seed));

    std::size_t accepted = 0;
    std::size_t attempts = 0;
    while (accepted < 50 && c.ok) {
      LevelCertificate alt = *cert;
      if (++attempts > 4000) {
        // Raising every level by a constant always stays valid.
        for (auto& l : alt.level) l += 1;
      } else {
        for (auto& l : alt.level) {
          std::size_t r = rng() % 4;
          if (r == 0 && l > 0)
            l -= 1;  // attempts to undercut the assignment must fail validation
          else if (r == 1)
            l += 1 + rng() % 3;
          else if (r == 2)
            l *= 2;
        }
      }
      if (!verify_certificate(view, alt)) continue;
      ++accepted;
      for (NodeId i = 0; i < net.node_count(); ++i)
        c.require(cert->level[i] <= alt.level[i],
                  "a valid certificate undercuts the minimal one at seed " +
                      std::to_string(seed));
    }
  }
  c.require(tested == 200, "expected 200 well-structured instances");
  double elapsed = seconds_since(start);
  std::ostringstream d;
  d << tested << " instances x 50 valid perturbations, " << elapsed << " s";
  detail = c.ok ? d.str() : c.why.str();
  return c.ok;
}

// criterion 6: high thresholds plus settled sources force a unique outcome
bool criterion6(std::string& detail) {
  Checker c;
  auto start = Clock::now();
  for (std::uint64_t seed = 1; seed <= 1000 && c.ok; ++seed) {
    RandomNetworkSpec spec;
    spec.nodes = 2 + seed % 24;
    spec.products = 1 + seed % 3;
    spec.edge_density = 0.1 + 0.1 * static_cast<double>(seed % 4);
    spec.equitable = seed % 2 == 0;
    spec.singleton_fraction = 0.3;
    spec.theta_lo = Rational(13, 24);  // strictly above 1/2
    spec.theta_hi = Rational(1);
    spec.seed = 40'000 + seed;
    Network net = gen_random(spec);

    // Rebuild with every source settled on its first listed product.
    NetworkBuilder builder;
    for (ProductId t = 0; t < net.product_count(); ++t) builder.add_product(net.product_name(t));
    if (net.equitable()) builder.equitable();
    for (NodeId i = 0; i < net.node_count(); ++i) {
      std::vector<std::string> choices;
      const ProductSet& p = net.initial().at(i);
      if (net.in_edges(i).empty() && p.size() > 1) {
        choices.push_back(net.product_name(p.front()));
      } else {
        for (ProductId t : p) choices.push_back(net.product_name(t));
      }
      builder.add_node(net.node_name(i), net.threshold(i), choices);
    }
    for (const Edge& e : net.edges()) {
      if (net.equitable())
        builder.add_edge(net.node_name(e.from), net.node_name(e.to));
      else
        builder.add_edge(net.node_name(e.from), net.node_name(e.to), e.weight);
    }
    Network fixed = builder.build();

    c.require(unique_outcome_sufficient(fixed),
              "instance should satisfy the sufficient condition at seed " +
                  std::to_string(seed));
    c.require(unique_outcome(fixed).decision,
              "unique outcome violated at seed " + std::to_string(seed));
  }
  double elapsed = seconds_since(start);
  std::ostringstream d;
  d << "1000 instances, all unique, " << elapsed << " s";
  detail = c.ok ? d.str() : c.why.str();
  return c.ok;
}

// criterion 7: partition gadget dichotomy, solver and oracle
bool criterion7(std::string& detail) {
  Checker c;
  auto start = Clock::now();
  for (std::size_t chain : {1u, 3u, 5u}) {
    GadgetSpec yes;
    yes.numbers = {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
    yes.chain_length = chain;
    yes.epsilon = Rational(1, 100);
    Network gy = gen_partition_gadget(yes);
    ProductId top = pid(gy, "top");
    SpreadBound sy = min_adoption(gy, top);
    c.require(sy.exact && sy.count == 3,
              "yes-instance minimum must be 3 at M=" + std::to_string(chain));
    StateSpace oy = explore(gy, 2'000'000);
    c.require(!oy.overflowed, "yes-instance oracle overflow at M=" + std::to_string(chain));
    if (!oy.overflowed)
      c.require(oracle_final_predicates(gy, oy).min_adopters[top] == 3,
                "yes-instance oracle minimum must be 3 at M=" + std::to_string(chain));

    GadgetSpec no;
    no.numbers = {Rational(3, 5), Rational(1, 5), Rational(1, 5)};
    no.chain_length = chain;
    no.epsilon = Rational(1, 100);
    Network gn = gen_partition_gadget(no);
    SpreadBound sn = min_adoption(gn, pid(gn, "top"));
    c.require(sn.exact && sn.count == chain + 5,
              "no-instance minimum must be M+5 at M=" + std::to_string(chain));
    StateSpace on = explore(gn, 2'000'000);
    c.require(!on.overflowed, "no-instance oracle overflow at M=" + std::to_string(chain));
    if (!on.overflowed)
      c.require(oracle_final_predicates(gn, on).min_adopters[pid(gn, "top")] == chain + 5,
                "no-instance oracle minimum must be M+5 at M=" + std::to_string(chain));
  }
  double elapsed = seconds_since(start);
  std::ostringstream d;
  d << "M in {1,3,5}: yes=3, no=M+5 (solver and oracle), " << elapsed << " s";
  detail = c.ok ? d.str() : c.why.str();
  return c.ok;
}

// criterion 8: near-linear worklist performance at desk scale
bool criterion8(std::string& detail) {
  Checker c;
  RandomNetworkSpec spec;
  spec.nodes = 50'000;
  spec.edge_density = 200'000.0 / (50'000.0 * 49'999.0);
  spec.products = 3;
  spec.equitable = false;
  spec.singleton_fraction = 0.3;
  spec.theta_lo = Rational(1, 4);
  spec.theta_hi = Rational(3, 4);
  spec.seed = 8;
  Network net = gen_random(spec);
  ProductId top = 0;

  auto timed = [&](const char* label, const std::function<void()>& body) {
    auto start = Clock::now();
    body();
    double elapsed = seconds_since(start);
    c.require(elapsed < 5.0, std::string(label) + " exceeded 5 s");
    return elapsed;
  };

  double t1 = timed("well_structured", [&] { (void)well_structured(full_view(net)); });
  double t2 = timed("reachable_all", [&] { (void)reachable_all(net, top); });
  double t3 = timed("top_closure", [&] { (void)top_closure(net, top); });
  double t4 = timed("max_adoption", [&] { (void)max_adoption(net, top); });

  std::ostringstream d;
  d << "n=" << net.node_count() << " m=" << net.edges().size()
    << ": well_structured " << t1 << " s, reachable_all " << t2 << " s, top_closure " << t3
    << " s, max_adoption " << t4 << " s";
  detail = c.ok ? d.str() : c.why.str();
  return c.ok;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    bool (*fn)(std::string&);
  };
  const Entry entries[] = {
      {"criterion 1: first reference network across thresholds", criterion1},
      {"criterion 2: second reference network case table", criterion2},
      {"criterion 3: oracle equivalence on 500 random networks", criterion3},
      {"criterion 4: multi-node and single-node reductions coincide", criterion4},
      {"criterion 5: level certificates verify and are minimal", criterion5},
      {"criterion 6: high-threshold networks have unique outcomes", criterion6},
      {"criterion 7: partition gadget min-adoption dichotomy", criterion7},
      {"criterion 8: worklist performance at 50k nodes", criterion8},
  };

  bool all_ok = true;
  for (const Entry& entry : entries) {
    std::string detail;
    bool ok = entry.fn(detail);
    all_ok = all_ok && ok;
    std::printf("%s  %s (%s)\n", ok ? "PASS" : "FAIL", entry.name, detail.c_str());
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
