#pragma once

#include "diffnet/diffnet.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace diffnet::cli {

// Exit codes: 0 decision-true/success, 1 decision-false, 2 usage or parse
// error, 3 exhausted search budget or state-limit overflow.
inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

namespace detail {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_output(const std::string& path, const std::string& content,
                         std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write file '" + path + "'");
  file << content;
}

inline Network load_network(const std::string& path, bool validate_network = true) {
  return parse_document(read_file(path), validate_network);
}

inline ProductId product_arg(const Network& net, const std::string& name) {
  auto t = net.find_product(name);
  if (!t) throw std::runtime_error("unknown product '" + name + "'");
  return *t;
}

inline NodeId node_arg(const Network& net, const std::string& name) {
  auto i = net.find_node(name);
  if (!i) throw std::runtime_error("unknown node '" + name + "'");
  return *i;
}

inline std::string choices_str(const Network& net, const ProductSet& s) {
  std::string result = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k > 0) result += ',';
    result += net.product_name(s[k]);
  }
  result += '}';
  return result;
}

inline json assignment_json(const Network& net, const ProductAssignment& state) {
  json obj = json::object();
  for (NodeId i = 0; i < net.node_count(); ++i) {
    json list = json::array();
    for (ProductId t : state.at(i)) list.push_back(net.product_name(t));
    obj[net.node_name(i)] = std::move(list);
  }
  return obj;
}

inline json trace_json(const Network& net, const ReductionTrace& trace) {
  json list = json::array();
  for (const AdoptionEvent& e : trace.events)
    list.push_back({{"step", e.step},
                    {"node", net.node_name(e.node)},
                    {"product", net.product_name(e.product)}});
  return list;
}

inline json certificate_json(const Network& net, const LevelCertificate& cert) {
  json obj = json::object();
  for (NodeId i = 0; i < net.node_count(); ++i) obj[net.node_name(i)] = cert.level[i];
  return obj;
}

inline void print_assignment(std::ostream& out, const Network& net,
                             const ProductAssignment& state, const std::string& indent) {
  for (NodeId i = 0; i < net.node_count(); ++i)
    out << indent << net.node_name(i) << " = " << choices_str(net, state.at(i)) << '\n';
}

inline void print_trace(std::ostream& out, const Network& net, const ReductionTrace& trace) {
  for (const AdoptionEvent& e : trace.events)
    out << "  " << e.step << ". " << net.node_name(e.node) << " adopts "
        << net.product_name(e.product) << '\n';
}

inline void print_certificate(std::ostream& out, const Network& net,
                              const LevelCertificate& cert) {
  std::size_t max_level = 0;
  for (std::size_t l : cert.level) max_level = std::max(max_level, l);
  for (std::size_t l = 0; l <= max_level; ++l) {
    out << "  level " << l << ':';
    for (NodeId i = 0; i < net.node_count(); ++i)
      if (cert.level[i] == l) out << ' ' << net.node_name(i);
    out << '\n';
  }
}

struct VerdictPrinter {
  const Network& net;
  std::ostream& out;
  bool as_json;
  bool witness;

  int print(const std::string& command, const AnalysisVerdict& verdict) const {
    if (as_json) {
      json obj{{"command", command}, {"decision", verdict.decision}};
      if (!verdict.reason.empty()) obj["reason"] = verdict.reason;
      if (verdict.certificate) obj["certificate"] = certificate_json(net, *verdict.certificate);
      if (verdict.trace) obj["trace"] = trace_json(net, *verdict.trace);
      if (verdict.counterexample)
        obj["counterexample"] = assignment_json(net, *verdict.counterexample);
      if (verdict.outcome) obj["outcome"] = assignment_json(net, *verdict.outcome);
      if (verdict.ambivalence) {
        const AmbivalenceReport& r = *verdict.ambivalence;
        json products = json::array();
        for (ProductId t : r.products) products.push_back(net.product_name(t));
        obj["ambivalence"] = {{"kind", r.kind == AmbivalenceKind::multi_adopt ? "multi-adopt"
                                                                              : "switch"},
                              {"node", net.node_name(r.node)},
                              {"products", std::move(products)}};
      }
      out << obj.dump(2) << '\n';
    } else {
      out << command << ": " << (verdict.decision ? "yes" : "no") << '\n';
      if (!verdict.reason.empty()) out << "reason: " << verdict.reason << '\n';
      if (verdict.outcome) {
        out << "outcome:\n";
        print_assignment(out, net, *verdict.outcome, "  ");
      }
      if (witness) {
        if (verdict.certificate) {
          out << "certificate:\n";
          print_certificate(out, net, *verdict.certificate);
        }
        if (verdict.trace && !verdict.trace->events.empty()) {
          out << "trace:\n";
          print_trace(out, net, *verdict.trace);
        }
        if (verdict.counterexample) {
          out << "counterexample final network:\n";
          print_assignment(out, net, *verdict.counterexample, "  ");
        }
      }
    }
    return verdict.decision ? kExitTrue : kExitFalse;
  }
};

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= text.size(); ++k) {
    if (k == text.size() || text[k] == ',') {
      items.push_back(text.substr(start, k - start));
      start = k + 1;
    }
  }
  return items;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using detail::json;

  CLI::App app{"multi-product threshold diffusion: deciders, spread bounds and brute force"};
  app.require_subcommand(1);
  int code = kExitTrue;

  struct {
    std::string file;
    std::string product;
    std::string node;
    std::string output;
    bool witness = false;
    bool as_json = false;
    std::size_t max_states = SearchBudget{}.max_states;
    std::uint64_t timeout_ms = SearchBudget{}.max_millis;
    std::size_t limit = kDefaultStateLimit;
    // gen random
    std::size_t nodes = 6;
    double density = 0.3;
    std::size_t products = 2;
    std::string theta_min = "1/4";
    std::string theta_max = "3/4";
    bool equitable = false;
    double singleton_fraction = 0.5;
    std::uint64_t seed = 1;
    // gen gadget
    std::string numbers;
    std::size_t chain = 3;
    std::string epsilon = "1/100";
    // gen fixture
    std::string fixture;
    std::string theta_a = "1/2";
    std::string theta_b = "1/2";
    std::string theta_c = "2/5";
    // export-dot
    std::string adopt;
    std::string levels_product;
  } opt;

  auto add_common = [&](CLI::App* sub, bool with_witness = true) {
    sub->add_option("file", opt.file, "network document")->required();
    if (with_witness) sub->add_flag("--witness", opt.witness, "print certificates/traces");
    sub->add_flag("--json", opt.as_json, "machine-readable output");
  };
  auto budget = [&] {
    return SearchBudget{opt.max_states, opt.timeout_ms};
  };
  auto printer = [&](const Network& net) {
    return detail::VerdictPrinter{net, out, opt.as_json, opt.witness};
  };

  auto* validate_cmd = app.add_subcommand("validate", "check model constraints");
  add_common(validate_cmd, false);
  validate_cmd->callback([&] {
    Network net = detail::load_network(opt.file, false);
    ValidationReport report = validate(net);
    if (opt.as_json) {
      out << json{{"command", "validate"}, {"valid", report.ok()},
                  {"violations", report.violations}}
                 .dump(2)
          << '\n';
    } else if (report.ok()) {
      out << "valid\n";
    } else {
      for (const std::string& v : report.violations) out << "violation: " << v << '\n';
    }
    code = report.ok() ? kExitTrue : kExitFalse;
  });

  auto* reachable_cmd =
      app.add_subcommand("reachable", "can every node end up adopting the product");
  add_common(reachable_cmd);
  reachable_cmd->add_option("--product", opt.product)->required();
  reachable_cmd->callback([&] {
    Network net = detail::load_network(opt.file);
    code = printer(net).print("reachable",
                              reachable_all(net, detail::product_arg(net, opt.product)));
  });

  auto* unavoidable_cmd =
      app.add_subcommand("unavoidable", "must every node end up adopting the product");
  add_common(unavoidable_cmd);
  unavoidable_cmd->add_option("--product", opt.product)->required();
  unavoidable_cmd->callback([&] {
    Network net = detail::load_network(opt.file);
    code = printer(net).print("unavoidable",
                              unavoidable_all(net, detail::product_arg(net, opt.product)));
  });

  auto* unique_cmd = app.add_subcommand("unique", "does the network have a unique outcome");
  add_common(unique_cmd);
  unique_cmd->callback([&] {
    Network net = detail::load_network(opt.file);
    code = printer(net).print("unique", unique_outcome(net));
  });

  auto* max_cmd = app.add_subcommand("max-adoption", "largest final adopter count");
  add_common(max_cmd);
  max_cmd->add_option("--product", opt.product)->required();
  max_cmd->callback([&] {
    Network net = detail::load_network(opt.file);
    SpreadBound bound = max_adoption(net, detail::product_arg(net, opt.product));
    if (opt.as_json) {
      json obj{{"command", "max-adoption"}, {"product", opt.product},
               {"count", bound.count},     {"exact", bound.exact}};
      if (opt.witness) obj["witness"] = detail::assignment_json(net, bound.witness);
      out << obj.dump(2) << '\n';
    } else {
      out << "max-adoption(" << opt.product << ") = " << bound.count << '\n';
      if (opt.witness) {
        out << "witness final network:\n";
        detail::print_assignment(out, net, bound.witness, "  ");
      }
    }
    code = kExitTrue;
  });

  auto* min_cmd = app.add_subcommand("min-adoption", "smallest final adopter count");
  add_common(min_cmd);
  min_cmd->add_option("--product", opt.product)->required();
  min_cmd->add_option("--max-states", opt.max_states, "search state budget");
  min_cmd->add_option("--timeout-ms", opt.timeout_ms, "search time budget");
  min_cmd->callback([&] {
    Network net = detail::load_network(opt.file);
    SpreadBound bound = min_adoption(net, detail::product_arg(net, opt.product), budget());
    if (opt.as_json) {
      json obj{{"command", "min-adoption"}, {"product", opt.product},
               {"count", bound.count},     {"exact", bound.exact}};
      if (opt.witness) obj["witness"] = detail::assignment_json(net, bound.witness);
      out << obj.dump(2) << '\n';
    } else {
      if (bound.exact) {
        out << "min-adoption(" << opt.product << ") = " << bound.count << '\n';
      } else {
        out << "budget exhausted; best known upper bound: min-adoption(" << opt.product
            << ") <= " << bound.count << '\n';
      }
      if (opt.witness) {
        out << "witness final network:\n";
        detail::print_assignment(out, net, bound.witness, "  ");
      }
    }
    code = bound.exact ? kExitTrue : kExitBudget;
  });

  auto print_budgeted = [&](const Network& net, const std::string& command,
                            const BudgetedDecision& decision) {
    if (opt.as_json) {
      json obj{{"command", command}};
      if (decision.status == DecisionStatus::budget_exhausted) {
        obj["status"] = "budget-exhausted";
      } else {
        obj["decision"] = decision.value;
        if (decision.counterexample)
          obj["counterexample"] = detail::assignment_json(net, *decision.counterexample);
      }
      out << obj.dump(2) << '\n';
    } else {
      if (decision.status == DecisionStatus::budget_exhausted) {
        out << command << ": budget exhausted, undecided\n";
      } else {
        out << command << ": " << (decision.value ? "yes" : "no") << '\n';
        if (opt.witness && decision.counterexample) {
          out << "counterexample final network:\n";
          detail::print_assignment(out, net, *decision.counterexample, "  ");
        }
      }
    }
    if (decision.status == DecisionStatus::budget_exhausted) return kExitBudget;
    return decision.value ? kExitTrue : kExitFalse;
  };

  auto* a1 = app.add_subcommand("adoption1", "must the node adopt some product");
  add_common(a1);
  a1->add_option("--node", opt.node)->required();
  a1->add_option("--max-states", opt.max_states);
  a1->add_option("--timeout-ms", opt.timeout_ms);
  a1->callback([&] {
    Network net = detail::load_network(opt.file);
    code = print_budgeted(
        net, "adoption1",
        adoption1_unavoidable_some(net, detail::node_arg(net, opt.node), budget()));
  });

  auto* a2 = app.add_subcommand("adoption2", "must the node adopt the given product");
  add_common(a2);
  a2->add_option("--node", opt.node)->required();
  a2->add_option("--product", opt.product)->required();
  a2->add_option("--max-states", opt.max_states);
  a2->add_option("--timeout-ms", opt.timeout_ms);
  a2->callback([&] {
    Network net = detail::load_network(opt.file);
    code = print_budgeted(net, "adoption2",
                          adoption2_unavoidable_given(net, detail::node_arg(net, opt.node),
                                                      detail::product_arg(net, opt.product),
                                                      budget()));
  });

  auto* a3 = app.add_subcommand("adoption3", "can the node adopt some product");
  add_common(a3, false);
  a3->add_option("--node", opt.node)->required();
  a3->callback([&] {
    Network net = detail::load_network(opt.file);
    bool value = adoption3_possible_some(net, detail::node_arg(net, opt.node));
    if (opt.as_json)
      out << json{{"command", "adoption3"}, {"decision", value}}.dump(2) << '\n';
    else
      out << "adoption3: " << (value ? "yes" : "no") << '\n';
    code = value ? kExitTrue : kExitFalse;
  });

  auto* a4 = app.add_subcommand("adoption4", "can the node adopt the given product");
  add_common(a4, false);
  a4->add_option("--node", opt.node)->required();
  a4->add_option("--product", opt.product)->required();
  a4->callback([&] {
    Network net = detail::load_network(opt.file);
    bool value = adoption4_possible_given(net, detail::node_arg(net, opt.node),
                                          detail::product_arg(net, opt.product));
    if (opt.as_json)
      out << json{{"command", "adoption4"}, {"decision", value}}.dump(2) << '\n';
    else
      out << "adoption4: " << (value ? "yes" : "no") << '\n';
    code = value ? kExitTrue : kExitFalse;
  });

  auto* enum_cmd = app.add_subcommand("enumerate", "exhaustive reachable/final state listing");
  add_common(enum_cmd, false);
  enum_cmd->add_option("--limit", opt.limit, "abort beyond this many states");
  enum_cmd->callback([&] {
    Network net = detail::load_network(opt.file);
    StateSpace space = explore(net, opt.limit);
    if (space.overflowed) {
      err << "state limit " << opt.limit << " exceeded\n";
      code = kExitBudget;
      return;
    }
    std::vector<StateKey> finals(space.finals.begin(), space.finals.end());
    std::sort(finals.begin(), finals.end());
    if (opt.as_json) {
      json list = json::array();
      for (const StateKey& key : finals)
        list.push_back(detail::assignment_json(net, state_from_key(net, key)));
      out << json{{"command", "enumerate"},
                  {"states", space.states.size()},
                  {"finals", std::move(list)}}
                 .dump(2)
          << '\n';
    } else {
      out << "reachable states: " << space.states.size() << '\n';
      out << "final networks: " << finals.size() << '\n';
      std::size_t shown = 0;
      for (const StateKey& key : finals) {
        if (shown++ == 50) {
          out << "  ... (" << finals.size() - 50 << " more)\n";
          break;
        }
        ProductAssignment state = state_from_key(net, key);
        out << "  final:";
        for (NodeId i = 0; i < net.node_count(); ++i)
          out << ' ' << net.node_name(i) << '=' << detail::choices_str(net, state.at(i));
        out << '\n';
      }
    }
    code = kExitTrue;
  });

  auto* gen_cmd = app.add_subcommand("gen", "emit a network document");
  gen_cmd->require_subcommand(1);

  auto* gen_random_cmd = gen_cmd->add_subcommand("random", "seeded random network");
  gen_random_cmd->add_option("--nodes", opt.nodes)->required();
  gen_random_cmd->add_option("--density", opt.density, "fraction of ordered pairs");
  gen_random_cmd->add_option("--products", opt.products);
  gen_random_cmd->add_option("--theta-min", opt.theta_min);
  gen_random_cmd->add_option("--theta-max", opt.theta_max);
  gen_random_cmd->add_flag("--equitable", opt.equitable);
  gen_random_cmd->add_option("--singleton-fraction", opt.singleton_fraction);
  gen_random_cmd->add_option("--seed", opt.seed);
  gen_random_cmd->add_option("-o,--output", opt.output);
  gen_random_cmd->callback([&] {
    RandomNetworkSpec spec;
    spec.nodes = opt.nodes;
    spec.edge_density = opt.density;
    spec.products = opt.products;
    spec.theta_lo = Rational::parse(opt.theta_min);
    spec.theta_hi = Rational::parse(opt.theta_max);
    spec.equitable = opt.equitable;
    spec.singleton_fraction = opt.singleton_fraction;
    spec.seed = opt.seed;
    detail::write_output(opt.output, serialize_document(gen_random(spec)), out);
    code = kExitTrue;
  });

  auto* gen_gadget_cmd = gen_cmd->add_subcommand("gadget", "partition reduction instance");
  gen_gadget_cmd->add_option("--numbers", opt.numbers, "comma-separated positive rationals")
      ->required();
  gen_gadget_cmd->add_option("--chain", opt.chain, "tail chain length M");
  gen_gadget_cmd->add_option("--epsilon", opt.epsilon);
  gen_gadget_cmd->add_option("-o,--output", opt.output);
  gen_gadget_cmd->callback([&] {
    GadgetSpec spec;
    for (const std::string& item : detail::split_list(opt.numbers))
      spec.numbers.push_back(Rational::parse(item));
    spec.chain_length = opt.chain;
    spec.epsilon = Rational::parse(opt.epsilon);
    detail::write_output(opt.output, serialize_document(gen_partition_gadget(spec)), out);
    code = kExitTrue;
  });

  auto* gen_fixture_cmd = gen_cmd->add_subcommand("fixture", "reference test network");
  gen_fixture_cmd->add_option("--name", opt.fixture, "neta or netb")->required();
  gen_fixture_cmd->add_option("--theta-a", opt.theta_a);
  gen_fixture_cmd->add_option("--theta-b", opt.theta_b);
  gen_fixture_cmd->add_option("--theta-c", opt.theta_c);
  gen_fixture_cmd->add_option("-o,--output", opt.output);
  gen_fixture_cmd->callback([&] {
    Network net = [&] {
      if (opt.fixture == "neta") return net_a(Rational::parse(opt.theta_a));
      if (opt.fixture == "netb")
        return net_b(Rational::parse(opt.theta_b), Rational::parse(opt.theta_c));
      throw std::runtime_error("unknown fixture '" + opt.fixture + "'");
    }();
    detail::write_output(opt.output, serialize_document(net), out);
    code = kExitTrue;
  });

  auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering");
  dot_cmd->add_option("file", opt.file)->required();
  dot_cmd->add_option("--adopt", opt.adopt, "overlay adoptions, e.g. a=t1,b=t2");
  dot_cmd->add_option("--levels", opt.levels_product,
                      "rank by the level certificate of the graph reduced for this product");
  dot_cmd->add_option("-o,--output", opt.output);
  dot_cmd->callback([&] {
    Network net = detail::load_network(opt.file);
    std::optional<ProductAssignment> state;
    if (!opt.adopt.empty()) {
      state = net.initial();
      for (const std::string& item : detail::split_list(opt.adopt)) {
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
          throw std::runtime_error("expected name=product in --adopt");
        state->adopt(detail::node_arg(net, item.substr(0, eq)),
                     detail::product_arg(net, item.substr(eq + 1)));
      }
    }
    std::optional<LevelCertificate> cert;
    if (!opt.levels_product.empty()) {
      ReducedGraph rg(net, detail::product_arg(net, opt.levels_product));
      cert = well_structured(rg.view());
      if (!cert) throw std::runtime_error("no level certificate exists");
    }
    detail::write_output(opt.output,
                         emit_dot(net, state ? &*state : nullptr, cert ? &*cert : nullptr),
                         out);
    code = kExitTrue;
  });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("diffnet");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int cli_code = app.exit(e, out, err);
    return cli_code == 0 ? kExitTrue : kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return code;
}

}  // namespace diffnet::cli
