#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "diffnet/document.hpp"
#include "diffnet/dot.hpp"
#include "diffnet/fixtures.hpp"
#include "diffnet/generators.hpp"
#include "diffnet/structure.hpp"

#include <string>

using namespace diffnet;

namespace {

const char* kNetADoc =
    "products t1 t2\n"
    "equitable\n"
    "node x1 1/2 t1\n"
    "node x2 1/2 t1\n"
    "node x3 1/2 t2\n"
    "node a 3/10 t1,t2\n"
    "edge x1 a\n"
    "edge x2 a\n"
    "edge x3 a\n";

std::size_t error_line(const char* doc) {
  try {
    parse_document(doc);
  } catch (const ParseError& e) {
    return e.line;
  }
  return 0;
}

}  // namespace

TEST_CASE("parsing the canonical fixture document reproduces the fixture") {
  Network parsed = parse_document(kNetADoc);
  CHECK(serialize_document(parsed) == kNetADoc);
  CHECK(serialize_document(net_a(Rational(3, 10))) == kNetADoc);
  CHECK(parsed.equitable());
  CHECK(parsed.in_edges(*parsed.find_node("a")).size() == 3);
}

TEST_CASE("serialize then parse is the identity on generated networks") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    RandomNetworkSpec spec;
    spec.nodes = 1 + seed % 8;
    spec.products = 1 + seed % 3;
    spec.equitable = seed % 2 == 0;
    spec.seed = seed * 7;
    Network net = gen_random(spec);
    std::string doc = serialize_document(net);
    CHECK(serialize_document(parse_document(doc)) == doc);
  }
}

TEST_CASE("decimal literals are converted exactly") {
  Network net = parse_document(
      "products t1\n"
      "node u 0.5 t1\n"
      "node v 0.25 t1\n"
      "edge u v 0.25\n");
  CHECK(net.threshold(*net.find_node("v")) == Rational(1, 4));
  CHECK(net.edges().front().weight == Rational(1, 4));
  CHECK(serialize_document(net).find("1/4") != std::string::npos);
}

TEST_CASE("semantic errors carry line positions") {
  CHECK(error_line("products t1\nnode u 0 t1\n") == 2);
  CHECK_THROWS_WITH_AS(parse_document("products t1\nnode u 0 t1\n"),
                       "line 2, column 8: threshold must be in (0,1]", ParseError);
  CHECK(error_line("products t1\nnode u 5/4 t1\n") == 2);
  CHECK(error_line("products t1\nnode u 1/2 t2\n") == 2);           // unknown product
  CHECK(error_line("products t1\nnode u 1/2 t1\nnode u 1/2 t1\n") == 3);  // duplicate node
  CHECK(error_line("products t1\nnode u 1/2 t1\nedge u w 1/2\n") == 3);   // unknown node
  CHECK(error_line("products t1\nnode u 1/2 t1\nnode v 1/2 t1\n"
                   "edge u v 1/2\nedge u v 1/2\n") == 5);  // duplicate edge
  CHECK(error_line("products t1\nnode u 1/2 t1\nnode v 1/2 t1\nedge u v\n") == 4);
  CHECK(error_line("products t1\nequitable\nnode u 1/2 t1\nnode v 1/2 t1\n"
                   "edge u v 1/2\n") == 5);  // weight under equitable
  CHECK(error_line("products t1\nnode u 1/2 t1\nbogus line here\n") == 3);
  CHECK(error_line("node u 1/2 t1\n") == 1);  // nodes before products
  CHECK(error_line("products t1\nnode u 1/x t1\n") == 2);
}

TEST_CASE("validation failures surface as parse errors") {
  const char* doc =
      "products t1 t2\n"
      "node u 1/2 t1\n"
      "node v 1/2 t1,t2\n"
      "edge u v 2/3\n"
      "edge v u 2/3\n";  // incoming sums fine, but u<-v forms a loop pair; sums are 2/3 each
  CHECK_NOTHROW(parse_document(doc));
  const char* heavy =
      "products t1\n"
      "node u 1/2 t1\n"
      "node v 1/2 t1\n"
      "node w 1/2 t1\n"
      "edge u w 2/3\n"
      "edge v w 2/3\n";
  CHECK_THROWS_AS(parse_document(heavy), ParseError);
  CHECK_NOTHROW(parse_document(heavy, false));
}

TEST_CASE("comments and blank lines are ignored") {
  Network net = parse_document(
      "# a comment\n"
      "products t1  # trailing comment\n"
      "\n"
      "node u 1/2 t1\n");
  CHECK(net.node_count() == 1);
}

TEST_CASE("dot export is deterministic and reflects state and levels") {
  Network net = net_a(Rational(3, 10));
  std::string plain = emit_dot(net);
  CHECK(plain == emit_dot(net));
  CHECK(plain.find("x1:1/2:{t1}") != std::string::npos);
  CHECK(plain.find("a:3/10:{t1,t2}") != std::string::npos);
  CHECK(plain.find("label=\"1/3\"") != std::string::npos);
  // Initial singletons are filled; the undecided node is not.
  CHECK(plain.find("n0 [label=\"x1:1/2:{t1}\",style=filled") != std::string::npos);
  CHECK(plain.find("n3 [label=\"a:3/10:{t1,t2}\"]") != std::string::npos);

  ProductAssignment state = net.initial();
  state.adopt(*net.find_node("a"), *net.find_product("t1"));
  std::string with_state = emit_dot(net, &state);
  CHECK(with_state.find("a:3/10:{t1}\",style=filled") != std::string::npos);

  ReducedGraph rg(net, *net.find_product("t1"));
  auto cert = well_structured(rg.view());
  REQUIRE(cert.has_value());
  std::string ranked = emit_dot(net, nullptr, &*cert);
  CHECK(ranked.find("rank=same") != std::string::npos);
}

TEST_CASE("random generation is a pure function of its spec") {
  RandomNetworkSpec spec;
  spec.nodes = 6;
  spec.edge_density = 0.3;
  spec.products = 2;
  spec.equitable = true;
  spec.singleton_fraction = 0.5;
  spec.seed = 1;
  CHECK(serialize_document(gen_random(spec)) == serialize_document(gen_random(spec)));
  spec.seed = 2;
  CHECK(serialize_document(gen_random(spec)) !=
        serialize_document(gen_random(RandomNetworkSpec{})));
}

TEST_CASE("generated networks always validate") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomNetworkSpec spec;
    spec.nodes = 1 + seed % 9;
    spec.edge_density = (seed % 4) * 0.25;
    spec.products = 1 + seed % 4;
    spec.equitable = seed % 2 == 0;
    spec.singleton_fraction = (seed % 5) * 0.25;
    spec.seed = seed;
    Network net = gen_random(spec);
    CHECK(validate(net).ok());
    // Incoming endpoints agree with the edge list.
    for (NodeId i = 0; i < net.node_count(); ++i)
      for (NodeId j : net.neighbors(i)) {
        bool found = false;
        for (const Edge& e : net.edges()) found = found || (e.from == j && e.to == i);
        CHECK(found);
      }
  }
}

TEST_CASE("all-singleton generation yields an immediately final network") {
  RandomNetworkSpec spec;
  spec.nodes = 5;
  spec.singleton_fraction = 1.0;
  spec.seed = 11;
  Network net = gen_random(spec);
  for (NodeId i = 0; i < net.node_count(); ++i) CHECK(net.initial().at(i).size() == 1);
}

TEST_CASE("generator parameter validation") {
  RandomNetworkSpec spec;
  spec.nodes = 0;
  CHECK_THROWS_AS(gen_random(spec), std::invalid_argument);
  spec.nodes = 3;
  spec.products = 0;
  CHECK_THROWS_AS(gen_random(spec), std::invalid_argument);
  spec.products = 2;
  spec.edge_density = 1.5;
  CHECK_THROWS_AS(gen_random(spec), std::invalid_argument);
  spec.edge_density = 0.5;
  spec.theta_lo = Rational(0);
  CHECK_THROWS_AS(gen_random(spec), std::invalid_argument);
}

TEST_CASE("gadget structure honors the construction constraints") {
  GadgetSpec spec;
  spec.numbers = {Rational(1), Rational(1), Rational(2)};  // normalizes to 1/4,1/4,1/2
  spec.chain_length = 2;
  spec.epsilon = Rational(1, 100);
  Network g = gen_partition_gadget(spec);
  CHECK(validate(g).ok());
  CHECK(g.product_count() == 3);
  NodeId a = *g.find_node("a");
  NodeId b = *g.find_node("b");
  CHECK(g.in_edges(a).size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(g.in_edges(a)[k].weight == g.in_edges(b)[k].weight);
  }
  CHECK(g.in_edges(a)[2].weight == Rational(1, 2));
  CHECK(g.threshold(*g.find_node("e")) == Rational(1, 2) + Rational(1, 100));
  CHECK(g.threshold(*g.find_node("c")) == Rational(1, 2));
  CHECK(g.in_edges(*g.find_node("m1")).front().weight == Rational(1));
  CHECK(g.in_edges(*g.find_node("m2")).front().weight == Rational(1));
  // Number nodes choose within {t, tp}.
  ProductSet expected{*g.find_product("t"), *g.find_product("tp")};
  std::sort(expected.begin(), expected.end());
  CHECK(g.initial().at(*g.find_node("v1")) == expected);
}

TEST_CASE("gadget spec validation") {
  GadgetSpec spec;
  spec.numbers = {};
  CHECK_THROWS_AS(gen_partition_gadget(spec), std::invalid_argument);
  spec.numbers = {Rational(1, 2), Rational(-1, 2)};
  CHECK_THROWS_AS(gen_partition_gadget(spec), std::invalid_argument);
  spec.numbers = {Rational(1)};
  spec.chain_length = 0;
  CHECK_THROWS_AS(gen_partition_gadget(spec), std::invalid_argument);
  spec.chain_length = 1;
  spec.epsilon = Rational(3, 10);
  CHECK_THROWS_AS(gen_partition_gadget(spec), std::invalid_argument);
  spec.epsilon = Rational(1, 100);
  CHECK_NOTHROW(gen_partition_gadget(spec));
}
