#pragma once

#include "diffnet/network.hpp"

namespace diffnet {

// Two small equitable reference networks used throughout the test suites and
// available from the CLI generator.

// Three sources feeding one undecided node: x1, x2 start with t1, x3 with t2,
// and node a may pick either. Each edge into a weighs 1/3.
inline Network net_a(const Rational& theta_a) {
  return NetworkBuilder()
      .add_product("t1")
      .add_product("t2")
      .add_node("x1", Rational(1, 2), {"t1"})
      .add_node("x2", Rational(1, 2), {"t1"})
      .add_node("x3", Rational(1, 2), {"t2"})
      .add_node("a", theta_a, {"t1", "t2"})
      .equitable()
      .add_edge("x1", "a")
      .add_edge("x2", "a")
      .add_edge("x3", "a")
      .build();
}

// Two undecided nodes b and c on a cycle: b hears y1 (t1), y2 (t2) and c at
// 1/3 each; c hears y3 (t2) and b at 1/2 each.
inline Network net_b(const Rational& theta_b, const Rational& theta_c) {
  return NetworkBuilder()
      .add_product("t1")
      .add_product("t2")
      .add_node("y1", Rational(1, 2), {"t1"})
      .add_node("y2", Rational(1, 2), {"t2"})
      .add_node("y3", Rational(1, 2), {"t2"})
      .add_node("b", theta_b, {"t1", "t2"})
      .add_node("c", theta_c, {"t1", "t2"})
      .equitable()
      .add_edge("y1", "b")
      .add_edge("y2", "b")
      .add_edge("c", "b")
      .add_edge("y3", "c")
      .add_edge("b", "c")
      .build();
}

}  // namespace diffnet
