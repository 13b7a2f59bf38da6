/*
 * paper_models.hpp
 *
 * The hand-built systems and controllers used across the test suites.
 */

#ifndef IFENT_TESTS_PAPER_MODELS_HPP_
#define IFENT_TESTS_PAPER_MODELS_HPP_

#include "ifent/codec.hpp"
#include "ifent/cover.hpp"
#include "ifent/system.hpp"

namespace ifent::testing {

// three states {0,1,2}, inputs a=0, b=1; Q = {0,2}
inline FiniteSystem example1() {
  FiniteSystem sys;
  sys.num_states = 3;
  sys.num_inputs = 2;
  sys.trans = {
      /*0,a*/ {0, 2}, /*0,b*/ {1},
      /*1,a*/ {2},    /*1,b*/ {0},
      /*2,a*/ {1},    /*2,b*/ {0, 2},
  };
  return sys;
}

inline TargetSet example1_Q() { return {StateSet{0, 2}}; }

inline InvariantCover example1_cover() {
  InvariantCover cover;
  cover.elements = {{StateSet{0}, 0}, {StateSet{2}, 1}};
  return cover;
}

// four states, inputs a=0, b=1; state 3 is the sink; Q = {0,1,2}
inline FiniteSystem example4() {
  FiniteSystem sys;
  sys.num_states = 4;
  sys.num_inputs = 2;
  sys.trans = {
      /*0,a*/ {1},    /*0,b*/ {3},
      /*1,a*/ {0, 2}, /*1,b*/ {3},
      /*2,a*/ {3},    /*2,b*/ {1},
      /*3,a*/ {3},    /*3,b*/ {3},
  };
  return sys;
}

inline TargetSet example4_Q() { return {StateSet{0, 1, 2}}; }

// identity coder on X with delta: a on {0,1,3}, b on 2; declared period 2
inline PeriodicCoderController example4_controller() {
  PeriodicCoderController H;
  H.period = 2;
  H.table_period = 1;
  H.num_symbols = 4;
  H.coder.resize(1);
  H.controller.resize(1);
  for (StateId x = 0; x < 4; ++x) H.coder[0][{x}] = Symbol(x + 1);
  for (Symbol s = 1; s <= 4; ++s)
    H.controller[0][{s}] = (s == 3) ? InputId(1) : InputId(0);
  return H;
}

// four states, inputs a=0, b=1, c=2; state 3 is the sink; Q = {0,1,2}
inline FiniteSystem example5() {
  FiniteSystem sys;
  sys.num_states = 4;
  sys.num_inputs = 3;
  sys.trans = {
      /*0,a*/ {1, 2}, /*0,b*/ {3},    /*0,c*/ {3},
      /*1,a*/ {3},    /*1,b*/ {0, 2}, /*1,c*/ {3},
      /*2,a*/ {3},    /*2,b*/ {3},    /*2,c*/ {2},
      /*3,a*/ {3},    /*3,b*/ {3},    /*3,c*/ {3},
  };
  return sys;
}

inline TargetSet example5_Q() { return {StateSet{0, 1, 2}}; }

// identity coder; delta: a on {0,3}, b on 1, c on 2; declared period 1
inline PeriodicCoderController example5_controller() {
  PeriodicCoderController H;
  H.period = 1;
  H.table_period = 1;
  H.num_symbols = 4;
  H.coder.resize(1);
  H.controller.resize(1);
  for (StateId x = 0; x < 4; ++x) H.coder[0][{x}] = Symbol(x + 1);
  H.controller[0][{1}] = 0;
  H.controller[0][{2}] = 1;
  H.controller[0][{3}] = 2;
  H.controller[0][{4}] = 0;
  return H;
}

// example1 with state 0 split into 0a (id 0) and 0b (id 1); 1 -> id 2,
// 2 -> id 3; both copies inherit 0's transitions
inline FiniteSystem example1_split() {
  FiniteSystem sys;
  sys.num_states = 4;
  sys.num_inputs = 2;
  sys.trans = {
      /*0a,a*/ {0, 3}, /*0a,b*/ {2},
      /*0b,a*/ {1, 3}, /*0b,b*/ {2},
      /*1,a*/ {3},     /*1,b*/ {0},
      /*2,a*/ {2},     /*2,b*/ {0, 3},
  };
  return sys;
}

inline TargetSet example1_split_Q() { return {StateSet{0, 1, 3}}; }

// membership relation from the split system onto example1
inline RefinementRelation example1_split_relation() {
  RefinementRelation rel;
  rel.pairs = {{0, 0}, {1, 0}, {2, 1}, {3, 2}};
  rel.input_map = {0, 1};
  return rel;
}

// deterministic 4-state toy where no single input sequence spans Q at
// tau = 2 but two do; Q = {0,1,2}
inline FiniteSystem det_toy() {
  FiniteSystem sys;
  sys.num_states = 4;
  sys.num_inputs = 2;
  sys.trans = {
      /*0,a*/ {1}, /*0,b*/ {3},
      /*1,a*/ {3}, /*1,b*/ {2},
      /*2,a*/ {2}, /*2,b*/ {0},
      /*3,a*/ {3}, /*3,b*/ {3},
  };
  return sys;
}

inline TargetSet det_toy_Q() { return {StateSet{0, 1, 2}}; }

// deterministic restriction of example1: smallest successor per pair
inline FiniteSystem example1_det_restriction() {
  FiniteSystem sys = example1();
  for (auto& post : sys.trans) post = StateSet{post.min()};
  return sys;
}

}  // namespace ifent::testing

#endif
