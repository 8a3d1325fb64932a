#pragma once

#include <initializer_list>
#include <span>

namespace tsld {

// Weak Kleene three-valued logic. The third value `wrong` stands for a
// run-time type error and absorbs every connective.
enum class TruthValue { True, False, Wrong };

namespace kleene {

constexpr TruthValue conj(TruthValue a, TruthValue b) {
  if (a == TruthValue::Wrong || b == TruthValue::Wrong) return TruthValue::Wrong;
  return (a == TruthValue::True && b == TruthValue::True) ? TruthValue::True
                                                         : TruthValue::False;
}

constexpr TruthValue disj(TruthValue a, TruthValue b) {
  if (a == TruthValue::Wrong || b == TruthValue::Wrong) return TruthValue::Wrong;
  return (a == TruthValue::True || b == TruthValue::True) ? TruthValue::True
                                                          : TruthValue::False;
}

constexpr TruthValue neg(TruthValue a) {
  switch (a) {
    case TruthValue::True: return TruthValue::False;
    case TruthValue::False: return TruthValue::True;
    default: return TruthValue::Wrong;
  }
}

// p -> q  ==  (not p) or q
constexpr TruthValue implies(TruthValue p, TruthValue q) {
  return disj(neg(p), q);
}

// Left fold of conj; the empty conjunction is true.
constexpr TruthValue fold_conj(std::span<const TruthValue> vs) {
  TruthValue acc = TruthValue::True;
  for (TruthValue v : vs) acc = conj(acc, v);
  return acc;
}

inline TruthValue fold_conj(std::initializer_list<TruthValue> vs) {
  return fold_conj(std::span<const TruthValue>(vs.begin(), vs.size()));
}

constexpr const char* to_string(TruthValue v) {
  switch (v) {
    case TruthValue::True: return "true";
    case TruthValue::False: return "false";
    default: return "wrong";
  }
}

}  // namespace kleene
}  // namespace tsld
