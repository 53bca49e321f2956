#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "notears/syntax.hpp"

namespace notears {

struct Entry;  // defined in env.hpp
using EntryPtr = std::shared_ptr<const Entry>;
using EntryMap = std::unordered_map<std::string, EntryPtr>;
using GlobalsPtr = std::shared_ptr<const EntryMap>;

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

// Evaluation environment; back() is the innermost binder (Var 0).
using Env = std::vector<ValuePtr>;

// A suspended body. Closures capture the global map snapshot so definition
// unfolding needs no ambient state; snapshots are immutable.
struct Closure {
  Env env;
  TermPtr body;
  GlobalsPtr globals;
  std::string hint;  // binder name for readback
};

enum class EKind { App, Fst, Snd, NatElim, J };

// One blocked elimination. Args by kind:
//   App [arg]   Fst/Snd []   NatElim [motive, base, step]
//   J [type, base, motive, dRefl, other]   (the path is the neutral itself)
struct Elim {
  EKind kind;
  std::vector<ValuePtr> args;
};

// Heads are variables (with their type, used by typed spine conversion) or
// axioms; definitions never block since they unfold eagerly.
struct NHead {
  enum class Kind { Var, Const } kind;
  int level = -1;      // Var
  ValuePtr varType;    // Var; may be null for readback-only fresh variables
  EntryPtr entry;      // Const (an axiom)
};

struct Neutral {
  NHead head;
  std::vector<Elim> spine;
};

enum class Vk {
  Universe,
  Pi,
  Lam,
  Sigma,
  Pair,
  Unit,
  Star,
  Nat,
  Zero,
  Suc,
  Id,
  Refl,
  Neutral,
};

struct Value {
  Vk kind;
  ValuePtr v1, v2, v3;  // Pi/Sigma: v1 = domain/first; Pair: v1,v2; Suc/Refl: v1; Id: v1,v2,v3
  Closure closure;      // Pi codomain / Lam body / Sigma second component
  Neutral neutral;
};

namespace detail {
inline ValuePtr leaf_value(Vk k) {
  auto v = std::make_shared<Value>();
  v->kind = k;
  return v;
}
}  // namespace detail

inline const ValuePtr& vUniverse() {
  static const ValuePtr v = detail::leaf_value(Vk::Universe);
  return v;
}
inline const ValuePtr& vUnit() {
  static const ValuePtr v = detail::leaf_value(Vk::Unit);
  return v;
}
inline const ValuePtr& vStar() {
  static const ValuePtr v = detail::leaf_value(Vk::Star);
  return v;
}
inline const ValuePtr& vNat() {
  static const ValuePtr v = detail::leaf_value(Vk::Nat);
  return v;
}
inline const ValuePtr& vZero() {
  static const ValuePtr v = detail::leaf_value(Vk::Zero);
  return v;
}

inline ValuePtr vPi(ValuePtr dom, Closure cod) {
  auto v = std::make_shared<Value>();
  v->kind = Vk::Pi;
  v->v1 = std::move(dom);
  v->closure = std::move(cod);
  return v;
}
inline ValuePtr vLam(Closure body) {
  auto v = std::make_shared<Value>();
  v->kind = Vk::Lam;
  v->closure = std::move(body);
  return v;
}
inline ValuePtr vSigma(ValuePtr first, Closure second) {
  auto v = std::make_shared<Value>();
  v->kind = Vk::Sigma;
  v->v1 = std::move(first);
  v->closure = std::move(second);
  return v;
}
inline ValuePtr vPair(ValuePtr a, ValuePtr b) {
  auto v = std::make_shared<Value>();
  v->kind = Vk::Pair;
  v->v1 = std::move(a);
  v->v2 = std::move(b);
  return v;
}
inline ValuePtr vSuc(ValuePtr n) {
  auto v = std::make_shared<Value>();
  v->kind = Vk::Suc;
  v->v1 = std::move(n);
  return v;
}
inline ValuePtr vId(ValuePtr type, ValuePtr lhs, ValuePtr rhs) {
  auto v = std::make_shared<Value>();
  v->kind = Vk::Id;
  v->v1 = std::move(type);
  v->v2 = std::move(lhs);
  v->v3 = std::move(rhs);
  return v;
}
inline ValuePtr vRefl(ValuePtr a) {
  auto v = std::make_shared<Value>();
  v->kind = Vk::Refl;
  v->v1 = std::move(a);
  return v;
}
inline ValuePtr vVar(int level, ValuePtr type = nullptr) {
  auto v = std::make_shared<Value>();
  v->kind = Vk::Neutral;
  v->neutral.head.kind = NHead::Kind::Var;
  v->neutral.head.level = level;
  v->neutral.head.varType = std::move(type);
  return v;
}
inline ValuePtr vAxiom(EntryPtr entry) {
  auto v = std::make_shared<Value>();
  v->kind = Vk::Neutral;
  v->neutral.head.kind = NHead::Kind::Const;
  v->neutral.head.entry = std::move(entry);
  return v;
}
inline ValuePtr vExtend(const Neutral& n, Elim e) {
  auto v = std::make_shared<Value>();
  v->kind = Vk::Neutral;
  v->neutral = n;
  v->neutral.spine.push_back(std::move(e));
  return v;
}

}  // namespace notears
