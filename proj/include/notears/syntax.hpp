#pragma once

#include <cassert>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "notears/diagnostics.hpp"

namespace notears {

// Core terms are nameless: Var carries a de Bruijn index, binders carry a
// printing hint that never affects equality. Primitives are fully saturated
// nodes; the resolver eta-expands under-applied surface spellings.
enum class Tm {
  Var,
  Universe,
  Pi,
  Lam,
  App,
  Sigma,
  Pair,
  Fst,
  Snd,
  Unit,
  Star,
  Nat,
  Zero,
  Suc,
  NatElim,
  Id,
  Refl,
  J,
  Const,
  Ann,
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  Tm kind;
  int index = -1;            // Var
  std::string name;          // binder hint (Pi/Lam/Sigma) or constant name (Const)
  std::vector<TermPtr> kids;
  Span span;

  // Child layout:
  //   Pi    [domain, codomain+1]      Lam  [body+1]        App  [fn, arg]
  //   Sigma [first, second+1]         Pair [fst, snd]      Fst/Snd/Suc/Refl [arg]
  //   NatElim [motive, base, step, scrutinee]
  //   Id    [type, lhs, rhs]          J    [type, base, motive, dRefl, other, path]
  //   Ann   [term, type]
  // +1 marks the child that sits under one extra binder.
};

inline TermPtr mk(Tm k, std::vector<TermPtr> kids, Span sp = {}) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->kids = std::move(kids);
  t->span = sp;
  return t;
}

inline TermPtr tVar(int index, std::string hint = "", Span sp = {}) {
  assert(index >= 0);
  auto t = std::make_shared<Term>();
  t->kind = Tm::Var;
  t->index = index;
  t->name = std::move(hint);
  t->span = sp;
  return t;
}

inline TermPtr tUniverse(Span sp = {}) { return mk(Tm::Universe, {}, sp); }
inline TermPtr tPi(std::string hint, TermPtr dom, TermPtr cod, Span sp = {}) {
  auto t = std::make_shared<Term>();
  t->kind = Tm::Pi;
  t->name = std::move(hint);
  t->kids = {std::move(dom), std::move(cod)};
  t->span = sp;
  return t;
}
inline TermPtr tLam(std::string hint, TermPtr body, Span sp = {}) {
  auto t = std::make_shared<Term>();
  t->kind = Tm::Lam;
  t->name = std::move(hint);
  t->kids = {std::move(body)};
  t->span = sp;
  return t;
}
inline TermPtr tApp(TermPtr fn, TermPtr arg, Span sp = {}) {
  return mk(Tm::App, {std::move(fn), std::move(arg)}, sp);
}
inline TermPtr tSigma(std::string hint, TermPtr first, TermPtr second, Span sp = {}) {
  auto t = std::make_shared<Term>();
  t->kind = Tm::Sigma;
  t->name = std::move(hint);
  t->kids = {std::move(first), std::move(second)};
  t->span = sp;
  return t;
}
inline TermPtr tPair(TermPtr a, TermPtr b, Span sp = {}) {
  return mk(Tm::Pair, {std::move(a), std::move(b)}, sp);
}
inline TermPtr tFst(TermPtr p, Span sp = {}) { return mk(Tm::Fst, {std::move(p)}, sp); }
inline TermPtr tSnd(TermPtr p, Span sp = {}) { return mk(Tm::Snd, {std::move(p)}, sp); }
inline TermPtr tUnit(Span sp = {}) { return mk(Tm::Unit, {}, sp); }
inline TermPtr tStar(Span sp = {}) { return mk(Tm::Star, {}, sp); }
inline TermPtr tNat(Span sp = {}) { return mk(Tm::Nat, {}, sp); }
inline TermPtr tZero(Span sp = {}) { return mk(Tm::Zero, {}, sp); }
inline TermPtr tSuc(TermPtr n, Span sp = {}) { return mk(Tm::Suc, {std::move(n)}, sp); }
inline TermPtr tNatElim(TermPtr motive, TermPtr base, TermPtr step, TermPtr scrut, Span sp = {}) {
  return mk(Tm::NatElim, {std::move(motive), std::move(base), std::move(step), std::move(scrut)}, sp);
}
inline TermPtr tId(TermPtr type, TermPtr lhs, TermPtr rhs, Span sp = {}) {
  return mk(Tm::Id, {std::move(type), std::move(lhs), std::move(rhs)}, sp);
}
inline TermPtr tRefl(TermPtr a, Span sp = {}) { return mk(Tm::Refl, {std::move(a)}, sp); }
inline TermPtr tJ(TermPtr type, TermPtr base, TermPtr motive, TermPtr dRefl, TermPtr other,
                  TermPtr path, Span sp = {}) {
  return mk(Tm::J,
            {std::move(type), std::move(base), std::move(motive), std::move(dRefl),
             std::move(other), std::move(path)},
            sp);
}
inline TermPtr tConst(std::string name, Span sp = {}) {
  auto t = std::make_shared<Term>();
  t->kind = Tm::Const;
  t->name = std::move(name);
  t->span = sp;
  return t;
}
inline TermPtr tAnn(TermPtr term, TermPtr type, Span sp = {}) {
  return mk(Tm::Ann, {std::move(term), std::move(type)}, sp);
}

// True when child `i` of a node of kind `k` is under one extra binder.
inline bool binds_child(Tm k, std::size_t i) {
  switch (k) {
    case Tm::Pi:
    case Tm::Sigma:
      return i == 1;
    case Tm::Lam:
      return i == 0;
    default:
      return false;
  }
}

// Shift free indices >= cutoff by `by`. An index driven below zero is a
// kernel invariant violation, not a user error.
inline TermPtr shift(const TermPtr& t, int by, int cutoff = 0) {
  if (by == 0) return t;
  switch (t->kind) {
    case Tm::Var: {
      if (t->index < cutoff) return t;
      int moved = t->index + by;
      if (moved < 0) throw std::logic_error("shift: index underflow");
      return tVar(moved, t->name, t->span);
    }
    default: {
      if (t->kids.empty()) return t;
      bool changed = false;
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      for (std::size_t i = 0; i < t->kids.size(); ++i) {
        int c = cutoff + (binds_child(t->kind, i) ? 1 : 0);
        TermPtr k = shift(t->kids[i], by, c);
        changed = changed || k != t->kids[i];
        kids.push_back(std::move(k));
      }
      if (!changed) return t;
      auto copy = std::make_shared<Term>(*t);
      copy->kids = std::move(kids);
      return copy;
    }
  }
}

struct ScopeViolation {
  int index;
  int depth;  // binder depth at the occurrence
  Span span;
};

inline void scope_audit_into(const TermPtr& t, int depth, std::vector<ScopeViolation>& out) {
  if (t->kind == Tm::Var) {
    if (t->index >= depth) out.push_back({t->index, depth, t->span});
    return;
  }
  for (std::size_t i = 0; i < t->kids.size(); ++i)
    scope_audit_into(t->kids[i], depth + (binds_child(t->kind, i) ? 1 : 0), out);
}

// Every Var index must be < its binder depth plus `ambient`.
inline std::vector<ScopeViolation> scope_audit(const TermPtr& t, int ambient = 0) {
  std::vector<ScopeViolation> out;
  scope_audit_into(t, ambient, out);
  return out;
}

// Structural equality; binder hints and spans never participate.
inline bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  if (a->kind == Tm::Var) return a->index == b->index;
  if (a->kind == Tm::Const) return a->name == b->name;
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!alpha_eq(a->kids[i], b->kids[i])) return false;
  return true;
}

// Does Var 0 (relative to `depth`) occur free in t?
inline bool uses_var(const TermPtr& t, int depth = 0) {
  if (t->kind == Tm::Var) return t->index == depth;
  for (std::size_t i = 0; i < t->kids.size(); ++i)
    if (uses_var(t->kids[i], depth + (binds_child(t->kind, i) ? 1 : 0))) return true;
  return false;
}

// A checked top-level declaration as produced by the resolver.
struct Declaration {
  std::string name;
  bool isAxiom = false;
  TermPtr type;
  TermPtr body;  // null for axioms
  Span span;
};

}  // namespace notears
