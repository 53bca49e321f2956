#pragma once

// Independent normalization oracle.
//
// This is a deliberately naive term rewriter used to cross-check the
// kernel's normalization-by-evaluation engine. It shares no machinery with
// the kernel: no value domain, no closures, no environments. Terms are
// rewritten one leftmost-outermost redex at a time with explicit de Bruijn
// substitution, and definitions unfold from a plain name-to-body map.
// It is quadratic and slow, which is fine for the small terms tests feed it;
// what matters is that it is simple enough to audit by eye.
//
// Every hand-derived normal form hard-coded in the test suite was first
// computed with this reducer and only then frozen as an expected value, and
// the suite keeps asserting that both engines agree.
//
// Supported rules: beta, pair/projection, natElim on numerals, J on refl,
// definition unfolding, annotation erasure. No eta: the kernel's readback
// does not eta-expand either, so beta-delta-iota normal forms are comparable
// with alpha_eq directly.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "notears/syntax.hpp"

namespace oracle {

using notears::Term;
using notears::TermPtr;
using notears::Tm;

// Which child indices bind one more variable (kept separate from the
// kernel's table on purpose; duplicating it is the point of an oracle).
inline int obinds(Tm k, std::size_t i) {
  if (k == Tm::Lam) return i == 0 ? 1 : 0;
  if (k == Tm::Pi || k == Tm::Sigma) return i == 1 ? 1 : 0;
  return 0;
}

inline TermPtr oshift(const TermPtr& t, int by, int cut) {
  if (t->kind == Tm::Var)
    return t->index >= cut ? notears::tVar(t->index + by, t->name) : t;
  if (t->kids.empty()) return t;
  auto c = std::make_shared<Term>(*t);
  for (std::size_t i = 0; i < c->kids.size(); ++i)
    c->kids[i] = oshift(t->kids[i], by, cut + obinds(t->kind, i));
  return c;
}

// t[j := s], renumbering the variables above j down by one.
inline TermPtr osubst(const TermPtr& t, int j, const TermPtr& s) {
  if (t->kind == Tm::Var) {
    if (t->index == j) return oshift(s, j, 0);
    if (t->index > j) return notears::tVar(t->index - 1, t->name);
    return t;
  }
  if (t->kids.empty()) return t;
  auto c = std::make_shared<Term>(*t);
  for (std::size_t i = 0; i < c->kids.size(); ++i)
    c->kids[i] = osubst(t->kids[i], j + obinds(t->kind, i), s);
  return c;
}

// One leftmost-outermost reduction step, or null if t is normal.
inline TermPtr ostep(const TermPtr& t, const std::map<std::string, TermPtr>& defs) {
  using namespace notears;
  switch (t->kind) {
    case Tm::Const: {
      auto it = defs.find(t->name);
      if (it != defs.end()) return it->second;
      break;
    }
    case Tm::Ann:
      return t->kids[0];
    case Tm::App:
      if (t->kids[0]->kind == Tm::Lam)
        return osubst(t->kids[0]->kids[0], 0, t->kids[1]);
      break;
    case Tm::Fst:
      if (t->kids[0]->kind == Tm::Pair) return t->kids[0]->kids[0];
      break;
    case Tm::Snd:
      if (t->kids[0]->kind == Tm::Pair) return t->kids[0]->kids[1];
      break;
    case Tm::NatElim: {
      const TermPtr& scrut = t->kids[3];
      if (scrut->kind == Tm::Zero) return t->kids[1];
      if (scrut->kind == Tm::Suc)
        return tApp(tApp(t->kids[2], scrut->kids[0]),
                    tNatElim(t->kids[0], t->kids[1], t->kids[2], scrut->kids[0]));
      break;
    }
    case Tm::J:
      if (t->kids[5]->kind == Tm::Refl) return t->kids[3];
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < t->kids.size(); ++i) {
    if (TermPtr r = ostep(t->kids[i], defs)) {
      auto c = std::make_shared<Term>(*t);
      c->kids[i] = r;
      return c;
    }
  }
  return nullptr;
}

inline TermPtr onormalize(TermPtr t, const std::map<std::string, TermPtr>& defs,
                          int maxSteps = 500000) {
  for (int k = 0; k < maxSteps; ++k) {
    TermPtr r = ostep(t, defs);
    if (!r) return t;
    t = std::move(r);
  }
  throw std::runtime_error("oracle: step budget exceeded");
}

}  // namespace oracle
