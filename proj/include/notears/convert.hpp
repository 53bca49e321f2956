#pragma once

#include <cassert>
#include <optional>

#include "notears/eval.hpp"
#include "notears/value.hpp"

namespace notears {

bool convertible(int depth, const ValuePtr& type, const ValuePtr& a, const ValuePtr& b);
std::optional<ValuePtr> spine_convertible(int depth, const Neutral& na, const Neutral& nb);

namespace detail {

inline const GlobalsPtr& empty_globals() {
  static const GlobalsPtr g = std::make_shared<EntryMap>();
  return g;
}

// Nat -> U
inline ValuePtr nat_motive_type() {
  static const ValuePtr ty =
      vPi(vNat(), Closure{{}, tUniverse(), empty_globals(), ""});
  return ty;
}

// Given C : Nat -> U, the step type (n : Nat) -> C n -> C (suc n).
inline ValuePtr nat_step_type(const ValuePtr& motive) {
  static const TermPtr body =
      tPi("", tApp(tVar(1), tVar(0)), tApp(tVar(2), tSuc(tVar(1))));
  return vPi(vNat(), Closure{{motive}, body, empty_globals(), "n"});
}

// Given A : U and a : A, the motive type (y : A) -> Id A a y -> U.
inline ValuePtr j_motive_type(const ValuePtr& type, const ValuePtr& base) {
  static const TermPtr body =
      tPi("", tId(tVar(2), tVar(1), tVar(0)), tUniverse());
  return vPi(type, Closure{{type, base}, body, empty_globals(), "y"});
}

}  // namespace detail

// Structural comparison of two type values (i.e. conversion at Universe).
inline bool type_convertible(int depth, const ValuePtr& a, const ValuePtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Vk::Universe:
    case Vk::Nat:
    case Vk::Unit:
      return true;
    case Vk::Pi:
    case Vk::Sigma: {
      if (!type_convertible(depth, a->v1, b->v1)) return false;
      ValuePtr fresh = vVar(depth, a->v1);
      return type_convertible(depth + 1, apply_closure(a->closure, fresh),
                              apply_closure(b->closure, fresh));
    }
    case Vk::Id:
      return type_convertible(depth, a->v1, b->v1) &&
             convertible(depth, a->v1, a->v2, b->v2) &&
             convertible(depth, a->v1, a->v3, b->v3);
    case Vk::Neutral:
      return spine_convertible(depth, a->neutral, b->neutral).has_value();
    default:
      return false;  // not a type former
  }
}

// Definitional equality of a and b at the given type. Eta laws for Pi, Sigma
// and Unit live here; Nat and Id are compared structurally.
inline bool convertible(int depth, const ValuePtr& type, const ValuePtr& a,
                        const ValuePtr& b) {
  Fuel::tick();
  switch (type->kind) {
    case Vk::Pi: {
      ValuePtr fresh = vVar(depth, type->v1);
      return convertible(depth + 1, apply_closure(type->closure, fresh),
                         vapp(a, fresh), vapp(b, fresh));
    }
    case Vk::Sigma: {
      ValuePtr fa = vfst(a);
      ValuePtr fb = vfst(b);
      if (!convertible(depth, type->v1, fa, fb)) return false;
      return convertible(depth, apply_closure(type->closure, fa), vsnd(a), vsnd(b));
    }
    case Vk::Unit:
      return true;
    case Vk::Universe:
      return type_convertible(depth, a, b);
    case Vk::Nat: {
      if (a->kind == Vk::Zero && b->kind == Vk::Zero) return true;
      if (a->kind == Vk::Suc && b->kind == Vk::Suc)
        return convertible(depth, vNat(), a->v1, b->v1);
      if (a->kind == Vk::Neutral && b->kind == Vk::Neutral)
        return spine_convertible(depth, a->neutral, b->neutral).has_value();
      return false;
    }
    case Vk::Id: {
      if (a->kind == Vk::Refl && b->kind == Vk::Refl)
        return convertible(depth, type->v1, a->v1, b->v1);
      if (a->kind == Vk::Neutral && b->kind == Vk::Neutral)
        return spine_convertible(depth, a->neutral, b->neutral).has_value();
      return false;
    }
    case Vk::Neutral: {
      if (a->kind == Vk::Neutral && b->kind == Vk::Neutral)
        return spine_convertible(depth, a->neutral, b->neutral).has_value();
      return false;
    }
    default:
      return false;  // classifying value is not a type
  }
}

// Compare two neutrals in lockstep, tracking the type of the head and of each
// intermediate elimination so argument comparisons stay type-directed. Returns
// the type of the whole spine on success.
inline std::optional<ValuePtr> spine_convertible(int depth, const Neutral& na,
                                                 const Neutral& nb) {
  if (na.head.kind != nb.head.kind) return std::nullopt;
  ValuePtr type;
  ValuePtr cur;
  if (na.head.kind == NHead::Kind::Var) {
    if (na.head.level != nb.head.level) return std::nullopt;
    assert(na.head.varType != nullptr && "untyped variable reached conversion");
    type = na.head.varType;
    cur = vVar(na.head.level, na.head.varType);
  } else {
    if (na.head.entry->name != nb.head.entry->name) return std::nullopt;
    type = na.head.entry->typeValue;
    cur = vAxiom(na.head.entry);
  }
  if (na.spine.size() != nb.spine.size()) return std::nullopt;
  for (size_t i = 0; i < na.spine.size(); ++i) {
    const Elim& ea = na.spine[i];
    const Elim& eb = nb.spine[i];
    if (ea.kind != eb.kind) return std::nullopt;
    switch (ea.kind) {
      case EKind::App: {
        if (type->kind != Vk::Pi) return std::nullopt;
        if (!convertible(depth, type->v1, ea.args[0], eb.args[0])) return std::nullopt;
        ValuePtr next = apply_closure(type->closure, ea.args[0]);
        cur = vapp(cur, ea.args[0]);
        type = next;
        break;
      }
      case EKind::Fst: {
        if (type->kind != Vk::Sigma) return std::nullopt;
        type = type->v1;
        cur = vfst(cur);
        break;
      }
      case EKind::Snd: {
        if (type->kind != Vk::Sigma) return std::nullopt;
        ValuePtr next = apply_closure(type->closure, vfst(cur));
        cur = vsnd(cur);
        type = next;
        break;
      }
      case EKind::NatElim: {
        if (type->kind != Vk::Nat) return std::nullopt;
        const ValuePtr& motive = ea.args[0];
        if (!convertible(depth, detail::nat_motive_type(), motive, eb.args[0]))
          return std::nullopt;
        if (!convertible(depth, vapp(motive, vZero()), ea.args[1], eb.args[1]))
          return std::nullopt;
        if (!convertible(depth, detail::nat_step_type(motive), ea.args[2], eb.args[2]))
          return std::nullopt;
        ValuePtr next = vapp(motive, cur);
        cur = vnatelim(motive, ea.args[1], ea.args[2], cur);
        type = next;
        break;
      }
      case EKind::J: {
        if (type->kind != Vk::Id) return std::nullopt;
        const ValuePtr& vA = ea.args[0];
        const ValuePtr& va = ea.args[1];
        const ValuePtr& vC = ea.args[2];
        if (!convertible(depth, vUniverse(), vA, eb.args[0])) return std::nullopt;
        if (!convertible(depth, vA, va, eb.args[1])) return std::nullopt;
        if (!convertible(depth, detail::j_motive_type(vA, va), vC, eb.args[2]))
          return std::nullopt;
        if (!convertible(depth, vapp(vapp(vC, va), vRefl(va)), ea.args[3], eb.args[3]))
          return std::nullopt;
        if (!convertible(depth, vA, ea.args[4], eb.args[4])) return std::nullopt;
        ValuePtr next = vapp(vapp(vC, ea.args[4]), cur);
        cur = vj(vA, va, vC, ea.args[3], ea.args[4], cur);
        type = next;
        break;
      }
    }
  }
  return type;
}

}  // namespace notears
