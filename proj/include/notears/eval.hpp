#pragma once

#include <cassert>
#include <stdexcept>

#include "notears/diagnostics.hpp"
#include "notears/env.hpp"
#include "notears/syntax.hpp"
#include "notears/value.hpp"

namespace notears {

ValuePtr evaluate(const Env& env, const TermPtr& t, const GlobalsPtr& globals);

inline ValuePtr apply_closure(const Closure& cl, const ValuePtr& arg) {
  Env env = cl.env;
  env.push_back(arg);
  return evaluate(env, cl.body, cl.globals);
}

inline ValuePtr vapp(const ValuePtr& f, const ValuePtr& a) {
  Fuel::tick();
  switch (f->kind) {
    case Vk::Lam:
      return apply_closure(f->closure, a);
    case Vk::Neutral:
      return vExtend(f->neutral, Elim{EKind::App, {a}});
    default:
      throw std::logic_error("vapp: applied a non-function value");
  }
}

inline ValuePtr vfst(const ValuePtr& p) {
  switch (p->kind) {
    case Vk::Pair:
      return p->v1;
    case Vk::Neutral:
      return vExtend(p->neutral, Elim{EKind::Fst, {}});
    default:
      throw std::logic_error("vfst: projected from a non-pair value");
  }
}

inline ValuePtr vsnd(const ValuePtr& p) {
  switch (p->kind) {
    case Vk::Pair:
      return p->v2;
    case Vk::Neutral:
      return vExtend(p->neutral, Elim{EKind::Snd, {}});
    default:
      throw std::logic_error("vsnd: projected from a non-pair value");
  }
}

inline ValuePtr vnatelim(const ValuePtr& motive, const ValuePtr& base,
                         const ValuePtr& step, const ValuePtr& scrut) {
  Fuel::tick();
  switch (scrut->kind) {
    case Vk::Zero:
      return base;
    case Vk::Suc:
      return vapp(vapp(step, scrut->v1), vnatelim(motive, base, step, scrut->v1));
    case Vk::Neutral:
      return vExtend(scrut->neutral, Elim{EKind::NatElim, {motive, base, step}});
    default:
      throw std::logic_error("vnatelim: scrutinee is not a numeral");
  }
}

inline ValuePtr vj(const ValuePtr& type, const ValuePtr& base, const ValuePtr& motive,
                   const ValuePtr& dRefl, const ValuePtr& other, const ValuePtr& path) {
  Fuel::tick();
  switch (path->kind) {
    case Vk::Refl:
      return dRefl;
    case Vk::Neutral:
      return vExtend(path->neutral, Elim{EKind::J, {type, base, motive, dRefl, other}});
    default:
      throw std::logic_error("vj: path is not an identification");
  }
}

inline ValuePtr evaluate(const Env& env, const TermPtr& t, const GlobalsPtr& globals) {
  Fuel::tick();
  switch (t->kind) {
    case Tm::Var: {
      assert(t->index >= 0 && static_cast<size_t>(t->index) < env.size());
      return env[env.size() - 1 - static_cast<size_t>(t->index)];
    }
    case Tm::Universe:
      return vUniverse();
    case Tm::Pi:
      return vPi(evaluate(env, t->kids[0], globals),
                 Closure{env, t->kids[1], globals, t->name});
    case Tm::Lam:
      return vLam(Closure{env, t->kids[0], globals, t->name});
    case Tm::App:
      return vapp(evaluate(env, t->kids[0], globals), evaluate(env, t->kids[1], globals));
    case Tm::Sigma:
      return vSigma(evaluate(env, t->kids[0], globals),
                    Closure{env, t->kids[1], globals, t->name});
    case Tm::Pair:
      return vPair(evaluate(env, t->kids[0], globals), evaluate(env, t->kids[1], globals));
    case Tm::Fst:
      return vfst(evaluate(env, t->kids[0], globals));
    case Tm::Snd:
      return vsnd(evaluate(env, t->kids[0], globals));
    case Tm::Unit:
      return vUnit();
    case Tm::Star:
      return vStar();
    case Tm::Nat:
      return vNat();
    case Tm::Zero:
      return vZero();
    case Tm::Suc:
      return vSuc(evaluate(env, t->kids[0], globals));
    case Tm::NatElim:
      return vnatelim(evaluate(env, t->kids[0], globals), evaluate(env, t->kids[1], globals),
                      evaluate(env, t->kids[2], globals), evaluate(env, t->kids[3], globals));
    case Tm::Id:
      return vId(evaluate(env, t->kids[0], globals), evaluate(env, t->kids[1], globals),
                 evaluate(env, t->kids[2], globals));
    case Tm::Refl:
      return vRefl(evaluate(env, t->kids[0], globals));
    case Tm::J:
      return vj(evaluate(env, t->kids[0], globals), evaluate(env, t->kids[1], globals),
                evaluate(env, t->kids[2], globals), evaluate(env, t->kids[3], globals),
                evaluate(env, t->kids[4], globals), evaluate(env, t->kids[5], globals));
    case Tm::Const: {
      assert(globals != nullptr);
      auto it = globals->find(t->name);
      if (it == globals->end())
        throw std::logic_error("evaluate: unknown constant " + t->name);
      const EntryPtr& e = it->second;
      if (e->isAxiom) return vAxiom(e);
      assert(e->bodyValue != nullptr);
      return e->bodyValue;
    }
    case Tm::Ann:
      return evaluate(env, t->kids[0], globals);
  }
  throw std::logic_error("evaluate: unreachable");
}

// Quote a value back to a core term. Levels convert to indices via
// index = depth - 1 - level; fresh variables opened under binders carry no
// type, which is fine since readback never consults variable types.
inline TermPtr readback(int depth, const ValuePtr& v) {
  Fuel::tick();
  switch (v->kind) {
    case Vk::Universe:
      return tUniverse();
    case Vk::Pi: {
      TermPtr dom = readback(depth, v->v1);
      ValuePtr fresh = vVar(depth);
      TermPtr cod = readback(depth + 1, apply_closure(v->closure, fresh));
      return tPi(v->closure.hint, dom, cod);
    }
    case Vk::Lam: {
      ValuePtr fresh = vVar(depth);
      return tLam(v->closure.hint, readback(depth + 1, apply_closure(v->closure, fresh)));
    }
    case Vk::Sigma: {
      TermPtr first = readback(depth, v->v1);
      ValuePtr fresh = vVar(depth);
      TermPtr second = readback(depth + 1, apply_closure(v->closure, fresh));
      return tSigma(v->closure.hint, first, second);
    }
    case Vk::Pair:
      return tPair(readback(depth, v->v1), readback(depth, v->v2));
    case Vk::Unit:
      return tUnit();
    case Vk::Star:
      return tStar();
    case Vk::Nat:
      return tNat();
    case Vk::Zero:
      return tZero();
    case Vk::Suc:
      return tSuc(readback(depth, v->v1));
    case Vk::Id:
      return tId(readback(depth, v->v1), readback(depth, v->v2), readback(depth, v->v3));
    case Vk::Refl:
      return tRefl(readback(depth, v->v1));
    case Vk::Neutral: {
      const Neutral& n = v->neutral;
      TermPtr acc;
      if (n.head.kind == NHead::Kind::Var) {
        assert(n.head.level >= 0 && n.head.level < depth);
        acc = tVar(depth - 1 - n.head.level);
      } else {
        acc = tConst(n.head.entry->name);
      }
      for (const Elim& e : n.spine) {
        switch (e.kind) {
          case EKind::App:
            acc = tApp(acc, readback(depth, e.args[0]));
            break;
          case EKind::Fst:
            acc = tFst(acc);
            break;
          case EKind::Snd:
            acc = tSnd(acc);
            break;
          case EKind::NatElim:
            acc = tNatElim(readback(depth, e.args[0]), readback(depth, e.args[1]),
                           readback(depth, e.args[2]), acc);
            break;
          case EKind::J:
            acc = tJ(readback(depth, e.args[0]), readback(depth, e.args[1]),
                     readback(depth, e.args[2]), readback(depth, e.args[3]),
                     readback(depth, e.args[4]), acc);
            break;
        }
      }
      return acc;
    }
  }
  throw std::logic_error("readback: unreachable");
}

inline TermPtr normalize(const TermPtr& t, const GlobalsPtr& globals) {
  return readback(0, evaluate({}, t, globals));
}

}  // namespace notears
