#pragma once

#include <cassert>
#include <string>
#include <vector>

#include "notears/convert.hpp"
#include "notears/diagnostics.hpp"
#include "notears/env.hpp"
#include "notears/eval.hpp"
#include "notears/pretty.hpp"
#include "notears/syntax.hpp"
#include "notears/value.hpp"

namespace notears {

// Typing context: binder names and types outermost-first, plus the parallel
// evaluation environment. Binders usually map to fresh typed variables; the
// beta-redex rule binds a concrete value instead.
struct TypingContext {
  struct Binding {
    std::string hint;
    ValuePtr type;
  };
  std::vector<Binding> bindings;
  Env values;

  int depth() const { return static_cast<int>(bindings.size()); }

  TypingContext extend_fresh(const std::string& hint, ValuePtr type) const {
    TypingContext next = *this;
    next.values.push_back(vVar(depth(), type));
    next.bindings.push_back({hint, std::move(type)});
    return next;
  }
  TypingContext extend_value(const std::string& hint, ValuePtr type, ValuePtr value) const {
    TypingContext next = *this;
    next.values.push_back(std::move(value));
    next.bindings.push_back({hint, std::move(type)});
    return next;
  }
  std::vector<std::string> hints() const {
    std::vector<std::string> out;
    out.reserve(bindings.size());
    for (const auto& b : bindings) out.push_back(b.hint);
    return out;
  }
};

struct Inferred {
  ValuePtr type;
  TermPtr term;  // elaborated: annotations erased, spans kept
};

class Checker {
 public:
  Checker(GlobalEnv env, std::string file) : env_(std::move(env)), file_(std::move(file)) {}

  Inferred infer(const TypingContext& ctx, const TermPtr& t) {
    switch (t->kind) {
      case Tm::Var: {
        assert(t->index >= 0 && t->index < ctx.depth());
        return {ctx.bindings[ctx.bindings.size() - 1 - static_cast<size_t>(t->index)].type,
                t};
      }
      case Tm::Const: {
        const EntryPtr* e = env_.find(t->name);
        assert(e != nullptr && "resolver admitted an unknown constant");
        return {(*e)->typeValue, t};
      }
      case Tm::Universe:
        return {vUniverse(), t};
      case Tm::Nat:
      case Tm::Unit:
        return {vUniverse(), t};
      case Tm::Zero:
        return {vNat(), t};
      case Tm::Star:
        return {vUnit(), t};
      case Tm::Suc: {
        TermPtr n = check(ctx, t->kids[0], vNat());
        return {vNat(), tSuc(n, t->span)};
      }
      case Tm::Pi: {
        TermPtr dom = check(ctx, t->kids[0], vUniverse());
        TypingContext ctx2 = ctx.extend_fresh(t->name, eval_in(ctx, dom));
        TermPtr cod = check(ctx2, t->kids[1], vUniverse());
        return {vUniverse(), tPi(t->name, dom, cod, t->span)};
      }
      case Tm::Sigma: {
        TermPtr first = check(ctx, t->kids[0], vUniverse());
        TypingContext ctx2 = ctx.extend_fresh(t->name, eval_in(ctx, first));
        TermPtr second = check(ctx2, t->kids[1], vUniverse());
        return {vUniverse(), tSigma(t->name, first, second, t->span)};
      }
      case Tm::Id: {
        TermPtr type = check(ctx, t->kids[0], vUniverse());
        ValuePtr vT = eval_in(ctx, type);
        TermPtr lhs = check(ctx, t->kids[1], vT);
        TermPtr rhs = check(ctx, t->kids[2], vT);
        return {vUniverse(), tId(type, lhs, rhs, t->span)};
      }
      case Tm::App: {
        const TermPtr& f = t->kids[0];
        if (f->kind == Tm::Lam) {
          // Inferable beta redex: treat (\x. b) a as a local definition.
          Inferred arg = infer(ctx, t->kids[1]);
          ValuePtr argV = eval_in(ctx, arg.term);
          TypingContext ctx2 = ctx.extend_value(f->name, arg.type, argV);
          Inferred body = infer(ctx2, f->kids[0]);
          return {body.type, tApp(tLam(f->name, body.term, f->span), arg.term, t->span)};
        }
        Inferred fn = infer(ctx, f);
        if (fn.type->kind != Vk::Pi)
          fail(t->span, "cannot apply a term of type " + show(ctx, fn.type));
        TermPtr arg = check(ctx, t->kids[1], fn.type->v1);
        ValuePtr argV = eval_in(ctx, arg);
        return {apply_closure(fn.type->closure, argV), tApp(fn.term, arg, t->span)};
      }
      case Tm::Fst: {
        Inferred p = infer(ctx, t->kids[0]);
        if (p.type->kind != Vk::Sigma)
          fail(t->span, "cannot project from a term of type " + show(ctx, p.type));
        return {p.type->v1, tFst(p.term, t->span)};
      }
      case Tm::Snd: {
        Inferred p = infer(ctx, t->kids[0]);
        if (p.type->kind != Vk::Sigma)
          fail(t->span, "cannot project from a term of type " + show(ctx, p.type));
        ValuePtr pv = eval_in(ctx, p.term);
        return {apply_closure(p.type->closure, vfst(pv)), tSnd(p.term, t->span)};
      }
      case Tm::NatElim: {
        TermPtr motive = check(ctx, t->kids[0], detail::nat_motive_type());
        ValuePtr vC = eval_in(ctx, motive);
        TermPtr base = check(ctx, t->kids[1], vapp(vC, vZero()));
        TermPtr step = check(ctx, t->kids[2], detail::nat_step_type(vC));
        TermPtr scrut = check(ctx, t->kids[3], vNat());
        return {vapp(vC, eval_in(ctx, scrut)), tNatElim(motive, base, step, scrut, t->span)};
      }
      case Tm::J: {
        TermPtr type = check(ctx, t->kids[0], vUniverse());
        ValuePtr vA = eval_in(ctx, type);
        TermPtr base = check(ctx, t->kids[1], vA);
        ValuePtr va = eval_in(ctx, base);
        TermPtr motive = check(ctx, t->kids[2], detail::j_motive_type(vA, va));
        ValuePtr vC = eval_in(ctx, motive);
        TermPtr dRefl = check(ctx, t->kids[3], vapp(vapp(vC, va), vRefl(va)));
        TermPtr other = check(ctx, t->kids[4], vA);
        ValuePtr vy = eval_in(ctx, other);
        TermPtr path = check(ctx, t->kids[5], vId(vA, va, vy));
        return {vapp(vapp(vC, vy), eval_in(ctx, path)),
                tJ(type, base, motive, dRefl, other, path, t->span)};
      }
      case Tm::Ann: {
        TermPtr type = check(ctx, t->kids[1], vUniverse());
        ValuePtr vT = eval_in(ctx, type);
        TermPtr inner = check(ctx, t->kids[0], vT);
        return {vT, inner};  // annotation erased after use
      }
      case Tm::Lam:
      case Tm::Pair:
      case Tm::Refl:
        fail(t->span, "cannot infer a type for this term; annotate it with (term : type)");
    }
    throw std::logic_error("infer: unreachable");
  }

  TermPtr check(const TypingContext& ctx, const TermPtr& t, const ValuePtr& expected) {
    switch (t->kind) {
      case Tm::Lam: {
        if (expected->kind != Vk::Pi)
          fail(t->span, "type mismatch: a lambda cannot have type " + show(ctx, expected));
        TypingContext ctx2 = ctx.extend_fresh(t->name, expected->v1);
        ValuePtr cod = apply_closure(expected->closure, ctx2.values.back());
        TermPtr body = check(ctx2, t->kids[0], cod);
        return tLam(t->name, body, t->span);
      }
      case Tm::Pair: {
        if (expected->kind != Vk::Sigma)
          fail(t->span, "type mismatch: a pair cannot have type " + show(ctx, expected));
        TermPtr first = check(ctx, t->kids[0], expected->v1);
        ValuePtr fv = eval_in(ctx, first);
        TermPtr second = check(ctx, t->kids[1], apply_closure(expected->closure, fv));
        return tPair(first, second, t->span);
      }
      case Tm::Refl: {
        if (expected->kind != Vk::Id)
          fail(t->span, "type mismatch: refl cannot have type " + show(ctx, expected));
        TermPtr arg = check(ctx, t->kids[0], expected->v1);
        ValuePtr av = eval_in(ctx, arg);
        if (!convertible(ctx.depth(), expected->v1, av, expected->v2) ||
            !convertible(ctx.depth(), expected->v1, av, expected->v3)) {
          Diagnostic d;
          d.file = file_;
          d.span = t->span;
          d.expected = show(ctx, expected);
          d.actual = "refl " + pretty(readback(ctx.depth(), av), ctx.hints());
          d.message = "type mismatch: refl " +
                      pretty(readback(ctx.depth(), av), ctx.hints()) +
                      " does not prove " + d.expected;
          throw CheckError(d);
        }
        return tRefl(arg, t->span);
      }
      default: {
        Inferred inf = infer(ctx, t);
        if (!convertible(ctx.depth(), vUniverse(), inf.type, expected)) {
          Diagnostic d;
          d.file = file_;
          d.span = t->span;
          d.expected = show(ctx, expected);
          d.actual = show(ctx, inf.type);
          d.message = "type mismatch: expected " + d.expected + ", got " + d.actual;
          throw CheckError(d);
        }
        return inf.term;
      }
    }
  }

  ValuePtr eval_in(const TypingContext& ctx, const TermPtr& t) const {
    return evaluate(ctx.values, t, env_.map());
  }
  std::string show(const TypingContext& ctx, const ValuePtr& v) const {
    return pretty(readback(ctx.depth(), v), ctx.hints());
  }

 private:
  [[noreturn]] void fail(const Span& sp, const std::string& msg) const {
    Diagnostic d;
    d.file = file_;
    d.span = sp;
    d.message = msg;
    throw CheckError(d);
  }

  GlobalEnv env_;
  std::string file_;
};

// Check one declaration against an environment snapshot and produce the cached
// entry. The environment is untouched on failure; the caller extends it.
inline EntryPtr check_declaration(const GlobalEnv& env, const Declaration& d,
                                  const std::string& file) {
  Checker ck(env, file);
  TypingContext ctx;
  TermPtr typeElab = ck.check(ctx, d.type, vUniverse());
  if (!scope_audit(typeElab).empty())
    throw std::logic_error("elaborated type of '" + d.name + "' escapes its scope");
  ValuePtr typeValue = evaluate({}, typeElab, env.map());

  auto entry = std::make_shared<Entry>();
  entry->name = d.name;
  entry->isAxiom = d.isAxiom;
  entry->type = typeElab;
  entry->typeValue = typeValue;
  entry->file = file;
  entry->span = d.span;
  collect_consts(typeElab, entry->deps);
  if (!d.isAxiom) {
    TermPtr bodyElab = ck.check(ctx, d.body, typeValue);
    if (!scope_audit(bodyElab).empty())
      throw std::logic_error("elaborated body of '" + d.name + "' escapes its scope");
    entry->body = bodyElab;
    entry->bodyValue = evaluate({}, bodyElab, env.map());
    collect_consts(bodyElab, entry->deps);
  }
  return entry;
}

}  // namespace notears
