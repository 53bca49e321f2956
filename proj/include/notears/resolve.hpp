#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "notears/parse.hpp"
#include "notears/syntax.hpp"

namespace notears {

namespace detail {

constexpr int prim_arity(PrimKind p) {
  switch (p) {
    case PrimKind::Suc: return 1;
    case PrimKind::Refl: return 1;
    case PrimKind::Id: return 3;
    case PrimKind::NatElim: return 4;
    case PrimKind::J: return 6;
  }
  return 0;
}

inline TermPtr build_prim(PrimKind p, const std::vector<TermPtr>& args, Span sp) {
  switch (p) {
    case PrimKind::Suc: return tSuc(args[0], sp);
    case PrimKind::Refl: return tRefl(args[0], sp);
    case PrimKind::Id: return tId(args[0], args[1], args[2], sp);
    case PrimKind::NatElim: return tNatElim(args[0], args[1], args[2], args[3], sp);
    case PrimKind::J: return tJ(args[0], args[1], args[2], args[3], args[4], args[5], sp);
  }
  return nullptr;
}

struct Resolver {
  const std::set<std::string>* globals;
  std::string file;
  std::vector<std::string> scope;  // binder names, outermost first

  [[noreturn]] void fail(Span sp, const std::string& msg) {
    throw CheckError({file, sp, msg});
  }

  TermPtr resolve(const SurfacePtr& t) {
    switch (t->kind) {
      case Sk::Name: {
        for (int i = static_cast<int>(scope.size()) - 1; i >= 0; --i) {
          if (scope[static_cast<std::size_t>(i)] == t->name)
            return tVar(static_cast<int>(scope.size()) - 1 - i, t->name, t->span);
        }
        if (globals->count(t->name)) return tConst(t->name, t->span);
        fail(t->span, "unbound identifier '" + t->name + "'");
      }
      case Sk::Universe: return tUniverse(t->span);
      case Sk::NatType: return tNat(t->span);
      case Sk::UnitType: return tUnit(t->span);
      case Sk::ZeroLit: return tZero(t->span);
      case Sk::StarLit: return tStar(t->span);
      case Sk::Numeral: {
        TermPtr n = tZero(t->span);
        for (long k = 0; k < t->number; ++k) n = tSuc(n, t->span);
        return n;
      }
      case Sk::Lam: {
        scope.push_back(t->name);
        TermPtr body = resolve(t->kids[0]);
        scope.pop_back();
        return tLam(t->name, body, t->span);
      }
      case Sk::Pi:
      case Sk::Sigma: {
        TermPtr dom = resolve(t->kids[0]);
        scope.push_back(t->name);
        TermPtr rest = resolve(t->kids[1]);
        scope.pop_back();
        return t->kind == Sk::Pi ? tPi(t->name, dom, rest, t->span)
                                 : tSigma(t->name, dom, rest, t->span);
      }
      case Sk::Pair: return tPair(resolve(t->kids[0]), resolve(t->kids[1]), t->span);
      case Sk::Fst: return tFst(resolve(t->kids[0]), t->span);
      case Sk::Snd: return tSnd(resolve(t->kids[0]), t->span);
      case Sk::Ann: return tAnn(resolve(t->kids[0]), resolve(t->kids[1]), t->span);
      case Sk::Prim:
      case Sk::App: {
        // Flatten the application spine; a primitive head is saturated in
        // place and eta-expanded when under-applied.
        std::vector<const SurfaceTerm*> rev;
        const SurfaceTerm* head = t.get();
        while (head->kind == Sk::App) {
          rev.push_back(head->kids[1].get());
          head = head->kids[0].get();
        }
        std::vector<TermPtr> args;
        for (auto it = rev.rbegin(); it != rev.rend(); ++it)
          args.push_back(resolve_raw(*it));

        TermPtr result;
        std::size_t used = 0;
        if (head->kind == Sk::Prim) {
          int arity = prim_arity(head->prim);
          if (static_cast<int>(args.size()) >= arity) {
            std::vector<TermPtr> prim_args(args.begin(), args.begin() + arity);
            result = build_prim(head->prim, prim_args, t->span);
            used = static_cast<std::size_t>(arity);
          } else {
            // eta-expand: \x1. ... \xk. prim(shifted args, x_k..x_1)
            int need = arity - static_cast<int>(args.size());
            std::vector<TermPtr> prim_args;
            for (const auto& a : args) prim_args.push_back(shift(a, need));
            for (int k = need - 1; k >= 0; --k) prim_args.push_back(tVar(k, "", t->span));
            result = build_prim(head->prim, prim_args, t->span);
            for (int k = 0; k < need; ++k)
              result = tLam("x" + std::to_string(need - k), result, t->span);
            used = args.size();
          }
        } else {
          result = resolve_raw(head);
        }
        for (std::size_t k = used; k < args.size(); ++k)
          result = tApp(result, args[k], t->span);
        return result;
      }
    }
    fail(t->span, "internal: unhandled surface node");
  }

  // Resolve a node that is known not to be an App spine head position.
  TermPtr resolve_raw(const SurfaceTerm* t) {
    SurfacePtr tmp(t, [](const SurfaceTerm*) {});
    return resolve(tmp);
  }
};

}  // namespace detail

// Resolve one surface term against binder scope + global names.
inline TermPtr resolve_term(const SurfacePtr& t, const std::set<std::string>& globals,
                            const std::string& file,
                            const std::vector<std::string>& scope = {}) {
  detail::Resolver r{&globals, file, scope};
  return r.resolve(t);
}

// Resolve one declaration against the names already in scope. Redefining an
// existing name is rejected here.
inline Declaration resolve_decl(const SurfaceDecl& d, const std::set<std::string>& known,
                                const std::string& file) {
  if (known.count(d.name))
    throw CheckError({file, d.span, "duplicate definition of '" + d.name + "'"});
  Declaration core;
  core.name = d.name;
  core.isAxiom = d.isAxiom;
  core.span = d.span;
  core.type = resolve_term(d.type, known, file);
  if (d.body) core.body = resolve_term(d.body, known, file);
  return core;
}

// Resolve a whole module's declarations in order.
inline std::vector<Declaration> resolve_module(const ModuleFile& m,
                                               const std::set<std::string>& globals) {
  std::set<std::string> known = globals;
  std::vector<Declaration> out;
  for (const SurfaceDecl& d : m.decls) {
    out.push_back(resolve_decl(d, known, m.file));
    known.insert(d.name);
  }
  return out;
}

}  // namespace notears
