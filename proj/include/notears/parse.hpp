#pragma once

#include <memory>
#include <string>
#include <vector>

#include "notears/lex.hpp"

namespace notears {

// Named surface syntax. The resolver turns it into core terms.
enum class Sk {
  Name,
  Universe,
  NatType,
  UnitType,
  ZeroLit,
  StarLit,
  Numeral,
  Prim,  // suc / refl / Id / J / natElim used as a curried constant
  Pi,
  Sigma,
  Lam,
  App,
  Pair,
  Fst,
  Snd,
  Ann,
};

enum class PrimKind { Suc, Refl, Id, J, NatElim };

struct SurfaceTerm;
using SurfacePtr = std::shared_ptr<const SurfaceTerm>;

struct SurfaceTerm {
  Sk kind;
  std::string name;  // Name / binder
  long number = 0;   // Numeral
  PrimKind prim = PrimKind::Suc;
  std::vector<SurfacePtr> kids;
  Span span;
};

inline SurfacePtr smk(Sk k, std::vector<SurfacePtr> kids, Span sp) {
  auto t = std::make_shared<SurfaceTerm>();
  t->kind = k;
  t->kids = std::move(kids);
  t->span = sp;
  return t;
}

struct SurfaceDecl {
  std::string name;
  bool isAxiom = false;
  SurfacePtr type;
  SurfacePtr body;  // null for axioms
  Span span;
};

struct ImportStmt {
  std::string module;
  Span span;
};

// One .hott file. The module name is the file stem; there is no in-file
// module header, so name and stem cannot disagree.
struct ModuleFile {
  std::string moduleName;
  std::string file;  // path as given, for diagnostics
  std::vector<ImportStmt> imports;
  std::vector<SurfaceDecl> decls;
};

namespace detail {

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string file)
      : toks_(std::move(toks)), file_(std::move(file)) {}

  ModuleFile module(const std::string& moduleName) {
    ModuleFile m;
    m.moduleName = moduleName;
    m.file = file_;
    while (peek().kind != Tok::Eof) {
      const Token& t = peek();
      if (t.kind == Tok::KwImport) {
        next();
        Token name = expect(Tok::Ident, "module name");
        m.imports.push_back({name.text, name.span});
      } else if (t.kind == Tok::KwDef || t.kind == Tok::KwAxiom) {
        bool isAxiom = t.kind == Tok::KwAxiom;
        next();
        Token name = expect(Tok::Ident, "declaration name");
        expect(Tok::Colon, "':'");
        SurfaceDecl d;
        d.name = name.text;
        d.isAxiom = isAxiom;
        d.span = name.span;
        d.type = term();
        if (!isAxiom) {
          expect(Tok::Assign, "':='");
          d.body = term();
        }
        m.decls.push_back(std::move(d));
      } else {
        fail(t.span, "expected 'def', 'axiom' or 'import', got " + describe(t));
      }
    }
    return m;
  }

  SurfacePtr term() {
    if (peek().kind == Tok::Lambda) {
      Token lam = next();
      Token name = expect(Tok::Ident, "binder name");
      expect(Tok::Dot, "'.'");
      SurfacePtr body = term();
      auto t = std::make_shared<SurfaceTerm>();
      t->kind = Sk::Lam;
      t->name = name.text;
      t->kids = {body};
      t->span = join(lam.span, body->span);
      return t;
    }
    return arrow();
  }

  void expect_eof() {
    const Token& t = peek();
    if (t.kind != Tok::Eof) fail(t.span, "expected end of input, got " + describe(t));
  }

 private:
  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t p = pos_ + ahead;
    if (p >= toks_.size()) p = toks_.size() - 1;
    return toks_[p];
  }
  Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  [[noreturn]] void fail(Span sp, const std::string& msg) {
    throw CheckError({file_, sp, msg});
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::Eof) return "end of input";
    return "'" + t.text + "'";
  }

  Token expect(Tok k, const std::string& what) {
    const Token& t = peek();
    if (t.kind != k) {
      if (t.kind == Tok::Eof)
        fail(t.span, "unterminated declaration: expected " + what + " before end of input");
      fail(t.span, "expected " + what + ", got " + describe(t));
    }
    return next();
  }

  static Span join(Span a, Span b) { return Span{a.begin, b.end}; }

  // Does a binder group `( ident : ... )` start here, and which operator
  // follows its closing paren? Returns Arrow, Star, or Eof for neither.
  Tok binder_op() const {
    if (peek().kind != Tok::LParen || peek(1).kind != Tok::Ident || peek(2).kind != Tok::Colon)
      return Tok::Eof;
    int depth = 0;
    for (std::size_t k = 0;; ++k) {
      const Token& t = peek(k);
      if (t.kind == Tok::Eof) return Tok::Eof;
      if (t.kind == Tok::LParen) ++depth;
      if (t.kind == Tok::RParen) {
        --depth;
        if (depth == 0) {
          Tok after = peek(k + 1).kind;
          return (after == Tok::Arrow || after == Tok::Star) ? after : Tok::Eof;
        }
      }
    }
  }

  // Consumes `( ident : type )`, already validated by binder_op.
  std::pair<Token, SurfacePtr> binder_group() {
    expect(Tok::LParen, "'('");
    Token name = expect(Tok::Ident, "binder name");
    expect(Tok::Colon, "':'");
    SurfacePtr ty = term();
    expect(Tok::RParen, "')'");
    return {name, ty};
  }

  SurfacePtr arrow() {
    if (binder_op() == Tok::Arrow) {
      auto [name, ty] = binder_group();
      expect(Tok::Arrow, "'->'");
      SurfacePtr cod = term();
      auto t = std::make_shared<SurfaceTerm>();
      t->kind = Sk::Pi;
      t->name = name.text;
      t->kids = {ty, cod};
      t->span = join(name.span, cod->span);
      return t;
    }
    SurfacePtr lhs = star();
    if (peek().kind == Tok::Arrow) {
      next();
      SurfacePtr cod = term();
      auto t = std::make_shared<SurfaceTerm>();
      t->kind = Sk::Pi;
      t->kids = {lhs, cod};
      t->span = join(lhs->span, cod->span);
      return t;
    }
    return lhs;
  }

  SurfacePtr star() {
    if (binder_op() == Tok::Star) {
      auto [name, ty] = binder_group();
      expect(Tok::Star, "'*'");
      SurfacePtr second = star();
      auto t = std::make_shared<SurfaceTerm>();
      t->kind = Sk::Sigma;
      t->name = name.text;
      t->kids = {ty, second};
      t->span = join(name.span, second->span);
      return t;
    }
    SurfacePtr lhs = app();
    if (peek().kind == Tok::Star) {
      next();
      SurfacePtr second = star();
      auto t = std::make_shared<SurfaceTerm>();
      t->kind = Sk::Sigma;
      t->kids = {lhs, second};
      t->span = join(lhs->span, second->span);
      return t;
    }
    return lhs;
  }

  bool starts_atom(Tok k) const {
    switch (k) {
      case Tok::LParen:
      case Tok::Ident:
      case Tok::Number:
      case Tok::KwU:
      case Tok::KwNat:
      case Tok::KwZero:
      case Tok::KwSuc:
      case Tok::KwNatElim:
      case Tok::KwUnit:
      case Tok::KwStar:
      case Tok::KwId:
      case Tok::KwRefl:
      case Tok::KwJ:
        return true;
      default:
        return false;
    }
  }

  SurfacePtr app() {
    SurfacePtr head = postfix();
    while (starts_atom(peek().kind)) {
      SurfacePtr arg = postfix();
      auto t = std::make_shared<SurfaceTerm>();
      t->kind = Sk::App;
      t->kids = {head, arg};
      t->span = join(head->span, arg->span);
      head = t;
    }
    return head;
  }

  SurfacePtr postfix() {
    SurfacePtr t = atom();
    while (peek().kind == Tok::Dot) {
      next();
      Token n = expect(Tok::Number, "'1' or '2'");
      if (n.text != "1" && n.text != "2") fail(n.span, "expected '1' or '2' after '.'");
      auto p = std::make_shared<SurfaceTerm>();
      p->kind = n.text == "1" ? Sk::Fst : Sk::Snd;
      p->kids = {t};
      p->span = join(t->span, n.span);
      t = p;
    }
    return t;
  }

  SurfacePtr leaf(Sk k, const Token& t) {
    auto s = std::make_shared<SurfaceTerm>();
    s->kind = k;
    s->span = t.span;
    return s;
  }

  SurfacePtr prim(PrimKind p, const Token& t) {
    auto s = std::make_shared<SurfaceTerm>();
    s->kind = Sk::Prim;
    s->prim = p;
    s->span = t.span;
    return s;
  }

  SurfacePtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        next();
        auto s = std::make_shared<SurfaceTerm>();
        s->kind = Sk::Name;
        s->name = t.text;
        s->span = t.span;
        return s;
      }
      case Tok::Number: {
        next();
        long n = 0;
        for (char c : t.text) {
          n = n * 10 + (c - '0');
          if (n > 9999) fail(t.span, "numeral too large");
        }
        auto s = std::make_shared<SurfaceTerm>();
        s->kind = Sk::Numeral;
        s->number = n;
        s->span = t.span;
        return s;
      }
      case Tok::KwU: next(); return leaf(Sk::Universe, t);
      case Tok::KwNat: next(); return leaf(Sk::NatType, t);
      case Tok::KwUnit: next(); return leaf(Sk::UnitType, t);
      case Tok::KwZero: next(); return leaf(Sk::ZeroLit, t);
      case Tok::KwStar: next(); return leaf(Sk::StarLit, t);
      case Tok::KwSuc: next(); return prim(PrimKind::Suc, t);
      case Tok::KwRefl: next(); return prim(PrimKind::Refl, t);
      case Tok::KwId: next(); return prim(PrimKind::Id, t);
      case Tok::KwJ: next(); return prim(PrimKind::J, t);
      case Tok::KwNatElim: next(); return prim(PrimKind::NatElim, t);
      case Tok::LParen: {
        Token open = next();
        SurfacePtr inner = term();
        if (peek().kind == Tok::Comma) {
          next();
          SurfacePtr second = term();
          Token close = expect(Tok::RParen, "')'");
          auto s = std::make_shared<SurfaceTerm>();
          s->kind = Sk::Pair;
          s->kids = {inner, second};
          s->span = join(open.span, close.span);
          return s;
        }
        if (peek().kind == Tok::Colon) {
          next();
          SurfacePtr ty = term();
          Token close = expect(Tok::RParen, "')'");
          auto s = std::make_shared<SurfaceTerm>();
          s->kind = Sk::Ann;
          s->kids = {inner, ty};
          s->span = join(open.span, close.span);
          return s;
        }
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        if (t.kind == Tok::Eof)
          fail(t.span, "unterminated declaration: expected a term before end of input");
        fail(t.span, "expected a term, got " + describe(t));
    }
  }
};

}  // namespace detail

// Parses one file's source into a ModuleFile. The module name is the file
// stem and must be supplied by the caller (the driver derives it).
inline ModuleFile parse_module(const std::string& src, const std::string& file,
                               const std::string& moduleName) {
  detail::Parser p(lex(src, file), file);
  return p.module(moduleName);
}

// Parses a standalone expression (the CLI normalize command).
inline SurfacePtr parse_expr(const std::string& src, const std::string& file) {
  detail::Parser p(lex(src, file), file);
  SurfacePtr t = p.term();
  p.expect_eof();
  return t;
}

}  // namespace notears
