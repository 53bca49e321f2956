#pragma once

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "notears/syntax.hpp"

namespace notears {

inline const std::set<std::string>& reserved_words() {
  static const std::set<std::string> kw = {
      "def", "axiom", "import", "U",    "Nat",  "zero", "suc",
      "natElim", "Unit", "star", "Id", "refl", "J",
  };
  return kw;
}

namespace detail {

// Precedence levels, loosest to tightest.
constexpr int kLam = 0;
constexpr int kArrow = 1;
constexpr int kStar = 2;
constexpr int kApp = 3;
constexpr int kAtom = 4;

inline void collect_const_names(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind == Tm::Const) out.insert(t->name);
  for (const auto& k : t->kids) collect_const_names(k, out);
}

inline std::string sanitize_hint(const std::string& h) {
  std::string s;
  for (char c : h)
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') s.push_back(c);
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '\'') return "x";
  return s;
}

struct Printer {
  std::vector<std::string> scope;   // binder names, outermost first
  std::set<std::string> avoid;      // constants + keywords

  bool taken(const std::string& n) const {
    if (avoid.count(n)) return true;
    return std::find(scope.begin(), scope.end(), n) != scope.end();
  }

  std::string freshen(const std::string& hint) {
    std::string base = sanitize_hint(hint);
    if (!taken(base)) return base;
    for (int i = 1;; ++i) {
      std::string cand = base + std::to_string(i);
      if (!taken(cand)) return cand;
    }
  }

  std::string var_name(int index) const {
    int pos = static_cast<int>(scope.size()) - 1 - index;
    if (pos < 0) return "#" + std::to_string(index);  // unscoped: debugging only
    return scope[static_cast<std::size_t>(pos)];
  }

  // Returns the numeral value of a zero-terminated Suc chain, or -1.
  static long numeral_of(const TermPtr& t) {
    long n = 0;
    const Term* cur = t.get();
    while (cur->kind == Tm::Suc) {
      ++n;
      cur = cur->kids[0].get();
    }
    return cur->kind == Tm::Zero ? n : -1;
  }

  void print(std::ostringstream& os, const TermPtr& t, int prec) {
    switch (t->kind) {
      case Tm::Var:
        os << var_name(t->index);
        return;
      case Tm::Const:
        os << t->name;
        return;
      case Tm::Universe:
        os << "U";
        return;
      case Tm::Nat:
        os << "Nat";
        return;
      case Tm::Unit:
        os << "Unit";
        return;
      case Tm::Zero:
        os << "0";
        return;
      case Tm::Star:
        os << "star";
        return;
      case Tm::Lam: {
        bool paren = prec > kLam;
        if (paren) os << '(';
        std::string n = freshen(t->name);
        os << '\\' << n << ". ";
        scope.push_back(n);
        print(os, t->kids[0], kLam);
        scope.pop_back();
        if (paren) os << ')';
        return;
      }
      case Tm::Pi:
      case Tm::Sigma: {
        bool isPi = t->kind == Tm::Pi;
        int level = isPi ? kArrow : kStar;
        const char* op = isPi ? " -> " : " * ";
        bool paren = prec > level;
        if (paren) os << '(';
        if (t->name.empty() && !uses_var(t->kids[1])) {
          // Non-dependent: print with the operator form.
          print(os, t->kids[0], level + 1);
          os << op;
          scope.push_back("");  // placeholder keeps indices aligned
          print(os, t->kids[1], level);
          scope.pop_back();
        } else {
          std::string n = freshen(t->name);
          os << '(' << n << " : ";
          print(os, t->kids[0], kLam);
          os << ')' << op;
          scope.push_back(n);
          print(os, t->kids[1], level);
          scope.pop_back();
        }
        if (paren) os << ')';
        return;
      }
      case Tm::App: {
        bool paren = prec > kApp;
        if (paren) os << '(';
        print(os, t->kids[0], kApp);
        os << ' ';
        print(os, t->kids[1], kAtom);
        if (paren) os << ')';
        return;
      }
      case Tm::Pair: {
        os << '(';
        print(os, t->kids[0], kLam);
        os << " , ";
        print(os, t->kids[1], kLam);
        os << ')';
        return;
      }
      case Tm::Fst:
      case Tm::Snd: {
        print(os, t->kids[0], kAtom);
        os << (t->kind == Tm::Fst ? ".1" : ".2");
        return;
      }
      case Tm::Suc: {
        long n = numeral_of(t);
        if (n >= 0) {
          os << n;
          return;
        }
        bool paren = prec > kApp;
        if (paren) os << '(';
        os << "suc ";
        print(os, t->kids[0], kAtom);
        if (paren) os << ')';
        return;
      }
      case Tm::Refl: {
        bool paren = prec > kApp;
        if (paren) os << '(';
        os << "refl ";
        print(os, t->kids[0], kAtom);
        if (paren) os << ')';
        return;
      }
      case Tm::Id:
      case Tm::NatElim:
      case Tm::J: {
        bool paren = prec > kApp;
        if (paren) os << '(';
        os << (t->kind == Tm::Id ? "Id" : t->kind == Tm::NatElim ? "natElim" : "J");
        for (const auto& k : t->kids) {
          os << ' ';
          print(os, k, kAtom);
        }
        if (paren) os << ')';
        return;
      }
      case Tm::Ann: {
        os << '(';
        print(os, t->kids[0], kLam);
        os << " : ";
        print(os, t->kids[1], kLam);
        os << ')';
        return;
      }
    }
  }
};

}  // namespace detail

// Deterministic printer. Output reparses to an alpha-equivalent term given
// the same context names. `ctx` lists binder names outermost-first.
inline std::string pretty(const TermPtr& t, const std::vector<std::string>& ctx = {}) {
  detail::Printer p;
  p.scope = ctx;
  p.avoid = reserved_words();
  detail::collect_const_names(t, p.avoid);
  std::ostringstream os;
  p.print(os, t, detail::kLam);
  return os.str();
}

}  // namespace notears
