#pragma once

// Shared fixtures for the kernel tests: build a checked global environment
// from an inline module source, resolve expressions against it, and
// normalize with both the kernel and the oracle reducer.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "notears/env.hpp"
#include "notears/eval.hpp"
#include "notears/parse.hpp"
#include "notears/resolve.hpp"
#include "notears/typecheck.hpp"
#include "oracle_reduce.hpp"

namespace testkit {

using namespace notears;

struct Lib {
  GlobalEnv env;
  std::map<std::string, TermPtr> defs;  // oracle's view: name -> elaborated body
};

// Parses, resolves and typechecks a module source; throws CheckError on any
// failure so a broken fixture fails the test loudly.
inline Lib make_lib(const std::string& src) {
  ModuleFile m = parse_module(src, "<lib>", "Lib");
  Lib lib;
  std::set<std::string> known;
  for (const auto& sd : m.decls) {
    Declaration d = resolve_decl(sd, known, "<lib>");
    EntryPtr e = check_declaration(lib.env, d, "<lib>");
    lib.env = lib.env.extended(e);
    known.insert(e->name);
    if (e->body) lib.defs[e->name] = e->body;
  }
  return lib;
}

// Parse + resolve an expression against the lib's names. Not typechecked.
inline TermPtr parse_core(const Lib& lib, const std::string& expr) {
  SurfacePtr s = parse_expr(expr, "<expr>");
  return resolve_term(s, lib.env.names(), "<expr>");
}

inline TermPtr knf(const Lib& lib, const TermPtr& t) {
  return normalize(t, lib.env.map());
}

inline TermPtr onf(const Lib& lib, const TermPtr& t) {
  return oracle::onormalize(t, lib.defs);
}

// Kernel and oracle normal forms of the same closed term; tests assert the
// two agree before trusting either.
struct NfPair {
  TermPtr kernel;
  TermPtr oracle;
  bool agree() const { return alpha_eq(kernel, oracle); }
};

inline NfPair nf_pair(const Lib& lib, const std::string& expr) {
  TermPtr t = parse_core(lib, expr);
  return {knf(lib, t), onf(lib, t)};
}

inline NfPair nf_pair(const Lib& lib, const TermPtr& t) {
  return {knf(lib, t), onf(lib, t)};
}

}  // namespace testkit
