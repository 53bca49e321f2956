#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "notears/convert.hpp"
#include "notears/driver.hpp"
#include "notears/eval.hpp"
#include "notears/parse.hpp"
#include "notears/pretty.hpp"
#include "notears/resolve.hpp"
#include "notears/typecheck.hpp"

// Library corpus checks: every shipped module loads, its declarations
// round-trip through the printer, normalize idempotently, check again in
// normal form, and carry exactly the postulates they are supposed to.

using namespace notears;

namespace {

std::string stdlib_dir() {
  return (std::filesystem::path(NOTEARS_SOURCE_DIR) / "stdlib").string();
}

const std::vector<std::string>& module_names() {
  static const std::vector<std::string> names = {
      "Prelude",     "PathOps",        "Equiv",       "EquivInverse",
      "HLevels",     "Singleton",      "SigmaAssoc",  "SigmaFiberwise",
      "ThreeForTwo", "SigmaReindex",   "Connectedness", "Suspension",
      "SuspConn",    "Examples"};
  return names;
}

// Loads one module (plus its imports) from the shipped library.
GlobalEnv load_stdlib(const std::string& name) {
  DriverConfig cfg;
  cfg.searchPaths = {stdlib_dir()};
  CheckRun run = load_module(name, cfg);
  if (run.exitCode != 0 || !run.rootEnv.has_value()) {
    std::string what = "stdlib module '" + name + "' failed to check";
    for (const auto& d : run.diagnostics) what += "\n  " + render(d);
    throw std::runtime_error(what);
  }
  return *run.rootEnv;
}

TermPtr resolve_in(const GlobalEnv& env, const std::string& expr) {
  SurfacePtr s = parse_expr(expr, "<expr>");
  return resolve_term(s, env.names(), "<expr>");
}

TEST_CASE("every stdlib module checks") {
  for (const auto& name : module_names()) {
    INFO("module " << name);
    CHECK_NOTHROW(load_stdlib(name));
  }
}

TEST_CASE("stdlib manifest inventories every declaration") {
  std::ifstream in(std::filesystem::path(stdlib_dir()) / "MANIFEST");
  REQUIRE(in.good());

  std::map<std::string, std::vector<std::pair<std::string, bool>>> listed;
  std::set<std::string> census;
  std::string line, current;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "module") {
      ls >> current;
    } else if (word == "def" || word == "axiom") {
      std::string name;
      ls >> name;
      listed[current].push_back({name, word == "axiom"});
    } else if (word == "axioms") {
      std::string name;
      while (ls >> name) census.insert(name);
    }
  }
  REQUIRE(listed.size() == module_names().size());

  std::set<std::string> axiomsSeen;
  for (const auto& name : module_names()) {
    GlobalEnv env = load_stdlib(name);
    std::string file =
        (std::filesystem::path(stdlib_dir()) / (name + ".hott")).string();
    // The module's own entries must match the manifest, in order.
    std::vector<std::pair<std::string, bool>> own;
    for (const auto& e : env.entries())
      if (std::filesystem::path(e->file).filename() ==
          std::filesystem::path(file).filename())
        own.push_back({e->name, e->isAxiom});
    INFO("module " << name);
    CHECK(own == listed[name]);
    for (const auto& [decl, isAxiom] : own)
      if (isAxiom) axiomsSeen.insert(decl);
  }
  CHECK(axiomsSeen == census);
}

TEST_CASE("stdlib declarations round-trip through the printer") {
  // Printing an elaborated type or body and reparsing it must give the same
  // term back; this keeps the concrete syntax in lockstep with the core.
  for (const auto& name : module_names()) {
    GlobalEnv env = load_stdlib(name);
    for (const auto& e : env.entries()) {
      INFO("module " << name << ", declaration " << e->name);
      TermPtr type2 = resolve_in(env, pretty(e->type));
      CHECK(alpha_eq(type2, e->type));
      if (e->body) {
        TermPtr body2 = resolve_in(env, pretty(e->body));
        CHECK(alpha_eq(body2, e->body));
      }
    }
  }
}

TEST_CASE("normalization is idempotent across the stdlib") {
  for (const auto& name : module_names()) {
    GlobalEnv env = load_stdlib(name);
    for (const auto& e : env.entries()) {
      INFO("module " << name << ", declaration " << e->name);
      TermPtr ty1 = normalize(e->type, env.map());
      CHECK(alpha_eq(normalize(ty1, env.map()), ty1));
      if (e->body) {
        TermPtr nf1 = normalize(e->body, env.map());
        CHECK(alpha_eq(normalize(nf1, env.map()), nf1));
      }
    }
  }
}

TEST_CASE("conversion is reflexive on stdlib type values") {
  for (const auto& name : module_names()) {
    GlobalEnv env = load_stdlib(name);
    for (const auto& e : env.entries()) {
      INFO("module " << name << ", declaration " << e->name);
      CHECK(convertible(0, vUniverse(), e->typeValue, e->typeValue));
    }
  }
}

TEST_CASE("normal forms of stdlib bodies still check") {
  // Full beta-delta normal forms are large, so sample the shallow modules
  // plus the headline theorem rather than every composite.
  const std::vector<std::string> sampled = {"Prelude", "PathOps", "Equiv",
                                            "HLevels", "Singleton",
                                            "Connectedness"};
  for (const auto& name : sampled) {
    GlobalEnv env = load_stdlib(name);
    Checker ck(env, "<nf>");
    for (const auto& e : env.entries()) {
      if (!e->body) continue;
      INFO("module " << name << ", declaration " << e->name);
      TypingContext ctx;
      CHECK_NOTHROW(ck.check(ctx, normalize(e->body, env.map()), e->typeValue));
    }
  }
}

TEST_CASE("headline lemmas carry exactly the suspension postulates") {
  GlobalEnv env = load_stdlib("Examples");
  const std::set<std::string> suspension = {"Susp", "merid", "north", "south",
                                            "suspUpIsEquiv"};
  CHECK(env.axiom_closure("suspConn") == suspension);
  CHECK(env.axiom_closure("suspUnitConn") == suspension);
  CHECK(env.axiom_closure("suspUp") ==
        std::set<std::string>{"Susp", "merid", "north", "south"});
  CHECK(env.axiom_closure("threeForTwo").empty());
  CHECK(env.axiom_closure("singlContr").empty());
  CHECK(env.axiom_closure("unitConn").empty());
  CHECK(env.axiom_closure("isConn").empty());

  GlobalEnv assoc = load_stdlib("SigmaAssoc");
  CHECK(assoc.axiom_closure("sigmaAssoc").empty());

  GlobalEnv reindex = load_stdlib("SigmaReindex");
  CHECK(reindex.axiom_closure("reindexEquiv").empty());
}

TEST_CASE("suspConn checks at its stated connectivity type") {
  GlobalEnv env = load_stdlib("Examples");
  Checker ck(env, "<t>");
  TypingContext ctx;
  ValuePtr ty = evaluate(
      {}, resolve_in(env, "(n : Nat) -> (A : U) -> isConn n A -> isConn (suc n) (Susp A)"),
      env.map());
  CHECK_NOTHROW(ck.check(ctx, resolve_in(env, "suspConn"), ty));
}

TEST_CASE("the two triangles are literal reflexivity witnesses") {
  GlobalEnv env = load_stdlib("SuspConn");

  const EntryPtr* consts = env.find("constsTriangle");
  REQUIRE(consts != nullptr);
  CHECK(alpha_eq(
      (*consts)->type,
      resolve_in(env,
                 "(A : U) -> (B : U) -> (b : B) -> "
                 "Id B b (evalNorth A B (constsMap B (Susp A) b))")));
  CHECK(alpha_eq((*consts)->body, resolve_in(env, "\\A. \\B. \\b. refl b")));

  const EntryPtr* comp = env.find("compTriangle");
  REQUIRE(comp != nullptr);
  CHECK(alpha_eq(
      (*comp)->type,
      resolve_in(env,
                 "(n : Nat) -> (A : U) -> (cA : isConn n A) -> (B : U) -> "
                 "(hB : isHLevel (suc n) B) -> (g : Susp A -> B) -> "
                 "Id B (evalNorth A B g) (suspPipeline n A cA B hB g)")));
  CHECK(alpha_eq((*comp)->body,
                 resolve_in(env, "\\n. \\A. \\cA. \\B. \\hB. \\g. refl (g (north A))")));
}

}  // namespace
