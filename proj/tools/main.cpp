#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "notears/driver.hpp"
#include "notears/eval.hpp"
#include "notears/parse.hpp"
#include "notears/pretty.hpp"
#include "notears/resolve.hpp"
#include "notears/typecheck.hpp"

namespace {

void emit(const notears::CheckRun& run) {
  for (const notears::Diagnostic& d : run.diagnostics)
    std::cerr << notears::render(d) << "\n";
}

std::vector<std::string> split_path_list(const char* raw) {
  std::vector<std::string> out;
  if (!raw) return out;
  std::string s(raw);
  size_t start = 0;
  while (start <= s.size()) {
    size_t colon = s.find(':', start);
    if (colon == std::string::npos) colon = s.size();
    if (colon > start) out.push_back(s.substr(start, colon - start));
    start = colon + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace notears;

  CLI::App app{"notears: a small proof checker for dependent types"};
  app.require_subcommand(1);

  std::vector<std::string> pathDirs;
  unsigned long long fuelVal = 0;
  int jobs = 1;
  CLI::Option* fuelOpt =
      app.add_option("--fuel", fuelVal, "evaluation step budget per declaration");
  app.add_option("--path", pathDirs, "module search directory (repeatable)")
      ->allow_extra_args(false);
  app.add_option("--jobs", jobs, "check independent modules in parallel")
      ->check(CLI::PositiveNumber);

  auto* cmdCheck = app.add_subcommand("check", "type-check files and their imports");
  std::vector<std::string> files;
  cmdCheck->add_option("files", files, "source files")->required()->take_all();
  cmdCheck->fallthrough();

  auto* cmdNorm =
      app.add_subcommand("normalize", "print the normal form and type of an expression");
  std::string normModule, normExpr;
  cmdNorm->add_option("-m,--module", normModule, "module whose scope the expression uses")
      ->required();
  cmdNorm->add_option("expr", normExpr, "expression to normalize")->required();
  cmdNorm->fallthrough();

  auto* cmdAxioms =
      app.add_subcommand("axioms", "list the axioms a declaration depends on");
  std::string axModule, axName;
  cmdAxioms->add_option("-m,--module", axModule, "module that declares the name")
      ->required();
  cmdAxioms->add_option("name", axName, "declaration to audit")->required();
  cmdAxioms->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  DriverConfig cfg;
  if (!pathDirs.empty())
    cfg.searchPaths = pathDirs;
  else
    cfg.searchPaths = split_path_list(std::getenv("NOTEARS_PATH"));
  if (fuelOpt->count() > 0) cfg.fuel = fuelVal;
  cfg.jobs = jobs;

  if (cmdCheck->parsed()) {
    CheckRun run = check_files(files, cfg);
    emit(run);
    if (run.exitCode == 0)
      std::cout << "checked " << run.declCount << " declarations in " << run.fileCount
                << " files\n";
    return run.exitCode;
  }

  if (cmdNorm->parsed()) {
    CheckRun run = load_module(normModule, cfg);
    emit(run);
    if (run.exitCode != 0) return run.exitCode;
    std::optional<Fuel::Guard> guard;
    if (cfg.fuel) guard.emplace(true, *cfg.fuel);
    try {
      SurfacePtr surface = parse_expr(normExpr, "<expr>");
      TermPtr core = resolve_term(surface, run.rootEnv->names(), "<expr>");
      Checker checker(*run.rootEnv, "<expr>");
      TypingContext ctx;
      Inferred inf = checker.infer(ctx, core);
      TermPtr nf = normalize(inf.term, run.rootEnv->map());
      TermPtr ty = readback(0, inf.type);
      std::cout << pretty(nf) << " : " << pretty(ty) << "\n";
      return 0;
    } catch (const CheckError& e) {
      std::cerr << render(e.diag) << "\n";
      return 1;
    } catch (const FuelExhausted&) {
      std::cerr << "<expr>:1:1: error: fuel exhausted while normalizing\n";
      return 1;
    }
  }

  if (cmdAxioms->parsed()) {
    CheckRun run = load_module(axModule, cfg);
    emit(run);
    if (run.exitCode != 0) return run.exitCode;
    if (!run.rootEnv->find(axName)) {
      std::cerr << "error: unknown declaration '" << axName << "' in module '"
                << axModule << "'\n";
      return 1;
    }
    for (const std::string& a : run.rootEnv->axiom_closure(axName))
      std::cout << a << "\n";
    return 0;
  }

  return 2;
}
