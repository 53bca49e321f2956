#pragma once

#include <algorithm>
#include <atomic>
#include <cassert>
#include <filesystem>
#include <functional>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "notears/diagnostics.hpp"
#include "notears/env.hpp"
#include "notears/parse.hpp"
#include "notears/resolve.hpp"
#include "notears/typecheck.hpp"

namespace notears {

struct DriverConfig {
  std::vector<std::string> searchPaths;          // ordered module search directories
  std::optional<unsigned long long> fuel;        // per-declaration step budget
  int jobs = 1;
};

struct CheckRun {
  int exitCode = 0;
  std::vector<Diagnostic> diagnostics;  // deterministic order
  int declCount = 0;
  int fileCount = 0;
  std::optional<GlobalEnv> rootEnv;  // scope of the first root module, if it checked
};

namespace detail {

namespace fs = std::filesystem;

// A module resolves names against its transitive imports only, never against
// unrelated modules that happen to check earlier. This keeps results
// independent of scheduling, so --jobs cannot change observable behavior.
struct ModuleNode {
  std::string name;
  fs::path canonical;
  std::string display;  // path used in diagnostics, as first reached
  ModuleFile parsed;
  bool parseOk = false;
  std::vector<size_t> imports;  // node indices

  enum class State { Pending, Ok, Failed, Skipped };
  State state = State::Pending;
  std::vector<EntryPtr> entries;  // own declarations, in order
  GlobalEnv scopedEnv;
  std::vector<Diagnostic> diags;
};

struct LoadOutcome {
  std::vector<ModuleNode> nodes;  // discovery order: roots first, then imports
  std::vector<Diagnostic> ioErrors;
};

inline std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline LoadOutcome load_graph(const std::vector<std::string>& rootFiles,
                              const DriverConfig& cfg) {
  LoadOutcome out;
  std::map<std::string, size_t> byCanonical;

  auto add_file = [&](const fs::path& given, Diagnostic missing) -> std::optional<size_t> {
    std::error_code ec;
    if (!fs::exists(given, ec) || ec) {
      out.ioErrors.push_back(std::move(missing));
      return std::nullopt;
    }
    fs::path canon = fs::weakly_canonical(given, ec);
    if (ec) canon = fs::absolute(given);
    auto it = byCanonical.find(canon.string());
    if (it != byCanonical.end()) return it->second;

    ModuleNode n;
    n.name = given.stem().string();
    n.canonical = canon;
    n.display = given.string();
    auto src = read_file(given);
    if (!src) {
      missing.message = "cannot read file '" + given.string() + "'";
      out.ioErrors.push_back(std::move(missing));
      return std::nullopt;
    }
    try {
      n.parsed = parse_module(*src, n.display, n.name);
      n.parseOk = true;
    } catch (const CheckError& e) {
      n.diags.push_back(e.diag);
      n.state = ModuleNode::State::Failed;
    }
    size_t idx = out.nodes.size();
    byCanonical.emplace(canon.string(), idx);
    out.nodes.push_back(std::move(n));
    return idx;
  };

  for (const std::string& f : rootFiles) {
    Diagnostic d;
    d.file = f;
    d.message = "cannot open file '" + f + "'";
    add_file(fs::path(f), d);
  }

  // Imports resolve against the importing file's directory first, then the
  // configured search paths, in order.
  for (size_t i = 0; i < out.nodes.size(); ++i) {
    if (!out.nodes[i].parseOk) continue;
    const std::vector<ImportStmt> imports = out.nodes[i].parsed.imports;
    const fs::path fromDir = fs::path(out.nodes[i].display).parent_path();
    const std::string importerDisplay = out.nodes[i].display;
    for (const ImportStmt& imp : imports) {
      std::vector<fs::path> candidates;
      candidates.push_back(fromDir / (imp.module + ".hott"));
      for (const std::string& dir : cfg.searchPaths)
        candidates.push_back(fs::path(dir) / (imp.module + ".hott"));
      std::optional<size_t> found;
      for (const fs::path& cand : candidates) {
        std::error_code ec;
        if (!fs::exists(cand, ec) || ec) continue;
        Diagnostic unused;
        found = add_file(cand.lexically_normal(), unused);
        break;
      }
      if (!found) {
        Diagnostic d;
        d.file = importerDisplay;
        d.span = imp.span;
        d.message = "cannot find module '" + imp.module + "'";
        out.ioErrors.push_back(std::move(d));
        continue;
      }
      out.nodes[i].imports.push_back(*found);
    }
  }

  // Reject import cycles outright.
  enum class Color { White, Gray, Black };
  std::vector<Color> color(out.nodes.size(), Color::White);
  std::vector<size_t> stack;
  std::function<bool(size_t)> dfs = [&](size_t i) -> bool {
    color[i] = Color::Gray;
    stack.push_back(i);
    for (size_t dep : out.nodes[i].imports) {
      if (color[dep] == Color::Gray) {
        std::string chain;
        auto at = std::find(stack.begin(), stack.end(), dep);
        for (auto it = at; it != stack.end(); ++it)
          chain += out.nodes[*it].name + " -> ";
        chain += out.nodes[dep].name;
        Diagnostic d;
        d.file = out.nodes[i].display;
        for (const ImportStmt& imp : out.nodes[i].parsed.imports)
          if (imp.module == out.nodes[dep].name) d.span = imp.span;
        d.message = "import cycle: " + chain;
        out.ioErrors.push_back(std::move(d));
        return false;
      }
      if (color[dep] == Color::White && !dfs(dep)) return false;
    }
    stack.pop_back();
    color[i] = Color::Black;
    return true;
  };
  for (size_t i = 0; i < out.nodes.size(); ++i)
    if (color[i] == Color::White && !dfs(i)) break;

  return out;
}

inline std::vector<size_t> transitive_imports(size_t root,
                                              const std::vector<ModuleNode>& nodes) {
  std::set<size_t> seen;
  std::vector<size_t> work(nodes[root].imports.begin(), nodes[root].imports.end());
  while (!work.empty()) {
    size_t i = work.back();
    work.pop_back();
    if (!seen.insert(i).second) continue;
    for (size_t dep : nodes[i].imports) work.push_back(dep);
  }
  return std::vector<size_t>(seen.begin(), seen.end());  // ascending: deterministic
}

inline void check_node(ModuleNode& n, const std::vector<ModuleNode>& all,
                       const DriverConfig& cfg, const std::vector<size_t>& deps) {
  GlobalEnv env;
  for (size_t idx : deps) {
    for (const EntryPtr& e : all[idx].entries) {
      if (const EntryPtr* prev = env.find(e->name)) {
        if (prev->get() != e.get()) {
          Diagnostic d;
          d.file = n.display;
          d.message = "name '" + e->name + "' is defined in both " + (*prev)->file +
                      " and " + e->file;
          n.diags.push_back(std::move(d));
          n.state = ModuleNode::State::Failed;
          return;
        }
        continue;
      }
      env = env.extended(e);
    }
  }

  std::set<std::string> known = env.names();
  for (const SurfaceDecl& sd : n.parsed.decls) {
    std::optional<Fuel::Guard> guard;
    if (cfg.fuel) guard.emplace(true, *cfg.fuel);
    try {
      Declaration d = resolve_decl(sd, known, n.display);
      EntryPtr e = check_declaration(env, d, n.display);
      env = env.extended(e);
      known.insert(e->name);
      n.entries.push_back(std::move(e));
    } catch (const CheckError& err) {
      n.diags.push_back(err.diag);
      n.state = ModuleNode::State::Failed;
      return;  // first error ends the file; other files still check
    } catch (const FuelExhausted&) {
      Diagnostic d;
      d.file = n.display;
      d.span = sd.span;
      d.message = "fuel exhausted while checking '" + sd.name + "'";
      n.diags.push_back(std::move(d));
      n.state = ModuleNode::State::Failed;
      return;
    }
  }
  n.scopedEnv = env;
  n.state = ModuleNode::State::Ok;
}

inline CheckRun run_check(std::vector<ModuleNode>& nodes, const DriverConfig& cfg) {
  size_t pending = 0;
  for (const ModuleNode& n : nodes)
    if (n.state == ModuleNode::State::Pending) ++pending;

  while (pending > 0) {
    std::vector<size_t> ready;
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].state != ModuleNode::State::Pending) continue;
      bool depsDone = true;
      for (size_t dep : nodes[i].imports)
        if (nodes[dep].state == ModuleNode::State::Pending) depsDone = false;
      if (depsDone) ready.push_back(i);
    }
    if (ready.empty()) throw std::logic_error("run_check: stuck on a cyclic graph");

    std::vector<size_t> toCheck;
    for (size_t i : ready) {
      bool importFailed = false;
      for (size_t dep : nodes[i].imports)
        if (nodes[dep].state != ModuleNode::State::Ok) importFailed = true;
      if (importFailed) {
        nodes[i].state = ModuleNode::State::Skipped;  // root cause already reported
        --pending;
      } else {
        toCheck.push_back(i);
      }
    }

    if (!toCheck.empty()) {
      const int jobs = std::max(1, cfg.jobs);
      std::atomic<size_t> next{0};
      auto worker = [&]() {
        for (;;) {
          size_t k = next.fetch_add(1);
          if (k >= toCheck.size()) break;
          size_t i = toCheck[k];
          check_node(nodes[i], nodes, cfg, transitive_imports(i, nodes));
        }
      };
      if (jobs == 1 || toCheck.size() == 1) {
        worker();
      } else {
        std::vector<std::thread> pool;
        const size_t width = std::min<size_t>(jobs, toCheck.size());
        for (size_t t = 0; t < width; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
      }
      pending -= toCheck.size();
    }
  }

  CheckRun run;
  bool anyBad = false;
  for (const ModuleNode& n : nodes) {
    for (const Diagnostic& d : n.diags) run.diagnostics.push_back(d);
    if (n.state == ModuleNode::State::Ok) {
      run.declCount += static_cast<int>(n.entries.size());
      run.fileCount += 1;
    } else {
      anyBad = true;
    }
  }
  run.exitCode = anyBad ? 1 : 0;
  if (!nodes.empty() && nodes[0].state == ModuleNode::State::Ok)
    run.rootEnv = nodes[0].scopedEnv;
  return run;
}

}  // namespace detail

// Check the given files plus everything they import. Diagnostics come back in
// discovery order regardless of --jobs.
inline CheckRun check_files(const std::vector<std::string>& files, const DriverConfig& cfg) {
  detail::LoadOutcome load = detail::load_graph(files, cfg);
  if (!load.ioErrors.empty()) {
    CheckRun run;
    run.exitCode = 2;
    run.diagnostics = std::move(load.ioErrors);
    return run;
  }
  return detail::run_check(load.nodes, cfg);
}

// Locate MOD.hott on the search paths (falling back to the current directory)
// and check it. Used by the expression-level commands.
inline CheckRun load_module(const std::string& moduleName, const DriverConfig& cfg) {
  namespace fs = std::filesystem;
  std::vector<std::string> dirs = cfg.searchPaths;
  dirs.push_back(".");
  for (const std::string& dir : dirs) {
    fs::path cand = fs::path(dir) / (moduleName + ".hott");
    std::error_code ec;
    if (fs::exists(cand, ec) && !ec)
      return check_files({cand.lexically_normal().string()}, cfg);
  }
  CheckRun run;
  run.exitCode = 2;
  Diagnostic d;
  d.file = moduleName;
  d.message = "cannot find module '" + moduleName + "'";
  run.diagnostics.push_back(std::move(d));
  return run;
}

}  // namespace notears
