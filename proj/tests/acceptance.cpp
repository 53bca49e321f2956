// Acceptance harness: drives the installed CLI end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.
//
// usage: acceptance <cli-binary> <source-dir> <unit-tests-binary>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exitCode = -1;
  std::string out;
  std::string err;
  double seconds = 0.0;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

fs::path scratch_root() {
  static fs::path root = [] {
    fs::path p = fs::temp_directory_path() /
                 ("notears_accept_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return root;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

RunResult run(const std::string& cmd) {
  static int counter = 0;
  fs::path outP = scratch_root() / ("out" + std::to_string(counter));
  fs::path errP = scratch_root() / ("err" + std::to_string(counter));
  ++counter;
  std::string full = cmd + " > " + quoted(outP.string()) + " 2> " + quoted(errP.string());
  auto start = std::chrono::steady_clock::now();
  int status = std::system(full.c_str());
  auto stop = std::chrono::steady_clock::now();
  RunResult r;
  r.seconds = std::chrono::duration<double>(stop - start).count();
  r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(outP);
  r.err = slurp(errP);
  return r;
}

struct Manifest {
  std::vector<std::string> modules;
  std::map<std::string, std::vector<std::pair<std::string, bool>>> decls;
  std::set<std::string> census;  // expected axioms across the library
};

Manifest read_manifest(const fs::path& stdlibDir) {
  Manifest m;
  std::ifstream in(stdlibDir / "MANIFEST");
  std::string line, current;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "module") {
      ls >> current;
      m.modules.push_back(current);
    } else if (word == "def" || word == "axiom") {
      std::string name;
      ls >> name;
      m.decls[current].push_back({name, word == "axiom"});
    } else if (word == "axioms") {
      std::string name;
      while (ls >> name) m.census.insert(name);
    }
  }
  return m;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

int failures = 0;

void report(int criterion, bool ok, const std::string& what,
            const std::string& detail = "") {
  if (ok) {
    std::cout << "PASS " << criterion << ": " << what << "\n";
  } else {
    ++failures;
    std::cout << "FAIL " << criterion << ": " << what
              << (detail.empty() ? "" : " (" + detail + ")") << "\n";
  }
}

// A scratch module that imports from the library and must typecheck.
bool witness_checks(const std::string& cli, const fs::path& stdlibDir,
                    const std::string& stem, const std::string& source,
                    std::string& detail) {
  fs::path dir = scratch_root() / "witness";
  fs::create_directories(dir);
  fs::path file = dir / (stem + ".hott");
  spit(file, source);
  RunResult r = run(quoted(cli) + " check --path " + quoted(stdlibDir.string()) +
                    " " + quoted(file.string()));
  if (r.exitCode != 0) {
    detail = "exit " + std::to_string(r.exitCode) + ": " + r.err;
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance <cli-binary> <source-dir> <unit-tests-binary>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path sourceDir = argv[2];
  const std::string unitTests = argv[3];
  const fs::path stdlibDir = sourceDir / "stdlib";
  const fs::path negDir = sourceDir / "tests" / "neg";

  Manifest manifest = read_manifest(stdlibDir);
  std::size_t declCount = 0;
  for (const auto& [mod, ds] : manifest.decls) declCount += ds.size();

  std::string stdlibArgs;
  for (const auto& mod : manifest.modules)
    stdlibArgs += " " + quoted((stdlibDir / (mod + ".hott")).string());

  // 1. The whole library typechecks from a cold start, quickly.
  {
    RunResult r = run(quoted(cli) + " check" + stdlibArgs);
    std::string expected = "checked " + std::to_string(declCount) +
                           " declarations in " +
                           std::to_string(manifest.modules.size()) + " files\n";
    bool ok = r.exitCode == 0 && r.out == expected && r.err.empty() &&
              r.seconds < 10.0;
    std::ostringstream what;
    what << "stdlib checks: " << declCount << " declarations in "
         << manifest.modules.size() << " files, "
         << static_cast<int>(r.seconds * 1000) << "ms";
    report(1, ok, what.str(),
           "exit " + std::to_string(r.exitCode) + ", stdout " + r.out + r.err);
  }

  // 2. The connectivity theorem has its stated type.
  {
    std::string detail;
    bool ok = witness_checks(cli, stdlibDir, "StatedType",
                             R"(import SuspConn

def suspConnAtStatedType : (n : Nat) -> (A : U) -> isConn n A -> isConn (suc n) (Susp A) :=
  suspConn
)",
                             detail);
    report(2, ok, "suspConn checks at its stated connectivity type", detail);
  }

  // 3. Constant functions evaluate back on the nose, and the witness really
  //    depends on the definition: making constsMap opaque must break it.
  {
    std::string detail;
    bool positive = witness_checks(cli, stdlibDir, "ConstsWitness",
                                   R"(import SuspConn

def witnessConsts : (A : U) -> (B : U) -> (b : B) -> Id B b (evalNorth A B (constsMap B (Susp A) b)) :=
  \A. \B. \b. refl b
)",
                                   detail);

    fs::path mutated = scratch_root() / "mutated";
    fs::create_directories(mutated);
    for (const auto& mod : manifest.modules)
      fs::copy_file(stdlibDir / (mod + ".hott"), mutated / (mod + ".hott"),
                    fs::copy_options::overwrite_existing);
    std::string conn = slurp(mutated / "Connectedness.hott");
    const std::string defText =
        "def constsMap : (B : U) -> (A : U) -> B -> A -> B :=\n"
        "  \\B. \\A. \\b. \\a. b\n";
    const std::string axiomText =
        "axiom constsMap : (B : U) -> (A : U) -> B -> A -> B\n";
    auto at = conn.find(defText);
    bool mutationApplied = at != std::string::npos;
    bool negative = false;
    std::string mutDetail = "definition text not found to mutate";
    if (mutationApplied) {
      conn.replace(at, defText.size(), axiomText);
      spit(mutated / "Connectedness.hott", conn);
      std::string mutatedArgs;
      for (const auto& mod : manifest.modules)
        mutatedArgs += " " + quoted((mutated / (mod + ".hott")).string());
      RunResult r = run(quoted(cli) + " check" + mutatedArgs);
      negative = r.exitCode == 1 && contains(r.err, "refl b does not prove");
      mutDetail = "mutated run: exit " + std::to_string(r.exitCode) + ", " + r.err;
    }
    report(3, positive && negative,
           "refl witnesses the constants triangle, and fails once constsMap is opaque",
           positive ? mutDetail : detail);
  }

  // 4. The three-leg pipeline evaluates to the north pole on the nose.
  {
    std::string detail;
    bool ok = witness_checks(cli, stdlibDir, "PipelineWitness",
                             R"(import SuspConn

def witnessComp : (n : Nat) -> (A : U) -> (cA : isConn n A) -> (B : U) -> (hB : isHLevel (suc n) B) -> (g : Susp A -> B) -> Id B (evalNorth A B g) (suspPipeline n A cA B hB g) :=
  \n. \A. \cA. \B. \hB. \g. refl (g (north A))
)",
                             detail);
    report(4, ok, "refl witnesses the pipeline triangle at the north pole", detail);
  }

  // 5. Axiom audit: the theorem rests on exactly the suspension interface,
  //    and the toolkit lemmas rest on nothing.
  {
    std::string expected;
    for (const auto& name : manifest.census) expected += name + "\n";
    std::string pathArg = " --path " + quoted(stdlibDir.string());
    RunResult conn = run(quoted(cli) + " axioms" + pathArg + " -m SuspConn suspConn");
    bool ok = conn.exitCode == 0 && conn.out == expected;
    std::string detail = "suspConn: exit " + std::to_string(conn.exitCode) +
                         ", got " + conn.out;
    const std::vector<std::pair<std::string, std::string>> pure = {
        {"ThreeForTwo", "threeForTwo"},
        {"SigmaAssoc", "sigmaAssoc"},
        {"Singleton", "singlContr"}};
    for (const auto& [mod, name] : pure) {
      RunResult r = run(quoted(cli) + " axioms" + pathArg + " -m " + mod + " " + name);
      if (r.exitCode != 0 || !r.out.empty()) {
        ok = false;
        detail = name + ": exit " + std::to_string(r.exitCode) + ", got " + r.out;
      }
    }
    report(5, ok, "axiom audit: suspConn uses exactly the suspension interface; toolkit is pure",
           detail);
  }

  // 6. The kernel property suite passes in full.
  {
    RunResult r = run(quoted(unitTests));
    bool ok = r.exitCode == 0 && contains(r.out, "All tests passed");
    report(6, ok, "kernel property suite passes",
           "exit " + std::to_string(r.exitCode));
  }

  // 7. Ill-typed programs are rejected with a diagnostic on the right line.
  {
    struct Neg {
      std::string root;      // file passed to check
      int exitCode;          // expected exit
      std::string diagFile;  // file named in the diagnostic
      int line;              // expected 1-based line
      std::string needle;    // expected message fragment
    };
    const std::vector<Neg> table = {
        {"bad_refl.hott", 1, "bad_refl.hott", 2,
         "type mismatch: refl 0 does not prove Id Nat 0 1"},
        {"unbound.hott", 1, "unbound.hott", 2, "unbound identifier 'plus'"},
        {"pi_sigma_confusion.hott", 1, "pi_sigma_confusion.hott", 2,
         "a pair cannot have type Nat -> Nat"},
        {"lambda_pair.hott", 1, "lambda_pair.hott", 2,
         "a lambda cannot have type (n : Nat) * Nat"},
        {"duplicate.hott", 1, "duplicate.hott", 4,
         "duplicate definition of 'twice'"},
        {"CycleA.hott", 2, "CycleB.hott", 1,
         "import cycle: CycleA -> CycleB -> CycleA"},
        {"not_a_function.hott", 1, "not_a_function.hott", 2,
         "cannot apply a term of type Nat"},
        {"bad_universe.hott", 1, "bad_universe.hott", 1,
         "type mismatch: expected U, got Nat"},
        {"unterminated.hott", 1, "unterminated.hott", 2,
         "unterminated declaration: expected a term before end of input"},
        {"illegal_char.hott", 1, "illegal_char.hott", 1, "illegal character '@'"},
        {"bad_natelim.hott", 1, "bad_natelim.hott", 2,
         "type mismatch: expected Nat, got Unit"},
        {"fst_of_function.hott", 1, "fst_of_function.hott", 2,
         "cannot project from a term of type Nat -> Nat"},
        {"bad_j.hott", 1, "bad_j.hott", 5,
         "type mismatch: expected Id A x x, got Nat"},
        {"wrong_refl_type.hott", 1, "wrong_refl_type.hott", 2,
         "type mismatch: refl cannot have type Nat"},
    };
    std::size_t corpusSize = 0;
    for (const auto& entry : fs::directory_iterator(negDir))
      if (entry.path().extension() == ".hott") ++corpusSize;
    bool ok = corpusSize >= 10;
    std::string detail = ok ? "" : "corpus has only " + std::to_string(corpusSize) + " files";
    for (const auto& neg : table) {
      RunResult r = run(quoted(cli) + " check " + quoted((negDir / neg.root).string()));
      std::string prefix = (negDir / neg.diagFile).string() + ":" +
                           std::to_string(neg.line) + ":";
      bool this_ok = r.exitCode == neg.exitCode && r.out.empty() &&
                     r.err.rfind(prefix, 0) == 0 && contains(r.err, neg.needle);
      if (!this_ok) {
        ok = false;
        detail = neg.root + ": exit " + std::to_string(r.exitCode) + ", " + r.err;
      }
    }
    std::ostringstream what;
    what << "negative corpus: " << table.size() << " roots over " << corpusSize
         << " files rejected at the expected lines";
    report(7, ok, what.str(), detail);
  }

  // 8. The independent reducer is present, documented, and agrees with the
  //    kernel on the frozen corpus.
  {
    std::string oracleSrc = slurp(sourceDir / "tests" / "oracle_reduce.hpp");
    bool present = contains(oracleSrc, "onormalize") &&
                   contains(oracleSrc, "Independent normalization oracle");
    RunResult r = run(quoted(unitTests) + " " +
                      quoted("oracle and kernel agree on a random closed corpus"));
    bool ok = present && r.exitCode == 0 && contains(r.out, "All tests passed");
    report(8, ok, "independent reducer cross-checks the kernel",
           present ? "agreement suite exit " + std::to_string(r.exitCode)
                   : "oracle_reduce.hpp missing or undocumented");
  }

  fs::remove_all(scratch_root());
  return failures == 0 ? 0 : 1;
}
