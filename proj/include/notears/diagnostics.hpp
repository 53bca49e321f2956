#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>

namespace notears {

// Source position, 1-based line and column (byte columns).
struct Pos {
  int line = 1;
  int col = 1;
};

struct Span {
  Pos begin;
  Pos end;
};

enum class Severity { Error };

// One reportable problem. `expected`/`actual` carry pretty-printed types when
// the problem is a mismatch; they are already folded into `message`.
struct Diagnostic {
  std::string file;
  Span span;
  std::string message;
  std::string expected;
  std::string actual;
};

// Rendered form consumed by tests and editors: file:line:col: error: message
inline std::string render(const Diagnostic& d) {
  std::ostringstream os;
  os << d.file << ':' << d.span.begin.line << ':' << d.span.begin.col
     << ": error: " << d.message;
  return os.str();
}

// Thrown by the parser, resolver and checker; caught at the declaration
// boundary so a failed declaration never extends the global environment.
class CheckError : public std::runtime_error {
 public:
  explicit CheckError(Diagnostic d) : std::runtime_error(d.message), diag(std::move(d)) {}
  Diagnostic diag;
};

// Raised when --fuel is exhausted; mapped to a Diagnostic by the driver.
class FuelExhausted : public std::runtime_error {
 public:
  FuelExhausted() : std::runtime_error("fuel exhausted") {}
};

// Evaluation/conversion step budget. Unlimited unless a driver arms it.
// thread_local so parallel module checks get independent budgets.
struct Fuel {
  static thread_local bool limited;
  static thread_local unsigned long long remaining;

  static void tick() {
    if (limited) {
      if (remaining == 0) throw FuelExhausted();
      --remaining;
    }
  }

  struct Guard {
    Guard(bool lim, unsigned long long amount) {
      Fuel::limited = lim;
      Fuel::remaining = amount;
    }
    ~Guard() {
      Fuel::limited = false;
      Fuel::remaining = 0;
    }
  };
};

inline thread_local bool Fuel::limited = false;
inline thread_local unsigned long long Fuel::remaining = 0;

}  // namespace notears
