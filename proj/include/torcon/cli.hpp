#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace torcon {

enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 2,
  kExitParse = 64,
  kExitValidation = 65,
  kExitGenericity = 66,
};

struct JobSpec {
  std::string command;  // validate ehrhart delta cb orbits resolve orbifold quotient hc crosscheck
  std::string input;    // a path, or corpus:<name>
  std::string format = "json";  // json | table
  std::string pipeline;         // cb: delta|direct|both, hc: delta|direct|resolution|quotient|smooth
  std::optional<std::string> window;         // "dmin:dmax"
  std::optional<std::string> reeb;           // point of D for cb/orbits, integral (w, r) for quotient
  std::optional<std::string> perturb;        // t in the direction (1, t, t^2, ...)
  std::optional<std::string> triangulation;  // path to a triangulation document
  std::optional<std::string> star;           // "p/q,p/q"
  bool trivial = false;
};

struct RunResult {
  int exit_code = kExitOk;
  std::string output;
  std::string error;
};

// Never throws; errors are reported through exit_code and error.
RunResult run(const JobSpec& spec);

// Argument parsing in front of run(). Returns the exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace torcon
