// Command-line front end.
//
//   termlat unify T1 T2            exit 0 solved, 1 clash/occurs/degree zero
//   termlat generalize T1 T2       exit 0
//   termlat similarity T1 T2       exit 0 when the degree is positive, else 1
//   termlat subsumes GENERAL SPEC  exit 0 when GENERAL subsumes SPEC, else 1
//   termlat check-sig [FILE]       exit 0 when the signature is valid
//   termlat --batch FILE           one "COMMAND<TAB>T1<TAB>T2" per line
//
// Usage, parse and signature errors exit 2; a --verify mismatch exits 3.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "termlat/signature.hpp"

namespace termlat::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,
  kError = 2,
  kVerifyMismatch = 3,
};

// argv without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Up to 6 decimals, trailing zeros trimmed: 0.6, 1, 0.25.
std::string format_degree(Degree d);

}  // namespace termlat::cli
