#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spheresep::cli {

/// Process exit codes.
enum ExitCode : int {
  kDisjoint = 0,      // also: success for fuzz and plot
  kDisagreement = 1,  // fuzz found a disagreement or failed check
  kIntersecting = 2,
  kAmbiguous = 3,     // ambiguous verdict, or an instance the command cannot handle
  kMalformed = 4,     // unreadable file, bad document, bad flags
  kProofFailed = 5,   // constructive witness failed
};

/// Runs one command; `args` excludes the program name. Documents go to
/// `out`, diagnostics and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spheresep::cli
