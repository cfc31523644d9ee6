#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pturan/certify/certificate_io.hpp"
#include "pturan/cli/corpus.hpp"

namespace pturan {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitHolds = 0, kExitError = 1, kExitInconclusive = 2, kExitFails = 3 };

int exit_code(Outcome o);

struct CheckResult {
  std::string entry, check;
  bool passed = false;
  std::string detail;
};

/// Golden checks of one corpus entry: parse and round trip, terms, known
/// expansions and verdicts, certificate thresholds and the exact
/// inequality range. `seed` drives the sampled certificate verification.
std::vector<CheckResult> run_corpus_checks(const CorpusEntry& entry, unsigned seed);

/// Series document: {"schema": "pturan-series/1", "kind", "order",
/// "terms": [{"exponent", "coeff"}], "field", "text"}.
Json series_to_json(const KSeries& s, const std::string& kind);
/// Verdict document: {"schema": "pturan-verdict/1", "criterion", "result",
/// "rule", "reason", "ell", "trace"}.
Json verdict_to_json(const Verdict& v, const std::string& criterion);

/// Runs the tool on argv-style arguments (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pturan
