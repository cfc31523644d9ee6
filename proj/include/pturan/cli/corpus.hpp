#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pturan/criteria/criteria.hpp"
#include "pturan/sequences/derived.hpp"

namespace pturan {

/// A recurrence named on the command line: text form, name and an optional
/// scaling tag.
struct RecurrenceSource {
  std::string name;
  std::string text;
  Transform scaling;

  Recurrence parse() const;
};

/// Known certification outcome for an entry: corner thresholds in the order
/// t(g,g+), t(g,f+), t(f,g+), t(f,f+) and where the claimed sequence starts.
struct ExpectedCertificate {
  int K = 4;
  std::optional<long> round_to;
  std::array<long, 4> corner_thresholds{};
  /// The sequence {a_n}_{n >= sequence_start} satisfies the inequality.
  long sequence_start = 0;
  std::string source;
};

/// Known u_n bounds g < u_n < f from a K = 4 ratio window, rendered as
/// rational functions, and the largest acceptable first valid index.
struct ExpectedUBounds {
  std::string g, f;
  long valid_from_max = 0;
  std::string source;
};

struct CorpusEntry {
  RecurrenceSource source;
  std::string description;
  /// The recurrence comes from a standard reference rather than being
  /// derived here; only its terms are checked against an oracle.
  bool externally_sourced = false;

  /// a(0), a(1), ... of the raw recurrence.
  std::vector<std::string> terms;
  std::string terms_source;

  /// u_n of the scaled sequence as rendered by u-asymp with u_K.
  std::optional<std::string> u_series;
  int u_K = 3;
  std::string u_source;

  std::optional<Outcome> turan3;
  /// Number of log-concavity levels the asymptotic criterion establishes
  /// (0 = not checked) and the K used.
  int llc_levels = 0;
  int llc_K = 8;

  std::optional<ExpectedCertificate> certificate;
  std::optional<ExpectedUBounds> u_bounds;

  /// The inequality holds exactly from this index up to `exact_to` and
  /// fails at the index before.
  std::optional<long> exact_from;
  long exact_to = 1000;
};

const std::vector<CorpusEntry>& corpus();
const CorpusEntry* find_corpus_entry(const std::string& name);

/// Resolves a command-line source: a corpus name with an optional scaling
/// suffix ("motzkin/n!"), a path to a JSON document or a text file, or an
/// inline recurrence.
RecurrenceSource resolve_source(const std::string& arg);

}  // namespace pturan
