#pragma once

#include <string>
#include <utility>
#include <vector>

#include "maxmatch/annotation_io.hpp"
#include "maxmatch/edit_typing.hpp"
#include "maxmatch/lattice.hpp"
#include "maxmatch/rational.hpp"

namespace maxmatch {

// Running numerators and denominators of the corpus-level recall and
// precision sums.
struct ScoreTally {
  long long matches = 0;
  long long gold_total = 0;
  long long sys_total = 0;

  ScoreTally& operator+=(const ScoreTally& o) {
    matches += o.matches;
    gold_total += o.gold_total;
    sys_total += o.sys_total;
    return *this;
  }
  friend ScoreTally operator+(ScoreTally a, const ScoreTally& b) { return a += b; }
  friend bool operator==(const ScoreTally& a, const ScoreTally& b) {
    return a.matches == b.matches && a.gold_total == b.gold_total && a.sys_total == b.sys_total;
  }
};

struct Prf {
  Rational recall{1};
  Rational precision{1};
  Rational f1{1};
};

// Exact recall/precision/F1 with the zero-denominator conventions: no gold
// edits means recall 1, no system edits means precision 1, R + P = 0 means
// F1 = 0.
Prf prf(const ScoreTally& tally);

// Per-alternative extraction summary used by the selection step.
struct AltStats {
  long long matches = 0;
  long long gold_size = 0;
  long long sys_size = 0;
};

struct Selection {
  int chosen_index = 0;
  ScoreTally updated;
};

// Chooses the alternative maximizing the cumulative F1 after adding its
// contribution; ties fall to the larger match numerator, then the smaller
// gold+system denominator, then the earliest list position.
Selection select_gold_alternative(const std::vector<AltStats>& alternatives,
                                  const ScoreTally& cumulative);

struct ScoreOptions {
  MatchParams match;
  bool per_type = false;
  int threads = 1;
};

struct SentenceOutcome {
  int chosen_index = 0;
  int chosen_annotator = 0;
  ScoreTally contribution;
};

struct ScoreReport {
  ScoreTally overall;
  Prf overall_prf;
  // Fixed bucket order (ArtOrDet, Prep, Nn, Vform/SVA, Other); filled only
  // when per-type scoring is on.
  std::vector<std::pair<TypeBucket, ScoreTally>> per_type;
  std::vector<SentenceOutcome> per_sentence;
};

Prf bucket_prf(const ScoreReport& report, TypeBucket bucket);

// Scores a corpus: per sentence, extracts the maximally matching system
// edits against every gold alternative, applies the cumulative-F1 selection
// in sentence order, and aggregates overall (and per-type) tallies.
// source_tags / hypothesis_tags are empty or sentence-aligned; they only
// affect the bucketing of unmatched system edits.  Extraction may run on
// options.threads threads; the reduction is sequential and deterministic.
ScoreReport score_corpus(const std::vector<std::vector<std::string>>& sources,
                         const std::vector<GoldAlternatives>& gold,
                         const std::vector<std::vector<std::string>>& hypotheses,
                         const std::vector<std::vector<std::string>>& source_tags,
                         const std::vector<std::vector<std::string>>& hypothesis_tags,
                         const ScoreOptions& options);

}  // namespace maxmatch
