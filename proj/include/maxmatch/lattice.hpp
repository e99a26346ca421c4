#pragma once

#include <string>
#include <vector>

#include "maxmatch/annotation_io.hpp"
#include "maxmatch/text_model.hpp"

namespace maxmatch {

struct MatchParams {
  int max_unchanged_words = 2;
  bool case_sensitive = true;
  long long max_cells = 10'000'000;  // |S|*|H| guard against lattice blow-up
};

// Throws InvariantError when parameters are out of range.
void validate_params(const MatchParams& params);

enum class EditKind { match, substitution, deletion, insertion, phrase };

// Edge of the alignment lattice.  Nodes are positions (i, j) with
// 0 <= i <= |S| and 0 <= j <= |H|; every edge goes strictly forward.  The
// lattice holds exactly the edges lying on some minimum-cost alignment path
// under unit Levenshtein costs (match 0, substitution/insertion/deletion 1),
// plus phrase edges merging path segments that contain at least one change
// and at most max_unchanged_words matches.  Edge cost is the summed unit
// cost of the segment it covers.
struct LatticeEdge {
  int from_i = 0;
  int from_j = 0;
  int to_i = 0;
  int to_j = 0;
  EditKind kind = EditKind::match;
  int cost = 0;

  bool is_change() const { return kind != EditKind::match; }
  bool is_pure_insertion() const { return from_i == to_i; }
};

struct AlignmentLattice {
  int src_len = 0;
  int hyp_len = 0;
  std::vector<LatticeEdge> edges;  // canonical (from, to, kind) order

  // Candidate system edits induced by the change edges, in edge order.
  std::vector<Edit> candidate_edits(const Sentence& hyp) const;
};

// The system edit induced by a change edge: source span -> hypothesis tokens.
Edit candidate_edit(const LatticeEdge& edge, const Sentence& hyp);

// True iff spans are equal and whitespace-normalized replacements are equal
// (case-folded when params.case_sensitive is false).  Types are ignored.
bool edit_matches(const Edit& gold, const Edit& sys, const MatchParams& params);

AlignmentLattice build_lattice(const Sentence& src, const Sentence& hyp,
                               const MatchParams& params);

struct ExtractedEdit {
  Edit edit;
  int hyp_start = 0;  // hypothesis token span providing the replacement
  int hyp_end = 0;
  bool matched = false;  // matched some gold edit
};

struct ExtractionResult {
  EditSet edits;                      // the chosen system edit set
  std::vector<ExtractedEdit> detail;  // aligned with edits.edits
  int match_count = 0;                // |g intersect e|
};

// Chooses, among all edit sets consistent with one lattice path, the one
// with maximum |g intersect e|, then fewest edits, then lowest path cost.
// Deterministic for identical inputs.
ExtractionResult extract_system_edits(const Sentence& src, const Sentence& hyp,
                                      const EditSet& gold, const MatchParams& params);

// Plain word-diff extraction: one canonical minimum-cost path, contiguous
// change runs merged.  The baseline whose failure mode maximal matching
// fixes; used for regression comparison.
EditSet word_diff_edits(const Sentence& src, const Sentence& hyp, const MatchParams& params);

}  // namespace maxmatch
