#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maxmatch/text_model.hpp"

namespace maxmatch {

// Error type tags are an open set; these are the distinguished ones.
namespace tags {
inline constexpr const char* art_or_det = "ArtOrDet";
inline constexpr const char* prep = "Prep";
inline constexpr const char* nn = "Nn";
inline constexpr const char* vform = "Vform";
inline constexpr const char* sva = "SVA";
inline constexpr const char* wci = "Wci";
inline constexpr const char* wcip = "Wcip";
inline constexpr const char* rloc = "Rloc";
inline constexpr const char* rloc_minus = "Rloc-";
inline constexpr const char* other = "Other";
inline constexpr const char* noop = "noop";
inline constexpr const char* unknown = "UNK";  // system edits carry no annotated type
}  // namespace tags

bool valid_error_tag(const std::string& tag);

// A token-span replacement.  Insertion: empty span; deletion: empty
// replacement.  An empty span with an empty replacement is not an Edit.
struct Edit {
  int tok_start = 0;
  int tok_end = 0;  // exclusive
  std::vector<std::string> replacement;
  std::string etype;

  bool is_insertion() const { return tok_start == tok_end; }
  bool is_deletion() const { return replacement.empty(); }

  friend bool operator==(const Edit& a, const Edit& b) {
    return a.tok_start == b.tok_start && a.tok_end == b.tok_end &&
           a.replacement == b.replacement && a.etype == b.etype;
  }
};

// One annotator's edits for a sentence, sorted by (tok_start, tok_end) with
// pairwise non-overlapping spans.
struct EditSet {
  int annotator_id = 0;
  std::vector<Edit> edits;

  friend bool operator==(const EditSet& a, const EditSet& b) {
    return a.annotator_id == b.annotator_id && a.edits == b.edits;
  }
};

// The alternative gold edit sets for one sentence, in order of appearance
// (order is a tie-break key downstream).
struct GoldAlternatives {
  std::vector<EditSet> alternatives;

  friend bool operator==(const GoldAlternatives& a, const GoldAlternatives& b) {
    return a.alternatives == b.alternatives;
  }
};

// Stand-off annotation record addressed by paragraph and character offsets.
struct MistakeRecord {
  int start_par = 0;
  int start_off = 0;
  int end_par = 0;
  int end_off = 0;
  std::string type_tag;
  std::string correction;

  friend bool operator==(const MistakeRecord& a, const MistakeRecord& b) {
    return a.start_par == b.start_par && a.start_off == b.start_off && a.end_par == b.end_par &&
           a.end_off == b.end_off && a.type_tag == b.type_tag && a.correction == b.correction;
  }
};

// One block of the token-level edit file: the source sentence, its gold
// alternatives, and (optionally) one POS tag per source token from a T line.
struct SentenceAnnotation {
  std::vector<std::string> source_tokens;
  GoldAlternatives gold;
  std::vector<std::string> source_tags;  // empty when the block has no T line

  friend bool operator==(const SentenceAnnotation& a, const SentenceAnnotation& b) {
    return a.source_tokens == b.source_tokens && a.gold == b.gold &&
           a.source_tags == b.source_tags;
  }
};

// True when the two edits' spans collide: intersecting non-empty spans, an
// insertion point strictly inside a span, or two insertions at one point.
bool spans_overlap(const Edit& a, const Edit& b);

// Checks Edit/EditSet invariants against a sentence of the given length.
// Throws InvariantError or OverlapError; context prefixes the message.
void validate_edit_set(const EditSet& set, int sentence_len, const std::string& context = "");

// Applies the edits to the source tokens (edits must be sorted and
// non-overlapping).  The soundness companion of lattice extraction.
std::vector<std::string> apply_edits(const std::vector<std::string>& source, const EditSet& set);

// --- stand-off SGML -------------------------------------------------------

std::vector<MistakeRecord> parse_sgml_annotations(const std::string& sgml_text);

// Maps character-offset records onto token-level edits, grouped by the
// containing sentence's corpus index.  Records must lie within one sentence.
std::map<int, EditSet> mistakes_to_edits(const Document& doc,
                                         const std::vector<MistakeRecord>& records);

// --- token-level edit file ------------------------------------------------

std::vector<SentenceAnnotation> parse_edit_file(const std::string& text);
std::string write_edit_file(const std::vector<SentenceAnnotation>& entries);

// Tagged sentences: S/T line blocks (A lines permitted and ignored).
struct TaggedBlock {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
};
std::vector<TaggedBlock> parse_tagged_file(const std::string& text);

// Plain tokenized text, one sentence per line (the system output format).
std::vector<std::vector<std::string>> parse_plain_sentences(const std::string& text);

// Whitespace tokenization (splits on runs of whitespace).
std::vector<std::string> split_tokens(const std::string& text);

}  // namespace maxmatch
