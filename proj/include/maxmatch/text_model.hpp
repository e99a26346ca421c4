#pragma once

#include <string>
#include <utility>
#include <vector>

namespace maxmatch {

// Character offsets throughout are Unicode code point indices into the
// paragraph's raw text (equal to byte positions for pure ASCII).  The
// toolkit never re-encodes; UTF-8 strings are sliced along code point
// boundaries.
struct Token {
  std::string text;  // non-empty, no internal whitespace
  int char_start = 0;
  int char_end = 0;  // exclusive
};

struct Sentence {
  std::vector<Token> tokens;
  int paragraph_index = 0;
  int sentence_index = 0;  // corpus-global, 0-based

  int size() const { return static_cast<int>(tokens.size()); }
  std::vector<std::string> token_texts() const;
};

struct Document {
  std::vector<std::string> paragraphs;  // raw text, one entry per paragraph
  std::vector<Sentence> sentences;
};

// Number of code points in a UTF-8 string.
int count_code_points(const std::string& s);

// Byte-slice of the code point range [cp_start, cp_end).
std::string slice_code_points(const std::string& s, int cp_start, int cp_end);

// Locates each token text in the raw paragraph by a greedy left-to-right
// scan.  Only whitespace may separate consecutive tokens; anything else (or
// a token that does not occur at the cursor) raises AlignmentError.
std::vector<Token> align_tokens_to_raw(const std::string& raw_paragraph,
                                       const std::vector<std::string>& token_texts);

// Smallest token index range [tok_start, tok_end) covering every token that
// overlaps [char_start, char_end).  An empty span is an insertion point and
// maps to (i, i); offsets inside a token snap to the token's start.  Raises
// SpanError if the span covers no token and is not a valid insertion point.
std::pair<int, int> map_char_span_to_token_span(const Sentence& sentence,
                                                int char_start, int char_end);

// Builds a Sentence from bare token texts, synthesizing single-space raw
// offsets.  Used when the input format carries tokens without provenance.
Sentence sentence_from_tokens(std::vector<std::string> token_texts,
                              int paragraph_index = 0, int sentence_index = 0);

}  // namespace maxmatch
