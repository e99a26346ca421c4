#include "maxmatch/text_model.hpp"

#include <cctype>

#include "maxmatch/errors.hpp"

namespace maxmatch {

namespace {

bool is_ws(unsigned char c) { return std::isspace(c) != 0; }

bool is_cp_start(unsigned char c) { return (c & 0xC0) != 0x80; }

bool has_internal_ws(const std::string& s) {
  for (unsigned char c : s)
    if (is_ws(c)) return true;
  return false;
}

}  // namespace

std::vector<std::string> Sentence::token_texts() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

int count_code_points(const std::string& s) {
  int n = 0;
  for (unsigned char c : s)
    if (is_cp_start(c)) ++n;
  return n;
}

std::string slice_code_points(const std::string& s, int cp_start, int cp_end) {
  if (cp_start > cp_end) throw SpanError("inverted code point slice");
  int cp = 0;
  size_t byte_start = s.size(), byte_end = s.size();
  bool found_start = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (!is_cp_start(static_cast<unsigned char>(s[i]))) continue;
    if (cp == cp_start && !found_start) {
      byte_start = i;
      found_start = true;
    }
    if (cp == cp_end) {
      byte_end = i;
      break;
    }
    ++cp;
  }
  if (!found_start) {
    if (cp_start == cp && cp_start == cp_end) return "";
    if (cp_start > cp) throw SpanError("code point slice beyond end of text");
    byte_start = s.size();
  }
  if (cp_end > count_code_points(s)) throw SpanError("code point slice beyond end of text");
  return s.substr(byte_start, byte_end - byte_start);
}

std::vector<Token> align_tokens_to_raw(const std::string& raw_paragraph,
                                       const std::vector<std::string>& token_texts) {
  std::vector<Token> out;
  out.reserve(token_texts.size());

  size_t byte = 0;  // byte cursor into raw_paragraph
  int cp = 0;       // code point index of the cursor

  auto skip_ws = [&] {
    while (byte < raw_paragraph.size() && is_ws(static_cast<unsigned char>(raw_paragraph[byte]))) {
      if (is_cp_start(static_cast<unsigned char>(raw_paragraph[byte]))) ++cp;
      ++byte;
      while (byte < raw_paragraph.size() &&
             !is_cp_start(static_cast<unsigned char>(raw_paragraph[byte])))
        ++byte;
    }
  };

  for (size_t k = 0; k < token_texts.size(); ++k) {
    const std::string& text = token_texts[k];
    if (text.empty())
      throw AlignmentError("token " + std::to_string(k) + " is empty");
    if (has_internal_ws(text))
      throw AlignmentError("token " + std::to_string(k) + " contains whitespace: '" + text + "'");

    skip_ws();
    if (raw_paragraph.compare(byte, text.size(), text) != 0)
      throw AlignmentError("token '" + text + "' not found at character offset " +
                           std::to_string(cp));

    int tok_cps = count_code_points(text);
    out.push_back(Token{text, cp, cp + tok_cps});
    byte += text.size();
    cp += tok_cps;
  }

  skip_ws();
  if (byte != raw_paragraph.size())
    throw AlignmentError("trailing non-whitespace text after last token at character offset " +
                         std::to_string(cp));
  return out;
}

std::pair<int, int> map_char_span_to_token_span(const Sentence& sentence, int char_start,
                                                int char_end) {
  if (char_start > char_end) throw SpanError("inverted character span");
  const auto& toks = sentence.tokens;
  const int n = static_cast<int>(toks.size());

  if (char_start == char_end) {
    // Insertion point: before the first token starting at or after the
    // offset; offsets inside a token snap to that token's start.
    for (int i = 0; i < n; ++i) {
      if (toks[i].char_start >= char_start || toks[i].char_end > char_start) return {i, i};
    }
    return {n, n};
  }

  int tok_start = -1, tok_end = -1;
  for (int i = 0; i < n; ++i) {
    const bool overlaps = toks[i].char_start < char_end && char_start < toks[i].char_end;
    if (overlaps) {
      if (tok_start < 0) tok_start = i;
      tok_end = i + 1;
    }
  }
  if (tok_start < 0)
    throw SpanError("character span (" + std::to_string(char_start) + ", " +
                    std::to_string(char_end) + ") overlaps no token");
  return {tok_start, tok_end};
}

Sentence sentence_from_tokens(std::vector<std::string> token_texts, int paragraph_index,
                              int sentence_index) {
  Sentence s;
  s.paragraph_index = paragraph_index;
  s.sentence_index = sentence_index;
  s.tokens.reserve(token_texts.size());
  int cp = 0;
  for (auto& text : token_texts) {
    int len = count_code_points(text);
    s.tokens.push_back(Token{std::move(text), cp, cp + len});
    cp += len + 1;  // single separating space
  }
  return s;
}

}  // namespace maxmatch
