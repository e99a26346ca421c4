#include "maxmatch/text_model.hpp"

#include <random>

#include "doctest.h"
#include "maxmatch/annotation_io.hpp"
#include "maxmatch/errors.hpp"

using namespace maxmatch;

namespace {

Sentence sentence_from_raw(const std::string& raw) {
  Sentence s;
  s.tokens = align_tokens_to_raw(raw, split_tokens(raw));
  return s;
}

}  // namespace

TEST_CASE("align_tokens_to_raw locates tokens by greedy scan") {
  const std::string raw = "From past to the present, many important innovations have surfaced.";
  auto tokens = align_tokens_to_raw(raw, split_tokens(raw));
  REQUIRE(tokens.size() == 10);
  CHECK(tokens[0].text == "From");
  CHECK(tokens[0].char_start == 0);
  CHECK(tokens[0].char_end == 4);
  CHECK(tokens[1].text == "past");
  CHECK(tokens[1].char_start == 5);
  CHECK(tokens[1].char_end == 9);
  for (const Token& t : tokens) CHECK(raw.substr(t.char_start, t.char_end - t.char_start) == t.text);
}

TEST_CASE("align_tokens_to_raw handles the empty paragraph") {
  CHECK(align_tokens_to_raw("", {}).empty());
  CHECK(align_tokens_to_raw("   ", {}).empty());
}

TEST_CASE("align_tokens_to_raw tolerates repeated whitespace") {
  auto tokens = align_tokens_to_raw("a  b", {"a", "b"});
  REQUIRE(tokens.size() == 2);
  CHECK(tokens[0].char_start == 0);
  CHECK(tokens[0].char_end == 1);
  CHECK(tokens[1].char_start == 3);
  CHECK(tokens[1].char_end == 4);
}

TEST_CASE("align_tokens_to_raw rejects bad input") {
  CHECK_THROWS_AS(align_tokens_to_raw("a b", {"a", "c"}), AlignmentError);
  CHECK_THROWS_AS(align_tokens_to_raw("a b x", {"a", "b"}), AlignmentError);
  CHECK_THROWS_AS(align_tokens_to_raw("a b", {"a", "b", "c"}), AlignmentError);
  CHECK_THROWS_AS(align_tokens_to_raw("a b", {"a b"}), AlignmentError);
  CHECK_THROWS_AS(align_tokens_to_raw("a b", {"", "b"}), AlignmentError);
  CHECK_THROWS_AS(align_tokens_to_raw("xyz", {}), AlignmentError);
  CHECK_THROWS_AS(align_tokens_to_raw("b a", {"a", "b"}), AlignmentError);
}

TEST_CASE("character offsets count code points, not bytes") {
  const std::string raw = "caf\xC3\xA9 bar";  // café bar
  auto tokens = align_tokens_to_raw(raw, {"caf\xC3\xA9", "bar"});
  REQUIRE(tokens.size() == 2);
  CHECK(tokens[0].char_end == 4);
  CHECK(tokens[1].char_start == 5);
  CHECK(tokens[1].char_end == 8);
  CHECK(count_code_points(raw) == 8);
  CHECK(slice_code_points(raw, 0, 4) == "caf\xC3\xA9");
  CHECK(slice_code_points(raw, 5, 8) == "bar");
}

TEST_CASE("map_char_span_to_token_span covers overlapped tokens") {
  Sentence s = sentence_from_raw("From past to the present , many innovations have surfaced .");
  auto span = map_char_span_to_token_span(s, 5, 9);
  CHECK(span == std::make_pair(1, 2));

  SUBCASE("insertion point before the first token") {
    CHECK(map_char_span_to_token_span(s, 0, 0) == std::make_pair(0, 0));
  }
  SUBCASE("partial token overlap expands to whole tokens") {
    // chars 11..14 touch "to" (10..12) and "the" (13..16)
    CHECK(map_char_span_to_token_span(s, 11, 14) == std::make_pair(2, 4));
  }
  SUBCASE("insertion offset inside a token snaps to its start") {
    CHECK(map_char_span_to_token_span(s, 6, 6) == std::make_pair(1, 1));
  }
  SUBCASE("insertion between tokens lands before the next") {
    // char 9 is the space after "past"
    CHECK(map_char_span_to_token_span(s, 10, 10) == std::make_pair(2, 2));
  }
  SUBCASE("insertion at the very end") {
    int last = s.tokens.back().char_end;
    CHECK(map_char_span_to_token_span(s, last, last) ==
          std::make_pair(s.size(), s.size()));
  }
  SUBCASE("span over no token fails") {
    Sentence gappy = sentence_from_raw("a   b");
    CHECK_THROWS_AS(map_char_span_to_token_span(gappy, 2, 3), SpanError);
  }
  SUBCASE("inverted span fails") {
    CHECK_THROWS_AS(map_char_span_to_token_span(s, 9, 5), SpanError);
  }
}

TEST_CASE("token round trip and monotonicity") {
  std::mt19937 rng(20130801);
  std::uniform_int_distribution<int> len(1, 12), tok_len(1, 5), gap(1, 3), pick(0, 25);

  for (int iter = 0; iter < 200; ++iter) {
    std::string raw;
    std::vector<std::string> texts;
    const int n = len(rng);
    for (int t = 0; t < n; ++t) {
      std::string tok;
      for (int c = tok_len(rng); c > 0; --c) tok.push_back(static_cast<char>('a' + pick(rng)));
      if (t > 0 || gap(rng) == 1) raw.append(static_cast<size_t>(gap(rng)), ' ');
      raw += tok;
      texts.push_back(std::move(tok));
    }
    Sentence s;
    s.tokens = align_tokens_to_raw(raw, texts);

    // Output satisfies the token invariants.
    for (size_t t = 0; t < s.tokens.size(); ++t) {
      const Token& tok = s.tokens[t];
      CHECK(tok.char_start < tok.char_end);
      CHECK(raw.substr(tok.char_start, tok.char_end - tok.char_start) == tok.text);
      if (t > 0) CHECK(s.tokens[t - 1].char_end <= tok.char_start);
    }

    // Round trip: each token's own span maps back to exactly that token.
    for (int t = 0; t < s.size(); ++t) {
      auto span = map_char_span_to_token_span(s, s.tokens[t].char_start, s.tokens[t].char_end);
      CHECK(span == std::make_pair(t, t + 1));
    }

    // Monotonicity of tok_start in char_start.
    int prev = 0;
    for (int c = 0; c <= s.tokens.back().char_end; ++c) {
      auto span = map_char_span_to_token_span(s, c, s.tokens.back().char_end);
      CHECK(span.first >= prev);
      prev = span.first;
    }
  }
}

TEST_CASE("sentence_from_tokens synthesizes single-space offsets") {
  Sentence s = sentence_from_tokens({"a", "bc", "d"});
  CHECK(s.tokens[0].char_start == 0);
  CHECK(s.tokens[1].char_start == 2);
  CHECK(s.tokens[2].char_start == 5);
  CHECK(s.token_texts() == std::vector<std::string>{"a", "bc", "d"});
}
