#include "maxmatch/scoring.hpp"

#include <random>

#include "doctest.h"
#include "maxmatch/errors.hpp"

using namespace maxmatch;

namespace {

const std::vector<std::string> kPaperSource = {
    "There", "is",   "no",       "a",  "doubt", ",",   "tracking",    "system", "has",
    "brought", "many", "benefits", "in", "this",  "information", "age",    "."};

std::vector<std::string> paper_hypothesis() {
  std::vector<std::string> h = kPaperSource;
  h.erase(h.begin() + 3);
  return h;
}

GoldAlternatives paper_gold() {
  return GoldAlternatives{{EditSet{0,
                                   {Edit{3, 5, {"doubt"}, "Other"},
                                    Edit{7, 8, {"systems"}, "SVA"},
                                    Edit{8, 9, {"have"}, "SVA"}}}}};
}

ScoreReport score_simple(const std::vector<std::vector<std::string>>& sources,
                         const std::vector<GoldAlternatives>& gold,
                         const std::vector<std::vector<std::string>>& hypotheses,
                         ScoreOptions options = {}) {
  return score_corpus(sources, gold, hypotheses, {}, {}, options);
}

}  // namespace

TEST_CASE("prf computes exact rationals with the zero conventions") {
  Prf p = prf(ScoreTally{1, 3, 1});
  CHECK(p.recall == Rational(1, 3));
  CHECK(p.precision == Rational(1));
  CHECK(p.f1 == Rational(1, 2));

  p = prf(ScoreTally{0, 0, 0});
  CHECK(p.recall == Rational(1));
  CHECK(p.precision == Rational(1));
  CHECK(p.f1 == Rational(1));

  p = prf(ScoreTally{2, 4, 5});
  CHECK(p.recall == Rational(1, 2));
  CHECK(p.precision == Rational(2, 5));
  CHECK(p.f1 == Rational(4, 9));

  p = prf(ScoreTally{0, 2, 0});
  CHECK(p.recall == Rational(0));
  CHECK(p.precision == Rational(1));
  CHECK(p.f1 == Rational(0));

  p = prf(ScoreTally{0, 2, 3});
  CHECK(p.f1 == Rational(0));

  CHECK_THROWS_AS(prf(ScoreTally{2, 1, 2}), InvariantError);
}

TEST_CASE("the two F1 forms agree exactly") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long long> d(0, 1000000);
  for (int i = 0; i < 2000; ++i) {
    long long g = d(rng), s = d(rng);
    std::uniform_int_distribution<long long> m(0, std::min(g, s));
    ScoreTally t{m(rng), g, s};
    if (t.gold_total + t.sys_total == 0) continue;
    CHECK(prf(t).f1 == Rational(2 * t.matches, t.gold_total + t.sys_total));
  }
}

TEST_CASE("select_gold_alternative maximizes cumulative F1 with tie-breaks") {
  ScoreTally zero;

  SUBCASE("plain F1 win") {
    Selection sel = select_gold_alternative({{1, 1, 1}, {0, 2, 1}}, zero);
    CHECK(sel.chosen_index == 0);
    CHECK(sel.updated == ScoreTally{1, 1, 1});
  }
  SUBCASE("equal F1 falls to the larger numerator") {
    Selection sel = select_gold_alternative({{1, 2, 2}, {2, 4, 4}}, zero);
    CHECK(sel.chosen_index == 1);
    CHECK(sel.updated == ScoreTally{2, 4, 4});
  }
  SUBCASE("equal F1 and numerator fall to the smaller denominator") {
    Selection sel = select_gold_alternative({{0, 2, 0}, {0, 1, 0}}, zero);
    CHECK(sel.chosen_index == 1);
  }
  SUBCASE("full ties fall to the first position") {
    Selection sel = select_gold_alternative({{1, 2, 2}, {1, 2, 2}, {1, 2, 2}}, zero);
    CHECK(sel.chosen_index == 0);
  }
  SUBCASE("cumulative history shifts the choice") {
    // Starting from (9, 10, 10): alternative A (1,1,1) gives 10/21 + ... vs
    // B (0,1,1): A: F1 = 2*10/(11+11) = 10/11; B: 2*9/(11+11) = 9/11.
    Selection sel = select_gold_alternative({{0, 1, 1}, {1, 1, 1}}, ScoreTally{9, 10, 10});
    CHECK(sel.chosen_index == 1);
  }
  SUBCASE("empty alternative list is rejected") {
    CHECK_THROWS_AS(select_gold_alternative({}, zero), InvariantError);
  }
}

TEST_CASE("score_corpus reproduces the worked example") {
  ScoreReport report = score_simple({kPaperSource}, {paper_gold()}, {paper_hypothesis()});
  CHECK(report.overall == ScoreTally{1, 3, 1});
  CHECK(report.overall_prf.recall == Rational(1, 3));
  CHECK(report.overall_prf.precision == Rational(1));
  CHECK(report.overall_prf.f1 == Rational(1, 2));
  REQUIRE(report.per_sentence.size() == 1);
  CHECK(report.per_sentence[0].chosen_annotator == 0);
}

TEST_CASE("identity hypotheses score zero recall, perfect precision") {
  std::vector<std::vector<std::string>> sources = {{"a", "b"}, {"c", "d"}};
  std::vector<GoldAlternatives> gold = {
      GoldAlternatives{{EditSet{0, {Edit{0, 1, {"x"}, "Nn"}}}}},
      GoldAlternatives{{EditSet{0, {Edit{1, 2, {"y"}, "Nn"}}}}}};
  ScoreReport report = score_simple(sources, gold, sources);
  CHECK(report.overall == ScoreTally{0, 2, 0});
  CHECK(report.overall_prf.recall == Rational(0));
  CHECK(report.overall_prf.precision == Rational(1));
  CHECK(report.overall_prf.f1 == Rational(0));
}

TEST_CASE("two-sentence corpus sums tallies before the ratio") {
  // Sentence 1: gold {b->x}, hypothesis applies it.  Sentence 2: gold
  // {c->y, d->z}, hypothesis applies only the first.
  std::vector<std::vector<std::string>> sources = {{"a", "b"}, {"c", "d"}};
  std::vector<GoldAlternatives> gold = {
      GoldAlternatives{{EditSet{0, {Edit{1, 2, {"x"}, "Nn"}}}}},
      GoldAlternatives{{EditSet{0, {Edit{0, 1, {"y"}, "Nn"}, Edit{1, 2, {"z"}, "Nn"}}}}}};
  std::vector<std::vector<std::string>> hyps = {{"a", "x"}, {"y", "d"}};
  ScoreReport report = score_simple(sources, gold, hyps);
  CHECK(report.overall == ScoreTally{2, 3, 2});
  CHECK(report.overall_prf.recall == Rational(2, 3));
  CHECK(report.overall_prf.precision == Rational(1));
  // Eq. 3 on the summed tallies equals the re-expressed form.
  CHECK(report.overall_prf.f1 == Rational(2 * 2, 3 + 2));
}

TEST_CASE("single-alternative corpora degenerate to the plain computation") {
  std::vector<std::vector<std::string>> sources = {{"a", "b", "c"}};
  std::vector<GoldAlternatives> gold = {GoldAlternatives{
      {EditSet{0, {Edit{0, 1, {"x"}, "Nn"}, Edit{2, 3, {"z"}, "Vform"}}}}}};
  std::vector<std::vector<std::string>> hyps = {{"x", "b", "c"}};
  ScoreReport report = score_simple(sources, gold, hyps);
  CHECK(report.overall == ScoreTally{1, 2, 1});
  CHECK(report.overall_prf.f1 == Rational(2, 3));
}

TEST_CASE("alternative selection is greedy in sentence order") {
  // Sentence 1 ties two alternatives; numerator breaks it.  The chosen
  // tally then feeds sentence 2's selection.
  std::vector<std::vector<std::string>> sources = {{"a", "b", "c", "d", "e"}};
  std::vector<std::vector<std::string>> hyps = {{"A", "b", "C", "d", "E"}};
  GoldAlternatives alts;
  alts.alternatives.push_back(EditSet{0, {Edit{0, 1, {"A"}, "Nn"}}});
  alts.alternatives.push_back(EditSet{1,
                                      {Edit{0, 1, {"A"}, "Nn"}, Edit{1, 1, {"q"}, "Nn"},
                                       Edit{2, 3, {"C"}, "Nn"}, Edit{3, 3, {"r"}, "Nn"},
                                       Edit{4, 5, {"Q"}, "Nn"}}});
  MatchParams tight;
  tight.max_unchanged_words = 0;
  ScoreOptions options;
  options.match = tight;
  ScoreReport report = score_corpus(sources, {alts}, hyps, {}, {}, options);
  // Alternative 0: (1, 1, 3) F1 = 1/2; alternative 1: (2, 5, 3) F1 = 1/2;
  // numerator prefers alternative 1.
  CHECK(report.per_sentence[0].chosen_index == 1);
  CHECK(report.overall == ScoreTally{2, 5, 3});
}

TEST_CASE("per-type tallies attribute matched edits to the gold type") {
  std::vector<std::vector<std::string>> sources = {{"a", "device", "prefers"}};
  std::vector<std::vector<std::string>> hyps = {{"a", "devices", "prefer", "now"}};
  GoldAlternatives gold{{EditSet{0,
                                 {Edit{1, 2, {"devices"}, "Nn"},
                                  Edit{2, 3, {"prefer"}, "SVA"}}}}};
  std::vector<std::vector<std::string>> source_tags = {{"DT", "NN", "VBZ"}};
  std::vector<std::vector<std::string>> hyp_tags = {{"DT", "NNS", "VBP", "RB"}};

  ScoreOptions options;
  options.per_type = true;
  ScoreReport report = score_corpus(sources, {gold}, hyps, source_tags, hyp_tags, options);
  CHECK(report.overall == ScoreTally{2, 2, 3});

  ScoreTally total;
  for (const auto& [bucket, tally] : report.per_type) total += tally;
  CHECK(total == report.overall);

  CHECK(bucket_prf(report, TypeBucket::nn).recall == Rational(1));
  CHECK(bucket_prf(report, TypeBucket::vform_sva).recall == Rational(1));
  // The unmatched insertion of "now" (RB) lands in Other.
  for (const auto& [bucket, tally] : report.per_type) {
    if (bucket == TypeBucket::other) {
      CHECK(tally.sys_total == 1);
      CHECK(tally.matches == 0);
    }
  }
}

TEST_CASE("score_corpus validates stream lengths") {
  std::vector<std::vector<std::string>> sources = {{"a"}, {"b"}, {"c"}};
  std::vector<GoldAlternatives> gold(3, GoldAlternatives{{EditSet{0, {}}}});
  std::vector<std::vector<std::string>> hyps = {{"a"}, {"b"}};
  CHECK_THROWS_AS(score_simple(sources, gold, hyps), LengthMismatchError);
}

TEST_CASE("parallel extraction reduces to identical reports") {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> len(1, 12), vocab(0, 6), coin(0, 1);
  std::vector<std::vector<std::string>> sources, hyps;
  std::vector<GoldAlternatives> gold;
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> s;
    for (int k = len(rng); k > 0; --k) s.push_back(std::string(1, static_cast<char>('a' + vocab(rng))));
    std::vector<std::string> h = s;
    if (coin(rng)) h.erase(h.begin());
    if (coin(rng)) h.push_back("zz");
    GoldAlternatives g;
    g.alternatives.push_back(EditSet{0, {}});
    if (coin(rng)) {
      g.alternatives.push_back(
          EditSet{1, {Edit{0, 1, {h.empty() ? std::string("q") : h[0]}, "Nn"}}});
    }
    sources.push_back(std::move(s));
    hyps.push_back(std::move(h));
    gold.push_back(std::move(g));
  }

  ScoreOptions serial;
  serial.threads = 1;
  ScoreOptions parallel;
  parallel.threads = 4;
  ScoreReport a = score_simple(sources, gold, hyps, serial);
  ScoreReport b = score_simple(sources, gold, hyps, parallel);
  CHECK(a.overall == b.overall);
  REQUIRE(a.per_sentence.size() == b.per_sentence.size());
  for (size_t i = 0; i < a.per_sentence.size(); ++i) {
    CHECK(a.per_sentence[i].chosen_index == b.per_sentence[i].chosen_index);
    CHECK(a.per_sentence[i].contribution == b.per_sentence[i].contribution);
  }
}
