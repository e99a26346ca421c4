#include "maxmatch/scoring.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "maxmatch/errors.hpp"

namespace maxmatch {

Prf prf(const ScoreTally& tally) {
  if (tally.matches < 0 || tally.gold_total < 0 || tally.sys_total < 0)
    throw InvariantError("negative tally");
  if (tally.matches > tally.gold_total || tally.matches > tally.sys_total)
    throw InvariantError("matches exceed a tally denominator");
  Prf out;
  out.recall = tally.gold_total == 0 ? Rational(1) : Rational(tally.matches, tally.gold_total);
  out.precision = tally.sys_total == 0 ? Rational(1) : Rational(tally.matches, tally.sys_total);
  const Rational sum = out.recall + out.precision;
  out.f1 = sum.is_zero() ? Rational(0) : Rational(2) * out.recall * out.precision / sum;
  return out;
}

Selection select_gold_alternative(const std::vector<AltStats>& alternatives,
                                  const ScoreTally& cumulative) {
  if (alternatives.empty()) throw InvariantError("no gold alternatives to select from");

  int best = -1;
  Rational best_f1(0);
  ScoreTally best_tally;
  for (int i = 0; i < static_cast<int>(alternatives.size()); ++i) {
    const AltStats& alt = alternatives[i];
    ScoreTally cand = cumulative;
    cand += ScoreTally{alt.matches, alt.gold_size, alt.sys_size};
    const Rational f1 = prf(cand).f1;
    bool wins = best < 0;
    if (!wins && f1 != best_f1) wins = f1 > best_f1;
    if (!wins && f1 == best_f1) {
      if (cand.matches != best_tally.matches)
        wins = cand.matches > best_tally.matches;
      else if (cand.gold_total + cand.sys_total != best_tally.gold_total + best_tally.sys_total)
        wins = cand.gold_total + cand.sys_total < best_tally.gold_total + best_tally.sys_total;
    }
    if (wins) {
      best = i;
      best_f1 = f1;
      best_tally = cand;
    }
  }
  return Selection{best, best_tally};
}

namespace {

struct SentenceExtraction {
  std::vector<AltStats> stats;           // one per alternative
  std::vector<ExtractionResult> result;  // one per alternative
};

SentenceExtraction extract_sentence(const std::vector<std::string>& source,
                                    const GoldAlternatives& gold,
                                    const std::vector<std::string>& hypothesis,
                                    const MatchParams& params) {
  if (gold.alternatives.empty()) throw InvariantError("sentence without gold alternatives");
  Sentence src = sentence_from_tokens(source);
  Sentence hyp = sentence_from_tokens(hypothesis);
  SentenceExtraction out;
  out.stats.reserve(gold.alternatives.size());
  out.result.reserve(gold.alternatives.size());
  for (const EditSet& alt : gold.alternatives) {
    ExtractionResult r = extract_system_edits(src, hyp, alt, params);
    out.stats.push_back(AltStats{r.match_count, static_cast<long long>(alt.edits.size()),
                                 static_cast<long long>(r.edits.edits.size())});
    out.result.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Prf bucket_prf(const ScoreReport& report, TypeBucket bucket) {
  for (const auto& [b, tally] : report.per_type)
    if (b == bucket) return prf(tally);
  return prf(ScoreTally{});
}

ScoreReport score_corpus(const std::vector<std::vector<std::string>>& sources,
                         const std::vector<GoldAlternatives>& gold,
                         const std::vector<std::vector<std::string>>& hypotheses,
                         const std::vector<std::vector<std::string>>& source_tags,
                         const std::vector<std::vector<std::string>>& hypothesis_tags,
                         const ScoreOptions& options) {
  const size_t n = sources.size();
  if (gold.size() != n || hypotheses.size() != n)
    throw LengthMismatchError("corpus streams disagree: " + std::to_string(n) +
                              " source sentences, " + std::to_string(gold.size()) +
                              " gold entries, " + std::to_string(hypotheses.size()) +
                              " hypothesis sentences");
  if (!source_tags.empty() && source_tags.size() != n)
    throw LengthMismatchError("source tag stream has " + std::to_string(source_tags.size()) +
                              " sentences for a corpus of " + std::to_string(n));
  if (!hypothesis_tags.empty() && hypothesis_tags.size() != n)
    throw LengthMismatchError("hypothesis tag stream has " +
                              std::to_string(hypothesis_tags.size()) +
                              " sentences for a corpus of " + std::to_string(n));
  validate_params(options.match);

  // Per-sentence, per-alternative extraction is pure; only the reduction
  // below is order-sensitive.
  std::vector<SentenceExtraction> extractions(n);
  const int threads = std::max(1, options.threads);
  if (threads == 1 || n < 2) {
    for (size_t i = 0; i < n; ++i)
      extractions[i] = extract_sentence(sources[i], gold[i], hypotheses[i], options.match);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(threads);
    std::atomic<size_t> next{0};
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
            extractions[i] = extract_sentence(sources[i], gold[i], hypotheses[i], options.match);
        } catch (...) {
          failures[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& f : failures)
      if (f) std::rethrow_exception(f);
  }

  ScoreReport report;
  if (options.per_type)
    for (TypeBucket b : kAllBuckets) report.per_type.emplace_back(b, ScoreTally{});

  auto bucket_tally = [&](TypeBucket b) -> ScoreTally& {
    for (auto& [bucket, tally] : report.per_type)
      if (bucket == b) return tally;
    throw std::logic_error("missing bucket");
  };

  for (size_t i = 0; i < n; ++i) {
    const Selection sel = select_gold_alternative(extractions[i].stats, report.overall);
    const EditSet& chosen_gold = gold[i].alternatives[sel.chosen_index];
    const ExtractionResult& chosen = extractions[i].result[sel.chosen_index];

    SentenceOutcome outcome;
    outcome.chosen_index = sel.chosen_index;
    outcome.chosen_annotator = chosen_gold.annotator_id;
    const AltStats& stats = extractions[i].stats[sel.chosen_index];
    outcome.contribution = ScoreTally{stats.matches, stats.gold_size, stats.sys_size};
    report.per_sentence.push_back(outcome);
    report.overall = sel.updated;

    if (!options.per_type) continue;

    // Pair each matched system edit with its gold edit (spans are unique
    // within a set, so the pairing is one-to-one).
    std::vector<bool> gold_matched(chosen_gold.edits.size(), false);
    TaggedSentence src_tagged = make_tagged_sentence(
        sentence_from_tokens(sources[i]),
        !source_tags.empty() && !source_tags[i].empty()
            ? source_tags[i]
            : std::vector<std::string>(sources[i].size(), tags::other));
    const std::vector<std::string> hyp_tags =
        !hypothesis_tags.empty() && !hypothesis_tags[i].empty()
            ? hypothesis_tags[i]
            : std::vector<std::string>(hypotheses[i].size(), tags::other);
    if (hyp_tags.size() != hypotheses[i].size())
      throw LengthMismatchError("sentence " + std::to_string(i) + ": " +
                                std::to_string(hyp_tags.size()) + " hypothesis tags for " +
                                std::to_string(hypotheses[i].size()) + " tokens");

    for (const ExtractedEdit& sys_edit : chosen.detail) {
      if (sys_edit.matched) {
        for (size_t g = 0; g < chosen_gold.edits.size(); ++g) {
          if (!gold_matched[g] &&
              edit_matches(chosen_gold.edits[g], sys_edit.edit, options.match)) {
            gold_matched[g] = true;
            const AttributionDelta d =
                attribute_tally(true, chosen_gold.edits[g].etype, std::nullopt);
            ScoreTally& t = bucket_tally(d.bucket);
            t.matches += d.matches;
            t.gold_total += d.gold_total;
            t.sys_total += d.sys_total;
            break;
          }
        }
      } else {
        std::vector<std::string> repl_tags(hyp_tags.begin() + sys_edit.hyp_start,
                                           hyp_tags.begin() + sys_edit.hyp_end);
        const TypeBucket b = classify_system_edit(sys_edit.edit, src_tagged, repl_tags);
        const AttributionDelta d = attribute_tally(false, std::nullopt, b);
        bucket_tally(d.bucket).sys_total += d.sys_total;
      }
    }
    for (size_t g = 0; g < chosen_gold.edits.size(); ++g) {
      if (gold_matched[g]) continue;
      const AttributionDelta d = attribute_tally(false, chosen_gold.edits[g].etype, std::nullopt);
      bucket_tally(d.bucket).gold_total += d.gold_total;
    }
  }

  report.overall_prf = prf(report.overall);
  return report;
}

}  // namespace maxmatch
