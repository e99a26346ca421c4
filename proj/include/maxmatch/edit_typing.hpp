#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxmatch/annotation_io.hpp"
#include "maxmatch/text_model.hpp"

namespace maxmatch {

// Penn tagset predicates backing the POS rules.
bool is_determiner_tag(const std::string& tag);   // DT, PDT
bool is_preposition_tag(const std::string& tag);  // IN, TO
bool is_singular_noun_tag(const std::string& tag);  // NN, NNP
bool is_plural_noun_tag(const std::string& tag);    // NNS, NNPS
bool is_noun_tag(const std::string& tag);
bool is_adjective_tag(const std::string& tag);  // JJ
bool is_verb_tag(const std::string& tag);       // VB, VBD, VBG, VBN, VBP, VBZ

struct TaggedSentence {
  Sentence sentence;
  std::vector<std::string> tags;  // one per token
};

// Validates the length invariant.
TaggedSentence make_tagged_sentence(Sentence sentence, std::vector<std::string> tags);

// Reporting buckets; Vform and SVA share one (they are not reliably
// distinguishable from POS evidence alone).
enum class TypeBucket { art_or_det, prep, nn, vform_sva, other };

inline constexpr TypeBucket kAllBuckets[] = {TypeBucket::art_or_det, TypeBucket::prep,
                                             TypeBucket::nn, TypeBucket::vform_sva,
                                             TypeBucket::other};

const char* bucket_name(TypeBucket bucket);  // "ArtOrDet", "Prep", "Nn", "Vform/SVA", "Other"

TypeBucket bucket_for_gold_tag(const std::string& tag);

// Remaps the legacy Wcip/Rloc gold types onto Prep/Wci/ArtOrDet/Rloc- using
// the source span's POS tags.  Edits of any other type pass through
// unchanged; the output never carries Wcip or Rloc.
Edit remap_gold_type(const Edit& edit, const TaggedSentence& src_tags);

// Classifies a system edit into a reporting bucket.  Rules fire in fixed
// order: determiner change, preposition change, noun-number (or JJ/noun)
// change, verb change, otherwise Other.  replacement_tags carries one tag
// per replacement token (empty for deletions).
TypeBucket classify_system_edit(const Edit& edit, const TaggedSentence& src_tags,
                                const std::vector<std::string>& replacement_tags);

// Per-type tally increments for one scored edit event:
//   - matched pair:          (true, gold tag, classified bucket or nullopt)
//   - unmatched gold edit:   (false, gold tag, nullopt)
//   - unmatched system edit: (false, nullopt, classified bucket)
// Matched edits count under the gold edit's type bucket on both sides.
struct AttributionDelta {
  TypeBucket bucket = TypeBucket::other;
  long long matches = 0;
  long long gold_total = 0;
  long long sys_total = 0;
};

AttributionDelta attribute_tally(bool matched, const std::optional<std::string>& gold_type,
                                 std::optional<TypeBucket> sys_bucket);

}  // namespace maxmatch
