#include "maxmatch/edit_typing.hpp"

#include <stdexcept>

#include "maxmatch/errors.hpp"

namespace maxmatch {

bool is_determiner_tag(const std::string& tag) { return tag == "DT" || tag == "PDT"; }

bool is_preposition_tag(const std::string& tag) { return tag == "IN" || tag == "TO"; }

bool is_singular_noun_tag(const std::string& tag) { return tag == "NN" || tag == "NNP"; }

bool is_plural_noun_tag(const std::string& tag) { return tag == "NNS" || tag == "NNPS"; }

bool is_noun_tag(const std::string& tag) {
  return is_singular_noun_tag(tag) || is_plural_noun_tag(tag);
}

bool is_adjective_tag(const std::string& tag) { return tag == "JJ"; }

bool is_verb_tag(const std::string& tag) {
  return tag == "VB" || tag == "VBD" || tag == "VBG" || tag == "VBN" || tag == "VBP" ||
         tag == "VBZ";
}

TaggedSentence make_tagged_sentence(Sentence sentence, std::vector<std::string> tags) {
  if (sentence.tokens.size() != tags.size())
    throw InvariantError("tagged sentence has " + std::to_string(tags.size()) + " tags for " +
                         std::to_string(sentence.tokens.size()) + " tokens");
  for (const auto& t : tags)
    if (t.empty()) throw InvariantError("empty POS tag");
  return TaggedSentence{std::move(sentence), std::move(tags)};
}

const char* bucket_name(TypeBucket bucket) {
  switch (bucket) {
    case TypeBucket::art_or_det: return "ArtOrDet";
    case TypeBucket::prep: return "Prep";
    case TypeBucket::nn: return "Nn";
    case TypeBucket::vform_sva: return "Vform/SVA";
    case TypeBucket::other: return "Other";
  }
  return "Other";
}

TypeBucket bucket_for_gold_tag(const std::string& tag) {
  if (tag == tags::art_or_det) return TypeBucket::art_or_det;
  if (tag == tags::prep) return TypeBucket::prep;
  if (tag == tags::nn) return TypeBucket::nn;
  if (tag == tags::vform || tag == tags::sva) return TypeBucket::vform_sva;
  return TypeBucket::other;
}

Edit remap_gold_type(const Edit& edit, const TaggedSentence& src_tags) {
  if (edit.etype != tags::wcip && edit.etype != tags::rloc) return edit;
  if (edit.tok_end > static_cast<int>(src_tags.tags.size()))
    throw InvariantError("edit span exceeds tagged sentence length");

  bool any_prep = false;
  bool all_det = edit.tok_start < edit.tok_end;
  for (int i = edit.tok_start; i < edit.tok_end; ++i) {
    if (is_preposition_tag(src_tags.tags[i])) any_prep = true;
    if (!is_determiner_tag(src_tags.tags[i])) all_det = false;
  }

  Edit out = edit;
  if (any_prep)
    out.etype = tags::prep;
  else if (edit.etype == tags::rloc && edit.is_deletion() && all_det)
    out.etype = tags::art_or_det;
  else if (edit.etype == tags::wcip)
    out.etype = tags::wci;
  else
    out.etype = tags::rloc_minus;
  return out;
}

TypeBucket classify_system_edit(const Edit& edit, const TaggedSentence& src_tags,
                                const std::vector<std::string>& replacement_tags) {
  if (edit.tok_end > static_cast<int>(src_tags.tags.size()))
    throw InvariantError("edit span exceeds tagged sentence length");

  std::vector<const std::string*> source_side;
  for (int i = edit.tok_start; i < edit.tok_end; ++i) source_side.push_back(&src_tags.tags[i]);
  std::vector<const std::string*> replacement_side;
  for (const auto& t : replacement_tags) replacement_side.push_back(&t);

  auto any_of_both = [&](bool (*pred)(const std::string&)) {
    for (const auto* t : source_side)
      if (pred(*t)) return true;
    for (const auto* t : replacement_side)
      if (pred(*t)) return true;
    return false;
  };
  auto any_of = [](const std::vector<const std::string*>& side,
                   bool (*pred)(const std::string&)) {
    for (const auto* t : side)
      if (pred(*t)) return true;
    return false;
  };

  if (any_of_both(is_determiner_tag)) return TypeBucket::art_or_det;
  if (any_of_both(is_preposition_tag)) return TypeBucket::prep;

  const bool number_change = (any_of(source_side, is_singular_noun_tag) &&
                              any_of(replacement_side, is_plural_noun_tag)) ||
                             (any_of(source_side, is_plural_noun_tag) &&
                              any_of(replacement_side, is_singular_noun_tag));
  const bool adjective_change =
      (any_of(source_side, is_adjective_tag) && any_of(replacement_side, is_noun_tag)) ||
      (any_of(source_side, is_noun_tag) && any_of(replacement_side, is_adjective_tag));
  if (number_change || adjective_change) return TypeBucket::nn;

  if (any_of_both(is_verb_tag)) return TypeBucket::vform_sva;
  return TypeBucket::other;
}

AttributionDelta attribute_tally(bool matched, const std::optional<std::string>& gold_type,
                                 std::optional<TypeBucket> sys_bucket) {
  AttributionDelta d;
  if (matched) {
    if (!gold_type)
      throw std::logic_error("attribute_tally: matched edit without its gold type");
    d.bucket = bucket_for_gold_tag(*gold_type);
    d.matches = 1;
    d.gold_total = 1;
    d.sys_total = 1;
    return d;
  }
  if (gold_type && sys_bucket)
    throw std::logic_error("attribute_tally: unmatched event on both sides");
  if (gold_type) {
    d.bucket = bucket_for_gold_tag(*gold_type);
    d.gold_total = 1;
    return d;
  }
  if (!sys_bucket) throw std::logic_error("attribute_tally: event without any edit");
  d.bucket = *sys_bucket;
  d.sys_total = 1;
  return d;
}

}  // namespace maxmatch
