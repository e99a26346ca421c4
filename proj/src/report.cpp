#include "maxmatch/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "maxmatch/errors.hpp"

namespace maxmatch {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string pad_left(const std::string& s, size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

ordered_json rational_json(const Rational& r, int decimals) {
  return ordered_json{{"num", r.num()}, {"den", r.den()}, {"percent", render_percent(r, decimals)}};
}

ordered_json tally_json(const ScoreTally& tally) {
  const Prf p = prf(tally);
  return ordered_json{{"matches", tally.matches},
                      {"gold", tally.gold_total},
                      {"system", tally.sys_total},
                      {"recall", rational_json(p.recall, 2)},
                      {"precision", rational_json(p.precision, 2)},
                      {"f1", rational_json(p.f1, 2)}};
}

std::vector<int> competition_ranks(const std::vector<SystemScore>& systems) {
  std::vector<int> ranks(systems.size(), 1);
  for (size_t i = 0; i < systems.size(); ++i)
    for (size_t j = 0; j < systems.size(); ++j)
      if (systems[j].report.overall_prf.f1 > systems[i].report.overall_prf.f1) ++ranks[i];
  return ranks;
}

std::vector<size_t> order_by_f1(const std::vector<SystemScore>& systems) {
  std::vector<size_t> order(systems.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return systems[a].report.overall_prf.f1 > systems[b].report.overall_prf.f1;
  });
  return order;
}

void append_per_type_text(std::ostringstream& os, const ScoreReport& report) {
  size_t type_width = 4;  // "Type"
  for (TypeBucket b : kAllBuckets) type_width = std::max(type_width, std::string(bucket_name(b)).size());
  os << "\n" << pad_right("Type", type_width) << "  " << pad_left("R", 6) << "  "
     << pad_left("P", 6) << "  " << pad_left("F1", 6) << "\n";
  for (const auto& [bucket, tally] : report.per_type) {
    const Prf p = prf(tally);
    os << pad_right(bucket_name(bucket), type_width) << "  "
       << pad_left(render_percent(p.recall, 2), 6) << "  "
       << pad_left(render_percent(p.precision, 2), 6) << "  "
       << pad_left(render_percent(p.f1, 2), 6) << "\n";
  }
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
  if (name == "text") return OutputFormat::text;
  if (name == "tsv") return OutputFormat::tsv;
  if (name == "json") return OutputFormat::json;
  throw Error("unknown output format '" + name + "' (expected text, tsv, or json)");
}

std::string render_percent(const Rational& fraction, int decimals) {
  long long scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const __int128 numerator = static_cast<__int128>(fraction.num()) * 100 * scale;
  const long long den = fraction.den();
  __int128 q = numerator / den;
  const __int128 rem = numerator % den;
  if (rem * 2 >= den) ++q;  // round half away from zero (values are non-negative)
  long long scaled = static_cast<long long>(q);

  std::string whole = std::to_string(scaled / scale);
  if (decimals == 0) return whole;
  std::string frac = std::to_string(scaled % scale);
  return whole + "." + std::string(static_cast<size_t>(decimals) - frac.size(), '0') + frac;
}

std::string render_score(const std::vector<SystemScore>& systems, OutputFormat format,
                         bool per_type) {
  if (systems.empty()) throw Error("nothing to render: no systems scored");
  const std::vector<int> ranks = competition_ranks(systems);
  const std::vector<size_t> order = order_by_f1(systems);

  if (format == OutputFormat::text) {
    std::ostringstream os;
    if (systems.size() == 1) {
      const Prf& p = systems[0].report.overall_prf;
      os << "R " << render_percent(p.recall, 2) << "  P " << render_percent(p.precision, 2)
         << "  F1 " << render_percent(p.f1, 2) << "\n";
      if (per_type) append_per_type_text(os, systems[0].report);
      return os.str();
    }
    size_t name_width = 4;  // "Team"
    for (const auto& s : systems) name_width = std::max(name_width, s.name.size());
    os << pad_right("Rank", 4) << "  " << pad_right("Team", name_width) << "  " << pad_left("R", 6)
       << "  " << pad_left("P", 6) << "  " << pad_left("F1", 6) << "\n";
    for (size_t idx : order) {
      const Prf& p = systems[idx].report.overall_prf;
      os << pad_right(std::to_string(ranks[idx]), 4) << "  "
         << pad_right(systems[idx].name, name_width) << "  "
         << pad_left(render_percent(p.recall, 2), 6) << "  "
         << pad_left(render_percent(p.precision, 2), 6) << "  "
         << pad_left(render_percent(p.f1, 2), 6) << "\n";
    }
    if (per_type) {
      for (size_t idx : order) {
        os << "\n" << systems[idx].name << ":";
        append_per_type_text(os, systems[idx].report);
      }
    }
    return os.str();
  }

  if (format == OutputFormat::tsv) {
    std::ostringstream os;
    os << "rank\tteam\tR\tP\tF1\n";
    for (size_t idx : order) {
      const Prf& p = systems[idx].report.overall_prf;
      os << ranks[idx] << "\t" << systems[idx].name << "\t" << render_percent(p.recall, 2) << "\t"
         << render_percent(p.precision, 2) << "\t" << render_percent(p.f1, 2) << "\n";
    }
    if (per_type) {
      os << "\nteam\ttype\tR\tP\tF1\n";
      for (size_t idx : order) {
        for (const auto& [bucket, tally] : systems[idx].report.per_type) {
          const Prf p = prf(tally);
          os << systems[idx].name << "\t" << bucket_name(bucket) << "\t"
             << render_percent(p.recall, 2) << "\t" << render_percent(p.precision, 2) << "\t"
             << render_percent(p.f1, 2) << "\n";
        }
      }
    }
    return os.str();
  }

  ordered_json root;
  root["systems"] = ordered_json::array();
  for (size_t idx : order) {
    const SystemScore& s = systems[idx];
    ordered_json entry;
    entry["name"] = s.name;
    entry["rank"] = ranks[idx];
    entry["overall"] = tally_json(s.report.overall);
    if (per_type) {
      ordered_json types;
      for (const auto& [bucket, tally] : s.report.per_type)
        types[bucket_name(bucket)] = tally_json(tally);
      entry["per_type"] = types;
    }
    ordered_json sentences = ordered_json::array();
    for (size_t i = 0; i < s.report.per_sentence.size(); ++i) {
      const SentenceOutcome& o = s.report.per_sentence[i];
      sentences.push_back(ordered_json{{"index", i},
                                       {"annotator", o.chosen_annotator},
                                       {"matches", o.contribution.matches},
                                       {"gold", o.contribution.gold_total},
                                       {"system", o.contribution.sys_total}});
    }
    entry["sentences"] = std::move(sentences);
    root["systems"].push_back(std::move(entry));
  }
  return root.dump(2) + "\n";
}

TypeStats compute_type_stats(const std::vector<SentenceAnnotation>& entries) {
  static const char* kFive[] = {tags::art_or_det, tags::prep, tags::nn, tags::vform, tags::sva};

  std::map<std::string, long long> counts;
  for (const char* t : kFive) counts[t] = 0;
  TypeStats stats;
  for (const SentenceAnnotation& entry : entries)
    for (const EditSet& set : entry.gold.alternatives)
      for (const Edit& e : set.edits) {
        ++counts[e.etype];
        ++stats.all_types;
      }

  for (const char* t : kFive) {
    stats.counts.emplace_back(t, counts[t]);
    stats.five_types += counts[t];
    counts.erase(t);
  }
  for (const auto& [tag, count] : counts) stats.counts.emplace_back(tag, count);
  return stats;
}

std::string render_stats(const TypeStats& stats, OutputFormat format) {
  auto percent_of_total = [&](long long count) {
    if (stats.all_types == 0) return std::string("0.0");
    return render_percent(Rational(count, stats.all_types), 1);
  };

  if (format == OutputFormat::text) {
    size_t tag_width = 9;  // "all types"
    for (const auto& [tag, count] : stats.counts) tag_width = std::max(tag_width, tag.size());
    std::ostringstream os;
    os << pad_right("Type", tag_width) << "  " << pad_left("Count", 7) << "  " << pad_left("%", 5)
       << "\n";
    for (const auto& [tag, count] : stats.counts)
      os << pad_right(tag, tag_width) << "  " << pad_left(std::to_string(count), 7) << "  "
         << pad_left(percent_of_total(count), 5) << "\n";
    os << pad_right("5 types", tag_width) << "  " << pad_left(std::to_string(stats.five_types), 7)
       << "  " << pad_left(percent_of_total(stats.five_types), 5) << "\n";
    os << pad_right("all types", tag_width) << "  " << pad_left(std::to_string(stats.all_types), 7)
       << "  " << pad_left(percent_of_total(stats.all_types), 5) << "\n";
    return os.str();
  }

  if (format == OutputFormat::tsv) {
    std::ostringstream os;
    os << "type\tcount\tpercent\n";
    for (const auto& [tag, count] : stats.counts)
      os << tag << "\t" << count << "\t" << percent_of_total(count) << "\n";
    os << "5 types\t" << stats.five_types << "\t" << percent_of_total(stats.five_types) << "\n";
    os << "all types\t" << stats.all_types << "\t" << percent_of_total(stats.all_types) << "\n";
    return os.str();
  }

  ordered_json root;
  root["types"] = ordered_json::array();
  for (const auto& [tag, count] : stats.counts)
    root["types"].push_back(
        ordered_json{{"tag", tag}, {"count", count}, {"percent", percent_of_total(count)}});
  root["five_types"] =
      ordered_json{{"count", stats.five_types}, {"percent", percent_of_total(stats.five_types)}};
  root["all_types"] =
      ordered_json{{"count", stats.all_types}, {"percent", percent_of_total(stats.all_types)}};
  return root.dump(2) + "\n";
}

}  // namespace maxmatch
