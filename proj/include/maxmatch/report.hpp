#pragma once

#include <string>
#include <vector>

#include "maxmatch/annotation_io.hpp"
#include "maxmatch/scoring.hpp"

namespace maxmatch {

enum class OutputFormat { text, tsv, json };

OutputFormat parse_output_format(const std::string& name);

// Renders the fraction as a percentage with the given number of decimals,
// rounding half away from zero; exact integer arithmetic throughout.
std::string render_percent(const Rational& fraction, int decimals);

struct SystemScore {
  std::string name;
  ScoreReport report;
};

// Scores rendered per the chosen format.  A single system prints the bare
// R/P/F1 line (text); several systems print a rank table ordered by F1
// descending, equal F1 sharing a rank.  Byte-deterministic.
std::string render_score(const std::vector<SystemScore>& systems, OutputFormat format,
                         bool per_type);

// Gold-corpus error type distribution: the five shared-task types in fixed
// order, any remaining tags alphabetically, then subtotal and total rows.
struct TypeStats {
  std::vector<std::pair<std::string, long long>> counts;
  long long five_types = 0;
  long long all_types = 0;
};

TypeStats compute_type_stats(const std::vector<SentenceAnnotation>& entries);

std::string render_stats(const TypeStats& stats, OutputFormat format);

}  // namespace maxmatch
