#include "maxmatch/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "maxmatch/annotation_io.hpp"
#include "maxmatch/errors.hpp"
#include "maxmatch/report.hpp"
#include "maxmatch/scoring.hpp"

namespace maxmatch {

namespace {

std::string read_input(const std::string& path, std::istream& in, bool& stdin_used) {
  if (path == "-") {
    if (stdin_used) throw Error("standard input may be read only once per invocation");
    stdin_used = true;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << file.rdbuf();
  return os.str();
}

struct ScoreArgs {
  std::string gold_path;
  std::vector<std::string> system_paths;
  int max_unchanged_words = 2;
  bool case_insensitive = false;
  bool per_type = false;
  bool no_alternatives = false;
  std::string format = "text";
  std::string tags_path;
  int threads = 1;
};

struct StatsArgs {
  std::string gold_path;
  std::string format = "text";
};

struct ConvertArgs {
  std::string sgml_path;
  std::string raw_path;
  bool remap = false;
  std::string tags_path;
};

// Keeps annotator 0's edit set when present, else the first listed.
GoldAlternatives first_annotator_only(const GoldAlternatives& gold) {
  for (const EditSet& set : gold.alternatives)
    if (set.annotator_id == 0) return GoldAlternatives{{set}};
  return GoldAlternatives{{gold.alternatives.front()}};
}

int cmd_score(const ScoreArgs& args, std::istream& in, std::ostream& out) {
  bool stdin_used = false;
  std::set<std::string> distinct(args.system_paths.begin(), args.system_paths.end());
  if (distinct.size() != args.system_paths.size())
    throw Error("system paths must be distinct");
  if (distinct.count(args.gold_path))
    throw Error("gold path and system paths must be distinct");

  std::vector<SentenceAnnotation> entries;
  try {
    entries = parse_edit_file(read_input(args.gold_path, in, stdin_used));
  } catch (const Error& e) {
    throw Error(args.gold_path + ": " + e.what());
  }

  std::vector<std::vector<std::string>> sources, source_tags;
  std::vector<GoldAlternatives> gold;
  bool any_source_tags = false;
  for (const SentenceAnnotation& entry : entries) {
    sources.push_back(entry.source_tokens);
    source_tags.push_back(entry.source_tags);
    if (!entry.source_tags.empty()) any_source_tags = true;
    gold.push_back(args.no_alternatives ? first_annotator_only(entry.gold) : entry.gold);
  }
  if (!any_source_tags) source_tags.clear();

  std::vector<std::vector<std::string>> hypothesis_tags;
  if (!args.tags_path.empty()) {
    if (args.system_paths.size() != 1)
      throw Error("--tags tags one hypothesis stream; use a single system path with it");
    std::vector<TaggedBlock> blocks;
    try {
      blocks = parse_tagged_file(read_input(args.tags_path, in, stdin_used));
    } catch (const Error& e) {
      throw Error(args.tags_path + ": " + e.what());
    }
    if (blocks.size() != entries.size())
      throw LengthMismatchError(args.tags_path + ": " + std::to_string(blocks.size()) +
                                " tagged sentences for a corpus of " +
                                std::to_string(entries.size()));
    for (const TaggedBlock& b : blocks) hypothesis_tags.push_back(b.tags);
  }

  ScoreOptions options;
  options.match.max_unchanged_words = args.max_unchanged_words;
  options.match.case_sensitive = !args.case_insensitive;
  options.per_type = args.per_type;
  options.threads = args.threads;

  std::vector<SystemScore> scored;
  for (const std::string& path : args.system_paths) {
    std::vector<std::vector<std::string>> hypotheses;
    try {
      hypotheses = parse_plain_sentences(read_input(path, in, stdin_used));
    } catch (const Error& e) {
      throw Error(path + ": " + e.what());
    }
    if (hypotheses.size() != sources.size())
      throw LengthMismatchError("gold file has " + std::to_string(sources.size()) +
                                " sentences but system file '" + path + "' has " +
                                std::to_string(hypotheses.size()));
    if (!hypothesis_tags.empty()) {
      for (size_t i = 0; i < hypotheses.size(); ++i)
        if (hypothesis_tags[i].size() != hypotheses[i].size())
          throw LengthMismatchError(args.tags_path + ": sentence " + std::to_string(i + 1) +
                                    " has " + std::to_string(hypothesis_tags[i].size()) +
                                    " tags for " + std::to_string(hypotheses[i].size()) +
                                    " system tokens");
    }
    scored.push_back(SystemScore{
        path, score_corpus(sources, gold, hypotheses, source_tags, hypothesis_tags, options)});
  }

  out << render_score(scored, parse_output_format(args.format), args.per_type);
  return 0;
}

int cmd_stats(const StatsArgs& args, std::istream& in, std::ostream& out) {
  bool stdin_used = false;
  std::vector<SentenceAnnotation> entries;
  try {
    entries = parse_edit_file(read_input(args.gold_path, in, stdin_used));
  } catch (const Error& e) {
    throw Error(args.gold_path + ": " + e.what());
  }
  out << render_stats(compute_type_stats(entries), parse_output_format(args.format));
  return 0;
}

int cmd_convert(const ConvertArgs& args, std::istream& in, std::ostream& out) {
  bool stdin_used = false;
  const std::string sgml = read_input(args.sgml_path, in, stdin_used);
  const std::string raw = read_input(args.raw_path, in, stdin_used);

  std::vector<MistakeRecord> records;
  try {
    records = parse_sgml_annotations(sgml);
  } catch (const Error& e) {
    throw Error(args.sgml_path + ": " + e.what());
  }

  // One paragraph per line of the raw text file; each paragraph is one
  // sentence (segmentation happens upstream of this toolkit).
  Document doc;
  {
    std::string line;
    std::istringstream is(raw);
    while (std::getline(is, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      doc.paragraphs.push_back(line);
    }
  }
  for (size_t p = 0; p < doc.paragraphs.size(); ++p) {
    Sentence s;
    try {
      s.tokens = align_tokens_to_raw(doc.paragraphs[p], split_tokens(doc.paragraphs[p]));
    } catch (const Error& e) {
      throw Error(args.raw_path + ": paragraph " + std::to_string(p) + ": " + e.what());
    }
    s.paragraph_index = static_cast<int>(p);
    s.sentence_index = static_cast<int>(p);
    doc.sentences.push_back(std::move(s));
  }

  std::map<int, EditSet> by_sentence = mistakes_to_edits(doc, records);

  std::vector<TaggedBlock> tag_blocks;
  if (args.remap) {
    if (args.tags_path.empty()) throw Error("--remap needs --tags with source POS tags");
    try {
      tag_blocks = parse_tagged_file(read_input(args.tags_path, in, stdin_used));
    } catch (const Error& e) {
      throw Error(args.tags_path + ": " + e.what());
    }
    if (tag_blocks.size() != doc.sentences.size())
      throw LengthMismatchError(args.tags_path + ": " + std::to_string(tag_blocks.size()) +
                                " tagged sentences for " + std::to_string(doc.sentences.size()) +
                                " raw text paragraphs");
    for (size_t i = 0; i < tag_blocks.size(); ++i)
      if (tag_blocks[i].tokens != doc.sentences[i].token_texts())
        throw Error(args.tags_path + ": sentence " + std::to_string(i + 1) +
                    " tokens differ from the raw text tokens");
  }

  std::vector<SentenceAnnotation> entries;
  for (const Sentence& s : doc.sentences) {
    SentenceAnnotation entry;
    entry.source_tokens = s.token_texts();
    auto it = by_sentence.find(s.sentence_index);
    EditSet set = it == by_sentence.end() ? EditSet{0, {}} : it->second;
    if (args.remap) {
      TaggedSentence tagged =
          make_tagged_sentence(s, tag_blocks[s.sentence_index].tags);
      for (Edit& e : set.edits) e = remap_gold_type(e, tagged);
      entry.source_tags = tag_blocks[s.sentence_index].tags;
    }
    entry.gold.alternatives.push_back(std::move(set));
    entries.push_back(std::move(entry));
  }

  out << write_edit_file(entries);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"MaxMatch evaluation toolkit for grammatical error correction"};
  app.require_subcommand(1);

  ScoreArgs score_args;
  CLI::App* score = app.add_subcommand(
      "score", "Score system output against gold edits (R/P/F1, maximal edit matching)");
  score->add_option("gold", score_args.gold_path, "gold edit file ('-' for stdin)")->required();
  score->add_option("systems", score_args.system_paths,
                    "system output files, one tokenized sentence per line")
      ->required();
  score->add_option("--max-unchanged-words", score_args.max_unchanged_words,
                    "max matching words inside one phrase edit")
      ->check(CLI::Range(0, 10))
      ->capture_default_str();
  score->add_flag("--case-insensitive", score_args.case_insensitive,
                  "fold case when comparing tokens");
  score->add_flag("--per-type", score_args.per_type, "break scores down by error type bucket");
  score->add_flag("--no-alternatives", score_args.no_alternatives,
                  "score against annotator 0 only, ignoring alternative gold sets");
  score->add_option("--format", score_args.format, "output format: text, tsv, json")
      ->check(CLI::IsMember({"text", "tsv", "json"}))
      ->capture_default_str();
  score->add_option("--tags", score_args.tags_path,
                    "tagged hypothesis file (S/T blocks) for per-type precision");
  score->add_option("--threads", score_args.threads, "worker threads for extraction")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();

  StatsArgs stats_args;
  CLI::App* stats = app.add_subcommand("stats", "Report the gold corpus error type distribution");
  stats->add_option("gold", stats_args.gold_path, "gold edit file ('-' for stdin)")->required();
  stats->add_option("--format", stats_args.format, "output format: text, tsv, json")
      ->check(CLI::IsMember({"text", "tsv", "json"}))
      ->capture_default_str();

  ConvertArgs convert_args;
  CLI::App* convert = app.add_subcommand(
      "convert", "Convert stand-off SGML annotations to the token-level edit format");
  convert->add_option("sgml", convert_args.sgml_path, "MISTAKE annotation file ('-' for stdin)")
      ->required();
  convert->add_option("raw", convert_args.raw_path, "raw text file, one paragraph per line")
      ->required();
  convert->add_flag("--remap", convert_args.remap,
                    "remap legacy Wcip/Rloc types (needs --tags)");
  convert->add_option("--tags", convert_args.tags_path,
                      "tagged source file (S/T blocks) for --remap");

  std::vector<const char*> argv;
  argv.push_back("maxmatch");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (score->parsed()) return cmd_score(score_args, in, out);
    if (stats->parsed()) return cmd_stats(stats_args, in, out);
    if (convert->parsed()) return cmd_convert(convert_args, in, out);
    err << "error: no subcommand given\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace maxmatch
