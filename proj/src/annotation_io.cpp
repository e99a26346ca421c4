#include "maxmatch/annotation_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "maxmatch/errors.hpp"

namespace maxmatch {

namespace {

constexpr const char* kFieldSep = "|||";
constexpr const char* kNoneMarker = "-NONE-";

bool is_ws(unsigned char c) { return std::isspace(c) != 0; }

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && is_ws(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_ws(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) {
    if (cur.back() == '\r') cur.pop_back();
    lines.push_back(std::move(cur));
  }
  return lines;
}

std::vector<std::string> split_on(const std::string& s, const std::string& sep) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      parts.push_back(s.substr(pos));
      break;
    }
    parts.push_back(s.substr(pos, next - pos));
    pos = next + sep.size();
  }
  return parts;
}

long long parse_int(const std::string& s, int line, const char* what) {
  std::string t = trim(s);
  if (t.empty()) throw ParseError(std::string("missing ") + what, line);
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    throw ParseError(std::string("invalid ") + what + ": '" + t + "'", line);
  }
  if (pos != t.size())
    throw ParseError(std::string("invalid ") + what + ": '" + t + "'", line);
  return v;
}

}  // namespace

bool valid_error_tag(const std::string& tag) {
  return !tag.empty() && tag.find(kFieldSep) == std::string::npos &&
         tag.find('\n') == std::string::npos;
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (is_ws(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool spans_overlap(const Edit& a, const Edit& b) {
  if (a.is_insertion() && b.is_insertion()) return a.tok_start == b.tok_start;
  if (a.is_insertion()) return b.tok_start < a.tok_start && a.tok_start < b.tok_end;
  if (b.is_insertion()) return a.tok_start < b.tok_start && b.tok_start < a.tok_end;
  return a.tok_start < b.tok_end && b.tok_start < a.tok_end;
}

void validate_edit_set(const EditSet& set, int sentence_len, const std::string& context) {
  auto fail = [&](const std::string& msg) -> void {
    throw InvariantError(context.empty() ? msg : context + ": " + msg);
  };
  if (set.annotator_id < 0) fail("negative annotator id");
  for (const Edit& e : set.edits) {
    if (e.tok_start < 0 || e.tok_start > e.tok_end || e.tok_end > sentence_len)
      fail("edit span (" + std::to_string(e.tok_start) + ", " + std::to_string(e.tok_end) +
           ") out of range for sentence of length " + std::to_string(sentence_len));
    if (e.is_insertion() && e.is_deletion()) fail("edit is a no-op (empty span, empty replacement)");
    if (!valid_error_tag(e.etype)) fail("invalid error type tag '" + e.etype + "'");
  }
  for (size_t i = 1; i < set.edits.size(); ++i) {
    const Edit& prev = set.edits[i - 1];
    const Edit& cur = set.edits[i];
    if (std::make_pair(cur.tok_start, cur.tok_end) < std::make_pair(prev.tok_start, prev.tok_end))
      fail("edits not sorted by (tok_start, tok_end)");
  }
  for (size_t i = 0; i < set.edits.size(); ++i)
    for (size_t j = i + 1; j < set.edits.size(); ++j)
      if (spans_overlap(set.edits[i], set.edits[j])) {
        throw OverlapError((context.empty() ? std::string() : context + ": ") +
                           "overlapping edits at token spans (" +
                           std::to_string(set.edits[i].tok_start) + ", " +
                           std::to_string(set.edits[i].tok_end) + ") and (" +
                           std::to_string(set.edits[j].tok_start) + ", " +
                           std::to_string(set.edits[j].tok_end) + ")");
      }
}

std::vector<std::string> apply_edits(const std::vector<std::string>& source, const EditSet& set) {
  validate_edit_set(set, static_cast<int>(source.size()));
  std::vector<std::string> out;
  int cursor = 0;
  for (const Edit& e : set.edits) {
    for (int i = cursor; i < e.tok_start; ++i) out.push_back(source[i]);
    for (const auto& t : e.replacement) out.push_back(t);
    cursor = std::max(cursor, e.tok_end);
  }
  for (int i = cursor; i < static_cast<int>(source.size()); ++i) out.push_back(source[i]);
  return out;
}

// --- stand-off SGML --------------------------------------------------------

namespace {

// Minimal scanner for the flat MISTAKE schema; tracks line/column for
// diagnostics.  Not a general markup parser by design.
class SgmlScanner {
public:
  explicit SgmlScanner(const std::string& text) : text_(text) {}

  std::vector<MistakeRecord> parse() {
    std::vector<MistakeRecord> out;
    for (;;) {
      skip_ws();
      if (eof()) break;
      out.push_back(parse_mistake());
    }
    return out;
  }

private:
  bool eof() const { return pos_ >= text_.size(); }

  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (!eof() && is_ws(static_cast<unsigned char>(peek()))) advance();
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  void expect(const std::string& literal) {
    for (char c : literal) {
      if (eof() || peek() != c) fail("expected '" + literal + "'");
      advance();
    }
  }

  bool try_consume(const std::string& literal) {
    if (text_.compare(pos_, literal.size(), literal) != 0) return false;
    for (size_t i = 0; i < literal.size(); ++i) advance();
    return true;
  }

  std::string read_name() {
    std::string name;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      name.push_back(peek()), advance();
    if (name.empty()) fail("expected a name");
    return name;
  }

  // Body text up to the given closing tag, verbatim.
  std::string read_until(const std::string& close_tag) {
    size_t end = text_.find(close_tag, pos_);
    if (end == std::string::npos) fail("missing " + close_tag);
    std::string body = text_.substr(pos_, end - pos_);
    while (pos_ < end) advance();
    return body;
  }

  MistakeRecord parse_mistake() {
    int open_line = line_, open_col = col_;
    expect("<MISTAKE");

    bool seen[4] = {false, false, false, false};
    int vals[4] = {0, 0, 0, 0};
    static const char* kAttr[4] = {"start_par", "start_off", "end_par", "end_off"};

    for (;;) {
      skip_ws();
      if (eof()) fail("unterminated MISTAKE tag");
      if (try_consume(">")) break;
      std::string name = read_name();
      int idx = -1;
      for (int i = 0; i < 4; ++i)
        if (name == kAttr[i]) idx = i;
      if (idx < 0) fail("unknown MISTAKE attribute '" + name + "'");
      if (seen[idx]) fail("duplicate MISTAKE attribute '" + name + "'");
      skip_ws();
      expect("=");
      skip_ws();
      expect("\"");
      std::string value;
      while (!eof() && peek() != '"') value.push_back(peek()), advance();
      expect("\"");
      long long v = 0;
      try {
        size_t used = 0;
        v = std::stoll(value, &used);
        if (used != value.size() || v < 0) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        fail("attribute " + name + " is not a non-negative integer: '" + value + "'");
      }
      vals[idx] = static_cast<int>(v);
      seen[idx] = true;
    }
    for (int i = 0; i < 4; ++i)
      if (!seen[i])
        throw ParseError(std::string("MISTAKE missing attribute '") + kAttr[i] + "'", open_line,
                         open_col);

    MistakeRecord rec;
    rec.start_par = vals[0];
    rec.start_off = vals[1];
    rec.end_par = vals[2];
    rec.end_off = vals[3];
    if (std::make_pair(rec.start_par, rec.start_off) > std::make_pair(rec.end_par, rec.end_off))
      throw ParseError("MISTAKE span start after end", open_line, open_col);

    bool have_type = false, have_correction = false;
    for (;;) {
      skip_ws();
      if (try_consume("</MISTAKE>")) break;
      if (try_consume("<TYPE>")) {
        if (have_type) fail("duplicate TYPE element");
        rec.type_tag = trim(read_until("</TYPE>"));
        expect("</TYPE>");
        if (!valid_error_tag(rec.type_tag)) fail("invalid TYPE content");
        have_type = true;
      } else if (try_consume("<CORRECTION>")) {
        if (have_correction) fail("duplicate CORRECTION element");
        rec.correction = trim(read_until("</CORRECTION>"));
        expect("</CORRECTION>");
        have_correction = true;
      } else {
        fail("expected <TYPE>, <CORRECTION>, or </MISTAKE>");
      }
    }
    if (!have_type)
      throw ParseError("MISTAKE missing <TYPE> element", open_line, open_col);
    if (!have_correction)
      throw ParseError("MISTAKE missing <CORRECTION> element", open_line, open_col);
    return rec;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<MistakeRecord> parse_sgml_annotations(const std::string& sgml_text) {
  return SgmlScanner(sgml_text).parse();
}

std::map<int, EditSet> mistakes_to_edits(const Document& doc,
                                         const std::vector<MistakeRecord>& records) {
  std::map<int, std::vector<const Sentence*>> by_paragraph;
  std::map<int, int> length_by_index;
  for (const Sentence& s : doc.sentences) {
    by_paragraph[s.paragraph_index].push_back(&s);
    length_by_index[s.sentence_index] = s.size();
  }

  std::map<int, EditSet> out;
  for (const MistakeRecord& rec : records) {
    const std::string where = "MISTAKE (" + std::to_string(rec.start_par) + ", " +
                              std::to_string(rec.start_off) + ", " + std::to_string(rec.end_par) +
                              ", " + std::to_string(rec.end_off) + ")";
    if (rec.start_par != rec.end_par)
      throw SpanError(where + ": annotation spans paragraphs");
    if (rec.start_par >= static_cast<int>(doc.paragraphs.size()))
      throw SpanError(where + ": paragraph index out of range");

    // Locate the containing sentence: annotations across a sentence
    // boundary are rejected rather than guessed at.
    const Sentence* sent = nullptr;
    auto it = by_paragraph.find(rec.start_par);
    if (it != by_paragraph.end()) {
      for (const Sentence* s : it->second) {
        if (s->tokens.empty()) continue;
        int lo = s->tokens.front().char_start;
        int hi = s->tokens.back().char_end;
        bool contains = rec.start_off == rec.end_off
                            ? (lo <= rec.start_off && rec.start_off <= hi)
                            : (lo <= rec.start_off && rec.end_off <= hi);
        if (contains) {
          sent = s;
          break;
        }
      }
    }
    if (sent == nullptr) throw SpanError(where + ": span is not inside any one sentence");

    auto [tok_start, tok_end] = map_char_span_to_token_span(*sent, rec.start_off, rec.end_off);
    Edit edit;
    edit.tok_start = tok_start;
    edit.tok_end = tok_end;
    edit.replacement = split_tokens(rec.correction);
    edit.etype = rec.type_tag;
    if (edit.is_insertion() && edit.is_deletion())
      throw InvariantError(where + ": no-op annotation (empty span and empty correction)");
    out[sent->sentence_index].edits.push_back(edit);
  }

  for (auto& [idx, set] : out) {
    set.annotator_id = 0;
    std::stable_sort(set.edits.begin(), set.edits.end(), [](const Edit& a, const Edit& b) {
      return std::make_pair(a.tok_start, a.tok_end) < std::make_pair(b.tok_start, b.tok_end);
    });
    validate_edit_set(set, length_by_index[idx], "sentence " + std::to_string(idx));
  }
  return out;
}

// --- token-level edit file --------------------------------------------------

std::vector<SentenceAnnotation> parse_edit_file(const std::string& text) {
  std::vector<SentenceAnnotation> out;
  std::vector<std::string> lines = split_lines(text);

  size_t i = 0;
  const size_t n = lines.size();
  while (i < n) {
    if (trim(lines[i]).empty()) {
      ++i;
      continue;
    }
    // Start of a block.
    int block_first_line = static_cast<int>(i) + 1;
    if (lines[i] != "S" && lines[i].rfind("S ", 0) != 0)
      throw ParseError("block must start with an S line", block_first_line);

    SentenceAnnotation entry;
    entry.source_tokens = split_tokens(lines[i].substr(1));
    ++i;

    // Group A lines by annotator id, in order of first appearance.
    std::vector<int> annotator_order;
    std::map<int, EditSet> sets;
    std::map<int, bool> has_noop;

    while (i < n && !trim(lines[i]).empty()) {
      const std::string& line = lines[i];
      const int line_no = static_cast<int>(i) + 1;
      if (line.rfind("T", 0) == 0 && (line.size() == 1 || line[1] == ' ')) {
        if (!entry.source_tags.empty())
          throw ParseError("duplicate T line in block", line_no);
        entry.source_tags = split_tokens(line.substr(1));
        if (entry.source_tags.size() != entry.source_tokens.size())
          throw ParseError("T line has " + std::to_string(entry.source_tags.size()) +
                               " tags for " + std::to_string(entry.source_tokens.size()) +
                               " tokens",
                           line_no);
        if (entry.source_tags.empty() && !entry.source_tokens.empty())
          throw ParseError("empty T line", line_no);
        ++i;
        continue;
      }
      if (line.rfind("S", 0) == 0 && (line.size() == 1 || line[1] == ' '))
        throw ParseError("second S line in block (blocks hold one sentence)", line_no);
      if (line.rfind("A ", 0) != 0)
        throw ParseError("expected an A line", line_no);

      std::vector<std::string> fields = split_on(line.substr(2), kFieldSep);
      if (fields.size() != 6)
        throw ParseError("A line has " + std::to_string(fields.size()) +
                             " fields, expected 6 separated by '|||'",
                         line_no);

      std::vector<std::string> offsets = split_tokens(fields[0]);
      if (offsets.size() != 2)
        throw ParseError("A line must begin with two token offsets", line_no);
      long long start = parse_int(offsets[0], line_no, "token offset");
      long long end = parse_int(offsets[1], line_no, "token offset");
      std::string etype = trim(fields[1]);
      long long annotator = parse_int(fields[5], line_no, "annotator id");
      if (annotator < 0) throw ParseError("negative annotator id", line_no);

      int id = static_cast<int>(annotator);
      if (sets.find(id) == sets.end()) {
        sets[id] = EditSet{id, {}};
        annotator_order.push_back(id);
      }

      if (etype == tags::noop) {
        if (!sets[id].edits.empty())
          throw InvariantError("line " + std::to_string(line_no) +
                               ": annotator " + std::to_string(id) + " has both edits and a noop");
        has_noop[id] = true;
        ++i;
        continue;
      }
      if (has_noop[id])
        throw InvariantError("line " + std::to_string(line_no) + ": annotator " +
                             std::to_string(id) + " has both a noop and edits");

      if (!valid_error_tag(etype))
        throw ParseError("invalid error type tag '" + etype + "'", line_no);

      Edit edit;
      edit.tok_start = static_cast<int>(start);
      edit.tok_end = static_cast<int>(end);
      std::string correction = fields[2];
      edit.replacement = trim(correction) == kNoneMarker ? std::vector<std::string>{}
                                                         : split_tokens(correction);
      edit.etype = etype;
      sets[id].edits.push_back(std::move(edit));
      ++i;
    }

    for (int id : annotator_order) {
      try {
        validate_edit_set(sets[id], static_cast<int>(entry.source_tokens.size()));
      } catch (const Error& e) {
        throw InvariantError("block at line " + std::to_string(block_first_line) +
                             ", annotator " + std::to_string(id) + ": " + e.what());
      }
      entry.gold.alternatives.push_back(std::move(sets[id]));
    }
    if (entry.gold.alternatives.empty())
      entry.gold.alternatives.push_back(EditSet{0, {}});  // implicit "no errors"

    out.push_back(std::move(entry));
  }
  return out;
}

std::string write_edit_file(const std::vector<SentenceAnnotation>& entries) {
  std::ostringstream os;
  bool first = true;
  for (const SentenceAnnotation& entry : entries) {
    if (!first) os << "\n";
    first = false;

    os << "S";
    for (const auto& t : entry.source_tokens) os << " " << t;
    os << "\n";
    if (!entry.source_tags.empty()) {
      if (entry.source_tags.size() != entry.source_tokens.size())
        throw InvariantError("tag count differs from token count");
      os << "T";
      for (const auto& t : entry.source_tags) os << " " << t;
      os << "\n";
    }

    const auto& alts = entry.gold.alternatives;
    if (alts.empty()) throw InvariantError("GoldAlternatives must be non-empty");
    for (size_t k = 0; k < alts.size(); ++k)
      for (size_t j = k + 1; j < alts.size(); ++j)
        if (alts[k].annotator_id == alts[j].annotator_id)
          throw InvariantError("duplicate annotator id " +
                               std::to_string(alts[k].annotator_id));

    for (const EditSet& set : alts) {
      validate_edit_set(set, static_cast<int>(entry.source_tokens.size()));
      if (set.edits.empty()) {
        // The lone-annotator-0 empty set is the implicit default; anything
        // else must be asserted explicitly to survive the round trip.
        if (alts.size() == 1 && set.annotator_id == 0) continue;
        os << "A -1 -1" << kFieldSep << tags::noop << kFieldSep << kNoneMarker << kFieldSep
           << "REQUIRED" << kFieldSep << kNoneMarker << kFieldSep << set.annotator_id << "\n";
        continue;
      }
      for (const Edit& e : set.edits) {
        std::string correction;
        for (size_t j = 0; j < e.replacement.size(); ++j) {
          if (e.replacement[j].empty() || e.replacement[j].find(kFieldSep) != std::string::npos ||
              split_tokens(e.replacement[j]).size() != 1)
            throw InvariantError("replacement token '" + e.replacement[j] +
                                 "' is not serializable");
          if (j) correction += " ";
          correction += e.replacement[j];
        }
        os << "A " << e.tok_start << " " << e.tok_end << kFieldSep << e.etype << kFieldSep
           << correction << kFieldSep << "REQUIRED" << kFieldSep << kNoneMarker << kFieldSep
           << set.annotator_id << "\n";
      }
    }
  }
  return os.str();
}

std::vector<TaggedBlock> parse_tagged_file(const std::string& text) {
  std::vector<TaggedBlock> out;
  for (const SentenceAnnotation& entry : parse_edit_file(text)) {
    if (entry.source_tags.empty() && !entry.source_tokens.empty())
      throw ParseError("tagged file block " + std::to_string(out.size() + 1) +
                       " is missing its T line");
    out.push_back(TaggedBlock{entry.source_tokens, entry.source_tags});
  }
  return out;
}

std::vector<std::vector<std::string>> parse_plain_sentences(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  for (const std::string& line : split_lines(text)) out.push_back(split_tokens(line));
  return out;
}

}  // namespace maxmatch
