#include "maxmatch/lattice.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "maxmatch/errors.hpp"

namespace maxmatch {

namespace {

constexpr uint8_t kDiag = 1;  // from (i-1, j-1): match or substitution
constexpr uint8_t kDel = 2;   // from (i-1, j): delete S[i-1]
constexpr uint8_t kIns = 4;   // from (i, j-1): insert H[j-1]

constexpr int kInf = std::numeric_limits<int>::max() / 4;

void internal_check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("lattice internal invariant violated: ") + what);
}

std::string fold_case(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Token ids over the pair of sentences; equality via ints in the DP.
std::pair<std::vector<int>, std::vector<int>> intern_tokens(const Sentence& src,
                                                            const Sentence& hyp,
                                                            bool case_sensitive) {
  std::unordered_map<std::string, int> ids;
  auto intern = [&](const std::string& text) {
    std::string key = case_sensitive ? text : fold_case(text);
    auto [it, inserted] = ids.emplace(std::move(key), static_cast<int>(ids.size()));
    return it->second;
  };
  std::vector<int> s_ids, h_ids;
  s_ids.reserve(src.tokens.size());
  h_ids.reserve(hyp.tokens.size());
  for (const auto& t : src.tokens) s_ids.push_back(intern(t.text));
  for (const auto& t : hyp.tokens) h_ids.push_back(intern(t.text));
  return {std::move(s_ids), std::move(h_ids)};
}

int kind_rank(EditKind k) {
  switch (k) {
    case EditKind::match: return 0;
    case EditKind::substitution: return 1;
    case EditKind::deletion: return 2;
    case EditKind::insertion: return 3;
    case EditKind::phrase: return 4;
  }
  return 5;
}

bool edge_order(const LatticeEdge& a, const LatticeEdge& b) {
  auto key = [](const LatticeEdge& e) {
    return std::make_tuple(e.from_i, e.from_j, e.to_i, e.to_j, kind_rank(e.kind));
  };
  return key(a) < key(b);
}

std::string normalized_replacement(const std::vector<std::string>& replacement,
                                   bool case_sensitive) {
  std::string joined;
  for (const auto& t : replacement) {
    if (!joined.empty()) joined += ' ';
    joined += t;
  }
  std::string normalized;
  for (const auto& t : split_tokens(joined)) {
    if (!normalized.empty()) normalized += ' ';
    normalized += t;
  }
  return case_sensitive ? normalized : fold_case(normalized);
}

}  // namespace

void validate_params(const MatchParams& params) {
  if (params.max_unchanged_words < 0 || params.max_unchanged_words > 10)
    throw InvariantError("max_unchanged_words must be between 0 and 10, got " +
                         std::to_string(params.max_unchanged_words));
  if (params.max_cells <= 0) throw InvariantError("max_cells must be positive");
}

Edit candidate_edit(const LatticeEdge& edge, const Sentence& hyp) {
  internal_check(edge.is_change(), "candidate_edit on a match edge");
  Edit e;
  e.tok_start = edge.from_i;
  e.tok_end = edge.to_i;
  for (int j = edge.from_j; j < edge.to_j; ++j) e.replacement.push_back(hyp.tokens[j].text);
  e.etype = tags::unknown;
  return e;
}

std::vector<Edit> AlignmentLattice::candidate_edits(const Sentence& hyp) const {
  std::vector<Edit> out;
  for (const auto& edge : edges)
    if (edge.is_change()) out.push_back(candidate_edit(edge, hyp));
  return out;
}

bool edit_matches(const Edit& gold, const Edit& sys, const MatchParams& params) {
  if (gold.tok_start != sys.tok_start || gold.tok_end != sys.tok_end) return false;
  return normalized_replacement(gold.replacement, params.case_sensitive) ==
         normalized_replacement(sys.replacement, params.case_sensitive);
}

AlignmentLattice build_lattice(const Sentence& src, const Sentence& hyp,
                               const MatchParams& params) {
  validate_params(params);
  const int n = src.size();
  const int m = hyp.size();
  if (static_cast<long long>(n) * static_cast<long long>(m) > params.max_cells)
    throw SizeError("alignment table of " + std::to_string(static_cast<long long>(n) * m) +
                    " cells exceeds the cap of " + std::to_string(params.max_cells));

  auto [s_ids, h_ids] = intern_tokens(src, hyp, params.case_sensitive);

  // Unit-cost Levenshtein table keeping every move that attains the cell
  // minimum, so the lattice covers all minimum-cost alignments.
  const int width = m + 1;
  std::vector<int> cost(static_cast<size_t>(n + 1) * width, 0);
  std::vector<uint8_t> moves(static_cast<size_t>(n + 1) * width, 0);
  auto at = [width](int i, int j) { return static_cast<size_t>(i) * width + j; };

  for (int i = 1; i <= n; ++i) {
    cost[at(i, 0)] = i;
    moves[at(i, 0)] = kDel;
  }
  for (int j = 1; j <= m; ++j) {
    cost[at(0, j)] = j;
    moves[at(0, j)] = kIns;
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      const bool equal = s_ids[i - 1] == h_ids[j - 1];
      const int diag = cost[at(i - 1, j - 1)] + (equal ? 0 : 1);
      const int del = cost[at(i - 1, j)] + 1;
      const int ins = cost[at(i, j - 1)] + 1;
      const int best = std::min(diag, std::min(del, ins));
      uint8_t mask = 0;
      if (diag == best) mask |= kDiag;
      if (del == best) mask |= kDel;
      if (ins == best) mask |= kIns;
      cost[at(i, j)] = best;
      moves[at(i, j)] = mask;
    }
  }

  // Keep the edges reachable backward from the final node: exactly those on
  // some minimum-cost path.
  AlignmentLattice lattice;
  lattice.src_len = n;
  lattice.hyp_len = m;

  std::vector<uint8_t> seen(static_cast<size_t>(n + 1) * width, 0);
  std::vector<std::pair<int, int>> stack;
  stack.emplace_back(n, m);
  seen[at(n, m)] = 1;
  while (!stack.empty()) {
    auto [i, j] = stack.back();
    stack.pop_back();
    const uint8_t mask = moves[at(i, j)];
    auto visit = [&](int pi, int pj, EditKind kind, int c) {
      lattice.edges.push_back(LatticeEdge{pi, pj, i, j, kind, c});
      if (!seen[at(pi, pj)]) {
        seen[at(pi, pj)] = 1;
        stack.emplace_back(pi, pj);
      }
    };
    if (mask & kDiag) {
      const bool equal = s_ids[i - 1] == h_ids[j - 1];
      visit(i - 1, j - 1, equal ? EditKind::match : EditKind::substitution, equal ? 0 : 1);
    }
    if (mask & kDel) visit(i - 1, j, EditKind::deletion, 1);
    if (mask & kIns) visit(i, j - 1, EditKind::insertion, 1);
  }

  // Phrase edges: one edge per node pair joined by a unit path that holds at
  // least one change and at most max_unchanged_words match edges.  Per-pair
  // spans fully determine the candidate edit, so one edge per pair suffices.
  std::vector<std::pair<int, int>> nodes;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j)
      if (seen[at(i, j)]) nodes.emplace_back(i, j);
  std::sort(nodes.begin(), nodes.end(), [](auto a, auto b) {
    return std::make_pair(a.first + a.second, a.first) <
           std::make_pair(b.first + b.second, b.first);
  });
  std::vector<int> node_index(static_cast<size_t>(n + 1) * width, -1);
  for (size_t k = 0; k < nodes.size(); ++k) node_index[at(nodes[k].first, nodes[k].second)] =
      static_cast<int>(k);

  std::vector<std::vector<int>> unit_out(nodes.size());
  for (size_t e = 0; e < lattice.edges.size(); ++e) {
    const auto& edge = lattice.edges[e];
    unit_out[node_index[at(edge.from_i, edge.from_j)]].push_back(static_cast<int>(e));
  }

  const int max_matches = params.max_unchanged_words;

  // pure[v]: fewest match edges on an all-match path from u; change[v]: on a
  // path containing at least one change edge.
  std::vector<int> pure(nodes.size());
  std::vector<int> change(nodes.size());
  for (size_t u = 0; u < nodes.size(); ++u) {
    std::fill(pure.begin(), pure.end(), kInf);
    std::fill(change.begin(), change.end(), kInf);
    pure[u] = 0;
    for (size_t v = u; v < nodes.size(); ++v) {
      if (pure[v] >= kInf && change[v] >= kInf) continue;
      for (int e_idx : unit_out[v]) {
        const auto& edge = lattice.edges[e_idx];
        const int w = node_index[at(edge.to_i, edge.to_j)];
        if (edge.kind == EditKind::match) {
          if (pure[v] + 1 < pure[w]) pure[w] = pure[v] + 1;
          if (change[v] < kInf && change[v] + 1 < change[w]) change[w] = change[v] + 1;
        } else {
          const int through = std::min(pure[v], change[v]);
          if (through < change[w]) change[w] = through;
        }
      }
    }
    for (size_t v = u + 1; v < nodes.size(); ++v) {
      if (change[v] > max_matches) continue;
      const auto [ui, uj] = nodes[u];
      const auto [vi, vj] = nodes[v];
      // A pair joined by a single unit edge is never also joined by a longer
      // path in this lattice, so only skip direct neighbors.
      bool unit_adjacent = false;
      for (int e_idx : unit_out[u]) {
        const auto& edge = lattice.edges[e_idx];
        if (edge.to_i == vi && edge.to_j == vj) unit_adjacent = true;
      }
      if (unit_adjacent) continue;
      const int c = cost[at(vi, vj)] - cost[at(ui, uj)];
      lattice.edges.push_back(LatticeEdge{ui, uj, vi, vj, EditKind::phrase, c});
    }
  }

  std::sort(lattice.edges.begin(), lattice.edges.end(), edge_order);
  for (const auto& e : lattice.edges)
    internal_check(e.to_i >= e.from_i && e.to_j >= e.from_j &&
                       (e.to_i > e.from_i || e.to_j > e.from_j),
                   "edge does not go forward");
  return lattice;
}

namespace {

// Lexicographic path objective: most gold matches, then fewest edits, then
// lowest summed cost, then most preserved match edges (so phrase edits do
// not swallow matching context when everything else is equal).
struct Objective {
  int matches = -1;  // -1 marks unreachable
  int edits = 0;
  int cost = 0;
  int kept_matches = 0;

  bool reachable() const { return matches >= 0; }

  bool better_than(const Objective& o) const {
    if (!o.reachable()) return true;
    if (matches != o.matches) return matches > o.matches;
    if (edits != o.edits) return edits < o.edits;
    if (cost != o.cost) return cost < o.cost;
    return kept_matches > o.kept_matches;
  }
};

}  // namespace

ExtractionResult extract_system_edits(const Sentence& src, const Sentence& hyp,
                                      const EditSet& gold, const MatchParams& params) {
  validate_edit_set(gold, src.size(), "gold edits");
  AlignmentLattice lattice = build_lattice(src, hyp, params);
  const int n = lattice.src_len;
  const int m = lattice.hyp_len;
  const int width = m + 1;
  auto at = [width](int i, int j) { return static_cast<size_t>(i) * width + j; };

  std::vector<std::string> gold_norm;
  gold_norm.reserve(gold.edits.size());
  for (const auto& g : gold.edits)
    gold_norm.push_back(normalized_replacement(g.replacement, params.case_sensitive));

  // Matched flag and candidate edit per change edge.
  std::vector<Edit> candidates(lattice.edges.size());
  std::vector<uint8_t> matched(lattice.edges.size(), 0);
  for (size_t e = 0; e < lattice.edges.size(); ++e) {
    const auto& edge = lattice.edges[e];
    if (!edge.is_change()) continue;
    candidates[e] = candidate_edit(edge, hyp);
    const std::string norm =
        normalized_replacement(candidates[e].replacement, params.case_sensitive);
    for (size_t g = 0; g < gold.edits.size(); ++g) {
      if (gold.edits[g].tok_start == edge.from_i && gold.edits[g].tok_end == edge.to_i &&
          gold_norm[g] == norm) {
        matched[e] = 1;
        break;
      }
    }
  }

  // Node ordering and adjacency.
  std::vector<int> node_index(static_cast<size_t>(n + 1) * width, -1);
  std::vector<std::pair<int, int>> nodes;
  for (const auto& edge : lattice.edges) {
    for (auto [i, j] : {std::make_pair(edge.from_i, edge.from_j),
                        std::make_pair(edge.to_i, edge.to_j)}) {
      if (node_index[at(i, j)] < 0) {
        node_index[at(i, j)] = 0;  // mark
        nodes.emplace_back(i, j);
      }
    }
  }
  if (nodes.empty()) nodes.emplace_back(0, 0);  // empty-vs-empty sentences
  std::sort(nodes.begin(), nodes.end(), [](auto a, auto b) {
    return std::make_pair(a.first + a.second, a.first) <
           std::make_pair(b.first + b.second, b.first);
  });
  for (size_t k = 0; k < nodes.size(); ++k)
    node_index[at(nodes[k].first, nodes[k].second)] = static_cast<int>(k);

  std::vector<std::vector<int>> out_edges(nodes.size());
  for (size_t e = 0; e < lattice.edges.size(); ++e)
    out_edges[node_index[at(lattice.edges[e].from_i, lattice.edges[e].from_j)]].push_back(
        static_cast<int>(e));

  // DAG relaxation over (node, last-edge-was-pure-insertion).  The flag
  // forbids two consecutive pure insertions, which as edits would collide on
  // one insertion point.
  struct Pred {
    int node = -1;
    int flag = 0;
    int edge = -1;
  };
  std::vector<std::array<Objective, 2>> best(nodes.size());
  std::vector<std::array<Pred, 2>> pred(nodes.size());
  const int start = node_index[at(0, 0)];
  internal_check(start >= 0, "missing origin node");
  best[start][0] = Objective{0, 0, 0, 0};

  for (size_t v = 0; v < nodes.size(); ++v) {
    for (int flag = 0; flag < 2; ++flag) {
      const Objective& cur = best[v][flag];
      if (!cur.reachable()) continue;
      for (int e_idx : out_edges[v]) {
        const auto& edge = lattice.edges[e_idx];
        if (flag == 1 && edge.is_pure_insertion()) continue;
        const int w = node_index[at(edge.to_i, edge.to_j)];
        const int nf = edge.is_pure_insertion() ? 1 : 0;
        Objective cand{cur.matches + (matched[e_idx] ? 1 : 0),
                       cur.edits + (edge.is_change() ? 1 : 0), cur.cost + edge.cost,
                       cur.kept_matches + (edge.kind == EditKind::match ? 1 : 0)};
        if (cand.better_than(best[w][nf])) {
          best[w][nf] = cand;
          pred[w][nf] = Pred{static_cast<int>(v), flag, e_idx};
        }
      }
    }
  }

  const int sink = node_index[at(n, m)];
  internal_check(sink >= 0, "missing final node");
  int flag = 0;
  if (!best[sink][0].reachable() ||
      (best[sink][1].reachable() && best[sink][1].better_than(best[sink][0])))
    flag = 1;
  internal_check(best[sink][flag].reachable(), "final node unreachable");

  std::vector<int> path;
  for (int v = sink, f = flag; !(v == start && f == 0);) {
    const Pred& p = pred[v][f];
    internal_check(p.edge >= 0, "broken predecessor chain");
    path.push_back(p.edge);
    v = p.node;
    f = p.flag;
  }
  std::reverse(path.begin(), path.end());

  ExtractionResult result;
  result.edits.annotator_id = gold.annotator_id;
  for (int e_idx : path) {
    const auto& edge = lattice.edges[e_idx];
    if (!edge.is_change()) continue;
    ExtractedEdit detail;
    detail.edit = candidates[e_idx];
    detail.hyp_start = edge.from_j;
    detail.hyp_end = edge.to_j;
    detail.matched = matched[e_idx] != 0;
    result.match_count += detail.matched ? 1 : 0;
    result.edits.edits.push_back(detail.edit);
    result.detail.push_back(std::move(detail));
  }

  internal_check(result.match_count == best[sink][flag].matches, "match count mismatch");
  validate_edit_set(result.edits, src.size(), "extracted edits");
  auto folded = [&](std::vector<std::string> v) {
    if (!params.case_sensitive)
      for (auto& s : v) s = fold_case(s);
    return v;
  };
  internal_check(folded(apply_edits(src.token_texts(), result.edits)) ==
                     folded(hyp.token_texts()),
                 "extracted edits do not reproduce the hypothesis");
  return result;
}

EditSet word_diff_edits(const Sentence& src, const Sentence& hyp, const MatchParams& params) {
  validate_params(params);
  const int n = src.size();
  const int m = hyp.size();
  auto [s_ids, h_ids] = intern_tokens(src, hyp, params.case_sensitive);

  const int width = m + 1;
  std::vector<int> cost(static_cast<size_t>(n + 1) * width, 0);
  auto at = [width](int i, int j) { return static_cast<size_t>(i) * width + j; };
  for (int i = 1; i <= n; ++i) cost[at(i, 0)] = i;
  for (int j = 1; j <= m; ++j) cost[at(0, j)] = j;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) {
      const bool equal = s_ids[i - 1] == h_ids[j - 1];
      cost[at(i, j)] = std::min({cost[at(i - 1, j - 1)] + (equal ? 0 : 1),
                                 cost[at(i - 1, j)] + 1, cost[at(i, j - 1)] + 1});
    }

  // One canonical path, preferring match > substitution > deletion >
  // insertion, walked backward from the final cell.
  struct Op {
    int i, j;  // position before the op
    EditKind kind;
  };
  std::vector<Op> ops;
  int i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && s_ids[i - 1] == h_ids[j - 1] &&
        cost[at(i, j)] == cost[at(i - 1, j - 1)]) {
      ops.push_back(Op{i - 1, j - 1, EditKind::match});
      --i, --j;
    } else if (i > 0 && j > 0 && s_ids[i - 1] != h_ids[j - 1] &&
               cost[at(i, j)] == cost[at(i - 1, j - 1)] + 1) {
      ops.push_back(Op{i - 1, j - 1, EditKind::substitution});
      --i, --j;
    } else if (i > 0 && cost[at(i, j)] == cost[at(i - 1, j)] + 1) {
      ops.push_back(Op{i - 1, j, EditKind::deletion});
      --i;
    } else {
      ops.push_back(Op{i, j - 1, EditKind::insertion});
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());

  // Merge contiguous change runs, the way a word diff reports hunks.
  EditSet out;
  size_t k = 0;
  while (k < ops.size()) {
    if (ops[k].kind == EditKind::match) {
      ++k;
      continue;
    }
    size_t end = k;
    while (end < ops.size() && ops[end].kind != EditKind::match) ++end;
    Edit e;
    e.tok_start = ops[k].i;
    e.tok_end = ops[end - 1].i + (ops[end - 1].kind == EditKind::insertion ? 0 : 1);
    const int hyp_start = ops[k].j;
    const int hyp_end = ops[end - 1].j + (ops[end - 1].kind == EditKind::deletion ? 0 : 1);
    for (int h = hyp_start; h < hyp_end; ++h) e.replacement.push_back(hyp.tokens[h].text);
    e.etype = tags::unknown;
    if (!(e.is_insertion() && e.is_deletion())) out.edits.push_back(e);
    k = end;
  }
  validate_edit_set(out, src.size(), "word-diff edits");
  return out;
}

}  // namespace maxmatch
