#pragma once

// Nod-word enumeration and counting.
//
// Nod-words of positive length are exactly the walks in the letter graph:
// nodes are the edge letters e_i, e_i^*, with an arc x -> y whenever
// r(x) = s(y) and xy is not forbidden. Vertex words are the length-0 words.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "wlpa/error.hpp"
#include "wlpa/graph.hpp"
#include "wlpa/word.hpp"

namespace wlpa {

using BigCount = boost::multiprecision::cpp_int;

class LetterGraph {
 public:
  LetterGraph(const WeightedGraph& g, const SpecialEdgeChoice& choice) {
    for (Letter x : generators(g))
      if (!x.is_vertex()) {
        index_.emplace(x.code(), letters_.size());
        letters_.push_back(x);
      }
    succ_.resize(letters_.size());
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      const Letter x = letters_[i];
      for (std::size_t j = 0; j < letters_.size(); ++j) {
        const Letter y = letters_[j];
        if (letter_range(g, x) == letter_source(g, y) && !is_forbidden_pair(g, choice, x, y)) succ_[i].push_back(j);
      }
    }
  }

  std::size_t size() const noexcept { return letters_.size(); }
  Letter letter(std::size_t i) const { return letters_.at(i); }
  std::optional<std::size_t> index(Letter x) const {
    auto it = index_.find(x.code());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const std::vector<std::size_t>& successors(std::size_t i) const { return succ_.at(i); }

 private:
  std::vector<Letter> letters_;
  std::vector<std::vector<std::size_t>> succ_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

struct NodwordFilter {
  std::optional<VertexIndex> source;
  std::optional<VertexIndex> range;
  std::optional<std::vector<int>> degree;
};

struct Enumeration {
  std::vector<Word> words;
  bool truncated = false;
};

inline constexpr std::size_t kDefaultBudget = 10'000'000;

inline std::vector<int> letter_degree_vector(const WeightedGraph& g, const Word& w) {
  std::vector<int> d(g.max_weight(), 0);
  for (Letter x : w) {
    if (x.kind() == LetterKind::Edge) ++d.at(x.strand() - 1);
    if (x.kind() == LetterKind::Star) --d.at(x.strand() - 1);
  }
  return d;
}

/// All nod-words of path length <= max_len matching the filter, in shortlex order.
/// Stops with truncated = true once more than `budget` frontier words were generated.
inline Enumeration enumerate_nodwords(const WeightedGraph& g, const SpecialEdgeChoice& choice, std::size_t max_len,
                                      const NodwordFilter& filter = {}, std::size_t budget = kDefaultBudget) {
  if (filter.source) detail::check_vertex(g, *filter.source);
  if (filter.range) detail::check_vertex(g, *filter.range);
  if (filter.degree && filter.degree->size() != g.max_weight())
    throw Error("degree filter must have " + std::to_string(g.max_weight()) + " components");

  Enumeration out;
  auto accept = [&](const Word& w) {
    const VertexIndex s = letter_source(g, w.front()), r = letter_range(g, w.back());
    if (filter.source && *filter.source != s) return;
    if (filter.range && *filter.range != r) return;
    if (filter.degree && *filter.degree != letter_degree_vector(g, w)) return;
    out.words.push_back(w);
  };
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) accept(Word{Letter::vertex(v)});
  if (max_len == 0) return out;

  const LetterGraph lg(g, choice);
  std::vector<std::vector<std::size_t>> frontier;
  std::size_t generated = 0;
  for (std::size_t i = 0; i < lg.size(); ++i) frontier.push_back({i});
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    generated += frontier.size();
    if (generated > budget) {
      out.truncated = true;
      return out;
    }
    for (const auto& path : frontier) {
      Word w;
      w.reserve(path.size());
      for (std::size_t i : path) w.push_back(lg.letter(i));
      accept(w);
    }
    if (len == max_len) break;
    std::vector<std::vector<std::size_t>> next;
    for (const auto& path : frontier) {
      for (std::size_t j : lg.successors(path.back())) {
        auto p = path;
        p.push_back(j);
        next.push_back(std::move(p));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// growth(k) for k = 0..n: the number of nod-words of length <= k.
inline std::vector<BigCount> growth_table(const WeightedGraph& g, const SpecialEdgeChoice& choice, std::size_t n) {
  const LetterGraph lg(g, choice);
  std::vector<BigCount> table;
  BigCount total = g.vertex_count();
  table.push_back(total);
  std::vector<BigCount> walks(lg.size(), 1);
  for (std::size_t len = 1; len <= n; ++len) {
    if (len > 1) {
      std::vector<BigCount> next(lg.size(), 0);
      for (std::size_t i = 0; i < lg.size(); ++i)
        if (walks[i] != 0)
          for (std::size_t j : lg.successors(i)) next[j] += walks[i];
      walks = std::move(next);
    }
    for (const auto& c : walks) total += c;
    table.push_back(total);
  }
  return table;
}

inline BigCount growth(const WeightedGraph& g, const SpecialEdgeChoice& choice, std::size_t n) {
  return growth_table(g, choice, n).back();
}

struct GrowthEnumeration {
  std::vector<std::uint64_t> table;  // entries for lengths 0..k where k <= n
  bool truncated = false;
};

/// growth via explicit enumeration, counting words level by level under a frontier budget.
inline GrowthEnumeration growth_by_enumeration(const WeightedGraph& g, const SpecialEdgeChoice& choice,
                                               std::size_t n, std::size_t budget = kDefaultBudget) {
  GrowthEnumeration out;
  std::uint64_t total = g.vertex_count();
  out.table.push_back(total);
  const LetterGraph lg(g, choice);
  std::vector<std::vector<std::size_t>> frontier;
  for (std::size_t i = 0; i < lg.size(); ++i) frontier.push_back({i});
  std::size_t generated = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    generated += frontier.size();
    if (generated > budget) {
      out.truncated = true;
      return out;
    }
    total += frontier.size();
    out.table.push_back(total);
    if (len == n) break;
    std::vector<std::vector<std::size_t>> next;
    for (const auto& path : frontier)
      for (std::size_t j : lg.successors(path.back())) {
        auto p = path;
        p.push_back(j);
        next.push_back(std::move(p));
      }
    frontier = std::move(next);
  }
  return out;
}

/// Number of degree-0 nod-words of length <= max_len.
inline BigCount zero_component_count(const WeightedGraph& g, const SpecialEdgeChoice& choice, std::size_t max_len) {
  const LetterGraph lg(g, choice);
  const std::size_t n = g.max_weight();
  using State = std::pair<std::size_t, std::vector<int>>;
  BigCount total = g.vertex_count();
  auto magnitude = [](const std::vector<int>& d) {
    std::size_t m = 0;
    for (int x : d) m += static_cast<std::size_t>(x < 0 ? -x : x);
    return m;
  };
  std::map<State, BigCount> layer;
  for (std::size_t i = 0; i < lg.size(); ++i) {
    std::vector<int> d(n, 0);
    const Letter x = lg.letter(i);
    d.at(x.strand() - 1) = x.kind() == LetterKind::Edge ? 1 : -1;
    if (max_len >= 1 && magnitude(d) <= max_len - 1) layer[{i, d}] += 1;
  }
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (const auto& [state, count] : layer)
      if (magnitude(state.second) == 0) total += count;
    if (len == max_len) break;
    const std::size_t remaining = max_len - len - 1;
    std::map<State, BigCount> next;
    for (const auto& [state, count] : layer) {
      for (std::size_t j : lg.successors(state.first)) {
        std::vector<int> d = state.second;
        const Letter y = lg.letter(j);
        d[y.strand() - 1] += y.kind() == LetterKind::Edge ? 1 : -1;
        if (magnitude(d) > remaining) continue;
        next[{j, std::move(d)}] += count;
      }
    }
    layer = std::move(next);
  }
  return total;
}

/// Length bound for the e_2 ... e_2^* search: 2 |E^0| w_max + 2.
inline std::size_t key_search_bound(const WeightedGraph& g) {
  return 2 * g.vertex_count() * g.max_weight() + 2;
}

/// Shortest nod-word e_2 ... e_2^* over weighted edges e (ties: earlier e, then letter order).
/// Returns nullopt when none of length <= max_len exists.
inline std::optional<Word> find_key_nodpath(const WeightedGraph& g, const SpecialEdgeChoice& choice,
                                            std::size_t max_len) {
  const LetterGraph lg(g, choice);
  std::optional<Word> best;
  for (EdgeIndex e : weighted_edges(g)) {
    const std::size_t start = *lg.index(Letter::edge(e, 2));
    const std::size_t goal = *lg.index(Letter::star(e, 2));
    std::vector<std::optional<std::size_t>> parent(lg.size());
    std::vector<std::size_t> depth(lg.size(), 0);
    std::vector<char> seen(lg.size(), 0);
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    depth[start] = 1;
    std::optional<std::size_t> hit;
    // goal != start, so the word has length >= 2 and the goal is reached as a successor.
    while (!queue.empty() && !hit) {
      const std::size_t i = queue.front();
      queue.pop_front();
      if (depth[i] >= max_len) continue;
      for (std::size_t j : lg.successors(i)) {
        if (seen[j]) continue;
        seen[j] = 1;
        parent[j] = i;
        depth[j] = depth[i] + 1;
        if (j == goal) {
          hit = j;
          break;
        }
        queue.push_back(j);
      }
    }
    if (!hit) continue;
    Word w;
    for (std::optional<std::size_t> at = *hit; at; at = parent[*at]) w.push_back(lg.letter(*at));
    std::reverse(w.begin(), w.end());
    if (!best || w.size() < best->size()) best = std::move(w);
  }
  return best;
}

}  // namespace wlpa
