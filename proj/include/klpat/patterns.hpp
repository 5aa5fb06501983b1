#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "klpat/error.hpp"

namespace klpat {

using Permutation = std::vector<int>;

/// One-line notation: "4231" (n <= 9) or "10,2,3,...".
inline Permutation parse_permutation(std::string_view text) {
  Permutation p;
  if (text.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      auto tok = text.substr(pos, end - pos);
      if (tok.empty() || tok.size() > 4) throw ParseError("bad permutation '" + std::string(text) + "'");
      int v = 0;
      for (char c : tok) {
        if (c < '0' || c > '9') throw ParseError("bad permutation '" + std::string(text) + "'");
        v = v * 10 + (c - '0');
      }
      p.push_back(v);
      pos = end + 1;
    }
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') throw ParseError("bad permutation '" + std::string(text) + "'");
      p.push_back(c - '0');
    }
  }
  std::vector<bool> seen(p.size() + 1, false);
  for (int v : p) {
    if (v < 1 || v > static_cast<int>(p.size()) || seen[static_cast<std::size_t>(v)])
      throw ParseError("'" + std::string(text) + "' is not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
  if (p.empty()) throw ParseError("empty permutation");
  return p;
}

inline std::string format_permutation(std::span<const int> p) {
  std::string s;
  bool commas = p.size() > 9;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (commas && i) s += ",";
    s += std::to_string(p[i]);
  }
  return s;
}

/// Positions (0-based) of an occurrence of pattern v in w, or nullopt.
/// Backtracking over positions, pruning on relative order with every
/// previously chosen entry.
inline std::optional<std::vector<int>> find_pattern(std::span<const int> w, std::span<const int> v) {
  const int n = static_cast<int>(w.size()), k = static_cast<int>(v.size());
  if (k == 0) return std::vector<int>{};
  if (k > n) return std::nullopt;
  std::vector<int> pick(static_cast<std::size_t>(k));
  auto fits = [&](int depth, int pos) {
    for (int j = 0; j < depth; ++j)
      if ((v[static_cast<std::size_t>(j)] < v[static_cast<std::size_t>(depth)]) !=
          (w[static_cast<std::size_t>(pick[static_cast<std::size_t>(j)])] < w[static_cast<std::size_t>(pos)]))
        return false;
    return true;
  };
  auto go = [&](auto&& self, int depth, int start) -> bool {
    if (depth == k) return true;
    for (int pos = start; pos <= n - (k - depth); ++pos) {
      if (!fits(depth, pos)) continue;
      pick[static_cast<std::size_t>(depth)] = pos;
      if (self(self, depth + 1, pos + 1)) return true;
    }
    return false;
  };
  if (go(go, 0, 0)) return pick;
  return std::nullopt;
}

inline bool contains_pattern(std::span<const int> w, std::span<const int> v) { return find_pattern(w, v).has_value(); }

/// Every occurrence, in lexicographic order of positions.
inline std::vector<std::vector<int>> all_occurrences(std::span<const int> w, std::span<const int> v) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(w.size()), k = static_cast<int>(v.size());
  if (k > n) return out;
  std::vector<int> pick;
  auto go = [&](auto&& self, int start) -> void {
    const auto depth = pick.size();
    if (static_cast<int>(depth) == k) {
      out.push_back(pick);
      return;
    }
    for (int pos = start; pos <= n - (k - static_cast<int>(depth)); ++pos) {
      bool ok = true;
      for (std::size_t j = 0; j < depth && ok; ++j)
        ok = (v[j] < v[depth]) == (w[static_cast<std::size_t>(pick[j])] < w[static_cast<std::size_t>(pos)]);
      if (!ok) continue;
      pick.push_back(pos);
      self(self, pos + 1);
      pick.pop_back();
    }
  };
  go(go, 0);
  return out;
}

inline bool avoids_all(std::span<const int> w, const std::vector<Permutation>& patterns) {
  for (const auto& p : patterns)
    if (contains_pattern(w, p)) return false;
  return true;
}

inline const std::vector<Permutation>& smoothness_patterns() {
  static const std::vector<Permutation> p = {{4, 2, 3, 1}, {3, 4, 1, 2}};
  return p;
}

/// The Schubert variety of w is (rationally) smooth iff w avoids 4231 and 3412.
inline bool is_rationally_smooth_typeA(std::span<const int> w) { return avoids_all(w, smoothness_patterns()); }

inline const std::vector<Permutation>& hexagon_patterns() {
  static const std::vector<Permutation> p = {{3, 2, 1},
                                             {5, 6, 7, 8, 1, 2, 3, 4},
                                             {4, 6, 7, 8, 1, 2, 3, 5},
                                             {5, 6, 7, 1, 8, 2, 3, 4},
                                             {4, 6, 7, 1, 8, 2, 3, 5}};
  return p;
}

inline bool is_321_hexagon_avoiding(std::span<const int> w) { return avoids_all(w, hexagon_patterns()); }

/// The six patterns conjectured to characterize P_{1,w}(1) = 2 among
/// singular w: each contains exactly one of them.
inline const std::vector<Permutation>& p2_patterns() {
  static const std::vector<Permutation> p = {{5, 2, 6, 4, 1, 3}, {5, 4, 6, 2, 1, 3}, {4, 6, 3, 1, 5, 2},
                                             {4, 6, 5, 1, 3, 2}, {6, 3, 2, 5, 4, 1}, {6, 5, 3, 4, 2, 1}};
  return p;
}

/// True iff w avoids all six patterns. For w with P_{1,w}(1) = 2 this must
/// hold: a contained pattern v would force P_{1,w}(1) >= P_{1,v}(1) > 2.
inline bool conjecture_p2_patterns(std::span<const int> w) { return avoids_all(w, p2_patterns()); }

}  // namespace klpat
