#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "klpat/error.hpp"

namespace klpat {

enum class Family { A, B, C, D, E, F, G, Custom };

using IntMatrix = std::vector<std::vector<int>>;

inline char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
    case Family::E: return 'E';
    case Family::F: return 'F';
    case Family::G: return 'G';
    case Family::Custom: return 'X';
  }
  return '?';
}

inline bool is_classical(Family f) {
  return f == Family::A || f == Family::B || f == Family::C || f == Family::D;
}

namespace detail {

inline bool valid_rank(Family f, int n) {
  switch (f) {
    case Family::A: return n >= 1;
    case Family::B:
    case Family::C: return n >= 1;
    case Family::D: return n >= 2;
    case Family::E: return n >= 6 && n <= 8;
    case Family::F: return n == 4;
    case Family::G: return n == 2;
    case Family::Custom: return n >= 0;
  }
  return false;
}

/// Simple roots of the named families in an orthonormal basis (scaled so that
/// every coordinate is an integer). Numbering follows Bourbaki.
inline IntMatrix simple_root_realization(Family f, int n) {
  IntMatrix r;
  auto eps = [](int dim, std::initializer_list<std::pair<int, int>> terms) {
    std::vector<int> v(static_cast<std::size_t>(dim), 0);
    for (auto [i, c] : terms) v[static_cast<std::size_t>(i)] += c;
    return v;
  };
  switch (f) {
    case Family::A:
      for (int i = 0; i < n; ++i) r.push_back(eps(n + 1, {{i, 1}, {i + 1, -1}}));
      break;
    case Family::B:
    case Family::C:
    case Family::D:
      for (int i = 0; i + 1 < n; ++i) r.push_back(eps(n, {{i, 1}, {i + 1, -1}}));
      if (f == Family::B) r.push_back(eps(n, {{n - 1, 1}}));
      if (f == Family::C) r.push_back(eps(n, {{n - 1, 2}}));
      if (f == Family::D) r.push_back(eps(n, {{n - 2, 1}, {n - 1, 1}}));
      break;
    case Family::G:
      r.push_back({1, -1, 0});
      r.push_back({-2, 1, 1});
      break;
    case Family::F:
      r.push_back({0, 2, -2, 0});
      r.push_back({0, 0, 2, -2});
      r.push_back({0, 0, 0, 2});
      r.push_back({1, -1, -1, -1});
      break;
    case Family::E: {
      IntMatrix e8 = {{1, -1, -1, -1, -1, -1, -1, 1}, {2, 2, 0, 0, 0, 0, 0, 0},  {-2, 2, 0, 0, 0, 0, 0, 0},
                      {0, -2, 2, 0, 0, 0, 0, 0},     {0, 0, -2, 2, 0, 0, 0, 0},  {0, 0, 0, -2, 2, 0, 0, 0},
                      {0, 0, 0, 0, -2, 2, 0, 0},     {0, 0, 0, 0, 0, -2, 2, 0}};
      r.assign(e8.begin(), e8.begin() + n);
      break;
    }
    case Family::Custom:
      break;
  }
  return r;
}

inline int dot(const std::vector<int>& a, const std::vector<int>& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

/// Built-in Cartan matrix table, convention a_ij = 2(α_i,α_j)/(α_j,α_j), so
/// that s_i(α_j) = α_j - a_ji α_i.
inline IntMatrix standard_cartan_matrix(Family f, int n) {
  if (f == Family::Custom || !detail::valid_rank(f, n))
    throw ParseError(std::string("unsupported type ") + family_letter(f) + std::to_string(n));
  auto roots = detail::simple_root_realization(f, n);
  IntMatrix a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto& ri = roots[static_cast<std::size_t>(i)];
      auto& rj = roots[static_cast<std::size_t>(j)];
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 2 * detail::dot(ri, rj) / detail::dot(rj, rj);
    }
  return a;
}

/// Cartan datum of a finite crystallographic Coxeter system. Named families
/// carry their standard matrix; Custom data (reflection subgroups embedded in
/// a larger system) carry whatever matrix they were built from.
struct CartanDatum {
  Family family = Family::A;
  int rank = 0;
  IntMatrix cartan;

  static CartanDatum make(Family f, int n) {
    if (f == Family::Custom) throw ParseError("use CartanDatum::from_matrix for custom data");
    if (!detail::valid_rank(f, n))
      throw ParseError(std::string("unsupported family/rank combination ") + family_letter(f) + std::to_string(n));
    return CartanDatum{f, n, standard_cartan_matrix(f, n)};
  }

  static CartanDatum from_matrix(IntMatrix m) {
    CartanDatum d{Family::Custom, static_cast<int>(m.size()), std::move(m)};
    d.validate();
    return d;
  }

  /// Accepts "A3", "B4", "G2", "E6", ...
  static CartanDatum parse(std::string_view text) {
    if (text.size() < 2) throw ParseError("bad type '" + std::string(text) + "'");
    Family f;
    switch (text[0]) {
      case 'A': case 'a': f = Family::A; break;
      case 'B': case 'b': f = Family::B; break;
      case 'C': case 'c': f = Family::C; break;
      case 'D': case 'd': f = Family::D; break;
      case 'E': case 'e': f = Family::E; break;
      case 'F': case 'f': f = Family::F; break;
      case 'G': case 'g': f = Family::G; break;
      default: throw ParseError("unknown family in '" + std::string(text) + "'");
    }
    int n = 0;
    for (char c : text.substr(1)) {
      if (c < '0' || c > '9') throw ParseError("bad rank in '" + std::string(text) + "'");
      n = n * 10 + (c - '0');
      if (n > 64) throw ParseError("rank too large in '" + std::string(text) + "'");
    }
    return make(f, n);
  }

  std::string name() const {
    if (family == Family::Custom) return "X" + std::to_string(rank);
    return family_letter(family) + std::to_string(rank);
  }

  int entry(int i, int j) const { return cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

  /// Structural checks; for named families also compares with the built-in table.
  void validate() const {
    if (static_cast<int>(cartan.size()) != rank) throw ParseError("Cartan matrix has wrong size");
    for (int i = 0; i < rank; ++i) {
      if (static_cast<int>(cartan[static_cast<std::size_t>(i)].size()) != rank)
        throw ParseError("Cartan matrix is not square");
      for (int j = 0; j < rank; ++j) {
        int a = entry(i, j);
        if (i == j && a != 2) throw ParseError("Cartan matrix diagonal entry is not 2");
        if (i != j && a > 0) throw ParseError("Cartan matrix off-diagonal entry is positive");
        if (i != j && (a == 0) != (entry(j, i) == 0)) throw ParseError("Cartan matrix zero pattern is not symmetric");
        if (i != j && entry(i, j) * entry(j, i) > 3)
          throw ParseError("Cartan matrix is not of finite crystallographic type");
      }
    }
    if (family != Family::Custom && cartan != standard_cartan_matrix(family, rank))
      throw ParseError("Cartan matrix does not match the standard table for " + name());
  }

  /// Known group order for named families; nullopt for Custom.
  std::optional<std::uint64_t> group_order() const {
    auto fact = [](int k) {
      std::uint64_t r = 1;
      for (int i = 2; i <= k; ++i) r *= static_cast<std::uint64_t>(i);
      return r;
    };
    switch (family) {
      case Family::A: return fact(rank + 1);
      case Family::B:
      case Family::C: return (std::uint64_t{1} << rank) * fact(rank);
      case Family::D: return (std::uint64_t{1} << (rank - 1)) * fact(rank);
      case Family::G: return 12;
      case Family::F: return 1152;
      case Family::E:
        return rank == 6 ? 51840ULL : rank == 7 ? 2903040ULL : 696729600ULL;
      case Family::Custom: return std::nullopt;
    }
    return std::nullopt;
  }

  /// Known number of positive roots for named families.
  std::optional<std::size_t> positive_root_count() const {
    auto n = static_cast<std::size_t>(rank);
    switch (family) {
      case Family::A: return n * (n + 1) / 2;
      case Family::B:
      case Family::C: return n * n;
      case Family::D: return n * (n - 1);
      case Family::G: return 6;
      case Family::F: return 24;
      case Family::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
      case Family::Custom: return std::nullopt;
    }
    return std::nullopt;
  }
};

}  // namespace klpat
