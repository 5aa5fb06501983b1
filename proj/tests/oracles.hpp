#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's root system, enumeration or KL code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Perm = std::vector<int>;

/// Π [d_i]_q for the degrees of the invariants: the length generating function.
inline std::vector<std::int64_t> poincare(const std::vector<int>& degrees) {
  std::vector<std::int64_t> p{1};
  for (int d : degrees) {
    std::vector<std::int64_t> next(p.size() + static_cast<std::size_t>(d) - 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (int k = 0; k < d; ++k) next[i + static_cast<std::size_t>(k)] += p[i];
    p = next;
  }
  return p;
}

/// Degrees of the basic invariants of the finite Weyl groups.
inline std::vector<int> degrees(char family, int n) {
  std::vector<int> d;
  switch (family) {
    case 'A': for (int i = 2; i <= n + 1; ++i) d.push_back(i); break;
    case 'B':
    case 'C': for (int i = 1; i <= n; ++i) d.push_back(2 * i); break;
    case 'D': for (int i = 1; i < n; ++i) d.push_back(2 * i); d.push_back(n); break;
    case 'E':
      if (n == 6) d = {2, 5, 6, 8, 9, 12};
      if (n == 7) d = {2, 6, 8, 10, 12, 14, 18};
      if (n == 8) d = {2, 8, 12, 14, 18, 20, 24, 30};
      break;
    case 'F': d = {2, 6, 8, 12}; break;
    case 'G': d = {2, 6}; break;
  }
  return d;
}

inline int inversions(const Perm& w) {
  int c = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) c += w[i] > w[j];
  return c;
}

/// Length of a signed permutation for the simple system e_i - e_{i+1} plus
/// e_n (B), 2e_n (C) or e_{n-1}+e_n (D): the number of positive roots sent
/// negative, where a root is positive iff f = (n, n-1, ..., 1) is positive on it.
inline int signed_length(const Perm& w, char family) {
  const int n = static_cast<int>(w.size());
  auto f = [&](int signed_value) {
    int a = std::abs(signed_value);
    return (signed_value > 0 ? 1 : -1) * (n + 1 - a);
  };
  // image of e_i has f-value f(w_i)
  int count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      count += f(w[i]) - f(w[j]) < 0;  // e_i - e_j
      count += f(w[i]) + f(w[j]) < 0;  // e_i + e_j
    }
  if (family != 'D')
    for (int i = 0; i < n; ++i) count += f(w[i]) < 0;
  return count;
}

/// Tableau criterion: x <= w iff for all i, k the number of j <= i with
/// x_j >= k is at most the same count for w.
inline bool bruhat_leq_perm(const Perm& x, const Perm& w) {
  const int n = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i)
    for (int k = 1; k <= n; ++k) {
      int cx = 0, cw = 0;
      for (int j = 0; j <= i; ++j) {
        cx += x[static_cast<std::size_t>(j)] >= k;
        cw += w[static_cast<std::size_t>(j)] >= k;
      }
      if (cx > cw) return false;
    }
  return true;
}

inline std::vector<Perm> all_perms(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// (u v)(i) = u(v(i)) in one-line notation.
inline Perm compose(const Perm& u, const Perm& v) {
  Perm r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = u[static_cast<std::size_t>(v[i] - 1)];
  return r;
}

inline Perm inverse(const Perm& u) {
  Perm r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[static_cast<std::size_t>(u[i] - 1)] = static_cast<int>(i) + 1;
  return r;
}

inline Perm transposition(int n, int a, int b) {
  Perm r(static_cast<std::size_t>(n));
  std::iota(r.begin(), r.end(), 1);
  std::swap(r[static_cast<std::size_t>(a - 1)], r[static_cast<std::size_t>(b - 1)]);
  return r;
}

/// fl: same relative order, values 1..k.
inline Perm flatten(const std::vector<int>& seq) {
  Perm r(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i)
    r[i] = 1 + static_cast<int>(std::count_if(seq.begin(), seq.end(), [&](int v) { return v < seq[i]; }));
  return r;
}

/// Signed flattening by values: keep entries whose absolute value is in
/// sigma, in position order, replace absolute values by their rank, keep signs.
inline Perm signed_flatten(const Perm& w, const std::vector<int>& sigma) {
  std::vector<int> kept;
  for (int v : w)
    if (std::find(sigma.begin(), sigma.end(), std::abs(v)) != sigma.end()) kept.push_back(v);
  std::vector<int> abs_kept;
  for (int v : kept) abs_kept.push_back(std::abs(v));
  auto ranks = flatten(abs_kept);
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (kept[i] < 0) ranks[i] = -ranks[i];
  return ranks;
}

/// ι(v) = z v z^{-1} for any z with z(i) = a_i (1 <= i <= k).
inline Perm iota(const Perm& v, const std::vector<int>& sigma, const Perm& z) {
  const int n = static_cast<int>(z.size());
  Perm ext(static_cast<std::size_t>(n));
  std::iota(ext.begin(), ext.end(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) ext[i] = v[i];
  (void)sigma;
  return compose(compose(z, ext), inverse(z));
}

/// Every product of a subword of `word`, as the set of sorted-by-key strings
/// produced by `key` (a callable mapping a word to a canonical string).
template <class Key>
std::set<std::string> subword_products(const std::vector<int>& word, Key key) {
  std::set<std::string> out;
  const std::size_t l = word.size();
  for (std::uint32_t mask = 0; mask < (1U << l); ++mask) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < l; ++i)
      if ((mask >> i) & 1U) sub.push_back(word[i]);
    out.insert(key(sub));
  }
  return out;
}

/// Bell numbers: set partitions of an n-set, i.e. parabolic subgroups of S_n.
inline std::int64_t bell(int n) {
  std::vector<std::vector<std::int64_t>> t(static_cast<std::size_t>(n) + 1);
  t[0] = {1};
  for (int i = 1; i <= n; ++i) {
    t[static_cast<std::size_t>(i)].push_back(t[static_cast<std::size_t>(i) - 1].back());
    for (int j = 0; j < i; ++j)
      t[static_cast<std::size_t>(i)].push_back(t[static_cast<std::size_t>(i)].back() + t[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j)]);
  }
  return t[static_cast<std::size_t>(n)].front();
}

}  // namespace oracle
