#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "klpat/cartan.hpp"
#include "klpat/error.hpp"

namespace klpat {

using RootId = std::uint16_t;

/// A group element, represented by its action on the simple roots:
/// images[t] is the root id of w(α_t). The linear extension permutes Φ, so
/// this determines w.
struct GroupElement {
  std::vector<RootId> images;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& w) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (RootId r : w.images) {
      h ^= r;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Finite crystallographic Coxeter system realized on its root lattice.
///
/// Root ids: positive roots are 0..N-1, ordered by height and then by
/// descending coordinates (so simple root i has id i); the negative of
/// positive root k has id k + N.
///
/// Convention: s_i(α_j) = α_j - a_ji α_i with a_ij = datum.entry(i, j).
class CoxeterSystem {
 public:
  explicit CoxeterSystem(CartanDatum datum) : datum_(std::move(datum)) {
    datum_.validate();
    rank_ = datum_.rank;
    generate_roots();
    build_gram();
    build_reflections();
    if (is_classical(datum_.family)) build_epsilon();
    if (auto n = datum_.positive_root_count(); n && *n != npos_)
      throw Error("root generation produced " + std::to_string(npos_) + " positive roots for " + datum_.name());
  }

  static CoxeterSystem parse(std::string_view type) { return CoxeterSystem(CartanDatum::parse(type)); }

  const CartanDatum& datum() const { return datum_; }
  Family family() const { return datum_.family; }
  int rank() const { return rank_; }
  std::string name() const { return datum_.name(); }

  // ---- roots ---------------------------------------------------------------

  std::size_t num_positive_roots() const { return npos_; }
  std::size_t num_roots() const { return 2 * npos_; }
  bool is_positive(RootId r) const { return r < npos_; }
  RootId negate(RootId r) const { return static_cast<RootId>(r < npos_ ? r + npos_ : r - npos_); }
  /// Positive representative of ±r.
  RootId positive_part(RootId r) const { return r < npos_ ? r : static_cast<RootId>(r - npos_); }
  std::span<const int> coords(RootId r) const {
    return {coords_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(rank_),
            static_cast<std::size_t>(rank_)};
  }
  int height(RootId r) const {
    int h = 0;
    for (int c : coords(r)) h += c;
    return h;
  }
  /// Root with the given simple-root coordinates, or -1.
  int find_root(std::span<const int> c) const {
    auto it = lookup_.find(key(c));
    return it == lookup_.end() ? -1 : it->second;
  }
  /// s_i applied to a root.
  RootId simple_action(int i, RootId r) const { return sact_[static_cast<std::size_t>(i) * num_roots() + r]; }
  /// r_β applied to a root, β positive.
  RootId reflection_action(RootId beta, RootId r) const {
    return rperm_[static_cast<std::size_t>(positive_part(beta)) * num_roots() + r];
  }
  /// W-invariant symmetric form on the root lattice (integer multiple of the Killing form).
  std::int64_t inner_product(std::span<const int> a, std::span<const int> b) const {
    std::int64_t s = 0;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        s += static_cast<std::int64_t>(a[static_cast<std::size_t>(i)]) * b[static_cast<std::size_t>(j)] *
             gram_[static_cast<std::size_t>(i * rank_ + j)];
    return s;
  }

  // ---- elements ------------------------------------------------------------

  GroupElement identity() const {
    GroupElement e;
    e.images.resize(static_cast<std::size_t>(rank_));
    std::iota(e.images.begin(), e.images.end(), RootId{0});
    return e;
  }
  GroupElement simple(int i) const {
    check_index(i);
    GroupElement e;
    e.images.resize(static_cast<std::size_t>(rank_));
    for (int t = 0; t < rank_; ++t) e.images[static_cast<std::size_t>(t)] = simple_action(i, static_cast<RootId>(t));
    return e;
  }
  /// The reflection r_β for a root β (sign ignored).
  const GroupElement& reflection(RootId beta) const { return refl_[positive_part(beta)]; }

  /// w applied to a root.
  RootId apply(const GroupElement& w, RootId beta) const {
    int buf[64] = {};
    auto cb = coords(beta);
    for (int t = 0; t < rank_; ++t) {
      int c = cb[static_cast<std::size_t>(t)];
      if (c == 0) continue;
      auto img = coords(w.images[static_cast<std::size_t>(t)]);
      for (int k = 0; k < rank_; ++k) buf[k] += c * img[static_cast<std::size_t>(k)];
    }
    int id = find_root(std::span<const int>(buf, static_cast<std::size_t>(rank_)));
    if (id < 0) throw Error("element does not permute the root system");
    return static_cast<RootId>(id);
  }

  GroupElement multiply(const GroupElement& u, const GroupElement& v) const {
    GroupElement r;
    r.images.resize(v.images.size());
    for (std::size_t t = 0; t < v.images.size(); ++t) r.images[t] = apply(u, v.images[t]);
    return r;
  }
  GroupElement left_multiply_simple(int i, const GroupElement& w) const {
    GroupElement r = w;
    for (auto& img : r.images) img = simple_action(i, img);
    return r;
  }
  GroupElement right_multiply_simple(const GroupElement& w, int i) const {
    GroupElement r;
    r.images.resize(w.images.size());
    for (int t = 0; t < rank_; ++t)
      r.images[static_cast<std::size_t>(t)] = apply(w, simple_action(i, static_cast<RootId>(t)));
    return r;
  }
  /// r_β · w for a reflection given by its root.
  GroupElement left_multiply_reflection(RootId beta, const GroupElement& w) const {
    GroupElement r = w;
    for (auto& img : r.images) img = reflection_action(beta, img);
    return r;
  }

  bool is_identity(const GroupElement& w) const {
    for (int t = 0; t < rank_; ++t)
      if (w.images[static_cast<std::size_t>(t)] != t) return false;
    return true;
  }
  bool is_right_descent(const GroupElement& w, int i) const {
    return !is_positive(w.images[static_cast<std::size_t>(i)]);
  }
  bool is_left_descent(const GroupElement& w, int i) const { return is_right_descent(inverse(w), i); }

  /// Inversion count |{α ∈ Π : wα ∈ -Π}|.
  int length(const GroupElement& w) const {
    int l = 0;
    for (std::size_t b = 0; b < npos_; ++b)
      if (!is_positive(apply(w, static_cast<RootId>(b)))) ++l;
    return l;
  }

  /// Some reduced word (a_1,...,a_k) with w = s_{a_1}...s_{a_k}; 0-based letters.
  std::vector<int> reduced_word(const GroupElement& w) const {
    std::vector<int> rev;
    GroupElement u = w;
    while (!is_identity(u)) {
      int i = lowest_right_descent(u);
      rev.push_back(i);
      u = right_multiply_simple(u, i);
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
  }

  /// Lexicographically smallest reduced word (ShortLex normal form).
  std::vector<int> shortlex_word(const GroupElement& w) const {
    // First letter of the lex-first word of w is its least left descent,
    // i.e. the least right descent of w^{-1}.
    std::vector<int> word;
    GroupElement u = inverse(w);
    while (!is_identity(u)) {
      int i = lowest_right_descent(u);
      word.push_back(i);
      u = right_multiply_simple(u, i);
    }
    return word;
  }

  GroupElement from_word(std::span<const int> word) const {
    GroupElement w = identity();
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      check_index(*it);
      w = left_multiply_simple(*it, w);
    }
    return w;
  }

  GroupElement inverse(const GroupElement& w) const {
    std::vector<int> collected;
    GroupElement u = w;
    while (!is_identity(u)) {
      int i = lowest_right_descent(u);
      collected.push_back(i);
      u = right_multiply_simple(u, i);
    }
    // w = s_{c_k}...s_{c_1}, so w^{-1} = s_{c_1}...s_{c_k}.
    return from_word(collected);
  }

  int lowest_right_descent(const GroupElement& w) const {
    for (int i = 0; i < rank_; ++i)
      if (is_right_descent(w, i)) return i;
    return -1;
  }

  /// Bruhat order by descent recursion on the lowest right descent of w:
  /// x <= w iff xs <= ws (when xs < x) or x <= ws (when xs > x).
  bool bruhat_leq(const GroupElement& x_in, const GroupElement& w_in) const {
    GroupElement x = x_in, w = w_in;
    int lx = length(x), lw = length(w);
    while (true) {
      if (lx > lw) return false;
      if (lx == lw) return x == w;
      if (lx == 0) return true;
      int s = lowest_right_descent(w);
      if (is_right_descent(x, s)) {
        x = right_multiply_simple(x, s);
        --lx;
      }
      w = right_multiply_simple(w, s);
      --lw;
    }
  }

  // ---- notation ------------------------------------------------------------

  /// Signed one-line notation: entry i is w(ε_i) = ±ε_|w_i|. For type A the
  /// entries are the ordinary one-line notation (all positive).
  std::vector<int> to_signed_permutation(const GroupElement& w) const;
  GroupElement from_signed_permutation(std::span<const int> perm) const;
  /// Degree n of the permutation representation (rank+1 for A, rank for B/C/D).
  int permutation_degree() const {
    if (!is_classical(datum_.family)) return 0;
    return datum_.family == Family::A ? rank_ + 1 : rank_;
  }

  /// One-line notation for A ("4231", comma separated when n > 9), signed
  /// comma-separated for B/C/D ("-4,2,1,-3"), ShortLex word otherwise ("s1s3s2", "e").
  std::string format_element(const GroupElement& w) const;
  std::string format_word(std::span<const int> word) const {
    if (word.empty()) return "e";
    std::string s;
    for (int i : word) s += "s" + std::to_string(i + 1);
    return s;
  }
  /// Inverse of format_element; also accepts words ("s1 s3 s2") in every family.
  GroupElement parse_element(std::string_view text) const;
  std::vector<int> parse_word(std::string_view text) const;

  /// Root with the given ε-coordinates (classical families), or -1.
  int find_root_epsilon(std::span<const int> eps) const {
    auto it = eps_lookup_.find(key(eps));
    return it == eps_lookup_.end() ? -1 : it->second;
  }
  std::span<const int> epsilon_coords(RootId r) const {
    return {eps_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(eps_dim_),
            static_cast<std::size_t>(eps_dim_)};
  }
  int epsilon_dim() const { return eps_dim_; }

 private:
  static std::string key(std::span<const int> c) {
    std::string k;
    k.reserve(c.size());
    for (int v : c) k.push_back(static_cast<char>(v));
    return k;
  }

  void check_index(int i) const {
    if (i < 0 || i >= rank_) throw ParseError("simple reflection index out of range");
  }

  void generate_roots() {
    auto n = static_cast<std::size_t>(rank_);
    std::vector<std::vector<int>> found;
    std::unordered_map<std::string, std::size_t> seen;
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> e(n, 0);
      e[i] = 1;
      seen.emplace(key(e), found.size());
      queue.push_back(found.size());
      found.push_back(std::move(e));
    }
    while (!queue.empty()) {
      auto idx = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> r = found[idx];
        int pairing = 0;  // a_{ji} summed: s_i(β) = β - (Σ_j β_j a_ji) α_i
        for (std::size_t j = 0; j < n; ++j) pairing += r[j] * datum_.entry(static_cast<int>(j), static_cast<int>(i));
        r[i] -= pairing;
        if (seen.emplace(key(r), found.size()).second) {
          queue.push_back(found.size());
          found.push_back(std::move(r));
        }
      }
    }
    std::vector<std::vector<int>> pos;
    for (auto& r : found) {
      bool p = std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; });
      bool m = std::all_of(r.begin(), r.end(), [](int c) { return c <= 0; });
      if (!p && !m) throw Error("mixed-sign root generated; Cartan matrix is not of finite type");
      if (p) pos.push_back(r);
    }
    if (pos.size() * 2 != found.size()) throw Error("root system is not symmetric under negation");
    std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) {
      int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
      if (ha != hb) return ha < hb;
      return a > b;
    });
    npos_ = pos.size();
    if (2 * npos_ > 65535) throw CapExceeded("root system too large");
    coords_.assign(2 * npos_ * n, 0);
    for (std::size_t k = 0; k < npos_; ++k)
      for (std::size_t t = 0; t < n; ++t) {
        coords_[k * n + t] = pos[k][t];
        coords_[(k + npos_) * n + t] = -pos[k][t];
      }
    for (std::size_t r = 0; r < 2 * npos_; ++r) lookup_.emplace(key(coords(static_cast<RootId>(r))), static_cast<RootId>(r));
    sact_.resize(n * 2 * npos_);
    std::vector<int> buf(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t r = 0; r < 2 * npos_; ++r) {
        auto c = coords(static_cast<RootId>(r));
        int pairing = 0;
        for (std::size_t j = 0; j < n; ++j) pairing += c[j] * datum_.entry(static_cast<int>(j), static_cast<int>(i));
        std::copy(c.begin(), c.end(), buf.begin());
        buf[i] -= pairing;
        sact_[i * 2 * npos_ + r] = static_cast<RootId>(find_root(buf));
      }
  }

  // Symmetrizing form: (α_i, α_j) = a_ij d_j with a_ij d_j = a_ji d_i.
  void build_gram() {
    auto n = static_cast<std::size_t>(rank_);
    std::vector<std::int64_t> num(n, 0), den(n, 1);
    for (std::size_t start = 0; start < n; ++start) {
      if (num[start] != 0) continue;
      num[start] = 1;
      den[start] = 1;
      std::deque<std::size_t> q{start};
      while (!q.empty()) {
        auto i = q.front();
        q.pop_front();
        for (std::size_t j = 0; j < n; ++j) {
          int aij = datum_.entry(static_cast<int>(i), static_cast<int>(j));
          if (i == j || aij == 0 || num[j] != 0) continue;
          int aji = datum_.entry(static_cast<int>(j), static_cast<int>(i));
          num[j] = num[i] * aji;
          den[j] = den[i] * aij;
          if (den[j] < 0) {
            num[j] = -num[j];
            den[j] = -den[j];
          }
          auto g = std::gcd(num[j], den[j]);
          num[j] /= g;
          den[j] /= g;
          q.push_back(j);
        }
      }
    }
    std::int64_t l = 1;
    for (auto d : den) l = std::lcm(l, d);
    gram_.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        gram_[i * n + j] = datum_.entry(static_cast<int>(i), static_cast<int>(j)) * (num[j] * (l / den[j]));
  }

  void build_reflections() {
    refl_.resize(npos_);
    for (std::size_t b = 0; b < npos_; ++b) {
      if (b < static_cast<std::size_t>(rank_)) {
        refl_[b] = simple(static_cast<int>(b));
        continue;
      }
      // r_β = s_i r_{s_i β} s_i for some i lowering the height of β.
      bool done = false;
      for (int i = 0; i < rank_ && !done; ++i) {
        RootId g = simple_action(i, static_cast<RootId>(b));
        if (g < npos_ && height(g) < height(static_cast<RootId>(b))) {
          refl_[b] = right_multiply_simple(left_multiply_simple(i, refl_[g]), i);
          done = true;
        }
      }
      if (!done) throw Error("could not construct reflection");
    }
    rperm_.resize(npos_ * 2 * npos_);
    for (std::size_t b = 0; b < npos_; ++b)
      for (std::size_t r = 0; r < 2 * npos_; ++r)
        rperm_[b * 2 * npos_ + r] = apply(refl_[b], static_cast<RootId>(r));
  }

  void build_epsilon() {
    auto simple_eps = detail::simple_root_realization(datum_.family, rank_);
    eps_dim_ = static_cast<int>(simple_eps.front().size());
    auto m = static_cast<std::size_t>(eps_dim_);
    eps_.assign(2 * npos_ * m, 0);
    for (std::size_t r = 0; r < 2 * npos_; ++r) {
      auto c = coords(static_cast<RootId>(r));
      for (std::size_t t = 0; t < static_cast<std::size_t>(rank_); ++t)
        for (std::size_t k = 0; k < m; ++k) eps_[r * m + k] += c[t] * simple_eps[t][k];
      eps_lookup_.emplace(key(epsilon_coords(static_cast<RootId>(r))), static_cast<RootId>(r));
    }
  }

  CartanDatum datum_;
  int rank_ = 0;
  std::size_t npos_ = 0;
  std::vector<int> coords_;
  std::unordered_map<std::string, RootId> lookup_;
  std::vector<RootId> sact_;
  std::vector<std::int64_t> gram_;
  std::vector<GroupElement> refl_;
  std::vector<RootId> rperm_;
  int eps_dim_ = 0;
  std::vector<int> eps_;
  std::unordered_map<std::string, RootId> eps_lookup_;
};

// ---- notation ---------------------------------------------------------------

inline std::vector<int> CoxeterSystem::to_signed_permutation(const GroupElement& w) const {
  if (!is_classical(datum_.family)) throw DomainError("one-line notation needs a classical family");
  const int n = permutation_degree();
  const auto m = static_cast<std::size_t>(eps_dim_);
  auto img = [&](int t) {
    auto e = epsilon_coords(w.images[static_cast<std::size_t>(t)]);
    return std::vector<int>(e.begin(), e.end());
  };
  std::vector<std::vector<int>> v(static_cast<std::size_t>(n), std::vector<int>(m, 0));
  auto unit_index = [&](const std::vector<int>& x) -> int {
    int idx = 0, nz = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (x[k] == 0) continue;
      if (x[k] != 1 && x[k] != -1) return 0;
      ++nz;
      idx = x[k] * static_cast<int>(k + 1);
    }
    return nz == 1 ? idx : 0;
  };
  auto back_fill = [&](int from) {
    for (int i = from; i >= 0; --i) {
      auto a = img(i);
      for (std::size_t k = 0; k < m; ++k)
        v[static_cast<std::size_t>(i)][k] = v[static_cast<std::size_t>(i) + 1][k] + a[k];
    }
  };
  std::vector<int> perm(static_cast<std::size_t>(n));
  switch (datum_.family) {
    case Family::A: {
      for (std::size_t c = 0; c < m; ++c) {
        std::fill(v.back().begin(), v.back().end(), 0);
        v.back()[c] = 1;
        back_fill(n - 2);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
          int u = unit_index(v[static_cast<std::size_t>(i)]);
          ok = u > 0;
          perm[static_cast<std::size_t>(i)] = u;
        }
        if (ok) return perm;
      }
      throw Error("element is not a permutation");
    }
    case Family::B:
      v.back() = img(n - 1);
      back_fill(n - 2);
      break;
    case Family::C: {
      auto a = img(n - 1);
      for (std::size_t k = 0; k < m; ++k) v.back()[k] = a[k] / 2;
      back_fill(n - 2);
      break;
    }
    case Family::D: {
      auto a = img(n - 2), b = img(n - 1);
      for (std::size_t k = 0; k < m; ++k) {
        v[static_cast<std::size_t>(n) - 1][k] = (b[k] - a[k]) / 2;
        v[static_cast<std::size_t>(n) - 2][k] = (b[k] + a[k]) / 2;
      }
      back_fill(n - 3);
      break;
    }
    default:
      break;
  }
  for (int i = 0; i < n; ++i) {
    int u = unit_index(v[static_cast<std::size_t>(i)]);
    if (u == 0) throw Error("element is not a signed permutation");
    perm[static_cast<std::size_t>(i)] = u;
  }
  return perm;
}

inline GroupElement CoxeterSystem::from_signed_permutation(std::span<const int> perm) const {
  if (!is_classical(datum_.family)) throw ParseError("one-line notation needs a classical family");
  const int n = permutation_degree();
  if (static_cast<int>(perm.size()) != n)
    throw ParseError("expected " + std::to_string(n) + " entries for " + name() + ", got " + std::to_string(perm.size()));
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  int negatives = 0;
  for (int p : perm) {
    int a = p < 0 ? -p : p;
    if (a < 1 || a > n) throw ParseError("entry " + std::to_string(p) + " out of range for " + name());
    if (used[static_cast<std::size_t>(a)]) throw ParseError("repeated entry " + std::to_string(a));
    used[static_cast<std::size_t>(a)] = true;
    if (p < 0) ++negatives;
  }
  if (datum_.family == Family::A && negatives) throw ParseError("signed notation is not valid for type A");
  if (datum_.family == Family::D && negatives % 2) throw ParseError("type D needs an even number of sign changes");
  const auto m = static_cast<std::size_t>(eps_dim_);
  GroupElement w;
  w.images.resize(static_cast<std::size_t>(rank_));
  std::vector<int> buf(m);
  for (int t = 0; t < rank_; ++t) {
    auto e = epsilon_coords(static_cast<RootId>(t));
    std::fill(buf.begin(), buf.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
      if (e[i] == 0) continue;
      int p = perm[i];
      int a = p < 0 ? -p : p;
      buf[static_cast<std::size_t>(a - 1)] += (p < 0 ? -1 : 1) * e[i];
    }
    int id = find_root_epsilon(buf);
    if (id < 0) throw Error("signed permutation does not act on the root system");
    w.images[static_cast<std::size_t>(t)] = static_cast<RootId>(id);
  }
  return w;
}

inline std::string CoxeterSystem::format_element(const GroupElement& w) const {
  if (!is_classical(datum_.family)) return format_word(shortlex_word(w));
  auto perm = to_signed_permutation(w);
  std::string s;
  bool compact = datum_.family == Family::A && perm.size() <= 9;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (!compact && i) s += ",";
    s += std::to_string(perm[i]);
  }
  return s;
}

inline std::vector<int> CoxeterSystem::parse_word(std::string_view text) const {
  std::vector<int> word;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '*' || text[i] == '.')) ++i;
  };
  skip();
  if (text.substr(i) == "e") return word;
  while (i < text.size()) {
    if (text[i] != 's') throw ParseError("bad reduced word '" + std::string(text) + "'");
    ++i;
    int v = 0, digits = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      v = v * 10 + (text[i] - '0');
      ++i;
      if (++digits > 3) throw ParseError("bad generator index in '" + std::string(text) + "'");
    }
    if (digits == 0) throw ParseError("missing generator index in '" + std::string(text) + "'");
    if (v < 1 || v > rank_) throw ParseError("generator s" + std::to_string(v) + " out of range for " + name());
    word.push_back(v - 1);
    skip();
  }
  return word;
}

inline GroupElement CoxeterSystem::parse_element(std::string_view text) const {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty element");
  if (text.front() == 's' || text == "e") {
    auto word = parse_word(text);
    return from_word(word);
  }
  if (!is_classical(datum_.family))
    throw ParseError("type " + name() + " elements must be given as words like 's1 s2'");
  std::vector<int> perm;
  if (text.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string tok(text.substr(pos, end - pos));
      if (tok.empty()) throw ParseError("empty entry in '" + std::string(text) + "'");
      std::size_t used = 0;
      int v;
      try {
        v = std::stoi(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("bad entry '" + tok + "'");
      }
      if (used != tok.size() || tok.front() == '+') throw ParseError("bad entry '" + tok + "'");
      perm.push_back(v);
      pos = end + 1;
    }
  } else {
    for (char c : text) {
      if (c == '-') throw ParseError("signed entries must be comma separated ('" + std::string(text) + "')");
      if (c < '1' || c > '9') throw ParseError("bad one-line notation '" + std::string(text) + "'");
      perm.push_back(c - '0');
    }
  }
  return from_signed_permutation(perm);
}

}  // namespace klpat
