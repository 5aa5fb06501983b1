#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "klpat/group.hpp"
#include "klpat/polynomial.hpp"

namespace klpat {

/// One column {x <= w} -> P_{x,w} of the Kazhdan-Lusztig table, immutable
/// once published. Polynomials are interned per column.
struct KLColumn {
  ElementId w = 0;
  std::vector<ElementId> xs;          // [1, w], ascending ids
  std::vector<std::uint32_t> poly_of;  // parallel to xs
  std::vector<IntPolynomial> polys;
  std::vector<std::pair<ElementId, std::int64_t>> mu;  // z < w with mu(z, w) != 0

  const IntPolynomial* find(ElementId x) const {
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.end() || *it != x) return nullptr;
    return &polys[poly_of[static_cast<std::size_t>(it - xs.begin())]];
  }
};

struct KLStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t columns = 0;
  std::uint64_t entries = 0;
};

/// Kazhdan-Lusztig polynomials over an enumerated group.
///
/// P_{x,w} is computed column by column with the left-descent recursion: for
/// s with sw < w and v = sw,
///   P_{x,w} = P_{sx,w}                                        if sx > x
///   P_{x,w} = P_{sx,v} + q P_{x,v} - Σ μ(z,v) q^{(l(w)-l(z))/2} P_{x,z}  if sx < x
/// where the sum runs over z < v with sz < z. Columns are memoized in an
/// insert-once table; concurrent callers may race to build the same column,
/// the first published copy wins and the others are discarded.
///
/// R-polynomials are memoized separately and serve as an independent oracle
/// through the inversion identity.
class KLEngine {
 public:
  explicit KLEngine(const EnumeratedGroup& group, DescentChoice choice = {})
      : group_(&group), choice_(choice), table_(group.size()) {
    choice_.side = DescentChoice::Side::Left;
  }
  KLEngine(const KLEngine&) = delete;
  KLEngine& operator=(const KLEngine&) = delete;
  ~KLEngine() {
    for (auto& slot : table_) delete slot.load(std::memory_order_relaxed);
  }

  const EnumeratedGroup& group() const { return *group_; }

  const KLColumn& column(ElementId w) const {
    if (const KLColumn* c = table_[w].load(std::memory_order_acquire)) {
      hits_.fetch_add(1, std::memory_order_relaxed);
      return *c;
    }
    misses_.fetch_add(1, std::memory_order_relaxed);
    auto fresh = std::make_unique<KLColumn>(build_column(w));
    const KLColumn* expected = nullptr;
    if (table_[w].compare_exchange_strong(expected, fresh.get(), std::memory_order_acq_rel)) {
      columns_.fetch_add(1, std::memory_order_relaxed);
      entries_.fetch_add(fresh->xs.size(), std::memory_order_relaxed);
      return *fresh.release();
    }
    return *expected;
  }

  IntPolynomial kl_polynomial(ElementId x, ElementId w) const {
    if (has_preloaded_.load(std::memory_order_acquire))
      if (auto p = persisted(x, w)) return *p;
    const IntPolynomial* p = column(w).find(x);
    IntPolynomial result = p ? *p : IntPolynomial{};
    if (recording_.load(std::memory_order_relaxed)) remember(x, w, result);
    return result;
  }

  /// Keep every answered (x, w) so it can be written to a cache file. Off by
  /// default: exhaustive suites would otherwise accumulate every pair.
  void record_queries(bool on) { recording_.store(on); }

  /// Coefficient of q^{(l(w)-l(x)-1)/2} in P_{x,w}; requires x < w.
  std::int64_t mu(ElementId x, ElementId w) const {
    if (x == w || !group_->bruhat_leq(x, w)) throw DomainError("mu(x, w) requires x < w");
    int d = group_->length(w) - group_->length(x);
    if (d % 2 == 0) return 0;
    const IntPolynomial* p = column(w).find(x);
    return p ? p->coeff(static_cast<std::size_t>((d - 1) / 2)) : 0;
  }

  /// The full column for w, ascending ids.
  std::vector<std::pair<ElementId, IntPolynomial>> kl_table(ElementId w) const {
    const KLColumn& c = column(w);
    std::vector<std::pair<ElementId, IntPolynomial>> out;
    out.reserve(c.xs.size());
    for (std::size_t k = 0; k < c.xs.size(); ++k) out.emplace_back(c.xs[k], c.polys[c.poly_of[k]]);
    return out;
  }

  /// R_{x,w}: R_{w,w} = 1, R_{x,w} = 0 unless x <= w, and for s with sw < w
  /// R_{x,w} = R_{sx,sw} if sx < x, else (q-1) R_{x,sw} + q R_{sx,sw}.
  IntPolynomial r_polynomial(ElementId x, ElementId w) const {
    if (x == w) return IntPolynomial::one();
    if (group_->length(x) >= group_->length(w)) return {};
    const std::uint64_t key = (static_cast<std::uint64_t>(x) << 32) | w;
    {
      std::shared_lock lock(rmutex_);
      if (auto it = rmemo_.find(key); it != rmemo_.end()) return it->second;
    }
    int s = choice_.choose(group_->left_descents(w));
    ElementId sw = group_->left(s, w), sx = group_->left(s, x);
    IntPolynomial r;
    if (group_->is_left_descent(x, s)) {
      r = r_polynomial(sx, sw);
    } else {
      r = IntPolynomial{-1, 1} * r_polynomial(x, sw) + IntPolynomial::monomial(1) * r_polynomial(sx, sw);
    }
    std::unique_lock lock(rmutex_);
    return rmemo_.emplace(key, std::move(r)).first->second;
  }

  /// q^{l(w)-l(x)} P_{x,w}(q^{-1}) == Σ_{x<=z<=w} R_{x,z}(q) P_{z,w}(q).
  bool verify_inversion_identity(ElementId x, ElementId w) const {
    auto [lhs, rhs] = inversion_identity_sides(x, w);
    return lhs == rhs;
  }
  std::pair<IntPolynomial, IntPolynomial> inversion_identity_sides(ElementId x, ElementId w) const {
    if (!group_->bruhat_leq(x, w)) throw DomainError("inversion identity requires x <= w");
    int d = group_->length(w) - group_->length(x);
    IntPolynomial lhs = kl_polynomial(x, w).bar_shift(d);
    IntPolynomial rhs;
    const KLColumn& c = column(w);
    for (std::size_t k = 0; k < c.xs.size(); ++k) {
      ElementId z = c.xs[k];
      if (!group_->bruhat_leq(x, z)) continue;
      rhs += r_polynomial(x, z) * c.polys[c.poly_of[k]];
    }
    return {lhs, rhs};
  }

  KLStats stats() const {
    return {hits_.load(), misses_.load(), columns_.load(), entries_.load()};
  }

  // ---- persistence hooks ------------------------------------------------------

  /// Installs a precomputed value. The caller is responsible for validation
  /// (see KLCacheFile::load).
  void preload(ElementId x, ElementId w, IntPolynomial p) {
    std::unique_lock lock(pmutex_);
    preloaded_[{x, w}] = std::move(p);
    has_preloaded_.store(true, std::memory_order_release);
  }
  /// Every (x, w) answered through kl_polynomial or preloaded, ordered by ids.
  std::map<std::pair<ElementId, ElementId>, IntPolynomial> known_values() const {
    std::shared_lock lock(pmutex_);
    auto all = preloaded_;
    for (auto& [k, v] : queried_) all.emplace(k, v);
    return all;
  }

  /// Invariants every P_{x,w} must satisfy: zero off the interval, 1 on the
  /// diagonal, constant term 1, degree <= (l(w)-l(x)-1)/2, nonnegative.
  bool satisfies_invariants(ElementId x, ElementId w, const IntPolynomial& p) const {
    if (!group_->bruhat_leq(x, w)) return p.is_zero();
    if (x == w) return p == IntPolynomial::one();
    int d = group_->length(w) - group_->length(x);
    if (p.coeff(0) != 1 || 2 * p.degree() > d - 1) return false;
    for (auto c : p.coefficients())
      if (c < 0) return false;
    return true;
  }

 private:
  std::optional<IntPolynomial> persisted(ElementId x, ElementId w) const {
    std::shared_lock lock(pmutex_);
    if (auto it = preloaded_.find({x, w}); it != preloaded_.end()) return it->second;
    return std::nullopt;
  }
  void remember(ElementId x, ElementId w, const IntPolynomial& p) const {
    std::unique_lock lock(pmutex_);
    queried_.emplace(std::make_pair(x, w), p);
  }

  KLColumn build_column(ElementId w) const {
    const EnumeratedGroup& g = *group_;
    KLColumn col;
    col.w = w;
    if (w == 0) {
      col.xs = {0};
      col.poly_of = {0};
      col.polys = {IntPolynomial::one()};
      return col;
    }
    const int s = choice_.choose(g.left_descents(w));
    const ElementId v = g.left(s, w);
    const KLColumn& cv = column(v);
    const int lw = g.length(w);

    struct Correction {
      const KLColumn* col;
      std::int64_t mu;
      int shift;
      int lz;
    };
    std::vector<Correction> corr;
    for (auto [z, m] : cv.mu)
      if (g.is_left_descent(z, s)) corr.push_back({&column(z), m, (lw - g.length(z)) / 2, g.length(z)});

    // [1,w] = [1,v] ∪ s[1,v]
    col.xs = cv.xs;
    col.xs.reserve(2 * cv.xs.size());
    for (ElementId y : cv.xs) col.xs.push_back(g.left(s, y));
    std::sort(col.xs.begin(), col.xs.end());
    col.xs.erase(std::unique(col.xs.begin(), col.xs.end()), col.xs.end());

    const std::size_t n = col.xs.size();
    col.poly_of.assign(n, 0);
    std::map<std::vector<std::int64_t>, std::uint32_t> interned;
    auto intern = [&](std::vector<std::int64_t> coeffs) -> std::uint32_t {
      while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
      auto [it, fresh] = interned.emplace(coeffs, static_cast<std::uint32_t>(col.polys.size()));
      if (fresh) col.polys.emplace_back(std::move(coeffs));
      return it->second;
    };
    auto position = [&](ElementId x) {
      return static_cast<std::size_t>(std::lower_bound(col.xs.begin(), col.xs.end(), x) - col.xs.begin());
    };

    std::vector<std::int64_t> acc;
    // Descending ids: when sx > x, sx is longer and has already been filled.
    for (std::size_t k = n; k-- > 0;) {
      const ElementId x = col.xs[k];
      const ElementId sx = g.left(s, x);
      if (!g.is_left_descent(x, s)) {
        col.poly_of[k] = col.poly_of[position(sx)];
        continue;
      }
      const int lx = g.length(x);
      acc.assign(static_cast<std::size_t>(lw - lx) / 2 + 2, 0);
      auto add = [&](const IntPolynomial* p, std::size_t shift, std::int64_t factor) {
        if (!p) return;
        auto c = p->coefficients();
        if (c.size() + shift > acc.size()) acc.resize(c.size() + shift, 0);
        for (std::size_t i = 0; i < c.size(); ++i)
          acc[i + shift] = detail::checked_add(acc[i + shift], detail::checked_mul(factor, c[i]));
      };
      add(cv.find(sx), 0, 1);
      add(cv.find(x), 1, 1);
      for (const auto& c : corr) {
        if (c.lz < lx) continue;
        add(c.col->find(x), static_cast<std::size_t>(c.shift), -c.mu);
      }
      col.poly_of[k] = intern(std::move(acc));
      acc = {};
    }

    for (std::size_t k = 0; k + 1 < n; ++k) {
      const int d = lw - g.length(col.xs[k]);
      if (d % 2 == 0) continue;
      std::int64_t m = col.polys[col.poly_of[k]].coeff(static_cast<std::size_t>((d - 1) / 2));
      if (m != 0) col.mu.emplace_back(col.xs[k], m);
    }
    for (std::size_t k = 0; k < n; ++k) {
      const auto& p = col.polys[col.poly_of[k]];
      const int d = lw - g.length(col.xs[k]);
      bool ok = col.xs[k] == w ? p == IntPolynomial::one() : (p.coeff(0) == 1 && 2 * p.degree() <= d - 1);
      for (auto c : p.coefficients()) ok = ok && c >= 0;
      if (!ok) throw Error("KL invariant violated at " + g.format(col.xs[k]) + ", " + g.format(w));
    }
    return col;
  }

  const EnumeratedGroup* group_;
  DescentChoice choice_;
  mutable std::vector<std::atomic<const KLColumn*>> table_;
  mutable std::atomic<std::uint64_t> hits_{0}, misses_{0}, columns_{0}, entries_{0};

  mutable std::shared_mutex rmutex_;
  mutable std::unordered_map<std::uint64_t, IntPolynomial> rmemo_;

  mutable std::shared_mutex pmutex_;
  std::map<std::pair<ElementId, ElementId>, IntPolynomial> preloaded_;
  mutable std::map<std::pair<ElementId, ElementId>, IntPolynomial> queried_;
  std::atomic<bool> recording_{false}, has_preloaded_{false};
};

/// Line-delimited persistent cache: `family rank x w : c0,c1,...` with x and w
/// in canonical notation. Loading validates every record against the KL
/// invariants before installing it.
class KLCacheFile {
 public:
  struct Record {
    std::string family;
    int rank = 0;
    std::string x, w;
    IntPolynomial p;
  };

  struct LoadResult {
    std::size_t accepted = 0;
    std::size_t skipped_other_type = 0;
    std::vector<std::string> rejected;  // diagnostics
  };

  static std::string render(const Record& r) {
    return r.family + " " + std::to_string(r.rank) + " " + r.x + " " + r.w + " : " + r.p.to_csv();
  }

  static Record parse_line(const std::string& line) {
    std::istringstream is(line);
    Record r;
    std::string colon, coeffs, extra;
    if (!(is >> r.family >> r.rank >> r.x >> r.w >> colon >> coeffs) || colon != ":" || (is >> extra))
      throw ParseError("malformed cache line '" + line + "'");
    r.p = IntPolynomial::from_csv(coeffs);
    if (render(r) != line) throw ParseError("non-canonical cache line '" + line + "'");
    return r;
  }

  static std::vector<Record> read(const std::string& path) {
    std::vector<Record> out;
    std::ifstream in(path);
    if (!in) return out;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      out.push_back(parse_line(line));
    }
    return out;
  }

  static void write(const std::string& path, const std::vector<Record>& records) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + path);
    for (const auto& r : records) out << render(r) << '\n';
  }

  /// Loads the records matching the engine's type into it.
  static LoadResult load(const std::string& path, KLEngine& engine) {
    LoadResult res;
    const auto& g = engine.group();
    const auto& sys = g.system();
    const std::string fam(1, family_letter(sys.family()));
    for (const auto& r : read(path)) {
      if (r.family != fam || r.rank != sys.rank()) {
        ++res.skipped_other_type;
        continue;
      }
      std::optional<ElementId> x, w;
      try {
        x = g.parse(r.x);
        w = g.parse(r.w);
      } catch (const Error& e) {
        res.rejected.push_back(render(r) + " (" + e.what() + ")");
        continue;
      }
      if (g.format(*x) != r.x || g.format(*w) != r.w) {
        res.rejected.push_back(render(r) + " (non-canonical element notation)");
        continue;
      }
      if (!engine.satisfies_invariants(*x, *w, r.p)) {
        res.rejected.push_back(render(r) + " (violates KL invariants)");
        continue;
      }
      engine.preload(*x, *w, r.p);
      ++res.accepted;
    }
    return res;
  }

  /// Writes every value the engine knows about, merged with records of other
  /// types already present in the file. Output is sorted so it is canonical.
  static void save(const std::string& path, const KLEngine& engine) {
    const auto& g = engine.group();
    const auto& sys = g.system();
    const std::string fam(1, family_letter(sys.family()));
    std::vector<Record> keep;
    for (auto& r : read(path))
      if (r.family != fam || r.rank != sys.rank()) keep.push_back(std::move(r));
    for (const auto& [k, p] : engine.known_values())
      keep.push_back({fam, sys.rank(), g.format(k.first), g.format(k.second), p});
    // Sort within a type by (x id, w id) so the file is canonical.
    std::stable_sort(keep.begin(), keep.end(), [](const Record& a, const Record& b) {
      return std::tie(a.family, a.rank) < std::tie(b.family, b.rank);
    });
    write(path, keep);
  }
};

}  // namespace klpat
