#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "klpat/group.hpp"
#include "klpat/kl_engine.hpp"

namespace klpat {

/// Reflection generators that do not form a parabolic subgroup.
class NotParabolic : public DomainError {
 public:
  NotParabolic(const std::string& msg, RootId witness) : DomainError(msg), witness_(witness) {}
  /// A reflection of R' = {r : α_r ∈ V'} missing from the generated subgroup.
  RootId witness() const { return witness_; }

 private:
  RootId witness_;
};

/// Subspace of the root lattice ⊗ Q in integer row-echelon form.
class IntSubspace {
 public:
  explicit IntSubspace(int dim) : dim_(dim) {}

  int dim() const { return static_cast<int>(rows_.size()); }

  /// Adds v to the spanning set; returns true if the dimension grew.
  bool add(std::span<const int> v) {
    auto r = reduce(std::vector<std::int64_t>(v.begin(), v.end()));
    auto pivot = std::find_if(r.begin(), r.end(), [](std::int64_t c) { return c != 0; });
    if (pivot == r.end()) return false;
    rows_.push_back(std::move(r));
    pivots_.push_back(static_cast<int>(pivot - rows_.back().begin()));
    return true;
  }

  bool contains(std::span<const int> v) const {
    auto r = reduce(std::vector<std::int64_t>(v.begin(), v.end()));
    return std::all_of(r.begin(), r.end(), [](std::int64_t c) { return c == 0; });
  }

  const std::vector<std::vector<std::int64_t>>& basis() const { return rows_; }

 private:
  std::vector<std::int64_t> reduce(std::vector<std::int64_t> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      auto p = static_cast<std::size_t>(pivots_[k]);
      if (v[p] == 0) continue;
      std::int64_t a = rows_[k][p], b = v[p];
      std::int64_t g = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = detail::checked_add(detail::checked_mul(a, v[i]), -detail::checked_mul(b, rows_[k][i]));
        g = std::gcd(g, v[i]);
      }
      if (g > 1)
        for (auto& c : v) c /= g;
    }
    return v;
  }

  int dim_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<int> pivots_;
};

/// φ(w) as an element of W': its index in the embedded group plus the
/// S'-word the greedy descent produced.
struct PhiResult {
  ElementId index = 0;
  std::vector<int> word;
};

/// Parabolic subgroup W' ⊂ W cut out by a subspace V' of root space.
///
/// Φ' = Φ ∩ V', Π' = Π ∩ V', and S' is the set of indecomposable elements of
/// Π'. W' is also realized as a Coxeter system of its own (the embedded
/// system) so that l', ≤' and P' can be computed intrinsically.
class ParabolicSubgroup {
 public:
  /// The subgroup generated by the given reflections (roots, sign ignored).
  /// Throws NotParabolic when it is smaller than the group generated by
  /// all reflections whose roots lie in the span of the generators.
  static ParabolicSubgroup from_reflections(const CoxeterSystem& sys, std::vector<RootId> generators,
                                            std::string spec = {}, std::size_t cap = kDefaultEnumerationCap) {
    ParabolicSubgroup p(sys);
    p.spec_ = std::move(spec);
    for (auto& g : generators) g = sys.positive_part(g);
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    p.generators_ = generators;
    for (RootId g : generators) p.subspace_.add(sys.coords(g));
    p.in_prime_.assign(sys.num_roots(), false);
    for (std::size_t r = 0; r < sys.num_roots(); ++r)
      if (p.subspace_.contains(sys.coords(static_cast<RootId>(r)))) {
        p.in_prime_[r] = true;
        p.roots_.push_back(static_cast<RootId>(r));
        if (sys.is_positive(static_cast<RootId>(r))) p.positives_.push_back(static_cast<RootId>(r));
      }
    // Roots of ⟨generators⟩: orbit of the generator roots under the generators.
    std::vector<bool> reached(sys.num_positive_roots(), false);
    std::vector<RootId> frontier = generators;
    for (RootId g : generators) reached[g] = true;
    while (!frontier.empty()) {
      RootId b = frontier.back();
      frontier.pop_back();
      for (RootId g : generators) {
        RootId c = sys.positive_part(sys.reflection_action(g, b));
        if (!reached[c]) {
          reached[c] = true;
          frontier.push_back(c);
        }
      }
    }
    for (RootId r : p.positives_)
      if (!reached[r])
        throw NotParabolic("reflection subgroup is not parabolic: the reflection in root " + root_label(sys, r) +
                               " lies in the span but not in the generated subgroup",
                           r);
    // S': indecomposable positive roots of Φ'.
    for (RootId a : p.positives_) {
      bool decomposable = false;
      for (RootId b : p.positives_) {
        if (b == a) continue;
        std::vector<int> diff(static_cast<std::size_t>(sys.rank()));
        auto ca = sys.coords(a), cb = sys.coords(b);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ca[i] - cb[i];
        int d = sys.find_root(diff);
        if (d >= 0 && sys.is_positive(static_cast<RootId>(d)) && p.in_prime_[static_cast<std::size_t>(d)]) {
          decomposable = true;
          break;
        }
      }
      if (!decomposable) p.simples_.push_back(a);
    }
    // Number S' by descending simple-root coordinates: α_i before α_j for
    // i < j in the standard case, r14 before r46 before r67 in S7.
    std::sort(p.simples_.begin(), p.simples_.end(), [&](RootId a, RootId b) {
      auto ca = sys.coords(a), cb = sys.coords(b);
      return std::lexicographical_compare(cb.begin(), cb.end(), ca.begin(), ca.end());
    });
    if (static_cast<int>(p.simples_.size()) != p.subspace_.dim())
      throw Error("simple system of the reflection subgroup has the wrong size");
    p.build_embedded(cap);
    return p;
  }

  /// x W_I x^{-1}, I given as 0-based simple indices.
  static ParabolicSubgroup conjugate(const CoxeterSystem& sys, const GroupElement& x, const std::vector<int>& subset,
                                     std::string spec = {}, std::size_t cap = kDefaultEnumerationCap) {
    std::vector<RootId> gens;
    for (int i : subset) {
      if (i < 0 || i >= sys.rank()) throw ParseError("simple reflection index out of range");
      gens.push_back(sys.positive_part(sys.apply(x, static_cast<RootId>(i))));
    }
    return from_reflections(sys, gens, std::move(spec), cap);
  }

  static ParabolicSubgroup standard(const CoxeterSystem& sys, const std::vector<int>& subset, std::string spec = {},
                                    std::size_t cap = kDefaultEnumerationCap) {
    return conjugate(sys, sys.identity(), subset, std::move(spec), cap);
  }

  const CoxeterSystem& ambient() const { return *sys_; }
  const std::string& spec() const { return spec_; }
  void set_spec(std::string s) { spec_ = std::move(s); }

  const std::vector<RootId>& generators() const { return generators_; }
  const IntSubspace& subspace() const { return subspace_; }
  const std::vector<RootId>& roots_prime() const { return roots_; }
  const std::vector<RootId>& positives_prime() const { return positives_; }
  const std::vector<RootId>& simples_prime() const { return simples_; }
  bool contains_root(RootId r) const { return in_prime_[r]; }
  int rank_prime() const { return static_cast<int>(simples_.size()); }

  /// S' ⊆ S.
  bool is_standard() const {
    return std::all_of(simples_.begin(), simples_.end(), [&](RootId r) { return r < sys_->rank(); });
  }
  /// x^{-1} W' x is standard iff x^{-1}Φ' contains rank(W') simple roots.
  bool conjugate_is_standard(const GroupElement& x) const {
    GroupElement xinv = sys_->inverse(x);
    int simple = 0;
    for (RootId r : positives_)
      if (sys_->positive_part(sys_->apply(xinv, r)) < sys_->rank()) ++simple;
    return simple == rank_prime();
  }

  // ---- W' as a group --------------------------------------------------------

  const CoxeterSystem& embedded_system() const { return embedded_->sys; }
  const EnumeratedGroup& embedded_group() const { return embedded_->group; }
  /// KL engine for (W', S'), built on first use.
  const KLEngine& embedded_kl() const {
    std::call_once(embedded_->engine_once, [&] { embedded_->engine = std::make_unique<KLEngine>(embedded_->group); });
    return *embedded_->engine;
  }
  std::size_t order() const { return embedded_->elements.size(); }
  /// Ambient element for the embedded id.
  const GroupElement& element(ElementId index) const { return embedded_->elements[index]; }
  std::optional<ElementId> index_of(const GroupElement& w) const {
    auto it = embedded_->index.find(w);
    if (it == embedded_->index.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const GroupElement& w) const { return index_of(w).has_value(); }

  // ---- pattern map ----------------------------------------------------------

  /// The unique u ∈ W' with uΠ' = wΠ ∩ V'.
  PhiResult phi_root(const GroupElement& w) const {
    const auto& sys = *sys_;
    std::vector<char> cur(sys.num_roots(), 0);  // membership in the current positive system of Φ'
    for (std::size_t b = 0; b < sys.num_positive_roots(); ++b) {
      RootId img = sys.apply(w, static_cast<RootId>(b));
      if (in_prime_[img]) cur[img] = 1;
    }
    PhiResult res;
    std::vector<char> next(cur.size());
    while (true) {
      int pick = -1;
      for (std::size_t i = 0; i < simples_.size(); ++i)
        if (!cur[simples_[i]]) {
          pick = static_cast<int>(i);
          break;
        }
      if (pick < 0) break;
      RootId sigma = simples_[static_cast<std::size_t>(pick)];
      std::fill(next.begin(), next.end(), 0);
      for (RootId r : roots_)
        if (cur[r]) next[sys.reflection_action(sigma, r)] = 1;
      cur.swap(next);
      res.word.push_back(pick);
    }
    res.index = embedded_->group.id_of(embedded_->sys.from_word(res.word));
    return res;
  }

  struct CosetResult {
    ElementId phi = 0;         // index of φ(w) in W'
    GroupElement minimal;      // the minimal element of W'w
  };

  /// Reduces w to the minimal element y of W'w by left multiplication with
  /// reflections r ∈ R' that shorten it; φ(w) = w y^{-1}.
  CosetResult phi_coset(const GroupElement& w) const {
    const auto& sys = *sys_;
    GroupElement y = w;
    GroupElement u = sys.identity();
    std::vector<char> mark(sys.num_roots());
    while (true) {
      std::fill(mark.begin(), mark.end(), 0);
      for (std::size_t b = 0; b < sys.num_positive_roots(); ++b) mark[sys.apply(y, static_cast<RootId>(b))] = 1;
      // r y < y  iff  α_r ∉ yΠ
      auto it = std::find_if(positives_.begin(), positives_.end(), [&](RootId r) { return !mark[r]; });
      if (it == positives_.end()) break;
      y = sys.left_multiply_reflection(*it, y);
      u = sys.multiply(u, sys.reflection(*it));
    }
    auto idx = index_of(u);
    if (!idx) throw Error("phi_coset left W'");
    return {*idx, std::move(y)};
  }

  /// Flattened form of an element of W' for classical ambient types: one
  /// permutation per nontrivial block of positions, read off at those
  /// positions. nullopt when W' is not a product of full type A/B/C/D blocks.
  std::optional<std::string> flattened(const GroupElement& u) const;

  /// S'-word rendering ("t1t3" over the simple system of W'), "e" for 1.
  std::string intrinsic(ElementId index) const {
    auto w = embedded_->group.word(index);
    if (w.empty()) return "e";
    std::string s;
    for (int i : w) s += "t" + std::to_string(i + 1);
    return s;
  }

  /// Labels the simple system, e.g. "t1=r13 t2=r24".
  std::string describe_simples() const {
    std::string s;
    for (std::size_t i = 0; i < simples_.size(); ++i)
      s += (i ? " " : "") + std::string("t") + std::to_string(i + 1) + "=" + root_label(*sys_, simples_[i]);
    return s;
  }

  /// r_ij / e_i±e_j labels for classical types, coordinates otherwise.
  static std::string root_label(const CoxeterSystem& sys, RootId r);

 private:
  explicit ParabolicSubgroup(const CoxeterSystem& sys) : sys_(&sys), subspace_(sys.rank()) {}

  struct Embedded {
    explicit Embedded(CartanDatum d, std::size_t cap) : sys(std::move(d)), group(sys, cap) {}
    CoxeterSystem sys;
    EnumeratedGroup group;
    std::vector<GroupElement> elements;
    std::unordered_map<GroupElement, ElementId, GroupElementHash> index;
    std::once_flag engine_once;
    std::unique_ptr<KLEngine> engine;
  };

  void build_embedded(std::size_t cap) {
    const auto& sys = *sys_;
    const auto k = simples_.size();
    IntMatrix a(k, std::vector<int>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        // s'_i(α'_j) = α'_j - a'_ji α'_i
        auto cj = sys.coords(simples_[j]);
        auto ci = sys.coords(simples_[i]);
        auto img = sys.coords(sys.reflection_action(simples_[i], simples_[j]));
        int coef = 0;
        for (std::size_t t = 0; t < cj.size(); ++t)
          if (ci[t] != 0) {
            coef = (cj[t] - img[t]) / ci[t];
            break;
          }
        a[j][i] = coef;
      }
    embedded_ = std::make_shared<Embedded>(CartanDatum::from_matrix(std::move(a)), cap);
    const auto& g = embedded_->group;
    embedded_->elements.resize(g.size());
    embedded_->elements[0] = sys.identity();
    for (ElementId id = 1; id < g.size(); ++id) {
      int s = g.word(id).front();
      ElementId rest = g.left(s, id);
      embedded_->elements[id] = sys.left_multiply_reflection(simples_[static_cast<std::size_t>(s)], embedded_->elements[rest]);
    }
    embedded_->index.reserve(g.size());
    for (ElementId id = 0; id < g.size(); ++id) embedded_->index.emplace(embedded_->elements[id], id);
    if (embedded_->index.size() != g.size()) throw Error("embedded group does not act faithfully");
  }

  const CoxeterSystem* sys_;
  std::string spec_;
  std::vector<RootId> generators_;
  IntSubspace subspace_;
  std::vector<bool> in_prime_;
  std::vector<RootId> roots_, positives_, simples_;
  std::shared_ptr<Embedded> embedded_;
};

inline std::string ParabolicSubgroup::root_label(const CoxeterSystem& sys, RootId r) {
  r = sys.positive_part(r);
  if (is_classical(sys.family())) {
    auto e = sys.epsilon_coords(r);
    std::vector<std::pair<int, int>> nz;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) nz.emplace_back(static_cast<int>(i) + 1, e[i]);
    if (nz.size() == 2 && nz[0].second == 1 && nz[1].second == -1)
      return sys.family() == Family::A ? "r" + std::to_string(nz[0].first) + std::to_string(nz[1].first)
                                       : "e" + std::to_string(nz[0].first) + "-e" + std::to_string(nz[1].first);
    if (nz.size() == 2 && nz[0].second == 1 && nz[1].second == 1)
      return "e" + std::to_string(nz[0].first) + "+e" + std::to_string(nz[1].first);
    if (nz.size() == 1) return (nz[0].second == 2 ? "2e" : "e") + std::to_string(nz[0].first);
  }
  std::string s = "(";
  auto c = sys.coords(r);
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

inline std::optional<std::string> ParabolicSubgroup::flattened(const GroupElement& u) const {
  const auto& sys = *sys_;
  if (!is_classical(sys.family())) return std::nullopt;
  const int n = sys.permutation_degree();
  // Union positions linked by roots of Φ'.
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
    return a;
  };
  std::vector<int> signed_roots(static_cast<std::size_t>(n), 0), unsigned_roots(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> support;
  for (RootId r : positives_) {
    auto e = sys.epsilon_coords(r);
    std::vector<int> nz;
    for (int i = 0; i < n; ++i)
      if (e[static_cast<std::size_t>(i)] != 0) nz.push_back(i);
    support.push_back(nz);
    if (nz.size() == 2) parent[static_cast<std::size_t>(find(nz[0]))] = find(nz[1]);
  }
  std::map<int, std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) blocks[find(i)].push_back(i);
  std::map<int, int> root_count;
  std::map<int, bool> has_signed;
  for (std::size_t k = 0; k < positives_.size(); ++k) {
    auto e = sys.epsilon_coords(positives_[k]);
    int b = find(support[k][0]);
    ++root_count[b];
    bool plain_difference = support[k].size() == 2 && e[static_cast<std::size_t>(support[k][0])] == 1 &&
                            e[static_cast<std::size_t>(support[k][1])] == -1;
    if (!plain_difference) has_signed[b] = true;
  }
  auto perm = sys.to_signed_permutation(u);
  std::vector<std::string> parts;
  std::vector<std::vector<int>> ordered;
  for (auto& [root, members] : blocks) ordered.push_back(members);
  std::sort(ordered.begin(), ordered.end());
  for (const auto& members : ordered) {
    const int b = find(members.front());
    const auto k = static_cast<int>(members.size());
    const int count = root_count.count(b) ? root_count[b] : 0;
    const bool sgn = has_signed.count(b) && has_signed[b];
    if (k == 1 && count == 0) continue;
    int full_signed = sys.family() == Family::D ? k * (k - 1) : k * k;
    if (!sgn && count != k * (k - 1) / 2) return std::nullopt;
    if (sgn && count != full_signed) return std::nullopt;
    std::vector<int> vals;
    for (int pos : members) vals.push_back(perm[static_cast<std::size_t>(pos)]);
    std::vector<int> abs_sorted;
    for (int v : vals) abs_sorted.push_back(v < 0 ? -v : v);
    std::sort(abs_sorted.begin(), abs_sorted.end());
    std::string s;
    bool commas = sgn || k > 9;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      int a = vals[i] < 0 ? -vals[i] : vals[i];
      int rank = static_cast<int>(std::lower_bound(abs_sorted.begin(), abs_sorted.end(), a) - abs_sorted.begin()) + 1;
      if (commas && i) s += ",";
      s += std::to_string(vals[i] < 0 ? -rank : rank);
    }
    parts.push_back(s);
  }
  if (parts.empty()) return "e";
  if (parts.size() == 1) return parts.front();
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "|" : "") + parts[i];
  return s + ")";
}

// ---- classical flattening ---------------------------------------------------

/// fl(a_1...a_k): the permutation with the same relative order.
inline std::vector<int> flatten(std::span<const int> seq) {
  std::vector<int> sorted(seq.begin(), seq.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> out;
  out.reserve(seq.size());
  for (int a : seq)
    out.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), a) - sorted.begin()) + 1);
  return out;
}

/// fl_Σ(w): the entries of w whose values lie in Σ, in position order, flattened.
inline std::vector<int> flatten_classical(std::span<const int> w, std::span<const int> sigma) {
  std::vector<int> picked;
  for (int v : w)
    if (std::find(sigma.begin(), sigma.end(), v) != sigma.end()) picked.push_back(v);
  return flatten(picked);
}

/// Parses "1,4,6,7" into a strictly increasing position set within [1, n].
inline std::vector<int> parse_position_set(std::string_view text, int n) {
  std::vector<int> out;
  std::size_t pos = 0;
  if (text.empty()) return out;
  while (pos <= text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string tok(text.substr(pos, end - pos));
    int v = 0;
    if (tok.empty() || tok.size() > 4 || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError("bad position '" + tok + "'");
    v = std::stoi(tok);
    if (v < 1 || v > n) throw ParseError("position " + tok + " out of range 1.." + std::to_string(n));
    if (!out.empty() && v <= out.back()) throw ParseError("positions must be strictly increasing");
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

namespace detail {

inline RootId epsilon_root(const CoxeterSystem& sys, std::initializer_list<std::pair<int, int>> terms) {
  std::vector<int> e(static_cast<std::size_t>(sys.epsilon_dim()), 0);
  for (auto [i, c] : terms) {
    if (i < 1 || i > static_cast<int>(e.size())) throw ParseError("position " + std::to_string(i) + " out of range");
    e[static_cast<std::size_t>(i - 1)] += c;
  }
  int id = sys.find_root_epsilon(e);
  if (id < 0) throw ParseError("no such root in " + sys.name());
  return sys.positive_part(static_cast<RootId>(id));
}

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(sep, pos);
    if (end == std::string_view::npos) end = text.size();
    out.emplace_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return out;
}

inline std::vector<int> parse_simple_subset(const CoxeterSystem& sys, std::string_view text) {
  std::vector<int> out;
  if (text.empty()) return out;
  for (auto& tok : split(text, ',')) {
    auto w = sys.parse_word(tok);
    if (w.size() != 1) throw ParseError("expected a single generator, got '" + tok + "'");
    out.push_back(w.front());
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw ParseError("repeated generator");
  return out;
}

/// Roots generating the subgroup of signed permutations of the values ±a, a ∈ block.
inline std::vector<RootId> signed_block_roots(const CoxeterSystem& sys, const std::vector<int>& block) {
  std::vector<RootId> roots;
  for (std::size_t i = 0; i + 1 < block.size(); ++i) {
    roots.push_back(epsilon_root(sys, {{block[i], 1}, {block[i + 1], -1}}));
    if (sys.family() == Family::D) roots.push_back(epsilon_root(sys, {{block[i], 1}, {block[i + 1], 1}}));
  }
  if (sys.family() == Family::B) roots.push_back(epsilon_root(sys, {{block.back(), 1}}));
  if (sys.family() == Family::C) roots.push_back(epsilon_root(sys, {{block.back(), 2}}));
  return roots;
}

}  // namespace detail

/// Parses the parabolic specification grammar:
///   refl:1-3,2-4        reflections by position pairs (i-j, i+j and i for B/C/D)
///   standard:s1,s2      the standard parabolic W_I
///   conj:X|s1,s3        X W_I X^{-1}
///   positions:1,4,6,7   Σ shorthand; ';' separates disjoint blocks. For B/C/D
///                       this is the subgroup of signed permutations of ±Σ.
///   unsigned            all unsigned permutations (B/C/D)
inline ParabolicSubgroup parse_parabolic(const CoxeterSystem& sys, std::string_view spec,
                                         std::size_t cap = kDefaultEnumerationCap) {
  const std::string s(spec);
  auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (kind == "standard") return ParabolicSubgroup::standard(sys, detail::parse_simple_subset(sys, body), s, cap);
  if (kind == "conj") {
    auto bar = body.find('|');
    if (bar == std::string::npos) throw ParseError("conj spec needs 'x|s1,s2'");
    auto x = sys.parse_element(body.substr(0, bar));
    return ParabolicSubgroup::conjugate(sys, x, detail::parse_simple_subset(sys, body.substr(bar + 1)), s, cap);
  }
  if (!is_classical(sys.family())) throw ParseError("parabolic spec '" + s + "' needs a classical type");
  const int n = sys.permutation_degree();
  if (kind == "refl") {
    std::vector<RootId> roots;
    if (!body.empty())
      for (auto& tok : detail::split(body, ',')) {
        auto num = [&](const std::string& t) {
          if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }) || t.size() > 4)
            throw ParseError("bad reflection '" + tok + "'");
          return std::stoi(t);
        };
        auto minus = tok.find('-'), plus = tok.find('+');
        if (minus != std::string::npos) {
          int i = num(tok.substr(0, minus)), j = num(tok.substr(minus + 1));
          if (i == j) throw ParseError("bad reflection '" + tok + "'");
          roots.push_back(detail::epsilon_root(sys, {{i, 1}, {j, -1}}));
        } else if (plus != std::string::npos) {
          if (sys.family() == Family::A) throw ParseError("type A has no e_i+e_j roots");
          int i = num(tok.substr(0, plus)), j = num(tok.substr(plus + 1));
          if (i == j) throw ParseError("bad reflection '" + tok + "'");
          roots.push_back(detail::epsilon_root(sys, {{i, 1}, {j, 1}}));
        } else {
          if (sys.family() == Family::A || sys.family() == Family::D)
            throw ParseError("no e_i roots in type " + sys.name());
          int i = num(tok);
          roots.push_back(detail::epsilon_root(sys, {{i, sys.family() == Family::C ? 2 : 1}}));
        }
      }
    return ParabolicSubgroup::from_reflections(sys, roots, s, cap);
  }
  if (kind == "positions") {
    std::vector<RootId> roots;
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    for (auto& blk : detail::split(body, ';')) {
      auto block = parse_position_set(blk, n);
      for (int a : block) {
        if (used[static_cast<std::size_t>(a)]) throw ParseError("position blocks must be disjoint");
        used[static_cast<std::size_t>(a)] = true;
      }
      if (block.empty()) continue;
      if (sys.family() == Family::A) {
        for (std::size_t i = 0; i + 1 < block.size(); ++i)
          roots.push_back(detail::epsilon_root(sys, {{block[i], 1}, {block[i + 1], -1}}));
      } else {
        auto r = detail::signed_block_roots(sys, block);
        roots.insert(roots.end(), r.begin(), r.end());
      }
    }
    return ParabolicSubgroup::from_reflections(sys, roots, s, cap);
  }
  if (kind == "unsigned" && body.empty()) {
    if (sys.family() == Family::A) throw ParseError("'unsigned' needs type B, C or D");
    std::vector<RootId> roots;
    for (int i = 1; i < n; ++i) roots.push_back(detail::epsilon_root(sys, {{i, 1}, {i + 1, -1}}));
    return ParabolicSubgroup::from_reflections(sys, roots, s, cap);
  }
  throw ParseError("unknown parabolic spec '" + s + "'");
}

/// Every parabolic subgroup x W_I x^{-1} of an enumerated group, each listed
/// once (first (I, x) in (bitmask, id) order wins). Specs are "standard:..."
/// or "conj:x|...".
inline std::vector<ParabolicSubgroup> enumerate_parabolics(const EnumeratedGroup& g, bool standard_only) {
  const auto& sys = g.system();
  const int r = sys.rank();
  std::vector<ParabolicSubgroup> out;
  std::set<std::vector<bool>> seen;
  for (std::uint32_t mask = 0; mask < (1U << r); ++mask) {
    std::vector<int> subset;
    std::string names;
    for (int i = 0; i < r; ++i)
      if ((mask >> i) & 1U) {
        subset.push_back(i);
        names += (names.empty() ? "s" : ",s") + std::to_string(i + 1);
      }
    const ElementId limit = standard_only ? 1 : static_cast<ElementId>(g.size());
    for (ElementId x = 0; x < limit; ++x) {
      std::vector<bool> key(sys.num_positive_roots(), false);
      // Roots of x W_I x^{-1} = x Φ_I; Φ_I from the standard subgroup once per mask.
      std::vector<RootId> gens;
      for (int i : subset) gens.push_back(sys.positive_part(sys.apply(g.element(x), static_cast<RootId>(i))));
      IntSubspace span(r);
      for (RootId a : gens) span.add(sys.coords(a));
      for (std::size_t b = 0; b < sys.num_positive_roots(); ++b)
        if (span.contains(sys.coords(static_cast<RootId>(b)))) key[b] = true;
      if (!seen.insert(key).second) continue;
      std::string spec = x == 0 ? "standard:" + names : "conj:" + g.format(x) + "|" + names;
      out.push_back(ParabolicSubgroup::from_reflections(sys, gens, spec));
    }
  }
  return out;
}

}  // namespace klpat
