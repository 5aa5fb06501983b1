#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "klpat/kl_engine.hpp"
#include "klpat/parabolic.hpp"
#include "klpat/patterns.hpp"

namespace klpat {

/// An ambient group with its enumeration and KL engine.
struct Workspace {
  explicit Workspace(CartanDatum d, std::size_t cap = kDefaultEnumerationCap)
      : sys(std::move(d)), group(sys, cap), kl(group) {}
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  CoxeterSystem sys;
  EnumeratedGroup group;
  KLEngine kl;
};

/// Lazily built workspaces keyed by type name ("A3"). Thread-safe.
class WorkspaceRegistry {
 public:
  explicit WorkspaceRegistry(std::size_t cap = kDefaultEnumerationCap) : cap_(cap) {}

  Workspace& get(const std::string& type) {
    std::lock_guard lock(mutex_);
    auto& slot = spaces_[type];
    if (!slot) slot = std::make_unique<Workspace>(CartanDatum::parse(type), cap_);
    return *slot;
  }
  /// S_n for n >= 2.
  Workspace& symmetric(int n) { return get("A" + std::to_string(n - 1)); }

 private:
  std::size_t cap_;
  std::mutex mutex_;
  std::map<std::string, std::unique_ptr<Workspace>> spaces_;
};

/// φ and the coset decomposition W = ⊔ W'y for every element of an
/// enumerated group, computed element by element with phi_coset.
class CosetTable {
 public:
  CosetTable(const EnumeratedGroup& g, const ParabolicSubgroup& sub) : g_(&g), sub_(&sub) {
    const std::size_t n = g.size();
    phi_.resize(n);
    rep_.resize(n);
    for (ElementId a = 0; a < n; ++a) {
      auto res = sub.phi_coset(g.element(a));
      phi_[a] = res.phi;
      rep_[a] = g.id_of(res.minimal);
    }
    for (ElementId a = 0; a < n; ++a) members_[rep_[a]].push_back(a);
  }

  const EnumeratedGroup& group() const { return *g_; }
  const ParabolicSubgroup& subgroup() const { return *sub_; }
  /// Index of φ(a) in the embedded group of W'.
  ElementId phi(ElementId a) const { return phi_[a]; }
  /// The minimal element of W'a.
  ElementId rep(ElementId a) const { return rep_[a]; }
  const std::vector<ElementId>& coset(ElementId a) const { return members_.at(rep_[a]); }
  const std::map<ElementId, std::vector<ElementId>>& cosets() const { return members_; }

 private:
  const EnumeratedGroup* g_;
  const ParabolicSubgroup* sub_;
  std::vector<ElementId> phi_, rep_;
  std::map<ElementId, std::vector<ElementId>> members_;
};

namespace detail {

/// Maxima of a set of W'-indices under ≤' (input: (payload, index) pairs).
template <class T>
std::vector<T> maxima_by_phi(const EnumeratedGroup& eg, std::vector<std::pair<T, ElementId>> items) {
  std::stable_sort(items.begin(), items.end(),
                   [&](const auto& a, const auto& b) { return eg.length(a.second) > eg.length(b.second); });
  std::vector<std::pair<T, ElementId>> top;
  for (const auto& it : items) {
    bool below = std::any_of(top.begin(), top.end(), [&](const auto& m) { return eg.bruhat_leq(it.second, m.second); });
    if (!below) top.push_back(it);
  }
  std::vector<T> out;
  for (auto& m : top) out.push_back(m.first);
  return out;
}

}  // namespace detail

/// M(x, w; W'): maximal elements of [1, w] ∩ W'x under ≤_x, where
/// ux ≤_x u'x iff φ(ux) ≤' φ(u'x). Ascending ids.
inline std::vector<ElementId> maximal_set(const CosetTable& ct, ElementId x, ElementId w) {
  const auto& g = ct.group();
  std::vector<std::pair<ElementId, ElementId>> items;
  for (ElementId a : ct.coset(x))
    if (g.bruhat_leq(a, w)) items.emplace_back(a, ct.phi(a));
  auto out = detail::maxima_by_phi(ct.subgroup().embedded_group(), std::move(items));
  std::sort(out.begin(), out.end());
  return out;
}

/// Element-level M(x, w; W') that needs no enumeration of W: the coset is
/// walked as W'·x, with φ(ux) = u φ(x).
inline std::vector<GroupElement> maximal_set(const ParabolicSubgroup& sub, const GroupElement& x,
                                             const GroupElement& w) {
  const auto& sys = sub.ambient();
  const auto& eg = sub.embedded_group();
  const ElementId px = sub.phi_root(x).index;
  std::vector<std::pair<GroupElement, ElementId>> items;
  for (ElementId u = 0; u < sub.order(); ++u) {
    GroupElement ux = sys.multiply(sub.element(u), x);
    if (sys.bruhat_leq(ux, w)) items.emplace_back(std::move(ux), eg.multiply(u, px));
  }
  auto out = detail::maxima_by_phi(eg, std::move(items));
  std::sort(out.begin(), out.end(),
            [&](const GroupElement& a, const GroupElement& b) { return sys.format_element(a) < sys.format_element(b); });
  return out;
}

struct BoundTerm {
  ElementId y = 0;
  std::int64_t p_yw = 0;     // P_{y,w}(1)
  std::int64_t p_prime = 0;  // P'_{φ(x),φ(y)}(1)
};

struct BoundReport {
  ElementId x = 0, w = 0;
  bool x_leq_w = true;  // false: the theorem does not apply, rhs is reported as 0
  std::vector<ElementId> maximal;
  std::int64_t lhs = 0, rhs = 0;
  bool holds = true;
  std::vector<BoundTerm> per_term;
};

/// P_{x,w}(1) >= Σ_{y ∈ M(x,w;W')} P_{y,w}(1) P'_{φ(x),φ(y)}(1).
inline BoundReport main_bound(const KLEngine& kl, const CosetTable& ct, ElementId x, ElementId w) {
  const auto& g = ct.group();
  const auto& pk = ct.subgroup().embedded_kl();
  BoundReport r;
  r.x = x;
  r.w = w;
  r.maximal = maximal_set(ct, x, w);
  r.x_leq_w = g.bruhat_leq(x, w);
  if (!r.x_leq_w) return r;
  r.lhs = kl.kl_polynomial(x, w).at_one();
  for (ElementId y : r.maximal) {
    BoundTerm t{y, kl.kl_polynomial(y, w).at_one(), pk.kl_polynomial(ct.phi(x), ct.phi(y)).at_one()};
    r.rhs = detail::checked_add(r.rhs, detail::checked_mul(t.p_yw, t.p_prime));
    r.per_term.push_back(t);
  }
  r.holds = r.lhs >= r.rhs;
  return r;
}

/// Right-hand side of the main theorem without enumerating W. P_{y,w} for
/// y != w comes from the callback; returns nullopt terms if it is absent.
struct ElementBound {
  std::vector<GroupElement> maximal;
  ElementId phi_x = 0;
  std::vector<ElementId> phi_y;
  std::vector<std::optional<std::int64_t>> p_yw;
  std::vector<std::int64_t> p_prime;
  std::optional<std::int64_t> rhs;
};

using AmbientKL = std::function<std::optional<IntPolynomial>(const GroupElement&, const GroupElement&)>;

inline ElementBound main_bound_rhs(const ParabolicSubgroup& sub, const GroupElement& x, const GroupElement& w,
                                   const AmbientKL& ambient = {}) {
  ElementBound b;
  b.maximal = maximal_set(sub, x, w);
  b.phi_x = sub.phi_root(x).index;
  const auto& pk = sub.embedded_kl();
  std::int64_t rhs = 0;
  bool complete = true;
  for (const auto& y : b.maximal) {
    ElementId py = sub.phi_root(y).index;
    b.phi_y.push_back(py);
    std::optional<std::int64_t> pyw;
    if (y == w) {
      pyw = 1;
    } else if (ambient) {
      if (auto p = ambient(y, w)) pyw = p->at_one();
    }
    b.p_yw.push_back(pyw);
    std::int64_t pp = pk.kl_polynomial(b.phi_x, py).at_one();
    b.p_prime.push_back(pp);
    if (pyw)
      rhs = detail::checked_add(rhs, detail::checked_mul(*pyw, pp));
    else
      complete = false;
  }
  if (complete) b.rhs = rhs;
  return b;
}

inline bool standard_hypothesis(const CosetTable& ct, ElementId x) {
  const auto& sub = ct.subgroup();
  return sub.is_standard() || sub.conjugate_is_standard(ct.group().element(x));
}

struct CoefficientReport {
  ElementId x = 0, w = 0, y = 0;
  bool x_leq_w = true;
  IntPolynomial lhs, rhs;  // P_{x,w} and P_{y,w} P'_{φ(x),φ(y)}
  std::vector<bool> per_degree;
  bool holds = true;
};

/// Degree-by-degree form of the main theorem when W' or x^{-1}W'x is
/// standard (then M(x,w;W') is a single element y).
inline CoefficientReport coefficientwise_bound(const KLEngine& kl, const CosetTable& ct, ElementId x, ElementId w) {
  if (!standard_hypothesis(ct, x)) throw HypothesisError("neither W' nor x^-1 W' x is a standard parabolic subgroup");
  const auto& g = ct.group();
  CoefficientReport r;
  r.x = x;
  r.w = w;
  r.x_leq_w = g.bruhat_leq(x, w);
  if (!r.x_leq_w) return r;
  auto m = maximal_set(ct, x, w);
  if (m.size() != 1) throw Error("M(x,w;W') is not a singleton under the standardness hypothesis");
  r.y = m.front();
  r.lhs = kl.kl_polynomial(x, w);
  r.rhs = kl.kl_polynomial(r.y, w) * ct.subgroup().embedded_kl().kl_polynomial(ct.phi(x), ct.phi(r.y));
  const int top = std::max(r.lhs.degree(), r.rhs.degree());
  for (int k = 0; k <= top; ++k) {
    bool ok = r.lhs.coeff(static_cast<std::size_t>(k)) >= r.rhs.coeff(static_cast<std::size_t>(k));
    r.per_degree.push_back(ok);
    r.holds = r.holds && ok;
  }
  return r;
}

struct EqualityReport {
  IntPolynomial lhs, rhs;
  bool holds = false;
};

/// P_{x,w} = P'_{φ(x),φ(w)} for w ∈ W'x under the standardness hypothesis.
inline EqualityReport parabolic_equality(const KLEngine& kl, const CosetTable& ct, ElementId x, ElementId w) {
  if (!standard_hypothesis(ct, x)) throw HypothesisError("neither W' nor x^-1 W' x is a standard parabolic subgroup");
  if (ct.rep(x) != ct.rep(w)) throw HypothesisError("w is not in the coset W'x");
  EqualityReport r;
  r.lhs = kl.kl_polynomial(x, w);
  r.rhs = ct.subgroup().embedded_kl().kl_polynomial(ct.phi(x), ct.phi(w));
  r.holds = r.lhs == r.rhs;
  return r;
}

struct MonotonicityReport {
  ElementId w = 0;
  ElementId y = 0;           // the coset element with φ(y) = 1
  std::int64_t lhs = 0;      // P_{1,w}(1)
  std::int64_t chain = 0;    // P_{y,w}(1)
  std::int64_t rhs = 0;      // P'_{1,φ(w)}(1)
  bool holds = false;
};

/// P_{1,w}(1) >= P_{y,w}(1) >= P'_{1,φ(w)}(1).
inline MonotonicityReport monotonicity_bound(const KLEngine& kl, const CosetTable& ct, ElementId w) {
  MonotonicityReport r;
  r.w = w;
  r.y = ct.rep(w);
  r.lhs = kl.kl_polynomial(0, w).at_one();
  r.chain = kl.kl_polynomial(r.y, w).at_one();
  r.rhs = ct.subgroup().embedded_kl().kl_polynomial(0, ct.phi(w)).at_one();
  r.holds = r.lhs >= r.chain && r.chain >= r.rhs;
  return r;
}

// ---- Brenti-Simion factorization ---------------------------------------------

/// u[j,k]: the entries of u with values in [j,k], in order, flattened.
inline Permutation value_window(std::span<const int> u, int lo, int hi) {
  std::vector<int> kept;
  for (int v : u)
    if (v >= lo && v <= hi) kept.push_back(v);
  return flatten(kept);
}

/// True iff the values 1..i occupy the same positions in u and v.
inline bool same_low_positions(std::span<const int> u, std::span<const int> v, int i) {
  for (std::size_t p = 0; p < u.size(); ++p)
    if ((u[p] <= i) != (v[p] <= i)) return false;
  return true;
}

struct BrentiSimionReport {
  IntPolynomial lhs, low, high, rhs;
  bool holds = false;
};

namespace detail {

inline IntPolynomial symmetric_kl(WorkspaceRegistry& reg, const Permutation& u, const Permutation& v) {
  if (u.size() <= 1) return IntPolynomial::one();
  auto& ws = reg.symmetric(static_cast<int>(u.size()));
  return ws.kl.kl_polynomial(ws.group.id_of(ws.sys.from_signed_permutation(u)),
                             ws.group.id_of(ws.sys.from_signed_permutation(v)));
}

}  // namespace detail

/// P_{u,v} = P_{u[1,i],v[1,i]} · P_{u[i+1,n],v[i+1,n]} when 1..i sit in the
/// same positions of u and v.
inline BrentiSimionReport brenti_simion(WorkspaceRegistry& reg, const Permutation& u, const Permutation& v, int i) {
  const int n = static_cast<int>(u.size());
  if (static_cast<int>(v.size()) != n) throw ParseError("u and v must have the same size");
  if (i < 0 || i > n) throw DomainError("i out of range");
  if (!same_low_positions(u, v, i)) throw HypothesisError("1.." + std::to_string(i) + " occupy different positions in u and v");
  BrentiSimionReport r;
  r.lhs = detail::symmetric_kl(reg, u, v);
  r.low = detail::symmetric_kl(reg, value_window(u, 1, i), value_window(v, 1, i));
  r.high = detail::symmetric_kl(reg, value_window(u, i + 1, n), value_window(v, i + 1, n));
  r.rhs = r.low * r.high;
  r.holds = r.lhs == r.rhs;
  return r;
}

}  // namespace klpat
