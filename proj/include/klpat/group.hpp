#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "klpat/coxeter_system.hpp"

namespace klpat {

using ElementId = std::uint32_t;

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Which descent a recursion picks when several are available.
struct DescentChoice {
  enum class Side { Left, Right } side = Side::Left;
  enum class Pick { Lowest, Highest } pick = Pick::Lowest;

  int choose(std::uint32_t mask) const {
    if (mask == 0) return -1;
    return pick == Pick::Lowest ? std::countr_zero(mask) : 31 - std::countl_zero(mask);
  }
};

/// All elements of a finite Coxeter system with dense ids.
///
/// Ids are ordered by length, then by ShortLex normal form; id 0 is the
/// identity. Left/right multiplication by simple generators, inverses and
/// descent sets are tabulated.
class EnumeratedGroup {
 public:
  explicit EnumeratedGroup(const CoxeterSystem& sys, std::size_t cap = kDefaultEnumerationCap) : sys_(&sys) {
    if (auto order = sys.datum().group_order(); order && *order > cap)
      throw CapExceeded(sys.name() + " has " + std::to_string(*order) + " elements, above the enumeration cap of " +
                        std::to_string(cap));
    if (sys.rank() > 32) throw CapExceeded("rank above 32 is not supported by the enumerated group");
    build(cap);
  }

  const CoxeterSystem& system() const { return *sys_; }
  std::size_t size() const { return elements_.size(); }
  int rank() const { return sys_->rank(); }

  const GroupElement& element(ElementId id) const { return elements_[id]; }
  std::optional<ElementId> find(const GroupElement& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  ElementId id_of(const GroupElement& w) const {
    auto id = find(w);
    if (!id) throw DomainError("element is not in the enumerated group");
    return *id;
  }

  int length(ElementId id) const { return length_[id]; }
  ElementId left(int s, ElementId id) const { return left_[static_cast<std::size_t>(s) * size() + id]; }
  ElementId right(ElementId id, int s) const { return right_[static_cast<std::size_t>(s) * size() + id]; }
  ElementId inverse(ElementId id) const { return inverse_[id]; }
  std::uint32_t left_descents(ElementId id) const { return ldes_[id]; }
  std::uint32_t right_descents(ElementId id) const { return rdes_[id]; }
  bool is_left_descent(ElementId id, int s) const { return (ldes_[id] >> s) & 1U; }
  ElementId longest() const { return static_cast<ElementId>(size() - 1); }

  /// ShortLex normal form.
  std::vector<int> word(ElementId id) const {
    std::vector<int> w;
    while (id != 0) {
      int s = first_letter_[id];
      w.push_back(s);
      id = left(s, id);
    }
    return w;
  }

  ElementId multiply(ElementId a, ElementId b) const {
    for (int s : word(b)) a = right(a, s);
    return a;
  }

  std::string format(ElementId id) const { return sys_->format_element(elements_[id]); }
  ElementId parse(std::string_view text) const { return id_of(sys_->parse_element(text)); }

  /// Bruhat order via the descent recursion: for s a descent of w,
  /// x <= w iff sx <= sw (when sx < x) or x <= sw (when sx > x).
  bool bruhat_leq(ElementId x, ElementId w, DescentChoice choice = {}) const {
    while (true) {
      int lx = length_[x], lw = length_[w];
      if (lx > lw) return false;
      if (lx == lw) return x == w;
      if (lx == 0) return true;
      if (choice.side == DescentChoice::Side::Left) {
        int s = choice.choose(ldes_[w]);
        if (is_left_descent(x, s)) x = left(s, x);
        w = left(s, w);
      } else {
        int s = choice.choose(rdes_[w]);
        if ((rdes_[x] >> s) & 1U) x = right(x, s);
        w = right(w, s);
      }
    }
  }

  /// [1, w] in id order.
  std::vector<ElementId> lower_interval(ElementId w) const {
    std::vector<ElementId> out;
    for (ElementId x = 0; x < size() && length_[x] <= length_[w]; ++x)
      if (bruhat_leq(x, w)) out.push_back(x);
    return out;
  }

 private:
  void build(std::size_t cap) {
    const auto& sys = *sys_;
    const int r = sys.rank();
    std::vector<GroupElement> inv;  // images of the inverses, parallel to elements_
    elements_.push_back(sys.identity());
    inv.push_back(sys.identity());
    length_.push_back(0);
    first_letter_.push_back(-1);
    std::vector<ElementId> parent{0};
    std::size_t layer_begin = 0, layer_end = 1;
    int len = 0;
    while (layer_begin < layer_end) {
      ++len;
      for (int s = 0; s < r; ++s) {
        for (std::size_t v = layer_begin; v < layer_end; ++v) {
          // s is a left descent of v iff s is a right descent of v^{-1}
          if (sys.is_right_descent(inv[v], s)) continue;
          GroupElement uinv = sys.right_multiply_simple(inv[v], s);
          if (sys.lowest_right_descent(uinv) != s) continue;
          if (elements_.size() >= cap)
            throw CapExceeded(sys.name() + " has more elements than the enumeration cap of " + std::to_string(cap));
          elements_.push_back(sys.left_multiply_simple(s, elements_[v]));
          inv.push_back(std::move(uinv));
          length_.push_back(len);
          first_letter_.push_back(s);
          parent.push_back(static_cast<ElementId>(v));
        }
      }
      layer_begin = layer_end;
      layer_end = elements_.size();
    }
    const std::size_t n = elements_.size();
    index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) index_.emplace(elements_[i], static_cast<ElementId>(i));
    left_.assign(static_cast<std::size_t>(r) * n, 0);
    right_.assign(static_cast<std::size_t>(r) * n, 0);
    inverse_.resize(n);
    ldes_.assign(n, 0);
    rdes_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      inverse_[i] = index_.at(inv[i]);
      for (int s = 0; s < r; ++s) {
        if (sys.is_right_descent(elements_[i], s)) rdes_[i] |= 1U << s;
        if (sys.is_right_descent(inv[i], s)) ldes_[i] |= 1U << s;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (int s = 0; s < r; ++s) {
        auto& l = left_[static_cast<std::size_t>(s) * n + i];
        if (i < l || (i > 0 && l > 0)) continue;  // already filled from its partner
        l = index_.at(sys.left_multiply_simple(s, elements_[i]));
        left_[static_cast<std::size_t>(s) * n + l] = static_cast<ElementId>(i);
      }
    // ws = (s w^{-1})^{-1}
    for (std::size_t i = 0; i < n; ++i)
      for (int s = 0; s < r; ++s)
        right_[static_cast<std::size_t>(s) * n + i] = inverse_[left(s, inverse_[i])];
  }

  const CoxeterSystem* sys_;
  std::vector<GroupElement> elements_;
  std::unordered_map<GroupElement, ElementId, GroupElementHash> index_;
  std::vector<int> length_;
  std::vector<int> first_letter_;
  std::vector<ElementId> left_, right_, inverse_;
  std::vector<std::uint32_t> ldes_, rdes_;
};

}  // namespace klpat
