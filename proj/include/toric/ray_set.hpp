#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace toric {

/// Maximum number of rays a fan may carry; ray sets are 64-bit masks.
inline constexpr std::size_t kMaxRays = 64;

/// A set of ray indices stored as a bitmask. Used for cones (ConeRef) and for
/// primitive collections; both are sets of ray ordinals.
class RaySet {
 public:
  constexpr RaySet() = default;
  constexpr explicit RaySet(std::uint64_t mask) : mask_(mask) {}
  RaySet(std::initializer_list<std::size_t> indices) {
    for (auto i : indices) insert(i);
  }
  static RaySet from_indices(const std::vector<std::size_t>& indices) {
    RaySet s;
    for (auto i : indices) s.insert(i);
    return s;
  }
  static constexpr RaySet single(std::size_t i) { return RaySet(std::uint64_t{1} << i); }
  static constexpr RaySet first(std::size_t n) {
    return RaySet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(std::size_t i) const { return (mask_ >> i) & 1U; }
  constexpr bool contains(RaySet other) const { return (other.mask_ & ~mask_) == 0; }
  constexpr bool intersects(RaySet other) const { return (mask_ & other.mask_) != 0; }

  void insert(std::size_t i) { mask_ |= std::uint64_t{1} << i; }
  void erase(std::size_t i) { mask_ &= ~(std::uint64_t{1} << i); }

  constexpr RaySet with(std::size_t i) const { return RaySet(mask_ | (std::uint64_t{1} << i)); }
  constexpr RaySet without(std::size_t i) const { return RaySet(mask_ & ~(std::uint64_t{1} << i)); }

  /// Smallest index; undefined on an empty set.
  constexpr std::size_t front() const { return static_cast<std::size_t>(std::countr_zero(mask_)); }
  constexpr std::size_t back() const { return 63 - static_cast<std::size_t>(std::countl_zero(mask_)); }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (auto m = mask_; m != 0; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    return out;
  }

  /// Calls f(index) for every member in increasing order.
  template <class F>
  void for_each(F&& f) const {
    for (auto m = mask_; m != 0; m &= m - 1) f(static_cast<std::size_t>(std::countr_zero(m)));
  }

  friend constexpr RaySet operator|(RaySet a, RaySet b) { return RaySet(a.mask_ | b.mask_); }
  friend constexpr RaySet operator&(RaySet a, RaySet b) { return RaySet(a.mask_ & b.mask_); }
  friend constexpr RaySet operator-(RaySet a, RaySet b) { return RaySet(a.mask_ & ~b.mask_); }
  friend constexpr bool operator==(RaySet a, RaySet b) { return a.mask_ == b.mask_; }

  std::string to_string() const;

 private:
  std::uint64_t mask_ = 0;
};

/// Lexicographic order on the sorted index lists, the canonical order for cone
/// lists in this library.
bool lex_less(RaySet a, RaySet b);

struct LexLess {
  bool operator()(RaySet a, RaySet b) const { return lex_less(a, b); }
};

/// Calls f(subset) for every subset of `s`, including the empty set and `s`.
template <class F>
void for_each_subset(RaySet s, F&& f) {
  const std::uint64_t full = s.mask();
  std::uint64_t sub = 0;
  while (true) {
    f(RaySet(sub));
    if (sub == full) break;
    sub = (sub - full) & full;
  }
}

}  // namespace toric

template <>
struct std::hash<toric::RaySet> {
  std::size_t operator()(toric::RaySet s) const noexcept { return std::hash<std::uint64_t>{}(s.mask()); }
};
