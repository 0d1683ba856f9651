#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace malle {

/// A bijection of {1..d}. Stored 0-based internally; every public accessor
/// that talks about points uses 1-based points.
class Permutation {
 public:
  using Point = std::uint32_t;

  Permutation() = default;
  /// Identity on d points.
  explicit Permutation(std::size_t degree);
  /// From 1-based images: images[i-1] is the image of point i.
  static Permutation from_images(std::span<const Point> one_based_images);
  /// Cycle notation such as "(1 2 3)(4 5)" or "(1,2)"; "()" is the identity.
  static Permutation parse_cycles(std::string_view text, std::size_t degree);
  static Permutation from_cycles(const std::vector<std::vector<Point>>& cycles,
                                 std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  /// Image of the 1-based point x.
  Point operator()(Point x) const { return images_[x - 1] + 1; }
  /// 0-based raw access for hot loops.
  Point image0(std::size_t i) const { return images_[i]; }
  const std::vector<Point>& raw() const noexcept { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  std::size_t order() const;
  std::size_t fixed_points() const;
  /// Even permutation test.
  bool is_even() const;

  /// Orbits of <g>, each sorted ascending, ordered by smallest point.
  std::vector<std::vector<Point>> orbits() const;
  std::size_t orbit_count() const;
  /// Orbit lengths sorted descending (the cycle type partition).
  std::vector<std::size_t> cycle_type() const;

  /// Cycle notation with fixed points omitted; "()" for the identity.
  std::string to_cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  explicit Permutation(std::vector<Point> zero_based) : images_(std::move(zero_based)) {}
  friend Permutation compose(const Permutation&, const Permutation&);

  std::vector<Point> images_;
};

/// (a∘b)(x) = a(b(x)). Throws DomainError on degree mismatch.
Permutation compose(const Permutation& a, const Permutation& b);

/// Partition of d into cycle lengths, descending.
using CycleType = std::vector<std::size_t>;
inline CycleType cycle_type(const Permutation& g) { return g.cycle_type(); }
inline std::vector<std::vector<Permutation::Point>> orbits(const Permutation& g) {
  return g.orbits();
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

inline constexpr std::size_t kDefaultGroupCap = 100000;

/// A finite permutation group with its element set fully enumerated.
/// Elements are sorted lexicographically by image sequence, so element 0
/// is always the identity. Immutable after construction.
class PermGroup {
 public:
  /// Closes the generators; throws CapacityError when the closure exceeds cap.
  static PermGroup closure(std::vector<Permutation> generators, std::size_t degree,
                           std::size_t cap = kDefaultGroupCap, std::string name = {});

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const Permutation& element(std::size_t i) const { return elements_[i]; }
  const std::string& name() const noexcept { return name_; }
  PermGroup with_name(std::string name) const;

  /// Index of g in elements(), if it belongs to the group.
  std::optional<std::size_t> index_of(const Permutation& g) const;
  bool contains(const Permutation& g) const { return index_of(g).has_value(); }
  std::size_t product_index(std::size_t i, std::size_t j) const;
  std::size_t inverse_index(std::size_t i) const;

  bool is_transitive() const;
  bool is_abelian() const;
  /// Orbit of the 1-based point x, sorted.
  std::vector<Permutation::Point> orbit_of(Permutation::Point x) const;
  /// Indices of the elements fixing the 1-based point x.
  std::vector<std::size_t> stabilizer(Permutation::Point x) const;

 private:
  PermGroup() = default;

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
  std::string name_;
};

/// Sorted element list, as returned for subgroups.
using ElementSet = std::vector<Permutation>;

/// Group generated by the given generators (alias of PermGroup::closure).
PermGroup group_closure(const std::vector<Permutation>& generators,
                        std::size_t cap = kDefaultGroupCap);

/// True if the element set is a subgroup of G (closed, contains identity).
bool is_subgroup(const PermGroup& G, const ElementSet& U);

/// Action of G on the left cosets of U; points are numbered by the
/// lexicographically smallest coset representative. Throws DomainError if U
/// is not a subgroup of G.
PermGroup coset_action(const PermGroup& G, const ElementSet& U);

/// Left regular representation (coset action on the trivial subgroup).
PermGroup regular_action(const PermGroup& G);

}  // namespace malle
