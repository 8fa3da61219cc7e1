#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "equivote/caps.hpp"
#include "equivote/profile.hpp"

namespace equivote {

using Point = std::uint32_t;

/// A bijection on {0..n-1} in image form: images()[i] is the image of i.
class Permutation {
 public:
  /// Validates that `images` is a bijection of degree >= 1.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t n);
  /// i -> i + k mod n
  static Permutation rotation(std::size_t n, std::size_t k);
  static Permutation transposition(std::size_t n, Point a, Point b);
  /// Builds from disjoint cycles; unlisted points are fixed.
  static Permutation from_cycles(std::size_t n,
                                 const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(std::size_t i) const { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// result(i) = p(q(i))
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse(const Permutation& p);
/// Even iff the inversion count is even.
bool is_even(const Permutation& p);
/// True iff p is a single cycle through all n points.
bool is_full_cycle(const Permutation& p);
/// Smallest k >= 1 with p^k = identity.
std::uint64_t element_order(const Permutation& p);

/// phi^p(v) = phi(p^{-1}(v)): voter v receives the vote of p^{-1}(v).
VoteProfile apply_to_profile(const Permutation& p, const VoteProfile& phi);

/// Image of a point set under p, sorted.
std::vector<Point> apply_to_set(const Permutation& p,
                                std::span<const Point> set);

class PermGroup {
 public:
  /// A group given by generators only; elements stay unpopulated.
  PermGroup(std::size_t n, std::vector<Permutation> generators);

  std::size_t degree() const noexcept { return n_; }
  const std::vector<Permutation>& generators() const noexcept {
    return generators_;
  }
  bool has_elements() const noexcept { return elements_.has_value(); }
  /// Throws Precondition when the closure has not been enumerated.
  const std::vector<Permutation>& elements() const;
  std::optional<std::uint64_t> order() const noexcept;

  bool contains(const Permutation& p) const;

 private:
  friend PermGroup generate_closure(std::size_t,
                                    const std::vector<Permutation>&,
                                    std::uint64_t);
  friend PermGroup group_from_elements(std::size_t, std::vector<Permutation>,
                                       std::vector<Permutation>);

  std::size_t n_;
  std::vector<Permutation> generators_;
  std::optional<std::vector<Permutation>> elements_;  // sorted
};

/// Breadth-first closure of `gens` under composition. Elements come back in
/// lexicographic image order. Throws Overflow once more than `max_order`
/// distinct elements have been found.
PermGroup generate_closure(std::size_t n, const std::vector<Permutation>& gens,
                           std::uint64_t max_order = 10080);

/// Wraps an already closed element list (caller guarantees closure).
PermGroup group_from_elements(std::size_t n, std::vector<Permutation> elements,
                              std::vector<Permutation> generators = {});

/// Picks a small generating set out of a fully enumerated group.
std::vector<Permutation> reduce_generators(const PermGroup& g,
                                           std::uint64_t max_order);

/// Orbit of i by breadth-first search over the generators, sorted.
std::vector<Point> orbit(const PermGroup& g, Point i);

struct OrbitPartition {
  std::vector<std::size_t> orbit_id;  // per point, labels in first-seen order
  std::vector<std::size_t> orbit_sizes;
};
OrbitPartition orbits(const PermGroup& g);

bool is_transitive(const PermGroup& g);

/// Elements fixing i. Requires an enumerated group.
PermGroup stabilizer(const PermGroup& g, Point i);

/// Single orbit on ordered k-tuples of distinct points. Uses the element
/// list when present, otherwise breadth-first search over the generators.
bool is_k_transitive(const PermGroup& g, std::size_t k);

/// First element (in element order) that is a single n-cycle.
std::optional<Permutation> find_n_cycle(const PermGroup& g);

/// Two commuting fixed-point-free elements of prime order p generating a
/// regular C_p x C_p subgroup. Requires an enumerated group of degree p^2.
std::optional<std::pair<Permutation, Permutation>> find_regular_grid_pair(
    const PermGroup& g, std::uint64_t p);

}  // namespace equivote
