#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "equivote/permutation.hpp"
#include "equivote/rules.hpp"

namespace equivote {

/// Integers modulo a prime p. Elements are kept in [0, p).
class PrimeField {
 public:
  /// Throws InvalidArgument when p is not prime (trial division).
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const noexcept { return p_; }
  std::uint32_t reduce(std::int64_t x) const noexcept;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return (a + b) % p_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return (a + p_ - b) % p_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return (p_ - a) % p_; }
  /// Throws InvalidArgument for zero.
  std::uint32_t inv(std::uint32_t a) const;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t p) noexcept;

using Coords = std::vector<std::uint32_t>;

/// Scales v so its first nonzero coordinate is 1. Throws on the zero vector.
Coords canonical(const PrimeField& f, Coords v);

/// Canonical representatives of the 1-dimensional subspaces of F_p^dim in
/// lexicographic coordinate order: p+1 points for dim 2, p^2+p+1 for dim 3.
std::vector<Coords> projective_points(std::uint32_t p, std::size_t dim);

struct ProjectiveGeometry {
  std::uint32_t p;
  std::vector<Coords> points;
  std::vector<Coalition> lines;  // lines[i] = points x with a_i . x = 0

  std::size_t point_index(const Coords& canonical_coords) const;
};

/// PG(2,p): points of F_p^3 and lines indexed by their canonical normal
/// vector (same order as the points).
ProjectiveGeometry projective_plane(std::uint32_t p);
std::vector<Coalition> lines_pg2(const ProjectiveGeometry& geometry);

/// Coalition rule whose winning family is the lines of PG(2,p).
VotingRule build_projective_rule(std::uint32_t p);

/// PGL(2,p) acting on the p+1 points of the projective line. Order
/// (p+1)p(p-1); throws Overflow beyond max_order.
PermGroup pgl2_elements(std::uint32_t p, std::uint64_t max_order = 10080);

/// PGL(3,p) acting on the points of PG(2,p). Throws Overflow before
/// enumerating when (p^3-1)(p^3-p)(p^3-p^2)/(p-1) exceeds max_order.
PermGroup pgl3_elements(std::uint32_t p, std::uint64_t max_order = 10080);

std::uint64_t pgl_order(std::uint32_t p, std::size_t dim);

}  // namespace equivote
