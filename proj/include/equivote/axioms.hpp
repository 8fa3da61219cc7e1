#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "equivote/caps.hpp"
#include "equivote/rules.hpp"

namespace equivote {

/// Outcome of a rule on every ternary profile, indexed by profile_index().
class ProfileTable {
 public:
  /// Throws Infeasible when rule.degree() > caps.profile_n.
  ProfileTable(const VotingRule& rule, const Caps& caps);

  std::size_t degree() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return outcomes_.size(); }
  Vote operator[](std::uint64_t index) const { return outcomes_[index]; }
  std::span<const Vote> outcomes() const noexcept { return outcomes_; }
  /// 3^v for v in 0..n
  const std::vector<std::uint64_t>& powers() const noexcept { return pow3_; }

  /// Index of phi^sigma given the index of phi.
  std::uint64_t permuted_index(std::uint64_t index, const Permutation& sigma) const;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> pow3_;
  std::vector<Vote> outcomes_;
};

/// f(-phi) = -f(phi) on every profile.
bool is_neutral(const ProfileTable& table);
bool is_neutral(const VotingRule& rule, const Caps& caps = {});

/// Checked through single-coordinate raises (and, independently, lowerings
/// for the mirrored condition); the coordinate order is transitive, so
/// this covers every comparable pair.
bool is_positively_responsive(const ProfileTable& table);
bool is_positively_responsive(const VotingRule& rule, const Caps& caps = {});

/// Definitional pair scan over all (phi, phi') with phi >= phi', phi != phi'.
/// O(9^n); for cross-checking at n <= 5.
bool is_positively_responsive_pairwise(const VotingRule& rule, const Caps& caps = {});

/// phi >= phi' coordinate-wise implies f(phi) >= f(phi').
bool is_monotone(const ProfileTable& table);
bool is_monotone(const VotingRule& rule, const Caps& caps = {});

/// Outcome depends only on the tally (equivalently Aut_f = S_n).
bool is_symmetric(const ProfileTable& table);
bool is_symmetric(const VotingRule& rule, const Caps& caps = {});

/// f(phi^sigma) = f(phi) on every profile.
bool is_automorphism(const ProfileTable& table, const Permutation& sigma);

}  // namespace equivote
