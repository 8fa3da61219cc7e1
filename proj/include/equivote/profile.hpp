#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace equivote {

/// A single vote: -1, 0 (indifferent / abstain) or +1.
using Vote = std::int8_t;

inline constexpr Vote kAgainst = -1;
inline constexpr Vote kAbstain = 0;
inline constexpr Vote kFor = 1;

constexpr bool is_vote(int v) noexcept { return v >= -1 && v <= 1; }

class VoteProfile {
 public:
  VoteProfile() = default;
  explicit VoteProfile(std::vector<Vote> votes);
  VoteProfile(std::initializer_list<int> votes);

  static VoteProfile uniform(std::size_t n, Vote v);

  std::size_t size() const noexcept { return votes_.size(); }
  Vote operator[](std::size_t i) const { return votes_[i]; }
  std::span<const Vote> votes() const noexcept { return votes_; }

  VoteProfile negated() const;

  friend bool operator==(const VoteProfile&, const VoteProfile&) = default;

 private:
  std::vector<Vote> votes_;
};

struct Tally {
  std::size_t for_count = 0;
  std::size_t against_count = 0;
  std::size_t abstain_count = 0;

  friend bool operator==(const Tally&, const Tally&) = default;
};

Tally tally(std::span<const Vote> votes) noexcept;
inline Tally tally(const VoteProfile& p) noexcept { return tally(p.votes()); }

/// Ternary profiles are indexed by sum_v (phi(v) + 1) * 3^v.
std::uint64_t profile_index(std::span<const Vote> votes) noexcept;
void decode_profile(std::uint64_t index, std::span<Vote> out) noexcept;

/// Advances `votes` to the next profile in index order. Returns false after
/// wrapping from the all-(+1) profile back to all-(-1).
inline bool next_profile(std::span<Vote> votes) noexcept {
  for (auto& v : votes) {
    if (v < kFor) {
      ++v;
      return true;
    }
    v = kAgainst;
  }
  return false;
}

}  // namespace equivote
