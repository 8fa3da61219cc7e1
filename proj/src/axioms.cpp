#include "equivote/axioms.hpp"

#include <atomic>
#include <map>
#include <string>

#include "equivote/error.hpp"

namespace equivote {

ProfileTable::ProfileTable(const VotingRule& rule, const Caps& caps) : n_(rule.degree()) {
  if (n_ > caps.profile_n)
    fail(ErrorCode::Infeasible, "3^n profile scan at n=" + std::to_string(n_) +
                                    " exceeds cap " + std::to_string(caps.profile_n));
  pow3_.resize(n_ + 1);
  pow3_[0] = 1;
  for (std::size_t i = 1; i <= n_; ++i) pow3_[i] = pow3_[i - 1] * 3;
  outcomes_.resize(pow3_[n_]);
  parallel_chunks(outcomes_.size(), caps.workers,
                  [&](std::uint64_t begin, std::uint64_t end, unsigned) {
                    std::vector<Vote> votes(n_);
                    decode_profile(begin, votes);
                    for (std::uint64_t idx = begin; idx < end; ++idx) {
                      outcomes_[idx] = rule.evaluate_unchecked(votes);
                      next_profile(votes);
                    }
                  });
}

std::uint64_t ProfileTable::permuted_index(std::uint64_t index,
                                           const Permutation& sigma) const {
  // digit u of phi moves to position sigma(u)
  std::uint64_t out = 0;
  for (std::size_t u = 0; u < n_; ++u) {
    out += (index % 3) * pow3_[sigma(u)];
    index /= 3;
  }
  return out;
}

bool is_neutral(const ProfileTable& table) {
  const std::uint64_t last = table.size() - 1;
  for (std::uint64_t idx = 0; idx < table.size(); ++idx)
    if (table[last - idx] != -table[idx]) return false;
  return true;
}

bool is_neutral(const VotingRule& rule, const Caps& caps) {
  return is_neutral(ProfileTable(rule, caps));
}

namespace {

// For every profile and every voter whose vote can move one step in
// `direction`, calls check(from_outcome, to_outcome); stops on false.
template <typename Check>
bool scan_single_steps(const ProfileTable& table, int direction, Check&& check) {
  const std::size_t n = table.degree();
  std::vector<Vote> votes(n, kAgainst);
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    const Vote from = table[idx];
    for (std::size_t v = 0; v < n; ++v) {
      if (direction > 0 && votes[v] == kFor) continue;
      if (direction < 0 && votes[v] == kAgainst) continue;
      const std::uint64_t next =
          direction > 0 ? idx + table.powers()[v] : idx - table.powers()[v];
      if (!check(from, table[next])) return false;
    }
    next_profile(votes);
  }
  return true;
}

}  // namespace

bool is_positively_responsive(const ProfileTable& table) {
  const bool up = scan_single_steps(table, +1, [](Vote from, Vote to) {
    return from < 0 || to == kFor;
  });
  if (!up) return false;
  return scan_single_steps(table, -1, [](Vote from, Vote to) {
    return from > 0 || to == kAgainst;
  });
}

bool is_positively_responsive(const VotingRule& rule, const Caps& caps) {
  return is_positively_responsive(ProfileTable(rule, caps));
}

bool is_positively_responsive_pairwise(const VotingRule& rule, const Caps& caps) {
  const std::size_t n = rule.degree();
  if (n > 6) fail(ErrorCode::Infeasible, "pairwise responsiveness scan is limited to n <= 6");
  ProfileTable table(rule, caps);
  std::vector<Vote> lo(n), hi(n);
  for (std::uint64_t a = 0; a < table.size(); ++a) {
    if (table[a] < 0) continue;
    decode_profile(a, lo);
    for (std::uint64_t b = 0; b < table.size(); ++b) {
      if (a == b) continue;
      decode_profile(b, hi);
      bool dominates = true;
      for (std::size_t v = 0; v < n && dominates; ++v) dominates = hi[v] >= lo[v];
      if (dominates && table[b] != kFor) return false;
    }
  }
  return true;
}

bool is_monotone(const ProfileTable& table) {
  return scan_single_steps(table, +1, [](Vote from, Vote to) { return to >= from; });
}

bool is_monotone(const VotingRule& rule, const Caps& caps) {
  return is_monotone(ProfileTable(rule, caps));
}

bool is_symmetric(const ProfileTable& table) {
  std::map<std::pair<std::size_t, std::size_t>, Vote> by_tally;
  std::vector<Vote> votes(table.degree(), kAgainst);
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    const Tally t = tally(votes);
    auto [it, inserted] = by_tally.try_emplace({t.for_count, t.against_count}, table[idx]);
    if (!inserted && it->second != table[idx]) return false;
    next_profile(votes);
  }
  return true;
}

bool is_symmetric(const VotingRule& rule, const Caps& caps) {
  return is_symmetric(ProfileTable(rule, caps));
}

bool is_automorphism(const ProfileTable& table, const Permutation& sigma) {
  if (sigma.degree() != table.degree())
    fail(ErrorCode::DegreeMismatch, "automorphism candidate degree mismatch");
  const std::size_t n = table.degree();
  const auto& pw = table.powers();
  // Walk profiles in index order while tracking the permuted index
  // incrementally: bumping digit u by one adds 3^sigma(u); wrapping it from
  // 2 to 0 subtracts 2 * 3^sigma(u).
  std::vector<std::uint8_t> digits(n, 0);
  std::uint64_t image = 0;
  for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
    if (table[idx] != table[image]) return false;
    for (std::size_t u = 0; u < n; ++u) {
      if (digits[u] < 2) {
        ++digits[u];
        image += pw[sigma(u)];
        break;
      }
      digits[u] = 0;
      image -= 2 * pw[sigma(u)];
    }
  }
  return true;
}

}  // namespace equivote
