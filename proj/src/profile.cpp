#include "equivote/profile.hpp"

#include "equivote/error.hpp"

namespace equivote {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::DegreeMismatch: return "degree_mismatch";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Infeasible: return "infeasible";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::NotEquitable: return "not_equitable";
    case ErrorCode::ConstructionFailed: return "construction_failed";
  }
  return "unknown";
}

VoteProfile::VoteProfile(std::vector<Vote> votes) : votes_(std::move(votes)) {
  for (Vote v : votes_)
    if (!is_vote(v)) fail(ErrorCode::InvalidArgument, "vote outside {-1,0,1}");
}

VoteProfile::VoteProfile(std::initializer_list<int> votes) {
  votes_.reserve(votes.size());
  for (int v : votes) {
    if (!is_vote(v)) fail(ErrorCode::InvalidArgument, "vote outside {-1,0,1}");
    votes_.push_back(static_cast<Vote>(v));
  }
}

VoteProfile VoteProfile::uniform(std::size_t n, Vote v) {
  return VoteProfile(std::vector<Vote>(n, v));
}

VoteProfile VoteProfile::negated() const {
  std::vector<Vote> out(votes_.size());
  for (std::size_t i = 0; i < votes_.size(); ++i)
    out[i] = static_cast<Vote>(-votes_[i]);
  return VoteProfile(std::move(out));
}

Tally tally(std::span<const Vote> votes) noexcept {
  Tally t;
  for (Vote v : votes) {
    if (v > 0)
      ++t.for_count;
    else if (v < 0)
      ++t.against_count;
    else
      ++t.abstain_count;
  }
  return t;
}

std::uint64_t profile_index(std::span<const Vote> votes) noexcept {
  std::uint64_t idx = 0;
  for (std::size_t i = votes.size(); i-- > 0;)
    idx = idx * 3 + static_cast<std::uint64_t>(votes[i] + 1);
  return idx;
}

void decode_profile(std::uint64_t index, std::span<Vote> out) noexcept {
  for (auto& v : out) {
    v = static_cast<Vote>(static_cast<int>(index % 3) - 1);
    index /= 3;
  }
}

}  // namespace equivote
