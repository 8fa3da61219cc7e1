#include "equivote/randomized.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <vector>

#include "equivote/analysis.hpp"
#include "equivote/error.hpp"
#include "equivote/galois.hpp"

namespace equivote {

std::uint64_t SeededRng::below(std::uint64_t bound) {
  if (bound == 0) fail(ErrorCode::InvalidArgument, "empty range");
  // 2^64 mod bound, computed without overflow
  const std::uint64_t excess = (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - excess;
  while (true) {
    const std::uint64_t x = engine_();
    if (excess == 0 || x <= limit) return x % bound;
  }
}

std::uint64_t intersecting_set_ell(std::size_t n, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      std::ceil(std::sqrt(static_cast<double>(n)) * std::log(static_cast<double>(m))));
}

IntersectingSetResult intersecting_set(const PermGroup& g, SeededRng& rng,
                                       std::uint64_t max_attempts, unsigned workers) {
  const auto& elements = g.elements();
  const std::uint64_t m = elements.size();
  if (m <= 2) fail(ErrorCode::Precondition, "group order must exceed 2");
  const std::size_t n = g.degree();

  IntersectingSetResult out;
  out.ell = intersecting_set_ell(n, m);
  const std::size_t fixed = static_cast<std::size_t>(std::min<std::uint64_t>(out.ell, n));

  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<Point> members(fixed);
    for (std::size_t i = 0; i < fixed; ++i) members[i] = static_cast<Point>(i);
    for (std::uint64_t i = 0; i < out.ell; ++i) members.push_back(static_cast<Point>(rng.below(n)));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Coalition s(n, std::move(members));

    std::atomic<bool> ok{true};
    parallel_chunks(m, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned) {
      for (std::uint64_t i = begin; i < end && ok.load(std::memory_order_relaxed); ++i)
        if (!Coalition(n, apply_to_set(elements[i], s.members())).intersects(s)) ok = false;
    });
    if (ok) {
      out.set = std::move(s);
      out.attempts = attempt;
      out.certified = true;
      return out;
    }
  }
  fail(ErrorCode::ConstructionFailed,
       "no intersecting set after " + std::to_string(max_attempts) + " attempts");
}

bool verify_intersecting(const PermGroup& g, const Coalition& s) {
  std::vector<char> in(g.degree(), 0);
  for (Point v : s.members()) in[v] = 1;
  for (const auto& e : g.elements()) {
    bool meets = false;
    for (Point v : s.members())
      if (in[e(v)]) {
        meets = true;
        break;
      }
    if (!meets) return false;
  }
  return true;
}

PermGroup cyclic_group(std::size_t n) {
  std::vector<Permutation> rotations;
  for (std::size_t k = 0; k < n; ++k) rotations.push_back(Permutation::rotation(n, k));
  return group_from_elements(n, std::move(rotations), {Permutation::rotation(n, 1)});
}

GroupRule build_rule_from_group(const PermGroup& g, SeededRng& rng, std::string descriptor,
                                std::uint64_t max_attempts, unsigned workers) {
  const std::uint64_t seed = rng.seed();
  auto set = intersecting_set(g, rng, max_attempts, workers);
  const std::size_t n = g.degree();

  std::vector<Coalition> family;
  for (const auto& e : g.elements()) family.emplace_back(n, apply_to_set(e, set.set.members()));
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());

  // coalition() rejects disjoint members
  auto rule = VotingRule::coalition(n, family);
  for (const auto& e : g.elements())
    if (!preserves_family(family, e))
      fail(ErrorCode::ConstructionFailed, "group element does not permute the family");

  Provenance prov{seed, std::move(descriptor), set.ell, set.attempts};
  return GroupRule{std::move(rule), g, std::move(set), std::move(prov)};
}

GroupRule build_3_equitable_rule(std::uint32_t p, std::uint64_t seed, const Caps& caps) {
  auto group = pgl2_elements(p, caps.closure_order);
  SeededRng rng(seed);
  return build_rule_from_group(group, rng, "pgl2:" + std::to_string(p), kDefaultMaxAttempts,
                               caps.workers);
}

}  // namespace equivote
