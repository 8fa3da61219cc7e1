#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "equivote/caps.hpp"
#include "equivote/permutation.hpp"
#include "equivote/rules.hpp"

namespace equivote {

/// Deterministic 64-bit Mersenne Twister (std::mt19937_64, whose output
/// sequence is fixed by the standard). Bounded draws use rejection sampling
/// on the raw 64-bit output, not std::uniform_int_distribution, so the draw
/// sequence is reproducible across standard libraries.
class SeededRng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, bound). Rejects raw draws >= 2^64 - (2^64 mod bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

struct IntersectingSetResult {
  Coalition set;
  std::uint64_t ell = 0;
  std::uint64_t attempts = 0;
  bool certified = false;
};

/// ceil(sqrt(n) * ln(m))
std::uint64_t intersecting_set_ell(std::size_t n, std::uint64_t m);

inline constexpr std::uint64_t kDefaultMaxAttempts = 64;

/// S = {0..ell-1} together with ell uniform draws (with replacement), kept
/// once g(S) meets S for every element g. Redraws the random half up to
/// `max_attempts` times, then throws ConstructionFailed. Requires an
/// enumerated group of order m > 2.
IntersectingSetResult intersecting_set(const PermGroup& g, SeededRng& rng,
                                       std::uint64_t max_attempts = kDefaultMaxAttempts,
                                       unsigned workers = 1);

/// Second opinion on g(S) ∩ S != ∅ for all g, sharing no code with the
/// construction's own check.
bool verify_intersecting(const PermGroup& g, const Coalition& s);

struct Provenance {
  std::uint64_t seed = 0;
  std::string group;  // e.g. "cyclic:100", "pgl2:7"
  std::uint64_t ell = 0;
  std::uint64_t attempts = 0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct GroupRule {
  VotingRule rule;
  PermGroup group;
  IntersectingSetResult set;
  Provenance provenance;
};

/// Coalition rule whose family is {g(S) : g in G}. Every element of G is
/// checked to permute the family, so G is certified inside Aut_f.
GroupRule build_rule_from_group(const PermGroup& g, SeededRng& rng, std::string descriptor,
                                std::uint64_t max_attempts = kDefaultMaxAttempts,
                                unsigned workers = 1);

/// Rotations of {0..n-1}, fully enumerated.
PermGroup cyclic_group(std::size_t n);

/// PGL(2,p) on the p+1 points of the projective line, fed through
/// build_rule_from_group. n = p+1.
GroupRule build_3_equitable_rule(std::uint32_t p, std::uint64_t seed, const Caps& caps = {});

}  // namespace equivote
