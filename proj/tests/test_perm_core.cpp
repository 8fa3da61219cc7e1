#include <doctest.h>

#include <random>

#include "equivote/error.hpp"
#include "equivote/permutation.hpp"
#include "oracles.hpp"

using namespace equivote;

namespace {

Permutation P(std::vector<Point> v) { return Permutation(std::move(v)); }

Permutation random_perm(std::size_t n, std::mt19937& rng) {
  std::vector<Point> v(n);
  std::iota(v.begin(), v.end(), 0u);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation(v);
}

PermGroup symmetric(std::size_t n) {
  std::vector<Point> cyc(n);
  std::iota(cyc.begin(), cyc.end(), 0u);
  return generate_closure(n, {Permutation::transposition(n, 0, 1), Permutation::from_cycles(n, {cyc})});
}

}  // namespace

TEST_CASE("permutation construction rejects non-bijections") {
  CHECK_THROWS_AS(P({0, 0, 1}), Error);
  CHECK_THROWS_AS(P({0, 3, 1}), Error);
  CHECK_THROWS_AS(P({}), Error);
  CHECK(P({2, 0, 1}).degree() == 3);
}

TEST_CASE("compose") {
  CHECK(compose(Permutation::identity(3), P({1, 2, 0})) == P({1, 2, 0}));
  CHECK(compose(P({1, 0, 2}), P({1, 0, 2})) == Permutation::identity(3));
  CHECK(compose(P({1, 2, 0}), P({1, 2, 0})) == P({2, 0, 1}));
  CHECK_THROWS_AS(compose(Permutation::identity(3), Permutation::identity(4)), Error);
  try {
    compose(Permutation::identity(3), Permutation::identity(4));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeMismatch);
  }
}

TEST_CASE("inverse") {
  CHECK(inverse(Permutation::identity(5)) == Permutation::identity(5));
  CHECK(inverse(P({1, 2, 0})) == P({2, 0, 1}));
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto p = random_perm(1 + t % 9, rng);
    CHECK(compose(inverse(p), p).is_identity());
    CHECK(compose(p, inverse(p)).is_identity());
  }
}

TEST_CASE("apply_to_profile") {
  const VoteProfile phi{1, -1, 0};
  CHECK(apply_to_profile(Permutation::identity(3), phi) == phi);
  CHECK(apply_to_profile(Permutation::rotation(3, 1), phi) == VoteProfile{0, 1, -1});
  CHECK_THROWS_AS(apply_to_profile(Permutation::identity(4), phi), Error);
  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 8;
    std::vector<Vote> v(n);
    for (auto& x : v) x = static_cast<Vote>(static_cast<int>(rng() % 3) - 1);
    const auto p = random_perm(n, rng);
    const VoteProfile phi2(v);
    const auto out = apply_to_profile(p, phi2);
    CHECK(tally(out) == tally(phi2));
    for (std::size_t u = 0; u < n; ++u) CHECK(out[p(u)] == phi2[u]);
  }
}

TEST_CASE("closure") {
  CHECK(generate_closure(5, {Permutation::rotation(5, 1)}).order() == 5u);
  CHECK(symmetric(4).order() == 24u);
  CHECK(generate_closure(3, {}).order() == 1u);
  CHECK(generate_closure(3, {Permutation::identity(3)}).order() == 1u);
  try {
    generate_closure(8, {Permutation::transposition(8, 0, 1), Permutation::rotation(8, 1)}, 1000);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Overflow);
  }
}

TEST_CASE("closure agrees with the naive product oracle") {
  std::mt19937 rng(3);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 5;
    std::vector<Permutation> gens;
    std::vector<std::vector<Point>> raw;
    for (int g = 0; g < 1 + t % 3; ++g) {
      gens.push_back(random_perm(n, rng));
      raw.emplace_back(gens.back().images().begin(), gens.back().images().end());
    }
    const auto g = generate_closure(n, gens);
    const auto ref = oracle::closure(n, raw);
    REQUIRE(g.elements().size() == ref.size());
    std::size_t i = 0;
    for (const auto& e : ref) CHECK(std::equal(e.begin(), e.end(), g.elements()[i++].images().begin()));
    // idempotent
    CHECK(generate_closure(n, g.elements()).elements() == g.elements());
    // order divides n!
    std::uint64_t fact = 1;
    for (std::size_t k = 2; k <= n; ++k) fact *= k;
    CHECK(fact % ref.size() == 0);
    // closed under composition and inverse
    for (const auto& a : g.elements()) {
      CHECK(g.contains(inverse(a)));
      for (const auto& b : g.generators()) CHECK(g.contains(compose(a, b)));
    }
  }
}

TEST_CASE("orbits and stabilizers") {
  const auto c5 = generate_closure(5, {Permutation::rotation(5, 1)});
  CHECK(orbit(c5, 0) == std::vector<Point>{0, 1, 2, 3, 4});
  CHECK(orbit(PermGroup(3, {}), 2) == std::vector<Point>{2});
  const auto swap01 = generate_closure(4, {Permutation::transposition(4, 0, 1)});
  CHECK(orbit(swap01, 3) == std::vector<Point>{3});
  CHECK_THROWS_AS(orbit(swap01, 4), Error);
  const auto part = orbits(swap01);
  CHECK(part.orbit_sizes == std::vector<std::size_t>{2, 1, 1});
  CHECK(part.orbit_id[0] == part.orbit_id[1]);

  const auto c7 = generate_closure(7, {Permutation::rotation(7, 1)});
  CHECK(stabilizer(c7, 0).order() == 1u);
  CHECK(stabilizer(symmetric(3), 0).order() == 2u);
  CHECK_THROWS_AS(stabilizer(PermGroup(3, {Permutation::rotation(3, 1)}), 0), Error);

  std::mt19937 rng(9);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + t % 6;
    const auto g = generate_closure(n, {random_perm(n, rng), random_perm(n, rng)});
    for (Point i = 0; i < n; ++i)
      CHECK(orbit(g, i).size() * *stabilizer(g, i).order() == *g.order());
    CHECK(is_transitive(g) == (orbit(g, 0).size() == n));
    std::size_t total = 0;
    for (auto s : orbits(g).orbit_sizes) total += s;
    CHECK(total == n);
  }
}

TEST_CASE("k-transitivity") {
  const auto c7 = generate_closure(7, {Permutation::rotation(7, 1)});
  CHECK(is_k_transitive(c7, 1));
  CHECK_FALSE(is_k_transitive(c7, 2));
  CHECK(is_k_transitive(symmetric(4), 4));
  CHECK_THROWS_AS(is_k_transitive(c7, 8), Error);
  // generators only: breadth-first search over tuples
  const PermGroup s5_gens(5, symmetric(5).generators());
  CHECK(is_k_transitive(s5_gens, 3));
  CHECK_FALSE(is_k_transitive(PermGroup(7, {Permutation::rotation(7, 1)}), 2));

  std::mt19937 rng(21);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 3 + t % 4;
    const auto g = generate_closure(n, {random_perm(n, rng), random_perm(n, rng)});
    std::set<std::vector<Point>> ref;
    for (const auto& e : g.elements()) ref.emplace(e.images().begin(), e.images().end());
    for (std::size_t k = 1; k <= n; ++k) {
      const bool got = is_k_transitive(g, k);
      CHECK(got == oracle::k_transitive(ref, n, k));
      CHECK(got == is_k_transitive(PermGroup(n, g.generators()), k));
      if (got && k > 1) CHECK(is_k_transitive(g, k - 1));
    }
  }
}

TEST_CASE("parity") {
  CHECK(is_even(Permutation::identity(4)));
  CHECK_FALSE(is_even(Permutation::transposition(4, 0, 1)));
  CHECK(is_even(P({1, 2, 0})));
  std::mt19937 rng(2);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 8;
    const auto p = random_perm(n, rng), q = random_perm(n, rng);
    CHECK(is_even(p) == (oracle::inversions(p.images()) % 2 == 0));
    CHECK(is_even(compose(p, q)) == (is_even(p) == is_even(q)));
    CHECK(inverse(compose(p, q)) == compose(inverse(q), inverse(p)));
  }
}

TEST_CASE("n-cycles") {
  const auto c5 = generate_closure(5, {Permutation::rotation(5, 1)});
  const auto cyc = find_n_cycle(c5);
  REQUIRE(cyc);
  CHECK(is_full_cycle(*cyc));
  CHECK(element_order(*cyc) == 5);
  CHECK_FALSE(find_n_cycle(generate_closure(4, {Permutation::transposition(4, 0, 1)})));
  const auto s5 = find_n_cycle(symmetric(5));
  REQUIRE(s5);
  CHECK(is_full_cycle(*s5));
}

TEST_CASE("regular grid pairs") {
  // C_3 x C_3 acting on a 3x3 grid by row and column shifts
  std::vector<Point> rows(9), cols(9);
  for (Point i = 0; i < 3; ++i)
    for (Point j = 0; j < 3; ++j) {
      rows[i * 3 + j] = ((i + 1) % 3) * 3 + j;
      cols[i * 3 + j] = i * 3 + (j + 1) % 3;
    }
  const auto g = generate_closure(9, {Permutation(rows), Permutation(cols)});
  CHECK(g.order() == 9u);
  const auto pair = find_regular_grid_pair(g, 3);
  REQUIRE(pair);
  CHECK(compose(pair->first, pair->second) == compose(pair->second, pair->first));
  CHECK_FALSE(find_regular_grid_pair(generate_closure(9, {Permutation::rotation(9, 1)}), 3));
}
