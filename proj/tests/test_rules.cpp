#include <doctest.h>

#include <map>
#include <random>

#include "equivote/axioms.hpp"
#include "equivote/error.hpp"
#include "equivote/galois.hpp"
#include "oracles.hpp"

using namespace equivote;

namespace {

std::vector<std::vector<int>> to_int_family(const std::vector<Coalition>& fam) {
  std::vector<std::vector<int>> out;
  for (const auto& c : fam) out.emplace_back(c.members().begin(), c.members().end());
  return out;
}

std::vector<Coalition> all_subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<Coalition> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (static_cast<std::size_t>(__builtin_popcountll(m)) != k) continue;
    std::vector<Point> w;
    for (Point i = 0; i < n; ++i)
      if (m >> i & 1) w.push_back(i);
    out.emplace_back(n, w);
  }
  return out;
}

// Random GRD tree over voters 0..n-1 with mixed branching.
GrdTree random_tree(std::vector<Point> voters, std::mt19937& rng) {
  if (voters.size() == 1 || rng() % 4 == 0) {
    if (voters.size() == 1) return GrdTree::leaf(voters[0]);
  }
  const std::size_t parts = std::min<std::size_t>(voters.size(), 2 + rng() % 3);
  std::vector<std::vector<Point>> groups(parts);
  for (std::size_t i = 0; i < voters.size(); ++i) groups[i < parts ? i : rng() % parts].push_back(voters[i]);
  std::vector<GrdTree> kids;
  for (auto& g : groups) kids.push_back(random_tree(g, rng));
  return GrdTree::node(std::move(kids));
}

int eval_tree_oracle(const GrdTree& t, const oracle::Votes& v) {
  if (t.is_leaf()) return v[static_cast<std::size_t>(t.voter)];
  long s = 0;
  for (const auto& c : t.children) s += eval_tree_oracle(c, v);
  return oracle::sign(s);
}

}  // namespace

TEST_CASE("tally") {
  CHECK(tally(VoteProfile{1, 1, -1}) == Tally{2, 1, 0});
  CHECK(tally(VoteProfile::uniform(4, kAbstain)) == Tally{0, 0, 4});
  const VoteProfile p{1, 0, -1, -1, 1, 1};
  const auto t = tally(p), u = tally(p.negated());
  CHECK(t.for_count == u.against_count);
  CHECK(t.against_count == u.for_count);
  CHECK_THROWS_AS(VoteProfile({2, 0}), Error);
}

TEST_CASE("profile indexing round trips") {
  std::vector<Vote> v(5, kAgainst), w(5);
  for (std::uint64_t i = 0; i < 243; ++i) {
    CHECK(profile_index(v) == i);
    decode_profile(i, w);
    CHECK(w == v);
    next_profile(v);
  }
  CHECK(std::all_of(v.begin(), v.end(), [](Vote x) { return x == kAgainst; }));
}

TEST_CASE("majority") {
  CHECK(eval_majority(VoteProfile{1, 1, -1}.votes()) == 1);
  CHECK(eval_majority(VoteProfile{1, -1, 0, 0}.votes()) == 0);
  CHECK(eval_majority(VoteProfile{-1, -1, 1}.votes()) == -1);
  CHECK(evaluate(VotingRule::majority(3), VoteProfile{1, -1, 1}) == 1);
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto rule = VotingRule::majority(n);
    for (const auto& v : oracle::all_profiles(n)) {
      oracle::Votes neg(v);
      for (auto& x : neg) x = -x;
      CHECK(oracle::eval(rule, neg) == -oracle::eval(rule, v));
    }
  }
}

TEST_CASE("longest run") {
  CHECK(eval_longest_run(VoteProfile{1, 1, 1, -1, -1}.votes()) == 1);
  CHECK(eval_longest_run(VoteProfile{1, -1, 1, -1}.votes()) == 0);
  CHECK(eval_longest_run(VoteProfile{1, 1, -1, -1, 0, 0}.votes()) == 0);
  CHECK(eval_longest_run(VoteProfile::uniform(6, kAbstain).votes()) == 0);
  // runs wrap around the cycle: {4,0,1} is a run of length 3
  CHECK(eval_longest_run(VoteProfile{-1, -1, 1, 1, -1}.votes()) == -1);
  CHECK(eval_longest_run(VoteProfile{1, 1, -1, 1, 1, -1, -1, -1, 0, 0, -1}.votes()) == -1);
  // two longest runs of the same sign still fall back to majority
  CHECK(eval_longest_run(VoteProfile{1, 1, 0, 1, 1, 0, -1, 0, -1, 0, -1, 0, -1, 0, -1}.votes()) == -1);
  CHECK(eval_longest_run(VoteProfile{1, 1, 0, 1, 1, 0, -1}.votes()) == 1);
  CHECK(eval_longest_run(VoteProfile{1, 1, 0, 1, 1, -1, -1, -1, 0}.votes()) == -1);
  CHECK(eval_longest_run(VoteProfile{1, 1, -1, 1, 1, -1, -1, 0, 0}.votes()) == 1);
  CHECK(eval_longest_run(VoteProfile{-1}.votes()) == -1);
  for (std::size_t n = 1; n <= 9; ++n) {
    const auto rule = VotingRule::longest_run(n);
    for (const auto& v : oracle::all_profiles(n)) CHECK(oracle::eval(rule, v) == oracle::longest_run(v));
  }
}

TEST_CASE("grd") {
  const std::vector<std::size_t> b{3, 3};
  const auto rule = VotingRule::grd(GrdTree::uniform(b));
  CHECK(rule.degree() == 9);
  // counties {0,1,2},{3,4,5},{6,7,8}; voters 0..4 for A, 5..8 for B
  CHECK(evaluate(rule, VoteProfile{1, 1, 1, 1, 1, -1, -1, -1, -1}) == 1);
  // swapping voters 4 and 8 hands the second county to B
  CHECK(evaluate(rule, VoteProfile{1, 1, 1, 1, -1, -1, -1, -1, 1}) == -1);
  CHECK(evaluate(rule, VoteProfile{1, 1, -1, 1, 1, -1, -1, -1, -1}) == 1);
  CHECK(eval_grd(GrdTree::uniform(b), VoteProfile{1, 1, -1, 1, 1, -1, -1, -1, -1}.votes()) == 1);
  for (Vote x : {kAgainst, kAbstain, kFor}) CHECK(evaluate(rule, VoteProfile::uniform(9, x)) == x);
  CHECK(GrdTree::uniform(b).is_uniform());

  const auto foot = VotingRule::grd(GrdTree::from_counties({{0}, {1}, {2, 3, 4}}));
  CHECK(evaluate(foot, VoteProfile{1, 1, -1, -1, -1}) == 1);
  CHECK_FALSE(std::get<GrdRule>(foot.variant()).tree.is_uniform());
  CHECK(evaluate(VotingRule::grd(GrdTree::leaf(0)), VoteProfile{-1}) == -1);

  CHECK_THROWS_AS(VotingRule::grd(GrdTree::node({GrdTree::leaf(0), GrdTree::leaf(0)})), Error);
  CHECK_THROWS_AS(VotingRule::grd(GrdTree::node({GrdTree::leaf(0), GrdTree::leaf(2)})), Error);
  CHECK_THROWS_AS(VotingRule::grd(GrdTree::node({GrdTree::leaf(0), GrdTree::node({})})), Error);

  std::mt19937 rng(17);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 8;
    std::vector<Point> voters(n);
    std::iota(voters.begin(), voters.end(), 0u);
    std::shuffle(voters.begin(), voters.end(), rng);
    const auto tree = random_tree(voters, rng);
    const auto r = VotingRule::grd(tree);
    for (const auto& v : oracle::all_profiles(n)) CHECK(oracle::eval(r, v) == eval_tree_oracle(tree, v));
  }
}

TEST_CASE("coalition rules") {
  const auto r = VotingRule::coalition(3, {Coalition(3, {0, 1})});
  CHECK(evaluate(r, VoteProfile{1, 1, -1}) == 1);
  CHECK(evaluate(r, VoteProfile{1, -1, 1}) == 1);
  CHECK(evaluate(r, VoteProfile{-1, -1, 1}) == -1);
  CHECK_THROWS_AS(VotingRule::coalition(4, {Coalition(4, {0, 1}), Coalition(4, {2, 3})}), Error);
  CHECK_THROWS_AS(VotingRule::coalition(4, {Coalition(4, {})}), Error);
  CHECK_THROWS_AS(Coalition(3, {0, 3}), Error);

  const auto fano = build_projective_rule(2);
  const auto& lines = std::get<CoalitionRule>(fano.variant()).family;
  for (const auto& line : lines) {
    std::vector<Vote> v(7, kFor);
    for (Point i : line.members()) v[i] = kAgainst;
    CHECK(evaluate(fano, VoteProfile(v)) == -1);
  }

  // all ceil((n+1)/2)-subsets reproduce majority
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto maj = VotingRule::coalition(n, all_subsets_of_size(n, (n + 2) / 2));
    for (const auto& v : oracle::all_profiles(n)) CHECK(oracle::eval(maj, v) == oracle::majority(v));
  }
  for (const auto& v : oracle::all_profiles(7))
    CHECK(oracle::eval(fano, v) == oracle::family_rule(to_int_family(lines), v));
}

TEST_CASE("ccc") {
  const auto c22 = VotingRule::ccc(2, 2);
  CHECK(evaluate(c22, VoteProfile{1, 1, 1, -1}) == 1);
  CHECK(evaluate(VotingRule::ccc(3, 3), VoteProfile{1, 1, 1, -1, -1, 1, -1, -1, 0}) == 0);
  CHECK(evaluate(VotingRule::ccc(3, 3), VoteProfile{1, 1, 1, -1, -1, -1, -1, -1, 1}) == -1);
  // row 0 and column 0 unanimous against while the tally is even
  CHECK(evaluate(VotingRule::ccc(3, 4), VoteProfile{-1, -1, -1, -1, -1, 1, 1, 1, -1, 1, 1, 1}) == -1);
  CHECK(ccc_family(2, 3).size() == 6);
  for (auto [r, c] : {std::pair{2, 2}, {2, 3}, {3, 3}, {1, 4}}) {
    const auto rule = VotingRule::ccc(r, c);
    const auto as_family = VotingRule::coalition(r * c, ccc_family(r, c));
    for (const auto& v : oracle::all_profiles(r * c)) {
      CHECK(oracle::eval(rule, v) == oracle::eval(as_family, v));
      CHECK(oracle::eval(rule, v) == oracle::cross_committee(r, c, v));
    }
  }
}

TEST_CASE("other rule variants") {
  CHECK(evaluate(VotingRule::dictator(3, 1), VoteProfile{1, -1, 1}) == -1);
  CHECK(evaluate(VotingRule::chair(3, 0), VoteProfile{-1, 1, 1}) == -1);
  CHECK(evaluate(VotingRule::chair(3, 0), VoteProfile{0, 1, 1}) == 1);
  CHECK(evaluate(VotingRule::restricted_majority(3, {1, 2}), VoteProfile{1, -1, 0}) == -1);
  CHECK(evaluate(VotingRule::constant(3, kFor), VoteProfile{-1, -1, -1}) == 1);
  CHECK_THROWS_AS(VotingRule::dictator(3, 3), Error);
  CHECK_THROWS_AS(evaluate(VotingRule::majority(3), VoteProfile{1, 1}), Error);
}

TEST_CASE("unanimity for every rule") {
  const std::vector<std::size_t> b{3, 3};
  const std::vector<VotingRule> rules = {
      VotingRule::majority(5), VotingRule::longest_run(7), VotingRule::grd(GrdTree::uniform(b)),
      VotingRule::ccc(3, 3), build_projective_rule(2), VotingRule::dictator(4, 2),
      VotingRule::chair(4, 0), VotingRule::restricted_majority(4, {0, 1, 2})};
  for (const auto& r : rules)
    for (Vote x : {kAgainst, kFor}) CHECK(evaluate(r, VoteProfile::uniform(r.degree(), x)) == x);
}

TEST_CASE("axiom checks") {
  CHECK(is_neutral(VotingRule::majority(5)));
  CHECK(is_positively_responsive(VotingRule::majority(5)));
  CHECK_FALSE(is_neutral(VotingRule::constant(3, kFor)));
  CHECK(is_positively_responsive(build_projective_rule(2)));
  CHECK(is_neutral(build_projective_rule(2)));
  // majority of voters 1 and 2 ignores voter 0
  CHECK_FALSE(is_positively_responsive(VotingRule::restricted_majority(3, {1, 2})));
  CHECK(is_symmetric(VotingRule::majority(5)));
  CHECK_FALSE(is_symmetric(VotingRule::longest_run(5)));
  const std::vector<std::size_t> b{3, 3};
  CHECK_FALSE(is_symmetric(VotingRule::grd(GrdTree::uniform(b))));
  CHECK_THROWS_AS(ProfileTable(VotingRule::majority(13), Caps{}), Error);

  // Monotone up to n = 9. At n = 10, raising voter 0 breaks a tie between
  // two runs of -1, leaving the other one strictly longest.
  const VoteProfile before{-1, -1, 1, -1, -1, 1, 0, 1, 0, 1};
  const VoteProfile after{0, -1, 1, -1, -1, 1, 0, 1, 0, 1};
  CHECK(evaluate(VotingRule::longest_run(10), before) == 0);
  CHECK(evaluate(VotingRule::longest_run(10), after) == -1);
  CHECK(is_monotone(VotingRule::longest_run(9)));
  CHECK_FALSE(is_monotone(VotingRule::longest_run(10)));
  CHECK_FALSE(is_positively_responsive(VotingRule::longest_run(10)));
  CHECK(is_monotone(VotingRule::grd(GrdTree::uniform(b))));
  CHECK_FALSE(is_positively_responsive(VotingRule::grd(GrdTree::uniform(b))));
}

TEST_CASE("single-step responsiveness matches the pairwise definition") {
  const std::vector<std::size_t> b{2, 2};
  const std::vector<VotingRule> rules = {
      VotingRule::majority(4), VotingRule::longest_run(5), VotingRule::grd(GrdTree::uniform(b)),
      VotingRule::ccc(2, 2), VotingRule::chair(4, 0), VotingRule::dictator(3, 0),
      VotingRule::restricted_majority(4, {0, 1, 2}), VotingRule::constant(3, kFor),
      VotingRule::coalition(5, {Coalition(5, {0, 1}), Coalition(5, {1, 2}), Coalition(5, {0, 2})})};
  for (const auto& r : rules) {
    // The pairwise scan covers the raise direction; the single-step scan
    // also requires the mirrored condition, so compare against both.
    const bool up = is_positively_responsive_pairwise(r);
    const auto neg = [&](const oracle::Votes& v) {
      oracle::Votes w(v);
      for (auto& x : w) x = -x;
      return -oracle::eval(r, w);
    };
    bool down = true;
    const auto profiles = oracle::all_profiles(r.degree());
    for (const auto& lo : profiles) {
      if (neg(lo) < 0) continue;
      for (const auto& hi : profiles) {
        if (hi == lo) continue;
        bool dom = true;
        for (std::size_t i = 0; i < lo.size(); ++i) dom = dom && hi[i] >= lo[i];
        if (dom && neg(hi) != 1) down = false;
      }
    }
    CHECK(is_positively_responsive(r) == (up && down));
  }
}

TEST_CASE("naive axiom oracles agree with the table scans") {
  std::mt19937 rng(4);
  const std::vector<std::size_t> b{2, 2};
  const std::vector<VotingRule> rules = {
      VotingRule::majority(4), VotingRule::longest_run(5), VotingRule::grd(GrdTree::uniform(b)),
      VotingRule::ccc(2, 2), VotingRule::chair(4, 0), VotingRule::dictator(4, 0),
      VotingRule::constant(4, kAbstain), build_projective_rule(2)};
  for (const auto& r : rules) {
    const std::size_t n = r.degree();
    const auto profiles = oracle::all_profiles(n);
    bool neutral = true, symmetric = true, monotone = true;
    std::map<std::pair<int, int>, int> seen;
    for (const auto& v : profiles) {
      oracle::Votes neg(v);
      for (auto& x : neg) x = -x;
      neutral = neutral && oracle::eval(r, neg) == -oracle::eval(r, v);
      const int plus = static_cast<int>(std::count(v.begin(), v.end(), 1));
      const int minus = static_cast<int>(std::count(v.begin(), v.end(), -1));
      auto [it, fresh] = seen.try_emplace({plus, minus}, oracle::eval(r, v));
      symmetric = symmetric && (fresh || it->second == oracle::eval(r, v));
      for (std::size_t i = 0; i < n; ++i) {
        if (v[i] == 1) continue;
        oracle::Votes up(v);
        ++up[i];
        monotone = monotone && oracle::eval(r, up) >= oracle::eval(r, v);
      }
    }
    CHECK(is_neutral(r) == neutral);
    CHECK(is_symmetric(r) == symmetric);
    CHECK(is_monotone(r) == monotone);
    ProfileTable table(r, Caps{});
    for (int t = 0; t < 20; ++t) {
      std::vector<Point> s(n);
      std::iota(s.begin(), s.end(), 0u);
      std::shuffle(s.begin(), s.end(), rng);
      CHECK(is_automorphism(table, Permutation(s)) == oracle::automorphism(oracle::of(r), n, s));
    }
  }
}

TEST_CASE("automorphisms declared by construction") {
  for (std::size_t n = 2; n <= 9; ++n) {
    ProfileTable t(VotingRule::longest_run(n), Caps{});
    CHECK(is_automorphism(t, Permutation::rotation(n, 1)));
  }
  // ternary GRD: swap counties 0 and 1
  const std::vector<std::size_t> b{3, 3};
  ProfileTable grd(VotingRule::grd(GrdTree::uniform(b)), Caps{});
  CHECK(is_automorphism(grd, Permutation::from_cycles(9, {{0, 3}, {1, 4}, {2, 5}})));
  CHECK_FALSE(is_automorphism(grd, Permutation::transposition(9, 4, 8)));
  // county members placed equidistantly on the cycle (0,3,6,1,4,7,2,5,8)
  const std::vector<Point> order{0, 3, 6, 1, 4, 7, 2, 5, 8};
  std::vector<Point> shift(9);
  for (std::size_t i = 0; i < 9; ++i) shift[order[i]] = order[(i + 1) % 9];
  CHECK(is_automorphism(grd, Permutation(shift)));

  ProfileTable ccc(VotingRule::ccc(3, 3), Caps{});
  CHECK(is_automorphism(ccc, Permutation::from_cycles(9, {{0, 3, 6}, {1, 4, 7}, {2, 5, 8}})));
  CHECK(is_automorphism(ccc, Permutation::from_cycles(9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}})));

  ProfileTable fano(build_projective_rule(2), Caps{});
  const auto pgl = pgl3_elements(2);
  for (const auto& g : pgl.elements()) CHECK(is_automorphism(fano, g));
}
