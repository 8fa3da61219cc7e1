#include <doctest.h>

#include <set>

#include "equivote/error.hpp"
#include "equivote/galois.hpp"
#include "oracles.hpp"

using namespace equivote;

TEST_CASE("prime field") {
  CHECK(PrimeField(7).inv(3) == 5);
  CHECK(PrimeField(2).inv(1) == 1);
  const PrimeField f5(5);
  CHECK(f5.reduce(-2) == 3);
  CHECK(f5.add(3, 2) == 0);
  CHECK_THROWS_AS(PrimeField(6), Error);
  CHECK_THROWS_AS(PrimeField(1), Error);
  CHECK_THROWS_AS(PrimeField(7).inv(0), Error);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const PrimeField f(p);
    for (std::uint32_t a = 0; a < p; ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      for (std::uint32_t b = 0; b < p; ++b) {
        CHECK(f.mul(a, b) == a * b % p);
        CHECK(f.sub(f.add(a, b), b) == a);
      }
    }
  }
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("projective points") {
  CHECK(projective_points(2, 3).size() == 7);
  CHECK(projective_points(3, 3).size() == 13);
  CHECK(projective_points(5, 3).size() == 31);
  CHECK(projective_points(5, 2).size() == 6);
  CHECK_THROWS_AS(projective_points(4, 3), Error);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto pts = projective_points(p, 3);
    CHECK(std::is_sorted(pts.begin(), pts.end()));
    CHECK(std::set<Coords>(pts.begin(), pts.end()).size() == pts.size());
    const PrimeField f(p);
    for (const auto& c : pts) CHECK(canonical(f, c) == c);
  }
  CHECK(canonical(PrimeField(5), {0, 2, 4}) == Coords{0, 1, 2});
}

TEST_CASE("plane incidence") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const auto g = projective_plane(p);
    const std::size_t n = p * p + p + 1;
    REQUIRE(g.points.size() == n);
    REQUIRE(g.lines.size() == n);
    std::vector<std::size_t> per_point(n, 0);
    for (const auto& l : g.lines) {
      CHECK(l.size() == p + 1);
      for (Point x : l.members()) ++per_point[x];
    }
    for (auto c : per_point) CHECK(c == p + 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        std::size_t common = 0;
        for (Point x : g.lines[i].members()) common += g.lines[j].contains(x);
        CHECK(common == 1);
      }
    // two points share exactly one line
    std::vector<std::vector<int>> through(n * n, std::vector<int>{});
    for (std::size_t li = 0; li < n; ++li)
      for (Point a : g.lines[li].members())
        for (Point b : g.lines[li].members())
          if (a < b) through[a * n + b].push_back(static_cast<int>(li));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) CHECK(through[a * n + b].size() == 1);
    // each line is the solution set of its normal vector
    const PrimeField f(p);
    for (std::size_t li = 0; li < n; ++li) {
      for (std::size_t x = 0; x < n; ++x) {
        std::uint32_t dot = 0;
        for (int k = 0; k < 3; ++k) dot = f.add(dot, f.mul(g.points[li][k], g.points[x][k]));
        CHECK((dot == 0) == g.lines[li].contains(static_cast<Point>(x)));
      }
    }
    for (std::size_t i = 0; i < n; ++i) CHECK(g.point_index(g.points[i]) == i);
  }
}

TEST_CASE("projective rule") {
  const auto fano = build_projective_rule(2);
  CHECK(fano.degree() == 7);
  const auto& cr = std::get<CoalitionRule>(fano.variant());
  CHECK(cr.family.size() == 7);
  CHECK(build_projective_rule(3).degree() == 13);
  const auto plane3 = build_projective_rule(3);
  for (const auto& c : std::get<CoalitionRule>(plane3.variant()).family) CHECK(c.size() == 4);
  for (Vote x : {kAgainst, kFor}) CHECK(evaluate(fano, VoteProfile::uniform(7, x)) == x);
}

TEST_CASE("projective linear groups") {
  CHECK(*pgl2_elements(3).order() == 24);
  CHECK(*pgl2_elements(5).order() == 120);
  CHECK(*pgl2_elements(7).order() == 336);
  CHECK(pgl2_elements(5).degree() == 6);
  CHECK(pgl_order(7, 2) == 336);
  CHECK(pgl_order(2, 3) == 168);
  CHECK(pgl_order(3, 3) == 5616);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const auto g = pgl2_elements(p);
    CHECK(*g.order() == std::uint64_t{p + 1} * p * (p - 1));
    CHECK(is_k_transitive(g, 3));
    // closure of the elements adds nothing
    std::set<std::vector<Point>> elems;
    for (const auto& e : g.elements()) elems.emplace(e.images().begin(), e.images().end());
    CHECK(elems.size() == g.elements().size());
    for (int t = 0; t < 50; ++t) {
      const auto& a = g.elements()[(t * 7) % g.elements().size()];
      const auto& b = g.elements()[(t * 13 + 5) % g.elements().size()];
      CHECK(g.contains(compose(a, b)));
    }
  }
  const auto pgl3 = pgl3_elements(2);
  CHECK(*pgl3.order() == 168);
  CHECK(pgl3.degree() == 7);
  CHECK(is_k_transitive(pgl3, 2));
  CHECK_FALSE(is_k_transitive(pgl3, 3));
  const auto plane = projective_plane(2);
  const std::set<Coalition> lines(plane.lines.begin(), plane.lines.end());
  for (const auto& g : pgl3.elements())
    for (const auto& l : plane.lines) CHECK(lines.count(Coalition(7, apply_to_set(g, l.members()))) == 1);
  CHECK_THROWS_AS(pgl2_elements(7, 100), Error);
  try {
    pgl3_elements(5);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Overflow);
  }
  CHECK_THROWS_AS(pgl2_elements(9), Error);
}

TEST_CASE("pgl(3,3) preserves the 13-point plane") {
  const auto g = pgl3_elements(3);
  CHECK(*g.order() == 5616);
  const auto plane = projective_plane(3);
  const std::set<Coalition> lines(plane.lines.begin(), plane.lines.end());
  for (std::size_t i = 0; i < g.elements().size(); i += 37)
    for (const auto& l : plane.lines)
      CHECK(lines.count(Coalition(13, apply_to_set(g.elements()[i], l.members()))) == 1);
}
