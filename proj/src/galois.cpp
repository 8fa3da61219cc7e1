#include "equivote/galois.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "equivote/error.hpp"

namespace equivote {

bool is_prime(std::uint64_t p) noexcept {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
}

std::uint32_t PrimeField::reduce(std::int64_t x) const noexcept {
  const std::int64_t m = static_cast<std::int64_t>(p_);
  return static_cast<std::uint32_t>(((x % m) + m) % m);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  a %= p_;
  if (a == 0) fail(ErrorCode::InvalidArgument, "zero has no inverse");
  // extended Euclid
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return reduce(t);
}

Coords canonical(const PrimeField& f, Coords v) {
  auto lead = std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
  if (lead == v.end()) fail(ErrorCode::InvalidArgument, "zero vector has no projective point");
  const std::uint32_t s = f.inv(*lead);
  for (auto& x : v) x = f.mul(x, s);
  return v;
}

std::vector<Coords> projective_points(std::uint32_t p, std::size_t dim) {
  PrimeField f(p);
  std::vector<Coords> out;
  // Lexicographic enumeration of vectors; keep those already canonical.
  Coords v(dim, 0);
  while (true) {
    std::size_t i = dim;
    while (i-- > 0) {
      if (++v[i] < p) break;
      v[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
    auto lead = std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
    if (*lead == 1) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t ProjectiveGeometry::point_index(const Coords& c) const {
  auto it = std::lower_bound(points.begin(), points.end(), c);
  if (it == points.end() || *it != c) fail(ErrorCode::InvalidArgument, "not a canonical point");
  return static_cast<std::size_t>(it - points.begin());
}

std::vector<Coalition> lines_pg2(const ProjectiveGeometry& g) {
  PrimeField f(g.p);
  const std::size_t n = g.points.size();
  std::vector<Coalition> lines;
  for (const auto& a : g.points) {
    std::vector<Point> on;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& x = g.points[i];
      std::uint32_t dot = 0;
      for (std::size_t k = 0; k < 3; ++k) dot = f.add(dot, f.mul(a[k], x[k]));
      if (dot == 0) on.push_back(static_cast<Point>(i));
    }
    lines.emplace_back(n, std::move(on));
  }
  return lines;
}

ProjectiveGeometry projective_plane(std::uint32_t p) {
  ProjectiveGeometry g{p, projective_points(p, 3), {}};
  g.lines = lines_pg2(g);
  return g;
}

VotingRule build_projective_rule(std::uint32_t p) {
  auto g = projective_plane(p);
  return VotingRule::coalition(g.points.size(), g.lines);
}

std::uint64_t pgl_order(std::uint32_t p, std::size_t dim) {
  // |GL(dim,p)| / (p-1)
  std::uint64_t order = 1;
  std::uint64_t pd = checked_pow(p, dim);
  std::uint64_t pk = 1;
  for (std::size_t k = 0; k < dim; ++k) {
    order *= pd - pk;
    pk *= p;
  }
  return order / (p - 1);
}

namespace {

// Enumerates dim x dim matrices in canonical projective form (first nonzero
// entry 1) and keeps the invertible ones as permutations of the points.
PermGroup pgl_elements(std::uint32_t p, std::size_t dim, std::uint64_t max_order) {
  PrimeField f(p);
  const std::uint64_t expected = pgl_order(p, dim);
  if (expected > max_order)
    fail(ErrorCode::Overflow, "|PGL(" + std::to_string(dim) + "," + std::to_string(p) +
                                  ")| = " + std::to_string(expected) + " exceeds max_order " +
                                  std::to_string(max_order));
  const auto points = projective_points(p, dim);
  std::map<Coords, Point> index;
  for (std::size_t i = 0; i < points.size(); ++i) index[points[i]] = static_cast<Point>(i);

  const std::size_t cells = dim * dim;
  Coords m(cells, 0);
  std::vector<Permutation> elements;
  Coords image(dim);
  auto advance = [&] {
    for (std::size_t i = cells; i-- > 0;) {
      if (++m[i] < p) return true;
      m[i] = 0;
    }
    return false;
  };
  while (advance()) {
    auto lead = std::find_if(m.begin(), m.end(), [](std::uint32_t x) { return x != 0; });
    if (*lead != 1) continue;
    std::vector<Point> img(points.size());
    bool singular = false;
    for (std::size_t i = 0; i < points.size() && !singular; ++i) {
      for (std::size_t r = 0; r < dim; ++r) {
        std::uint32_t acc = 0;
        for (std::size_t c = 0; c < dim; ++c) acc = f.add(acc, f.mul(m[r * dim + c], points[i][c]));
        image[r] = acc;
      }
      if (std::all_of(image.begin(), image.end(), [](std::uint32_t x) { return x == 0; })) {
        singular = true;
        break;
      }
      img[i] = index.at(canonical(f, image));
    }
    // singular matrices send their kernel point to zero
    if (singular) continue;
    elements.emplace_back(std::move(img));
  }
  auto g = group_from_elements(points.size(), std::move(elements));
  if (g.elements().size() != expected)
    fail(ErrorCode::ConstructionFailed, "PGL enumeration produced an unexpected order");
  return g;
}

}  // namespace

PermGroup pgl2_elements(std::uint32_t p, std::uint64_t max_order) {
  return pgl_elements(p, 2, max_order);
}

PermGroup pgl3_elements(std::uint32_t p, std::uint64_t max_order) {
  return pgl_elements(p, 3, max_order);
}

}  // namespace equivote
