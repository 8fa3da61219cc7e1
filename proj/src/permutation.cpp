#include "equivote/permutation.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_set>

#include "equivote/error.hpp"

namespace equivote {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  if (images_.empty()) fail(ErrorCode::InvalidArgument, "permutation degree must be >= 1");
  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      fail(ErrorCode::InvalidArgument, "images are not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  return Permutation(std::move(img));
}

Permutation Permutation::rotation(std::size_t n, std::size_t k) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>((i + k) % n);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(std::size_t n, Point a, Point b) {
  auto img = identity(n).images_;
  if (a >= n || b >= n) fail(ErrorCode::InvalidArgument, "transposition point out of range");
  std::swap(img[a], img[b]);
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(
    std::size_t n, const std::vector<std::vector<Point>>& cycles) {
  auto img = identity(n).images_;
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= n) fail(ErrorCode::InvalidArgument, "cycle point out of range");
      img[c[i]] = c[(i + 1) % c.size()];
    }
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) fail(ErrorCode::DegreeMismatch, "compose: degree mismatch");
  std::vector<Point> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = p(q(i));
  return Permutation(std::move(img));
}

Permutation inverse(const Permutation& p) {
  std::vector<Point> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[p(i)] = static_cast<Point>(i);
  return Permutation(std::move(img));
}

bool is_even(const Permutation& p) {
  // Parity via cycle decomposition: a k-cycle contributes k-1 transpositions,
  // which has the same parity as the inversion count.
  std::vector<bool> seen(p.degree(), false);
  std::size_t transpositions = 0;
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p(j)) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

bool is_full_cycle(const Permutation& p) {
  std::size_t len = 0;
  std::size_t j = 0;
  do {
    j = p(j);
    ++len;
  } while (j != 0);
  return len == p.degree();
}

std::uint64_t element_order(const Permutation& p) {
  std::vector<bool> seen(p.degree(), false);
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p(j)) {
      seen[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

VoteProfile apply_to_profile(const Permutation& p, const VoteProfile& phi) {
  if (p.degree() != phi.size())
    fail(ErrorCode::DegreeMismatch, "apply_to_profile: degree mismatch");
  std::vector<Vote> out(phi.size());
  // out(v) = phi(p^{-1} v)  <=>  out(p(u)) = phi(u)
  for (std::size_t u = 0; u < phi.size(); ++u) out[p(u)] = phi[u];
  return VoteProfile(std::move(out));
}

std::vector<Point> apply_to_set(const Permutation& p, std::span<const Point> set) {
  std::vector<Point> out;
  out.reserve(set.size());
  for (Point x : set) {
    if (x >= p.degree()) fail(ErrorCode::InvalidArgument, "set member out of range");
    out.push_back(p(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- PermGroup -------------------------------------------------------------

PermGroup::PermGroup(std::size_t n, std::vector<Permutation> generators)
    : n_(n), generators_(std::move(generators)) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "group degree must be >= 1");
  for (const auto& g : generators_)
    if (g.degree() != n) fail(ErrorCode::DegreeMismatch, "generator degree mismatch");
}

const std::vector<Permutation>& PermGroup::elements() const {
  if (!elements_) fail(ErrorCode::Precondition, "group closure has not been enumerated");
  return *elements_;
}

std::optional<std::uint64_t> PermGroup::order() const noexcept {
  if (!elements_) return std::nullopt;
  return elements_->size();
}

bool PermGroup::contains(const Permutation& p) const {
  const auto& el = elements();
  return std::binary_search(el.begin(), el.end(), p);
}

PermGroup generate_closure(std::size_t n, const std::vector<Permutation>& gens,
                           std::uint64_t max_order) {
  PermGroup g(n, gens);
  std::unordered_set<Permutation, PermutationHash> seen;
  std::deque<Permutation> frontier;
  auto id = Permutation::identity(n);
  seen.insert(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    Permutation x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& s : gens) {
      Permutation y = compose(s, x);
      if (seen.insert(y).second) {
        if (seen.size() > max_order)
          fail(ErrorCode::Overflow,
               "group closure exceeds max_order " + std::to_string(max_order));
        frontier.push_back(std::move(y));
      }
    }
  }
  std::vector<Permutation> elements(seen.begin(), seen.end());
  std::sort(elements.begin(), elements.end());
  g.elements_ = std::move(elements);
  return g;
}

PermGroup group_from_elements(std::size_t n, std::vector<Permutation> elements,
                              std::vector<Permutation> generators) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (generators.empty()) generators = elements;
  PermGroup g(n, std::move(generators));
  for (const auto& e : elements)
    if (e.degree() != n) fail(ErrorCode::DegreeMismatch, "element degree mismatch");
  g.elements_ = std::move(elements);
  return g;
}

std::vector<Permutation> reduce_generators(const PermGroup& g,
                                           std::uint64_t max_order) {
  const auto& el = g.elements();
  std::vector<Permutation> gens;
  std::unordered_set<Permutation, PermutationHash> covered{
      Permutation::identity(g.degree())};
  for (const auto& e : el) {
    if (covered.contains(e)) continue;
    gens.push_back(e);
    auto h = generate_closure(g.degree(), gens, max_order);
    covered = {h.elements().begin(), h.elements().end()};
    if (covered.size() == el.size()) break;
  }
  return gens;
}

std::vector<Point> orbit(const PermGroup& g, Point i) {
  if (i >= g.degree()) fail(ErrorCode::InvalidArgument, "orbit: point out of range");
  std::vector<bool> seen(g.degree(), false);
  std::vector<Point> out{i};
  seen[i] = true;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (const auto& s : g.generators()) {
      Point y = s(out[head]);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

OrbitPartition orbits(const PermGroup& g) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  OrbitPartition part;
  part.orbit_id.assign(g.degree(), kUnset);
  for (Point i = 0; i < g.degree(); ++i) {
    if (part.orbit_id[i] != kUnset) continue;
    auto o = orbit(g, i);
    for (Point x : o) part.orbit_id[x] = part.orbit_sizes.size();
    part.orbit_sizes.push_back(o.size());
  }
  return part;
}

bool is_transitive(const PermGroup& g) { return orbit(g, 0).size() == g.degree(); }

PermGroup stabilizer(const PermGroup& g, Point i) {
  if (i >= g.degree()) fail(ErrorCode::InvalidArgument, "stabilizer: point out of range");
  std::vector<Permutation> fixing;
  for (const auto& e : g.elements())
    if (e(i) == i) fixing.push_back(e);
  return group_from_elements(g.degree(), std::move(fixing));
}

namespace {

std::uint64_t falling_factorial(std::uint64_t n, std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= n - i;
  return r;
}

}  // namespace

bool is_k_transitive(const PermGroup& g, std::size_t k) {
  const std::size_t n = g.degree();
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be positive");
  if (k > n) fail(ErrorCode::InvalidArgument, "k exceeds the degree");
  const std::uint64_t tuples = falling_factorial(n, k);

  auto encode = [&](auto&& point_of) {
    std::uint64_t code = 0;
    for (std::size_t j = 0; j < k; ++j) code = code * n + point_of(j);
    return code;
  };

  if (g.has_elements()) {
    if (g.elements().size() < tuples) return false;
    std::unordered_set<std::uint64_t> reached;
    for (const auto& e : g.elements())
      reached.insert(encode([&](std::size_t j) { return e(j); }));
    return reached.size() == tuples;
  }

  std::unordered_set<std::uint64_t> reached;
  std::vector<std::vector<Point>> queue{std::vector<Point>(k)};
  std::iota(queue[0].begin(), queue[0].end(), Point{0});
  reached.insert(encode([&](std::size_t j) { return queue[0][j]; }));
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& s : g.generators()) {
      std::vector<Point> img(k);
      for (std::size_t j = 0; j < k; ++j) img[j] = s(queue[head][j]);
      if (reached.insert(encode([&](std::size_t j) { return img[j]; })).second)
        queue.push_back(std::move(img));
    }
  }
  return reached.size() == tuples;
}

std::optional<Permutation> find_n_cycle(const PermGroup& g) {
  for (const auto& e : g.elements())
    if (is_full_cycle(e)) return e;
  return std::nullopt;
}

std::optional<std::pair<Permutation, Permutation>> find_regular_grid_pair(
    const PermGroup& g, std::uint64_t p) {
  if (p < 2 || p * p != g.degree())
    fail(ErrorCode::InvalidArgument, "grid search needs degree p^2");
  std::vector<const Permutation*> candidates;
  for (const auto& e : g.elements()) {
    if (e.is_identity() || element_order(e) != p) continue;
    bool fixes = false;
    for (std::size_t i = 0; i < e.degree() && !fixes; ++i) fixes = e(i) == i;
    if (!fixes) candidates.push_back(&e);
  }
  for (std::size_t a = 0; a < candidates.size(); ++a)
    for (std::size_t b = a + 1; b < candidates.size(); ++b) {
      const auto& x = *candidates[a];
      const auto& y = *candidates[b];
      if (compose(x, y) != compose(y, x)) continue;
      auto h = generate_closure(g.degree(), {x, y}, p * p);
      if (h.elements().size() == p * p && is_transitive(h)) return std::pair{x, y};
    }
  return std::nullopt;
}

}  // namespace equivote
