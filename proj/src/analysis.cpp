#include "equivote/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

#include "equivote/error.hpp"
#include "equivote/galois.hpp"

namespace equivote {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::False: return "false";
    case Verdict::True: return "true";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

std::size_t ceil_sqrt(std::size_t n) noexcept {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r >= n) --r;
  while (r * r < n) ++r;
  return r;
}

Rational Rational::reduced(std::uint64_t num, std::uint64_t den) {
  if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  if (g == 0) return {0, 1};
  return {num / g, den / g};
}

std::string Rational::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

std::uint64_t factorial(std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

// Lexicographic rank -> permutation of {0..n-1}.
std::vector<Point> nth_permutation(std::size_t n, std::uint64_t rank) {
  std::vector<Point> pool(n);
  std::iota(pool.begin(), pool.end(), Point{0});
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = n; i > 0; --i) {
    const std::uint64_t f = factorial(i - 1);
    const auto idx = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return out;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Lexicographic rank -> k-combination of {0..n-1}.
std::vector<Point> nth_combination(std::size_t n, std::size_t k, std::uint64_t rank) {
  std::vector<Point> out;
  Point next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    while (true) {
      const std::uint64_t with = binomial(n - next - 1, k - slot - 1);
      if (rank < with) break;
      rank -= with;
      ++next;
    }
    out.push_back(next++);
  }
  return out;
}

bool next_combination(std::vector<Point>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::uint64_t mask_of(std::span<const Point> members) {
  std::uint64_t m = 0;
  for (Point v : members) m |= std::uint64_t{1} << v;
  return m;
}

std::uint64_t image_mask(const Permutation& g, std::uint64_t mask) {
  std::uint64_t out = 0;
  while (mask) {
    const int v = std::countr_zero(mask);
    out |= std::uint64_t{1} << g(static_cast<std::size_t>(v));
    mask &= mask - 1;
  }
  return out;
}

Coalition coalition_of(std::size_t n, std::uint64_t mask) {
  std::vector<Point> m;
  while (mask) {
    m.push_back(static_cast<Point>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return Coalition(n, std::move(m));
}

bool is_coalition_defined(const VotingRule& rule) {
  return std::holds_alternative<CoalitionRule>(rule.variant()) ||
         std::holds_alternative<CccRule>(rule.variant()) ||
         std::holds_alternative<ChairRule>(rule.variant());
}

// Full cycle plus one transposition on the listed points: generates Sym(points).
void add_symmetric_generators(std::size_t n, const std::vector<Point>& points,
                              std::vector<Permutation>& gens) {
  if (points.size() < 2) return;
  gens.push_back(Permutation::from_cycles(n, {points}));
  if (points.size() > 2) gens.push_back(Permutation::transposition(n, points[0], points[1]));
}

std::string shape_signature(const GrdTree& t) {
  if (t.is_leaf()) return "L";
  std::string s = "(";
  for (const auto& c : t.children) s += shape_signature(c);
  return s + ")";
}

void grd_block_generators(std::size_t n, const GrdTree& t, std::vector<Permutation>& gens) {
  if (t.is_leaf()) return;
  std::map<std::string, std::vector<std::size_t>> by_shape;
  for (std::size_t i = 0; i < t.children.size(); ++i)
    by_shape[shape_signature(t.children[i])].push_back(i);
  for (const auto& [shape, idx] : by_shape) {
    if (idx.size() < 2) continue;
    std::vector<std::vector<Point>> blocks;
    for (auto i : idx) blocks.push_back(t.children[i].leaves());
    // shift block j onto block j+1, position by position
    std::vector<Point> img(n);
    std::iota(img.begin(), img.end(), Point{0});
    for (std::size_t j = 0; j < blocks.size(); ++j)
      for (std::size_t pos = 0; pos < blocks[j].size(); ++pos)
        img[blocks[j][pos]] = blocks[(j + 1) % blocks.size()][pos];
    gens.emplace_back(img);
    if (blocks.size() > 2) {
      std::iota(img.begin(), img.end(), Point{0});
      for (std::size_t pos = 0; pos < blocks[0].size(); ++pos) {
        img[blocks[0][pos]] = blocks[1][pos];
        img[blocks[1][pos]] = blocks[0][pos];
      }
      gens.emplace_back(img);
    }
  }
  for (const auto& c : t.children) grd_block_generators(n, c, gens);
}

std::vector<Permutation> construction_generators(const VotingRule& rule) {
  const std::size_t n = rule.degree();
  std::vector<Permutation> gens;
  std::vector<Point> all(n);
  std::iota(all.begin(), all.end(), Point{0});
  struct Visitor {
    std::size_t n;
    std::vector<Point>& all;
    std::vector<Permutation>& gens;
    void operator()(const MajorityRule&) { add_symmetric_generators(n, all, gens); }
    void operator()(const ConstantRule&) { add_symmetric_generators(n, all, gens); }
    void operator()(const LongestRunRule&) {
      if (n < 2) return;
      gens.push_back(Permutation::rotation(n, 1));
      std::vector<Point> refl(n);
      for (std::size_t i = 0; i < n; ++i) refl[i] = static_cast<Point>((n - i) % n);
      gens.emplace_back(refl);
    }
    void operator()(const GrdRule& r) { grd_block_generators(n, r.tree, gens); }
    void operator()(const CccRule& r) {
      auto cell = [&](std::size_t i, std::size_t j) { return static_cast<Point>(i * r.cols + j); };
      auto add = [&](auto&& map) {
        std::vector<Point> img(n);
        for (std::size_t i = 0; i < r.rows; ++i)
          for (std::size_t j = 0; j < r.cols; ++j) img[cell(i, j)] = map(i, j);
        gens.emplace_back(img);
      };
      if (r.rows > 1) {
        add([&](std::size_t i, std::size_t j) { return cell((i + 1) % r.rows, j); });
        add([&](std::size_t i, std::size_t j) { return cell(i < 2 ? 1 - i : i, j); });
      }
      if (r.cols > 1) {
        add([&](std::size_t i, std::size_t j) { return cell(i, (j + 1) % r.cols); });
        add([&](std::size_t i, std::size_t j) { return cell(i, j < 2 ? 1 - j : j); });
      }
      if (r.rows == r.cols && r.rows > 1) add([&](std::size_t i, std::size_t j) { return cell(j, i); });
    }
    void operator()(const CoalitionRule&) {}
    void operator()(const DictatorRule& r) { others(r.voter); }
    void operator()(const ChairRule& r) { others(r.chair); }
    void operator()(const RestrictedMajorityRule& r) {
      add_symmetric_generators(n, r.voters, gens);
      std::vector<Point> rest;
      for (Point v : all)
        if (!std::binary_search(r.voters.begin(), r.voters.end(), v)) rest.push_back(v);
      add_symmetric_generators(n, rest, gens);
    }
    void others(Point fixed) {
      std::vector<Point> rest;
      for (Point v : all)
        if (v != fixed) rest.push_back(v);
      add_symmetric_generators(n, rest, gens);
    }
  };
  std::visit(Visitor{n, all, gens}, rule.variant());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

PermGroup close_if_possible(std::size_t n, std::vector<Permutation> gens, const Caps& caps) {
  try {
    return generate_closure(n, gens, caps.closure_order);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Overflow) throw;
    return PermGroup(n, std::move(gens));
  }
}

bool exhaustive_feasible(const VotingRule& rule, const Caps& caps) {
  return rule.degree() <= caps.permutation_n && rule.degree() <= caps.profile_n;
}

}  // namespace

bool preserves_family(const std::vector<Coalition>& family, const Permutation& sigma) {
  std::set<std::vector<Point>> members;
  for (const auto& w : family) members.insert(w.members());
  for (const auto& w : family)
    if (!members.contains(apply_to_set(sigma, w.members()))) return false;
  return true;
}

// --- automorphism groups -------------------------------------------------------

CertifiedGroup automorphism_group(const VotingRule& rule, AutMethod method, const Caps& caps) {
  const std::size_t n = rule.degree();
  if (method == AutMethod::Exhaustive) {
    if (n > caps.permutation_n)
      fail(ErrorCode::Infeasible, "n! scan at n=" + std::to_string(n) + " exceeds cap " +
                                      std::to_string(caps.permutation_n));
    ProfileTable table(rule, caps);
    const std::uint64_t total = factorial(n);
    std::vector<std::vector<Permutation>> found(std::max(1u, caps.workers));
    parallel_chunks(total, caps.workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
      auto img = nth_permutation(n, begin);
      for (std::uint64_t r = begin; r < end; ++r) {
        Permutation sigma(img);
        if (is_automorphism(table, sigma)) found[w].push_back(std::move(sigma));
        std::next_permutation(img.begin(), img.end());
      }
    });
    std::vector<Permutation> all;
    for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
    if (all.size() > caps.automorphism_order)
      fail(ErrorCode::Overflow, "Aut_f has " + std::to_string(all.size()) +
                                    " elements, above max_order " +
                                    std::to_string(caps.automorphism_order));
    return {group_from_elements(n, std::move(all)), "exhaustive", true};
  }

  auto family = defining_family(rule);
  if (family.empty())
    fail(ErrorCode::Precondition, "coalition_preserving needs a coalition-defined rule");
  if (n > 64) fail(ErrorCode::Infeasible, "coalition_preserving search is limited to n <= 64");

  // Sigma preserves a family iff it preserves the complements; search on
  // whichever side has the smaller members so checks fire early.
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> family_masks;
  std::size_t total_size = 0;
  for (const auto& w : family) {
    family_masks.push_back(mask_of(w.members()));
    total_size += w.size();
  }
  if (2 * total_size > n * family.size())
    for (auto& m : family_masks) m = full & ~m;
  std::sort(family_masks.begin(), family_masks.end());
  family_masks.erase(std::unique(family_masks.begin(), family_masks.end()), family_masks.end());
  const std::unordered_set<std::uint64_t> masks(family_masks.begin(), family_masks.end());

  std::vector<std::size_t> degree(n, 0);
  std::vector<std::vector<std::size_t>> codegree(n, std::vector<std::size_t>(n, 0));
  for (std::uint64_t m : family_masks)
    for (std::uint64_t a = m; a; a &= a - 1) {
      const auto u = static_cast<std::size_t>(std::countr_zero(a));
      ++degree[u];
      for (std::uint64_t b = m; b; b &= b - 1) ++codegree[u][static_cast<std::size_t>(std::countr_zero(b))];
    }

  // Visit points so that members are completed as early as possible: next
  // is the point finishing the most members, then sharing the most.
  std::vector<Point> order;
  std::vector<bool> placed(n, false);
  std::uint64_t placed_mask = 0;
  while (order.size() < n) {
    std::size_t best = n;
    std::pair<std::size_t, std::size_t> best_score{0, 0};
    for (std::size_t v = 0; v < n; ++v) {
      if (placed[v]) continue;
      const std::uint64_t with = placed_mask | std::uint64_t{1} << v;
      std::size_t completes = 0, touches = 0;
      for (std::uint64_t m : family_masks) {
        if (!(m >> v & 1)) continue;
        touches += static_cast<std::size_t>(std::popcount(m & placed_mask));
        completes += (m & ~with) == 0;
      }
      const std::pair<std::size_t, std::size_t> score{completes, touches};
      if (best == n || score > best_score) {
        best = v;
        best_score = score;
      }
    }
    placed[best] = true;
    placed_mask |= std::uint64_t{1} << best;
    order.push_back(static_cast<Point>(best));
  }
  // members become checkable at the position of their last point in `order`
  std::vector<std::vector<std::uint64_t>> ending_at(n);
  {
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    for (std::uint64_t m : family_masks) {
      std::size_t last = 0;
      for (std::uint64_t a = m; a; a &= a - 1) last = std::max(last, pos[std::countr_zero(a)]);
      ending_at[last].push_back(m);
    }
  }

  std::vector<Permutation> found;
  std::vector<Point> img(n);
  std::vector<bool> used(n, false);
  auto search = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      found.emplace_back(img);
      if (found.size() > caps.automorphism_order)
        fail(ErrorCode::Overflow, "family stabilizer exceeds max_order " +
                                      std::to_string(caps.automorphism_order));
      return;
    }
    const Point v = order[depth];
    for (Point t = 0; t < n; ++t) {
      if (used[t] || degree[t] != degree[v] || codegree[t][t] != codegree[v][v]) continue;
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i) ok = codegree[v][order[i]] == codegree[t][img[order[i]]];
      if (!ok) continue;
      img[v] = t;
      for (std::uint64_t m : ending_at[depth]) {
        std::uint64_t im = 0;
        for (std::uint64_t rest = m; rest; rest &= rest - 1)
          im |= std::uint64_t{1} << img[static_cast<std::size_t>(std::countr_zero(rest))];
        if (!masks.contains(im)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[t] = true;
      self(self, depth + 1);
      used[t] = false;
    }
  };
  search(search, 0);
  return {group_from_elements(n, std::move(found)), "coalition_preserving", false};
}

std::optional<CertifiedGroup> structural_automorphisms(const VotingRule& rule, const Caps& caps) {
  const std::size_t n = rule.degree();
  if (is_coalition_defined(rule) && n <= 64) {
    try {
      return automorphism_group(rule, AutMethod::CoalitionPreserving, caps);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
      if (std::holds_alternative<CoalitionRule>(rule.variant())) return std::nullopt;
    }
  }
  auto gens = construction_generators(rule);
  std::string method = "construction";
  if (n <= caps.profile_n) {
    ProfileTable table(rule, caps);
    for (const auto& g : gens)
      if (!is_automorphism(table, g))
        fail(ErrorCode::ConstructionFailed,
             "structural generator is not an automorphism of " + rule.type_tag());
    method = "structural";
  }
  return CertifiedGroup{close_if_possible(n, std::move(gens), caps), method, false};
}

CertifiedGroup certify_group(const VotingRule& rule, const PermGroup& candidate, const Caps& caps,
                             std::string label) {
  if (candidate.degree() != rule.degree())
    fail(ErrorCode::DegreeMismatch, "candidate group degree differs from the rule");
  auto family = defining_family(rule);
  if (!family.empty()) {
    for (const auto& g : candidate.generators())
      if (!preserves_family(family, g))
        fail(ErrorCode::Precondition, "candidate generator does not preserve the coalition family");
    return {candidate, std::move(label), false};
  }
  ProfileTable table(rule, caps);
  for (const auto& g : candidate.generators())
    if (!is_automorphism(table, g))
      fail(ErrorCode::Precondition, "candidate generator is not an automorphism");
  return {candidate, std::move(label), false};
}

// --- winning coalitions ----------------------------------------------------------

std::optional<std::string> monotone_certificate(const VotingRule& rule, const Caps& caps) {
  struct Structural {
    std::optional<std::string> operator()(const MajorityRule&) const { return "structural"; }
    std::optional<std::string> operator()(const GrdRule&) const { return "structural"; }
    std::optional<std::string> operator()(const DictatorRule&) const { return "structural"; }
    std::optional<std::string> operator()(const RestrictedMajorityRule&) const { return "structural"; }
    std::optional<std::string> operator()(const ConstantRule&) const { return "structural"; }
    std::optional<std::string> operator()(const CccRule&) const { return "coalition_construction"; }
    std::optional<std::string> operator()(const ChairRule&) const { return "coalition_construction"; }
    std::optional<std::string> operator()(const CoalitionRule&) const { return "coalition_construction"; }
    std::optional<std::string> operator()(const LongestRunRule&) const { return std::nullopt; }
  };
  if (auto s = std::visit(Structural{}, rule.variant())) return s;
  if (rule.degree() <= caps.profile_n && is_monotone(rule, caps)) return "exhaustive";
  return std::nullopt;
}

namespace {

class WinningOracle {
 public:
  WinningOracle(const VotingRule& rule, WinningMethod method, const Caps& caps)
      : rule_(rule), method_(method), caps_(caps) {
    if (method == WinningMethod::Monotone) {
      if (!monotone_certificate(rule, caps))
        fail(ErrorCode::Precondition,
             "monotone method requires a monotonicity certificate; " + rule.type_tag() +
                 " has none");
    } else if (rule.degree() <= caps.profile_n) {
      table_.emplace(rule, caps);
    }
  }

  bool winning(std::span<const Point> members) const {
    for (Vote x : {kFor, kAgainst})
      if (!forces(members, x)) return false;
    return true;
  }

 private:
  bool forces(std::span<const Point> members, Vote x) const {
    const std::size_t n = rule_.degree();
    std::vector<bool> in(n, false);
    for (Point v : members) in[v] = true;
    std::vector<Point> free;
    for (Point v = 0; v < n; ++v)
      if (!in[v]) free.push_back(v);

    if (method_ == WinningMethod::Monotone) {
      std::vector<Vote> votes(n, static_cast<Vote>(-x));
      for (Point v : members) votes[v] = x;
      return rule_.evaluate_unchecked(votes) == x;
    }
    if (free.size() > caps_.profile_n)
      fail(ErrorCode::Infeasible, "3^" + std::to_string(free.size()) +
                                      " completions exceed the profile cap");
    std::vector<std::uint8_t> digits(free.size(), 0);
    if (table_) {
      const auto& pw = table_->powers();
      std::uint64_t idx = 0;
      for (Point v : members) idx += static_cast<std::uint64_t>(x + 1) * pw[v];
      while (true) {
        if ((*table_)[idx] != x) return false;
        std::size_t j = 0;
        for (; j < free.size(); ++j) {
          if (digits[j] < 2) {
            ++digits[j];
            idx += pw[free[j]];
            break;
          }
          digits[j] = 0;
          idx -= 2 * pw[free[j]];
        }
        if (j == free.size()) return true;
      }
    }
    std::vector<Vote> votes(n, x);
    for (Point v : free) votes[v] = kAgainst;
    while (true) {
      if (rule_.evaluate_unchecked(votes) != x) return false;
      std::size_t j = 0;
      for (; j < free.size(); ++j) {
        if (votes[free[j]] < kFor) {
          ++votes[free[j]];
          break;
        }
        votes[free[j]] = kAgainst;
      }
      if (j == free.size()) return true;
    }
  }

  const VotingRule& rule_;
  WinningMethod method_;
  const Caps& caps_;
  std::optional<ProfileTable> table_;
};

}  // namespace

bool is_winning_coalition(const VotingRule& rule, const Coalition& w, WinningMethod method,
                          const Caps& caps) {
  if (w.degree() != rule.degree()) fail(ErrorCode::DegreeMismatch, "coalition degree mismatch");
  if (w.size() == 0) return false;
  // Beyond the table cap the oracle enumerates the free voters directly.
  WinningOracle oracle(rule, method, caps);
  return oracle.winning(w.members());
}

MinCoalitionResult min_winning_coalitions(const VotingRule& rule, const Caps& caps,
                                          MinCoalitionOptions options) {
  const std::size_t n = rule.degree();
  if (n > 64) fail(ErrorCode::Infeasible, "subset search is limited to n <= 64");

  WinningMethod method = WinningMethod::Exhaustive;
  MinCoalitionResult result;
  switch (options.method) {
    case SearchMethod::Exhaustive: break;
    case SearchMethod::Monotone: method = WinningMethod::Monotone; break;
    case SearchMethod::Auto:
      if (monotone_certificate(rule, caps)) method = WinningMethod::Monotone;
      break;
  }
  result.method = method == WinningMethod::Monotone ? "monotone" : "exhaustive";
  WinningOracle oracle(rule, method, caps);

  const PermGroup* sym = options.symmetry;
  if (sym && (!sym->has_elements() || sym->degree() != n)) sym = nullptr;
  if (sym) result.method += "+orbit_pruning";

  for (std::size_t k = 1; k <= n; ++k) {
    const std::uint64_t count = binomial(n, k);
    if (result.subsets_tested + count > caps.subset_budget) {
      result.size = k;
      result.exact = false;
      return result;
    }
    result.subsets_tested += count;

    const unsigned workers = std::max(1u, caps.workers);
    std::vector<std::vector<std::uint64_t>> winners(workers);
    parallel_chunks(count, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
      auto comb = nth_combination(n, k, begin);
      for (std::uint64_t r = begin; r < end; ++r) {
        const std::uint64_t m = mask_of(comb);
        bool representative = true;
        if (sym)
          for (const auto& g : sym->elements())
            if (image_mask(g, m) < m) {
              representative = false;
              break;
            }
        if (representative && oracle.winning(comb)) winners[w].push_back(m);
        next_combination(comb, n);
      }
    });

    std::set<std::uint64_t> found;
    for (const auto& chunk : winners)
      for (std::uint64_t m : chunk) {
        if (sym)
          for (const auto& g : sym->elements()) found.insert(image_mask(g, m));
        else
          found.insert(m);
      }
    if (found.empty()) continue;

    std::vector<Coalition> witnesses;
    witnesses.reserve(found.size());
    for (std::uint64_t m : found) witnesses.push_back(coalition_of(n, m));
    std::sort(witnesses.begin(), witnesses.end());
    result.size = k;
    result.exact = true;
    result.witness_count = witnesses.size();
    if (witnesses.size() > caps.max_witnesses) {
      witnesses.resize(caps.max_witnesses);
      result.witnesses_truncated = true;
    }
    result.witnesses = std::move(witnesses);
    return result;
  }
  // Unreachable for rules where the full electorate wins; a constant rule
  // has no winning coalition at all.
  result.size = n + 1;
  result.exact = true;
  return result;
}

// --- equity ----------------------------------------------------------------------

namespace {

struct Decision {
  TriResult result;
  std::optional<CertifiedGroup> group;
};

template <typename Pred>
Decision decide(const VotingRule& rule, const Caps& caps, const CertifiedGroup* hint, Pred&& pred) {
  auto consider = [&](const CertifiedGroup& g) -> std::optional<Decision> {
    const Verdict v = pred(g.group);
    if (v == Verdict::True || (v == Verdict::False && g.complete))
      return Decision{{v, g.method}, g};
    return std::nullopt;
  };
  if (hint)
    if (auto d = consider(*hint)) return *d;
  std::optional<CertifiedGroup> structural;
  try {
    structural = structural_automorphisms(rule, caps);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Infeasible && e.code() != ErrorCode::Overflow) throw;
  }
  if (structural)
    if (auto d = consider(*structural)) return *d;
  if (exhaustive_feasible(rule, caps)) {
    try {
      auto full = automorphism_group(rule, AutMethod::Exhaustive, caps);
      if (auto d = consider(full)) return *d;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
    }
  }
  return Decision{{Verdict::Unknown, "none"}, std::nullopt};
}

}  // namespace

TriResult is_equitable(const VotingRule& rule, const Caps& caps, const CertifiedGroup* hint) {
  return decide(rule, caps, hint, [](const PermGroup& g) { return verdict_of(is_transitive(g)); })
      .result;
}

TriResult is_k_equitable(const VotingRule& rule, std::size_t k, const Caps& caps,
                         const CertifiedGroup* hint) {
  if (k == 0 || k > rule.degree()) fail(ErrorCode::InvalidArgument, "k must lie in 1..n");
  return decide(rule, caps, hint,
                [k](const PermGroup& g) { return verdict_of(is_k_transitive(g, k)); })
      .result;
}

TriResult is_cyclic_rule(const VotingRule& rule, const Caps& caps, const CertifiedGroup* hint) {
  return decide(rule, caps, hint, [](const PermGroup& g) {
           if (g.has_elements()) return verdict_of(find_n_cycle(g).has_value());
           for (const auto& s : g.generators())
             if (is_full_cycle(s)) return Verdict::True;
           return Verdict::Unknown;
         })
      .result;
}

TriResult is_two_cyclic_rule(const VotingRule& rule, const Caps& caps, const CertifiedGroup* hint) {
  const std::size_t n = rule.degree();
  const auto p = static_cast<std::uint64_t>(ceil_sqrt(n));
  if (p * p != n || !is_prime(p)) return {Verdict::False, "degree is not a prime square"};
  return decide(rule, caps, hint, [p](const PermGroup& g) {
           if (!g.has_elements()) return Verdict::Unknown;
           return verdict_of(find_regular_grid_pair(g, p).has_value());
         })
      .result;
}

SqrtBoundCheck check_sqrt_lower_bound(const VotingRule& rule, const Caps& caps,
                                      const CertifiedGroup* hint) {
  SqrtBoundCheck out;
  out.n = rule.degree();
  out.ceil_sqrt = ceil_sqrt(out.n);
  auto eq = decide(rule, caps, hint,
                   [](const PermGroup& g) { return verdict_of(is_transitive(g)); });
  if (eq.result.verdict == Verdict::False)
    fail(ErrorCode::NotEquitable, "rule is not equitable; the sqrt(n) bound does not apply");
  if (eq.result.verdict == Verdict::Unknown) {
    out.note = "equity undecided within caps";
    return out;
  }
  MinCoalitionOptions opts;
  if (eq.group && eq.group->group.has_elements()) opts.symmetry = &eq.group->group;
  auto mc = min_winning_coalitions(rule, caps, opts);
  if (!mc.exact) {
    out.note = "minimal coalition search exhausted its budget";
    return out;
  }
  out.min_size = mc.size;

  if (eq.group && eq.group->group.has_elements()) {
    out.intersecting_translates = Verdict::True;
    for (const auto& g : eq.group->group.elements()) {
      for (const auto& w : mc.witnesses) {
        const Coalition img(out.n, apply_to_set(g, w.members()));
        if (!img.intersects(w)) {
          out.intersecting_translates = Verdict::False;
          break;
        }
      }
      if (out.intersecting_translates == Verdict::False) break;
    }
  }
  const bool bound = mc.size * mc.size >= out.n;
  out.verdict = bound && out.intersecting_translates != Verdict::False ? Verdict::True
                                                                       : Verdict::False;
  out.note = "equity via " + eq.result.method + ", minimum via " + mc.method;
  return out;
}

// --- pivotality --------------------------------------------------------------------

std::vector<Rational> pivotality(const VotingRule& rule, Distribution dist, const Caps& caps) {
  const std::size_t n = rule.degree();
  const unsigned workers = std::max(1u, caps.workers);
  std::vector<std::vector<std::uint64_t>> counts(workers, std::vector<std::uint64_t>(n, 0));
  std::uint64_t total = 0;

  if (dist == Distribution::BinaryUniform) {
    if (n > caps.binary_n || n >= 63)
      fail(ErrorCode::Infeasible, "2^n scan at n=" + std::to_string(n) + " exceeds cap " +
                                      std::to_string(caps.binary_n));
    total = std::uint64_t{1} << n;
    parallel_chunks(total, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
      std::vector<Vote> votes(n);
      for (std::uint64_t m = begin; m < end; ++m) {
        for (std::size_t v = 0; v < n; ++v) votes[v] = (m >> v) & 1 ? kFor : kAgainst;
        const Vote base = rule.evaluate_unchecked(votes);
        for (std::size_t v = 0; v < n; ++v) {
          votes[v] = static_cast<Vote>(-votes[v]);
          if (rule.evaluate_unchecked(votes) != base) ++counts[w][v];
          votes[v] = static_cast<Vote>(-votes[v]);
        }
      }
    });
  } else {
    ProfileTable table(rule, caps);
    total = table.size();
    const auto& pw = table.powers();
    parallel_chunks(total, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
      std::vector<Vote> votes(n);
      decode_profile(begin, votes);
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        const Vote base = table[idx];
        for (std::size_t v = 0; v < n; ++v) {
          const std::uint64_t zeroed = idx - static_cast<std::uint64_t>(votes[v] + 1) * pw[v];
          bool pivotal = false;
          for (std::uint64_t d = 0; d < 3 && !pivotal; ++d)
            pivotal = table[zeroed + d * pw[v]] != base;
          if (pivotal) ++counts[w][v];
        }
        next_profile(votes);
      }
    });
  }

  std::vector<Rational> out;
  for (std::size_t v = 0; v < n; ++v) {
    std::uint64_t c = 0;
    for (const auto& chunk : counts) c += chunk[v];
    out.push_back(Rational::reduced(c, total));
  }
  return out;
}

// --- roles ---------------------------------------------------------------------------

bool assignments_equivalent(const VotingRule& abstract_rule, const RoleAssignment& a,
                            const RoleAssignment& b, const Caps& caps) {
  if (a.size() != abstract_rule.degree() || b.size() != abstract_rule.degree())
    fail(ErrorCode::DegreeMismatch, "assignment size differs from the number of roles");
  ProfileTable table(abstract_rule, caps);
  for (std::uint64_t idx = 0; idx < table.size(); ++idx)
    if (table[table.permuted_index(idx, a.map())] != table[table.permuted_index(idx, b.map())])
      return false;
  return true;
}

AssignmentClasses::AssignmentClasses(const VotingRule& abstract_rule, const Caps& caps)
    : n_(abstract_rule.degree()) {
  if (n_ > caps.roles_n)
    fail(ErrorCode::Infeasible, "assignment enumeration at n=" + std::to_string(n_) +
                                    " exceeds cap " + std::to_string(caps.roles_n));
  ProfileTable table(abstract_rule, caps);
  std::map<std::vector<Vote>, std::size_t> ids;
  std::vector<Point> img(n_);
  std::iota(img.begin(), img.end(), Point{0});
  do {
    Permutation a(img);
    std::vector<Vote> induced(table.size());
    for (std::uint64_t idx = 0; idx < table.size(); ++idx)
      induced[idx] = table[table.permuted_index(idx, a)];
    auto [it, inserted] = ids.try_emplace(std::move(induced), ids.size());
    if (inserted) realized_.emplace_back(n_ * n_, false);
    class_of_.push_back(it->second);
    for (Point v = 0; v < n_; ++v) realized_[it->second][v * n_ + a(v)] = true;
    assignments_.push_back(std::move(a));
  } while (std::next_permutation(img.begin(), img.end()));
  class_count_ = ids.size();
}

bool AssignmentClasses::class_realizes(std::size_t cls, Point voter, Point role) const {
  return realized_[cls][voter * n_ + role];
}

bool AssignmentClasses::roles_equivalent(Point r1, Point r2) const {
  if (r1 >= n_ || r2 >= n_) fail(ErrorCode::InvalidArgument, "role out of range");
  for (std::size_t i = 0; i < assignments_.size(); ++i)
    for (Point v = 0; v < n_; ++v)
      if (assignments_[i](v) == r1 && !class_realizes(class_of_[i], v, r2)) return false;
  return true;
}

bool AssignmentClasses::all_roles_equivalent() const {
  for (Point r1 = 0; r1 < n_; ++r1)
    for (Point r2 = 0; r2 < n_; ++r2)
      if (r1 != r2 && !roles_equivalent(r1, r2)) return false;
  return true;
}

bool AssignmentClasses::has_role_complete_class() const {
  for (std::size_t cls = 0; cls < class_count_; ++cls)
    if (std::all_of(realized_[cls].begin(), realized_[cls].end(), [](bool b) { return b; }))
      return true;
  return false;
}

bool AssignmentClasses::identity_class_is_role_complete() const {
  const std::size_t cls = class_of_[0];  // lexicographically first = identity
  return std::all_of(realized_[cls].begin(), realized_[cls].end(), [](bool b) { return b; });
}

bool roles_equivalent(const VotingRule& abstract_rule, Point r1, Point r2, const Caps& caps) {
  return AssignmentClasses(abstract_rule, caps).roles_equivalent(r1, r2);
}

}  // namespace equivote
