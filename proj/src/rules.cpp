#include "equivote/rules.hpp"

#include <algorithm>
#include <string>

#include "equivote/error.hpp"

namespace equivote {

Coalition::Coalition(std::size_t n, std::vector<Point> members)
    : n_(n), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= n)
    fail(ErrorCode::InvalidArgument, "coalition member out of range");
}

bool Coalition::contains(Point v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

bool Coalition::intersects(const Coalition& other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

// --- GRD trees ---------------------------------------------------------------

namespace {

GrdTree build_uniform(std::span<const std::size_t> branching, Point& next) {
  if (branching.empty()) return GrdTree::leaf(next++);
  std::vector<GrdTree> kids;
  for (std::size_t i = 0; i < branching[0]; ++i)
    kids.push_back(build_uniform(branching.subspan(1), next));
  return GrdTree::node(std::move(kids));
}

void collect_leaves(const GrdTree& t, std::vector<Point>& out) {
  if (t.is_leaf()) {
    out.push_back(static_cast<Point>(t.voter));
    return;
  }
  for (const auto& c : t.children) collect_leaves(c, out);
}

}  // namespace

GrdTree GrdTree::uniform(std::span<const std::size_t> branching) {
  for (auto b : branching)
    if (b == 0) fail(ErrorCode::InvalidArgument, "branching factors must be positive");
  Point next = 0;
  return build_uniform(branching, next);
}

GrdTree GrdTree::from_counties(const std::vector<std::vector<Point>>& counties) {
  std::vector<GrdTree> kids;
  for (const auto& county : counties) {
    if (county.size() == 1) {
      kids.push_back(leaf(county[0]));
      continue;
    }
    std::vector<GrdTree> leaves;
    for (Point v : county) leaves.push_back(leaf(v));
    kids.push_back(node(std::move(leaves)));
  }
  return node(std::move(kids));
}

std::size_t GrdTree::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t total = 0;
  for (const auto& c : children) total += c.leaf_count();
  return total;
}

bool GrdTree::is_uniform() const {
  std::vector<const GrdTree*> level{this};
  while (!level.empty()) {
    std::vector<const GrdTree*> next;
    const bool leaf = level[0]->is_leaf();
    const std::size_t width = level[0]->children.size();
    for (const auto* t : level) {
      if (t->is_leaf() != leaf || t->children.size() != width) return false;
      for (const auto& c : t->children) next.push_back(&c);
    }
    level = std::move(next);
  }
  return true;
}

std::vector<Point> GrdTree::leaves() const {
  std::vector<Point> out;
  collect_leaves(*this, out);
  return out;
}

// --- evaluators --------------------------------------------------------------

Vote eval_majority(std::span<const Vote> votes) noexcept {
  int balance = 0;
  for (Vote v : votes) balance += v;
  return static_cast<Vote>((balance > 0) - (balance < 0));
}

Vote eval_longest_run(std::span<const Vote> votes) noexcept {
  const std::size_t n = votes.size();
  // Start scanning just after a change of vote so no maximal run wraps the
  // scan boundary. Without a change the profile is constant.
  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i)
    if (votes[i] != votes[(i + n - 1) % n]) {
      start = i;
      break;
    }
  if (start == n) return votes.empty() ? kAbstain : votes[0];

  std::size_t best = 0;
  std::size_t best_count = 0;
  Vote best_vote = kAbstain;
  std::size_t i = 0;
  while (i < n) {
    const Vote v = votes[(start + i) % n];
    std::size_t len = 1;
    while (i + len < n && votes[(start + i + len) % n] == v) ++len;
    if (v != kAbstain) {
      if (len > best) {
        best = len;
        best_count = 1;
        best_vote = v;
      } else if (len == best) {
        ++best_count;
      }
    }
    i += len;
  }
  if (best_count == 1) return best_vote;
  return eval_majority(votes);
}

Vote eval_grd(const GrdTree& tree, std::span<const Vote> votes) {
  if (tree.is_leaf()) return votes[static_cast<std::size_t>(tree.voter)];
  int balance = 0;
  for (const auto& c : tree.children) balance += eval_grd(c, votes);
  return static_cast<Vote>((balance > 0) - (balance < 0));
}

namespace {

// Returns +1/-1 when some family member is unanimous at that vote, else 0.
Vote family_consensus(const CoalitionRule& rule, std::span<const Vote> votes) {
  if (!rule.masks.empty()) {
    std::uint64_t plus = 0;
    std::uint64_t minus = 0;
    for (std::size_t i = 0; i < votes.size(); ++i) {
      if (votes[i] > 0) plus |= std::uint64_t{1} << i;
      if (votes[i] < 0) minus |= std::uint64_t{1} << i;
    }
    for (std::uint64_t m : rule.masks) {
      if ((plus & m) == m) return kFor;
      if ((minus & m) == m) return kAgainst;
    }
    return kAbstain;
  }
  for (const auto& w : rule.family) {
    const Vote first = votes[w.members()[0]];
    if (first == kAbstain) continue;
    bool unanimous = true;
    for (Point v : w.members())
      if (votes[v] != first) {
        unanimous = false;
        break;
      }
    if (unanimous) return first;
  }
  return kAbstain;
}

}  // namespace

Vote eval_coalition_rule(const CoalitionRule& rule, std::span<const Vote> votes) {
  const Vote c = family_consensus(rule, votes);
  return c != kAbstain ? c : eval_majority(votes);
}

Vote eval_ccc(std::size_t rows, std::size_t cols, std::span<const Vote> votes) {
  // A row-column union is unanimous iff the row and the column both are.
  auto line_unanimous = [&](std::size_t start, std::size_t stride,
                            std::size_t count, Vote x) {
    for (std::size_t k = 0; k < count; ++k)
      if (votes[start + k * stride] != x) return false;
    return true;
  };
  for (Vote x : {kFor, kAgainst}) {
    bool row = false;
    for (std::size_t i = 0; i < rows && !row; ++i) row = line_unanimous(i * cols, 1, cols, x);
    if (!row) continue;
    for (std::size_t j = 0; j < cols; ++j)
      if (line_unanimous(j, cols, rows, x)) return x;
  }
  return eval_majority(votes);
}

std::vector<Coalition> ccc_family(std::size_t rows, std::size_t cols) {
  std::vector<Coalition> family;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<Point> m;
      for (std::size_t k = 0; k < cols; ++k) m.push_back(static_cast<Point>(i * cols + k));
      for (std::size_t k = 0; k < rows; ++k) m.push_back(static_cast<Point>(k * cols + j));
      family.emplace_back(rows * cols, std::move(m));
    }
  return family;
}

// --- VotingRule --------------------------------------------------------------

VotingRule VotingRule::majority(std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "rule degree must be >= 1");
  return VotingRule(n, MajorityRule{n});
}

VotingRule VotingRule::longest_run(std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "rule degree must be >= 1");
  return VotingRule(n, LongestRunRule{n});
}

VotingRule VotingRule::grd(GrdTree tree) {
  auto leaves = tree.leaves();
  const std::size_t n = leaves.size();
  std::vector<bool> seen(n, false);
  for (Point v : leaves) {
    if (v >= n || seen[v])
      fail(ErrorCode::InvalidArgument, "GRD leaves must be exactly the voters 0..n-1");
    seen[v] = true;
  }
  std::vector<const GrdTree*> stack{&tree};
  while (!stack.empty()) {
    const auto* t = stack.back();
    stack.pop_back();
    if (!t->is_leaf() && t->children.empty())
      fail(ErrorCode::InvalidArgument, "GRD inner node without children");
    for (const auto& c : t->children) stack.push_back(&c);
  }
  return VotingRule(n, GrdRule{std::move(tree), n});
}

VotingRule VotingRule::ccc(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) fail(ErrorCode::InvalidArgument, "CCC grid must be non-empty");
  return VotingRule(rows * cols, CccRule{rows, cols});
}

VotingRule VotingRule::coalition(std::size_t n, std::vector<Coalition> family) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "rule degree must be >= 1");
  if (family.empty()) fail(ErrorCode::InvalidArgument, "coalition family is empty");
  for (const auto& w : family) {
    if (w.degree() != n) fail(ErrorCode::DegreeMismatch, "family member degree mismatch");
    if (w.size() == 0) fail(ErrorCode::InvalidArgument, "family member is empty");
  }
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = a + 1; b < family.size(); ++b)
      if (!family[a].intersects(family[b]))
        fail(ErrorCode::InvalidArgument, "family members " + std::to_string(a) + " and " +
                                             std::to_string(b) + " are disjoint");
  CoalitionRule r{n, std::move(family), {}};
  if (n <= 64)
    for (const auto& w : r.family) {
      std::uint64_t m = 0;
      for (Point v : w.members()) m |= std::uint64_t{1} << v;
      r.masks.push_back(m);
    }
  return VotingRule(n, std::move(r));
}

VotingRule VotingRule::dictator(std::size_t n, Point voter) {
  if (voter >= n) fail(ErrorCode::InvalidArgument, "dictator out of range");
  return VotingRule(n, DictatorRule{n, voter});
}

VotingRule VotingRule::chair(std::size_t n, Point chair) {
  if (chair >= n) fail(ErrorCode::InvalidArgument, "chair out of range");
  return VotingRule(n, ChairRule{n, chair});
}

VotingRule VotingRule::restricted_majority(std::size_t n, std::vector<Point> voters) {
  Coalition c(n, std::move(voters));
  if (c.size() == 0) fail(ErrorCode::InvalidArgument, "restricted majority needs voters");
  return VotingRule(n, RestrictedMajorityRule{n, c.members()});
}

VotingRule VotingRule::constant(std::size_t n, Vote value) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "rule degree must be >= 1");
  if (!is_vote(value)) fail(ErrorCode::InvalidArgument, "constant outside {-1,0,1}");
  return VotingRule(n, ConstantRule{n, value});
}

std::string VotingRule::type_tag() const {
  struct Tag {
    std::string operator()(const MajorityRule&) const { return "majority"; }
    std::string operator()(const LongestRunRule&) const { return "longest_run"; }
    std::string operator()(const GrdRule&) const { return "grd"; }
    std::string operator()(const CccRule&) const { return "ccc"; }
    std::string operator()(const CoalitionRule&) const { return "coalition"; }
    std::string operator()(const DictatorRule&) const { return "dictator"; }
    std::string operator()(const ChairRule&) const { return "chair"; }
    std::string operator()(const RestrictedMajorityRule&) const { return "restricted_majority"; }
    std::string operator()(const ConstantRule&) const { return "constant"; }
  };
  return std::visit(Tag{}, rule_);
}

Vote VotingRule::evaluate_unchecked(std::span<const Vote> votes) const {
  struct Eval {
    std::span<const Vote> votes;
    Vote operator()(const MajorityRule&) const { return eval_majority(votes); }
    Vote operator()(const LongestRunRule&) const { return eval_longest_run(votes); }
    Vote operator()(const GrdRule& r) const { return eval_grd(r.tree, votes); }
    Vote operator()(const CccRule& r) const { return eval_ccc(r.rows, r.cols, votes); }
    Vote operator()(const CoalitionRule& r) const { return eval_coalition_rule(r, votes); }
    Vote operator()(const DictatorRule& r) const { return votes[r.voter]; }
    Vote operator()(const ChairRule& r) const {
      return votes[r.chair] != kAbstain ? votes[r.chair] : eval_majority(votes);
    }
    Vote operator()(const RestrictedMajorityRule& r) const {
      int balance = 0;
      for (Point v : r.voters) balance += votes[v];
      return static_cast<Vote>((balance > 0) - (balance < 0));
    }
    Vote operator()(const ConstantRule& r) const { return r.value; }
  };
  return std::visit(Eval{votes}, rule_);
}

Vote evaluate(const VotingRule& rule, const VoteProfile& phi) {
  if (phi.size() != rule.degree())
    fail(ErrorCode::DegreeMismatch, "profile has " + std::to_string(phi.size()) +
                                        " votes, rule expects " + std::to_string(rule.degree()));
  return rule.evaluate_unchecked(phi.votes());
}

std::vector<Coalition> defining_family(const VotingRule& rule) {
  if (const auto* c = std::get_if<CoalitionRule>(&rule.variant())) return c->family;
  if (const auto* c = std::get_if<CccRule>(&rule.variant())) return ccc_family(c->rows, c->cols);
  if (const auto* c = std::get_if<ChairRule>(&rule.variant()))
    return {Coalition(c->n, {c->chair})};
  return {};
}

}  // namespace equivote
