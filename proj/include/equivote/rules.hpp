#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "equivote/permutation.hpp"
#include "equivote/profile.hpp"

namespace equivote {

/// A set of voter indices, kept sorted and duplicate free.
class Coalition {
 public:
  Coalition() = default;
  Coalition(std::size_t n, std::vector<Point> members);

  std::size_t degree() const noexcept { return n_; }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<Point>& members() const noexcept { return members_; }
  bool contains(Point v) const;
  bool intersects(const Coalition& other) const;

  friend bool operator==(const Coalition&, const Coalition&) = default;
  friend auto operator<=>(const Coalition& a, const Coalition& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Point> members_;
};

/// Hierarchy of a generalized representative democracy. A leaf holds one
/// voter; an inner node takes the majority of its children's outcomes.
struct GrdTree {
  static constexpr std::int64_t kInner = -1;

  std::int64_t voter = kInner;
  std::vector<GrdTree> children;

  static GrdTree leaf(Point v) { return GrdTree{static_cast<std::int64_t>(v), {}}; }
  static GrdTree node(std::vector<GrdTree> kids) { return GrdTree{kInner, std::move(kids)}; }
  /// Uniform tree with branching[0] children at the root, branching[1] below
  /// them, and so on; leaves are numbered left to right.
  static GrdTree uniform(std::span<const std::size_t> branching);
  /// One level of counties: {{0,1,2},{3,4,5},...}
  static GrdTree from_counties(const std::vector<std::vector<Point>>& counties);

  bool is_leaf() const noexcept { return voter != kInner; }
  std::size_t leaf_count() const;
  /// All nodes at each depth have the same number of children.
  bool is_uniform() const;
  /// Leaves in left-to-right order.
  std::vector<Point> leaves() const;

  friend bool operator==(const GrdTree&, const GrdTree&) = default;
};

struct MajorityRule {
  std::size_t n;
  friend bool operator==(const MajorityRule&, const MajorityRule&) = default;
};

struct LongestRunRule {
  std::size_t n;
  friend bool operator==(const LongestRunRule&, const LongestRunRule&) = default;
};

struct GrdRule {
  GrdTree tree;
  std::size_t n;
  friend bool operator==(const GrdRule&, const GrdRule&) = default;
};

struct CccRule {
  std::size_t rows;
  std::size_t cols;
  friend bool operator==(const CccRule&, const CccRule&) = default;
};

/// Consensus of any family member decides; otherwise majority.
struct CoalitionRule {
  std::size_t n;
  std::vector<Coalition> family;
  std::vector<std::uint64_t> masks;  // bit masks of family, filled when n <= 64
  friend bool operator==(const CoalitionRule& a, const CoalitionRule& b) {
    return a.n == b.n && a.family == b.family;
  }
};

/// f(phi) = phi(voter).
struct DictatorRule {
  std::size_t n;
  Point voter;
  friend bool operator==(const DictatorRule&, const DictatorRule&) = default;
};

/// The chair decides unless indifferent; then majority of everyone.
struct ChairRule {
  std::size_t n;
  Point chair;
  friend bool operator==(const ChairRule&, const ChairRule&) = default;
};

/// Majority over a subset of the voters; the rest are ignored.
struct RestrictedMajorityRule {
  std::size_t n;
  std::vector<Point> voters;
  friend bool operator==(const RestrictedMajorityRule&, const RestrictedMajorityRule&) = default;
};

struct ConstantRule {
  std::size_t n;
  Vote value;
  friend bool operator==(const ConstantRule&, const ConstantRule&) = default;
};

class VotingRule {
 public:
  using Variant = std::variant<MajorityRule, LongestRunRule, GrdRule, CccRule,
                               CoalitionRule, DictatorRule, ChairRule,
                               RestrictedMajorityRule, ConstantRule>;

  static VotingRule majority(std::size_t n);
  static VotingRule longest_run(std::size_t n);
  /// Throws InvalidArgument unless the leaves are exactly 0..n-1 once each.
  static VotingRule grd(GrdTree tree);
  static VotingRule ccc(std::size_t rows, std::size_t cols);
  /// Throws InvalidArgument on empty or out-of-range members, or when two
  /// family members are disjoint.
  static VotingRule coalition(std::size_t n, std::vector<Coalition> family);
  static VotingRule dictator(std::size_t n, Point voter);
  static VotingRule chair(std::size_t n, Point chair);
  static VotingRule restricted_majority(std::size_t n, std::vector<Point> voters);
  static VotingRule constant(std::size_t n, Vote value);

  std::size_t degree() const noexcept { return n_; }
  const Variant& variant() const noexcept { return rule_; }
  std::string type_tag() const;

  /// No degree check; callers in hot loops validate once.
  Vote evaluate_unchecked(std::span<const Vote> votes) const;

  friend bool operator==(const VotingRule&, const VotingRule&) = default;

 private:
  VotingRule(std::size_t n, Variant v) : n_(n), rule_(std::move(v)) {}

  std::size_t n_;
  Variant rule_;
};

Vote eval_majority(std::span<const Vote> votes) noexcept;
Vote eval_longest_run(std::span<const Vote> votes) noexcept;
Vote eval_grd(const GrdTree& tree, std::span<const Vote> votes);
Vote eval_coalition_rule(const CoalitionRule& rule, std::span<const Vote> votes);
Vote eval_ccc(std::size_t rows, std::size_t cols, std::span<const Vote> votes);

/// Throws DegreeMismatch when the profile size differs from the rule degree.
Vote evaluate(const VotingRule& rule, const VoteProfile& phi);

/// Row-column union family {R_i u C_j} of an r x c grid, voter (i,j) = i*c+j.
std::vector<Coalition> ccc_family(std::size_t rows, std::size_t cols);

/// The rule's coalition family when it is defined as a coalition rule
/// (coalition, ccc, chair); empty otherwise.
std::vector<Coalition> defining_family(const VotingRule& rule);

}  // namespace equivote
