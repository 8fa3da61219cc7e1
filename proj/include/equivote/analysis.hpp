#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equivote/axioms.hpp"
#include "equivote/caps.hpp"
#include "equivote/permutation.hpp"
#include "equivote/rules.hpp"

namespace equivote {

/// Group-dependent predicates are three-valued: a transitive certified
/// subgroup proves equity, but refuting it needs the full Aut_f.
enum class Verdict { False, True, Unknown };
const char* to_string(Verdict v) noexcept;
inline Verdict verdict_of(bool b) noexcept { return b ? Verdict::True : Verdict::False; }

struct TriResult {
  Verdict verdict = Verdict::Unknown;
  std::string method;  // exhaustive | structural | coalition_preserving | provided | none
};

// --- automorphisms -----------------------------------------------------------

/// A subgroup of Aut_f together with how it was obtained. `complete` means
/// the group is all of Aut_f.
struct CertifiedGroup {
  PermGroup group;
  std::string method;
  bool complete = false;
};

enum class AutMethod { Exhaustive, CoalitionPreserving };

/// Exhaustive: filters all n! permutations by a full profile scan (needs
/// n <= caps.permutation_n and n <= caps.profile_n). CoalitionPreserving:
/// backtracking search for permutations mapping the defining coalition
/// family onto itself (coalition, ccc and chair rules).
CertifiedGroup automorphism_group(const VotingRule& rule, AutMethod method,
                                  const Caps& caps = {});

/// Automorphisms known from the rule's construction (rotations for the
/// longest-run rule, block shifts for GRD trees, row and column shifts for
/// CCC, the family stabilizer for coalition rules, ...). Each generator is
/// re-verified by a profile scan whenever 3^n fits the cap.
std::optional<CertifiedGroup> structural_automorphisms(const VotingRule& rule,
                                                       const Caps& caps = {});

/// Verifies every generator of `candidate` is an automorphism (family
/// preservation for coalition-defined rules, else a profile scan). Throws
/// Precondition on the first failure, Infeasible when neither check fits.
CertifiedGroup certify_group(const VotingRule& rule, const PermGroup& candidate,
                             const Caps& caps = {}, std::string label = "provided");

bool preserves_family(const std::vector<Coalition>& family, const Permutation& sigma);

// --- winning coalitions ------------------------------------------------------

enum class WinningMethod { Exhaustive, Monotone };

/// Name of the certificate that justifies the two-profile monotone check,
/// or nullopt. Coalition-defined rules qualify by construction, majority,
/// GRD and the other hierarchical rules structurally, anything else only
/// by an exhaustive monotonicity scan.
std::optional<std::string> monotone_certificate(const VotingRule& rule, const Caps& caps = {});

/// Exhaustive: every profile where W is unanimous at +1 or at -1
/// (3^(n-|W|) completions, capped by caps.profile_n). Monotone: only the
/// two extremal profiles; throws Precondition without a certificate.
bool is_winning_coalition(const VotingRule& rule, const Coalition& w,
                          WinningMethod method, const Caps& caps = {});

enum class SearchMethod { Auto, Exhaustive, Monotone };

struct MinCoalitionOptions {
  SearchMethod method = SearchMethod::Auto;
  /// Enumerated subgroup of Aut_f; only one subset per orbit is tested.
  const PermGroup* symmetry = nullptr;
};

struct MinCoalitionResult {
  std::size_t size = 0;   // exact minimum when `exact`, else a lower bound
  bool exact = false;
  std::vector<Coalition> witnesses;  // lexicographic, possibly truncated
  std::uint64_t witness_count = 0;
  bool witnesses_truncated = false;
  std::uint64_t subsets_tested = 0;
  std::string method;
};

MinCoalitionResult min_winning_coalitions(const VotingRule& rule, const Caps& caps = {},
                                          MinCoalitionOptions options = {});

// --- equity --------------------------------------------------------------------

/// Tries `hint`, then structural automorphisms, then the exhaustive group.
TriResult is_equitable(const VotingRule& rule, const Caps& caps = {},
                       const CertifiedGroup* hint = nullptr);
TriResult is_k_equitable(const VotingRule& rule, std::size_t k, const Caps& caps = {},
                         const CertifiedGroup* hint = nullptr);
/// Aut_f contains an n-cycle.
TriResult is_cyclic_rule(const VotingRule& rule, const Caps& caps = {},
                         const CertifiedGroup* hint = nullptr);
/// n = p^2 and Aut_f contains a regular C_p x C_p (grid shifts).
TriResult is_two_cyclic_rule(const VotingRule& rule, const Caps& caps = {},
                             const CertifiedGroup* hint = nullptr);

struct SqrtBoundCheck {
  Verdict verdict = Verdict::Unknown;
  std::size_t n = 0;
  std::size_t min_size = 0;
  std::size_t ceil_sqrt = 0;
  /// g(W) meets W for every certified automorphism g and witness W.
  Verdict intersecting_translates = Verdict::Unknown;
  std::string note;
};

/// Minimal winning coalitions of an equitable rule have size >= ceil(sqrt n).
/// Throws NotEquitable when the rule is refuted as equitable.
SqrtBoundCheck check_sqrt_lower_bound(const VotingRule& rule, const Caps& caps = {},
                                      const CertifiedGroup* hint = nullptr);

std::size_t ceil_sqrt(std::size_t n) noexcept;

// --- pivotality ----------------------------------------------------------------

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational reduced(std::uint64_t num, std::uint64_t den);
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class Distribution { BinaryUniform, TernaryUniform };

/// Exact probability that each voter is pivotal: changing her vote to
/// another value in the distribution's support changes the outcome.
std::vector<Rational> pivotality(const VotingRule& rule, Distribution dist,
                                 const Caps& caps = {});

// --- roles ---------------------------------------------------------------------

/// A bijection voter -> role.
class RoleAssignment {
 public:
  explicit RoleAssignment(Permutation voter_to_role) : map_(std::move(voter_to_role)) {}
  std::size_t size() const noexcept { return map_.degree(); }
  Point role_of(Point voter) const { return map_(voter); }
  const Permutation& map() const noexcept { return map_; }

 private:
  Permutation map_;
};

/// f_a = f_b, where f_a(phi) = f(phi o a^{-1}).
bool assignments_equivalent(const VotingRule& abstract_rule, const RoleAssignment& a,
                            const RoleAssignment& b, const Caps& caps = {});

/// Every assignment of n voters to the rule's roles, grouped by the induced
/// voting rule.
class AssignmentClasses {
 public:
  /// Throws Infeasible beyond caps.roles_n.
  AssignmentClasses(const VotingRule& abstract_rule, const Caps& caps = {});

  std::size_t class_count() const noexcept { return class_count_; }
  const std::vector<Permutation>& assignments() const noexcept { return assignments_; }
  std::size_t class_of(std::size_t assignment) const { return class_of_[assignment]; }

  bool all_equivalent() const noexcept { return class_count_ == 1; }
  /// For every voter v and assignment a with a(v) = r1 some b with
  /// b(v) = r2 induces the same rule.
  bool roles_equivalent(Point r1, Point r2) const;
  bool all_roles_equivalent() const;
  /// Some class realizes every (voter, role) pair.
  bool has_role_complete_class() const;
  /// Class of the identity assignment realizes every (voter, role) pair.
  bool identity_class_is_role_complete() const;

 private:
  bool class_realizes(std::size_t cls, Point voter, Point role) const;

  std::size_t n_;
  std::vector<Permutation> assignments_;
  std::vector<std::size_t> class_of_;
  std::size_t class_count_ = 0;
  // realized_[cls][voter * n + role]
  std::vector<std::vector<bool>> realized_;
};

bool roles_equivalent(const VotingRule& abstract_rule, Point r1, Point r2,
                      const Caps& caps = {});

}  // namespace equivote
