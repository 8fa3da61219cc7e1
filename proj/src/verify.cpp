#include "equivote/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "equivote/analysis.hpp"
#include "equivote/error.hpp"
#include "equivote/galois.hpp"
#include "equivote/randomized.hpp"

namespace equivote {

bool VerificationReport::passed() const {
  return std::all_of(instances.begin(), instances.end(), [](const auto& i) { return i.pass; });
}

namespace {

using Ints = std::vector<std::int64_t>;

Ints parse_ints(const Json& j, const std::string& key) {
  auto bad = [&] { fail(ErrorCode::InvalidArgument, "parameter '" + key + "' is malformed"); };
  if (j.is_number_integer()) return {j.get<std::int64_t>()};
  if (j.is_array()) {
    Ints out;
    for (const auto& x : j) {
      if (!x.is_number_integer()) bad();
      out.push_back(x.get<std::int64_t>());
    }
    return out;
  }
  if (!j.is_string()) bad();
  const auto s = j.get<std::string>();
  Ints out;
  try {
    if (auto dots = s.find(".."); dots != std::string::npos) {
      const auto lo = std::stoll(s.substr(0, dots));
      const auto hi = std::stoll(s.substr(dots + 2));
      if (hi < lo) bad();
      for (auto v = lo; v <= hi; ++v) out.push_back(v);
      return out;
    }
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
  } catch (const std::logic_error&) {
    bad();
  }
  if (out.empty()) bad();
  return out;
}

class Params {
 public:
  Params(const Json& given, std::initializer_list<std::string> allowed) : given_(given) {
    if (!given.is_object()) fail(ErrorCode::InvalidArgument, "parameters must be an object");
    for (const auto& [key, value] : given.items())
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        fail(ErrorCode::InvalidArgument, "unknown parameter '" + key + "'");
  }

  Ints ints(const std::string& key, Ints fallback) {
    Ints v = given_.contains(key) ? parse_ints(given_.at(key), key) : std::move(fallback);
    effective_[key] = v;
    return v;
  }
  std::int64_t one(const std::string& key, std::int64_t fallback) {
    auto v = ints(key, {fallback});
    if (v.size() != 1) fail(ErrorCode::InvalidArgument, "parameter '" + key + "' takes one value");
    effective_[key] = v[0];
    return v[0];
  }
  std::string text(const std::string& key, std::string fallback) {
    std::string v = fallback;
    if (given_.contains(key)) {
      if (!given_.at(key).is_string())
        fail(ErrorCode::InvalidArgument, "parameter '" + key + "' must be a string");
      v = given_.at(key).get<std::string>();
    }
    effective_[key] = v;
    return v;
  }
  const Json& effective() const { return effective_; }

 private:
  Json given_;
  Json effective_ = Json::object();
};

std::size_t positive(std::int64_t v, const char* what) {
  if (v < 1) fail(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
  return static_cast<std::size_t>(v);
}

struct Named {
  std::string name;
  VotingRule rule;
};

VotingRule ternary_grd(std::size_t depth) {
  std::vector<std::size_t> branching(depth, 3);
  return VotingRule::grd(GrdTree::uniform(branching));
}

VotingRule unequal_grd() {
  return VotingRule::grd(GrdTree::from_counties({{0}, {1}, {2, 3, 4}}));
}

Coalition theorem1_coalition(std::size_t n) {
  const std::size_t c = ceil_sqrt(n);
  std::vector<Point> m;
  for (std::size_t i = 0; i < n; ++i)
    if (i < c || i % c == 0) m.push_back(static_cast<Point>(i));
  return Coalition(n, std::move(m));
}

Json coalitions_json(const std::vector<Coalition>& cs) {
  Json arr = Json::array();
  for (const auto& c : cs) arr.push_back(coalition_to_json(c));
  return arr;
}

Json rationals_json(const std::vector<Rational>& v) {
  Json arr = Json::array();
  for (const auto& r : v) arr.push_back(r.str());
  return arr;
}

std::string verdict_str(const TriResult& r) {
  return std::string(to_string(r.verdict)) + " (" + r.method + ")";
}

// Smallest winning coalition of the tree: a node needs a strict majority
// of its children decided.
std::uint64_t tree_recursion(const GrdTree& t) {
  if (t.is_leaf()) return 1;
  std::vector<std::uint64_t> kids;
  for (const auto& c : t.children) kids.push_back(tree_recursion(c));
  std::sort(kids.begin(), kids.end());
  const std::size_t need = kids.size() / 2 + 1;
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < need; ++i) sum += kids[i];
  return sum;
}

// C(n) = min over d | n, d > 1 of (floor(d/2)+1) * C(n/d); C(1) = 1.
std::uint64_t divisor_recursion(std::uint64_t n, std::map<std::uint64_t, std::uint64_t>& memo) {
  if (n == 1) return 1;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  std::uint64_t best = UINT64_MAX;
  for (std::uint64_t d = 2; d <= n; ++d)
    if (n % d == 0) best = std::min(best, (d / 2 + 1) * divisor_recursion(n / d, memo));
  return memo[n] = best;
}

// --- verifiers ---------------------------------------------------------------

using Instances = std::vector<InstanceResult>;

Instances verify_thm1(Params& params, const Caps& caps) {
  Instances out;
  for (auto nv : params.ints("n", Ints{4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16})) {
    const std::size_t n = positive(nv, "n");
    const auto rule = VotingRule::longest_run(n);
    const auto w = theorem1_coalition(n);
    const std::size_t bound = 2 * ceil_sqrt(n) - 1;
    const bool winning = is_winning_coalition(rule, w, WinningMethod::Exhaustive, caps);
    out.push_back({"longest_run n=" + std::to_string(n),
                   "proof coalition is winning with size <= " + std::to_string(bound),
                   {{"coalition", coalition_to_json(w)},
                    {"size", w.size()},
                    {"winning", winning},
                    {"method", "exhaustive"}},
                   winning && w.size() <= bound});
  }
  return out;
}

std::vector<Named> theorem2_catalog(const Ints& lr) {
  std::vector<Named> out;
  for (auto n : lr)
    out.push_back({"longest_run n=" + std::to_string(n), VotingRule::longest_run(positive(n, "n"))});
  out.push_back({"ccc 2x2", VotingRule::ccc(2, 2)});
  out.push_back({"ccc 2x3", VotingRule::ccc(2, 3)});
  out.push_back({"ccc 3x3", VotingRule::ccc(3, 3)});
  out.push_back({"grd 3,3", ternary_grd(2)});
  out.push_back({"projective p=2", build_projective_rule(2)});
  return out;
}

Instances verify_thm2(Params& params, const Caps& caps) {
  Instances out;
  for (const auto& [name, rule] : theorem2_catalog(params.ints("longest_run_n", Ints{4, 5, 6, 7, 8, 9, 10, 11, 12}))) {
    const std::size_t n = rule.degree();
    const auto eq = is_equitable(rule, caps);
    MinCoalitionOptions opts;
    opts.method = SearchMethod::Exhaustive;
    const auto mc = min_winning_coalitions(rule, caps, opts);
    const auto sq = check_sqrt_lower_bound(rule, caps);
    const bool pass = eq.verdict == Verdict::True && mc.exact && mc.size * mc.size >= n &&
                      sq.verdict == Verdict::True && sq.min_size == mc.size;
    out.push_back({name,
                   "equitable and every winning coalition has size >= " +
                       std::to_string(ceil_sqrt(n)),
                   {{"equitable", verdict_str(eq)},
                    {"min_size", mc.size},
                    {"exact", mc.exact},
                    {"ceil_sqrt_n", ceil_sqrt(n)},
                    {"witness_count", mc.witness_count},
                    {"translates_intersect", to_string(sq.intersecting_translates)},
                    {"method", mc.method}},
                   pass});
  }
  return out;
}

Instances verify_thm3(Params& params, const Caps& caps) {
  Instances out;
  for (auto dv : params.ints("depth", Ints{1, 2, 3})) {
    const std::size_t depth = positive(dv, "depth");
    const auto rule = ternary_grd(depth);
    const std::size_t n = rule.degree();
    const std::uint64_t expected = std::uint64_t{1} << depth;
    MinCoalitionOptions opts;
    opts.method = n <= caps.profile_n ? SearchMethod::Exhaustive : SearchMethod::Monotone;
    const auto mc = min_winning_coalitions(rule, caps, opts);
    const auto& tree = std::get<GrdRule>(rule.variant()).tree;
    std::map<std::uint64_t, std::uint64_t> memo;
    const auto by_tree = tree_recursion(tree);
    const auto by_divisors = divisor_recursion(n, memo);
    // witnesses: pick 2 of 3 children at every inner node on the path
    const std::uint64_t witness_count = checked_pow(3, expected - 1);
    const bool pass = mc.exact && mc.size == expected && by_tree == expected &&
                      by_divisors == expected && mc.witness_count == witness_count;
    out.push_back({"ternary grd depth " + std::to_string(depth) + " (n=" + std::to_string(n) + ")",
                   "minimal winning coalition = 2^depth = n^log3(2) = " + std::to_string(expected),
                   {{"search", mc.size},
                    {"exact", mc.exact},
                    {"method", mc.method},
                    {"tree_recursion", by_tree},
                    {"divisor_recursion", by_divisors},
                    {"witness_count", mc.witness_count}},
                   pass});
  }
  return out;
}

Instances verify_lemma1(Params& params, const Caps& caps) {
  const auto seed = static_cast<std::uint64_t>(params.one("seed", 1));
  std::vector<Named> rules;
  rules.push_back({"projective p=2", build_projective_rule(2)});
  for (auto [r, c] : {std::pair{2, 2}, {2, 3}, {3, 3}, {3, 4}})
    rules.push_back({"ccc " + std::to_string(r) + "x" + std::to_string(c), VotingRule::ccc(r, c)});
  for (std::size_t n = 3; n <= 5; ++n)
    rules.push_back({"chair n=" + std::to_string(n), VotingRule::chair(n, 0)});
  for (std::uint32_t p : {3u, 5u, 7u})
    rules.push_back({"pgl2 p=" + std::to_string(p), build_3_equitable_rule(p, seed, caps).rule});
  {
    SeededRng rng(seed);
    rules.push_back({"cyclic n=10",
                     build_rule_from_group(cyclic_group(10), rng, "cyclic:10").rule});
  }
  Instances out;
  for (const auto& [name, rule] : rules) {
    ProfileTable table(rule, caps);
    const bool neutral = is_neutral(table);
    const bool responsive = is_positively_responsive(table);
    out.push_back({name + " (n=" + std::to_string(rule.degree()) + ")",
                   "neutral and positively responsive",
                   {{"neutral", neutral}, {"positively_responsive", responsive}},
                   neutral && responsive});
  }
  return out;
}

Instances verify_lemma3(Params& params, const Caps& caps) {
  Instances out;
  for (auto nv : params.ints("n", Ints{3, 4, 5, 6})) {
    const std::size_t n = positive(nv, "n");
    const auto rule = VotingRule::majority(n);
    MinCoalitionOptions opts;
    opts.method = SearchMethod::Exhaustive;
    const auto mc = min_winning_coalitions(rule, caps, opts);
    const bool symmetric = is_symmetric(rule, caps);
    out.push_back({"majority n=" + std::to_string(n),
                   "Aut = S_n and no winning coalition of size < n/2",
                   {{"symmetric", symmetric}, {"min_size", mc.size}, {"exact", mc.exact}},
                   symmetric && mc.exact && 2 * mc.size >= n});
  }
  return out;
}

std::vector<Named> role_catalog(const Ints& ns) {
  std::vector<Named> out;
  for (auto nv : ns) {
    const std::size_t n = positive(nv, "n");
    const auto tag = " n=" + std::to_string(n);
    out.push_back({"majority" + tag, VotingRule::majority(n)});
    out.push_back({"dictator" + tag, VotingRule::dictator(n, 0)});
    out.push_back({"chair" + tag, VotingRule::chair(n, 0)});
    if (n == 4) out.push_back({"longest_run" + tag, VotingRule::longest_run(n)});
  }
  return out;
}

Instances verify_prop1a(Params& params, const Caps& caps) {
  Instances out;
  for (const auto& [name, rule] : role_catalog(params.ints("n", Ints{3, 4}))) {
    const bool symmetric = is_symmetric(rule, caps);
    const AssignmentClasses classes(rule, caps);
    out.push_back({name, "symmetric iff all assignments are equivalent",
                   {{"symmetric", symmetric},
                    {"assignment_classes", classes.class_count()}},
                   symmetric == classes.all_equivalent()});
  }
  return out;
}

Instances verify_prop1b(Params& params, const Caps& caps) {
  Instances out;
  for (const auto& [name, rule] : role_catalog(params.ints("n", Ints{3, 4}))) {
    const auto eq = is_equitable(rule, caps);
    const AssignmentClasses classes(rule, caps);
    const bool roles = classes.all_roles_equivalent();
    out.push_back({name, "equitable iff all roles are equivalent",
                   {{"equitable", verdict_str(eq)}, {"all_roles_equivalent", roles}},
                   eq.verdict != Verdict::Unknown && (eq.verdict == Verdict::True) == roles});
  }
  // committee with a chair: members interchangeable, the chair is not
  const auto chair = VotingRule::chair(3, 0);
  const AssignmentClasses classes(chair, caps);
  const bool members = classes.roles_equivalent(1, 2);
  const bool chair_member = classes.roles_equivalent(0, 1);
  out.push_back({"chair n=3 roles", "member roles equivalent, chair role not",
                 {{"members_equivalent", members}, {"chair_equivalent_to_member", chair_member}},
                 members && !chair_member});
  return out;
}

Instances verify_prop2a(Params& params, const Caps& caps) {
  Instances out;
  for (const auto& [name, rule] : role_catalog(params.ints("n", Ints{3, 4}))) {
    const auto eq = is_equitable(rule, caps);
    const AssignmentClasses classes(rule, caps);
    const bool identity = classes.identity_class_is_role_complete();
    const bool any = classes.has_role_complete_class();
    const bool e = eq.verdict == Verdict::True;
    out.push_back({name,
                   "equitable iff assignments equivalent to the identity realize every (voter, role)",
                   {{"equitable", verdict_str(eq)},
                    {"identity_class_complete", identity},
                    {"some_class_complete", any}},
                   eq.verdict != Verdict::Unknown && identity == e && any == e});
  }
  return out;
}

Instances verify_prop3(Params&, const Caps& caps) {
  Instances out;
  auto cyclic = [&](const std::string& name, const VotingRule& rule, Verdict want) {
    const auto r = is_cyclic_rule(rule, caps);
    out.push_back({name, std::string("cyclic = ") + to_string(want),
                   {{"cyclic", verdict_str(r)}}, r.verdict == want});
  };
  cyclic("longest_run n=7", VotingRule::longest_run(7), Verdict::True);
  cyclic("projective p=2 (n=7)", build_projective_rule(2), Verdict::True);
  for (std::size_t n : {3, 5, 7}) cyclic("majority n=" + std::to_string(n), VotingRule::majority(n), Verdict::True);
  for (std::size_t n : {5, 7}) cyclic("dictator n=" + std::to_string(n), VotingRule::dictator(n, 0), Verdict::False);

  auto two_cyclic = [&](const std::string& name, const VotingRule& rule) {
    const auto r = is_two_cyclic_rule(rule, caps);
    out.push_back({name, "2-cyclic (regular C_p x C_p in Aut)", {{"two_cyclic", verdict_str(r)}},
                   r.verdict == Verdict::True});
  };
  two_cyclic("ccc 3x3 (n=9)", VotingRule::ccc(3, 3));
  two_cyclic("grd 3,3 (n=9)", ternary_grd(2));
  two_cyclic("ccc 2x2 (n=4)", VotingRule::ccc(2, 2));
  return out;
}

PermGroup named_group(const std::string& kind, std::size_t n, std::uint32_t p, const Caps& caps) {
  if (kind == "cyclic") return cyclic_group(n);
  if (kind == "pgl2") return pgl2_elements(p, caps.closure_order);
  fail(ErrorCode::InvalidArgument, "group must be 'cyclic' or 'pgl2'");
}

Instances verify_prop4(Params& params, const Caps& caps) {
  const auto kind = params.text("group", "cyclic");
  const auto seed = static_cast<std::uint64_t>(params.one("seed", 7));
  Ints sizes = kind == "cyclic" ? params.ints("n", Ints{16, 100}) : params.ints("p", Ints{3, 5, 7});
  Instances out;
  for (auto v : sizes) {
    const auto size = positive(v, kind == "cyclic" ? "n" : "p");
    const auto g = named_group(kind, size, static_cast<std::uint32_t>(size), caps);
    const std::size_t n = g.degree();
    const std::uint64_t m = g.elements().size();
    SeededRng rng(seed);
    const auto res = intersecting_set(g, rng, kDefaultMaxAttempts, caps.workers);
    SeededRng again(seed);
    const auto rerun = intersecting_set(g, again, kDefaultMaxAttempts, caps.workers);
    const bool recheck = verify_intersecting(g, res.set);
    const double formula = 2 * std::sqrt(static_cast<double>(n)) * std::log(static_cast<double>(m)) + 2;
    const bool pass = res.certified && recheck && res.set.size() <= 2 * res.ell &&
                      static_cast<double>(res.set.size()) <= formula && rerun.set == res.set;
    out.push_back({kind + " " + std::to_string(size) + " seed " + std::to_string(seed),
                   "certified S with |S| <= 2*ceil(sqrt(n) ln m) = " + std::to_string(2 * res.ell),
                   {{"n", n},
                    {"m", m},
                    {"ell", res.ell},
                    {"size", res.set.size()},
                    {"attempts", res.attempts},
                    {"certified", res.certified},
                    {"reverified", recheck},
                    {"deterministic", rerun.set == res.set},
                    {"set", coalition_to_json(res.set)}},
                   pass});
  }
  return out;
}

Instances verify_thm7(Params& params, const Caps& caps) {
  Instances out;
  for (auto pv : params.ints("p", Ints{2, 3})) {
    const auto p = static_cast<std::uint32_t>(positive(pv, "p"));
    const auto geometry = projective_plane(p);
    const auto rule = build_projective_rule(p);
    const std::size_t n = rule.degree();
    const std::string tag = "projective p=" + std::to_string(p) + " (n=" + std::to_string(n) + ")";

    std::vector<Coalition> lines = geometry.lines;
    std::sort(lines.begin(), lines.end());
    const bool small = n <= caps.profile_n && n <= caps.permutation_n;
    MinCoalitionOptions opts;
    opts.method = small ? SearchMethod::Exhaustive : SearchMethod::Auto;
    const auto mc = min_winning_coalitions(rule, caps, opts);
    out.push_back({tag + " minimal coalitions",
                   "minimal winning coalitions are exactly the lines, size " +
                       std::to_string(p + 1) + " = ceil(sqrt n)",
                   {{"size", mc.size}, {"witness_count", mc.witness_count}, {"method", mc.method}},
                   mc.exact && mc.size == p + 1 && mc.size == ceil_sqrt(n) && mc.witnesses == lines});

    const auto stab = automorphism_group(rule, AutMethod::CoalitionPreserving, caps);
    const auto pgl = pgl3_elements(p, caps.automorphism_order);
    Json aut = {{"coalition_preserving", stab.group.elements().size()},
                {"pgl3", pgl.elements().size()}};
    bool aut_pass = stab.group.elements() == pgl.elements() &&
                    pgl.elements().size() == pgl_order(p, 3);
    if (small) {
      const auto full = automorphism_group(rule, AutMethod::Exhaustive, caps);
      aut["exhaustive"] = full.group.elements().size();
      aut_pass = aut_pass && full.group.elements() == stab.group.elements();
    }
    out.push_back({tag + " automorphisms",
                   "line-family stabilizer = PGL(3,p) of order " + std::to_string(pgl_order(p, 3)) +
                       (small ? " = exhaustive Aut" : ""),
                   aut, aut_pass});

    const auto two = is_k_equitable(rule, 2, caps);
    Json k = {{"2", verdict_str(two)}};
    bool k_pass = two.verdict == Verdict::True;
    std::string claim = "2-equitable";
    if (small) {
      const auto three = is_k_equitable(rule, 3, caps);
      k["3"] = verdict_str(three);
      k_pass = k_pass && three.verdict == Verdict::False;
      claim += ", not 3-equitable";
    }
    out.push_back({tag + " k-equity", claim, k, k_pass});
  }
  return out;
}

Instances verify_thm8(Params& params, const Caps& caps) {
  const auto seed = static_cast<std::uint64_t>(params.one("seed", 1));
  Instances out;
  for (auto pv : params.ints("p", Ints{3, 5, 7})) {
    const auto p = static_cast<std::uint32_t>(positive(pv, "p"));
    const auto built = build_3_equitable_rule(p, seed, caps);
    const auto again = build_3_equitable_rule(p, seed, caps);
    const std::size_t n = built.rule.degree();
    const double dn = static_cast<double>(n);
    const std::uint64_t m = built.group.elements().size();
    const std::uint64_t order = std::uint64_t{p + 1} * p * (p - 1);
    const auto cert = certify_group(built.rule, built.group, caps, "pgl2");
    const bool three_transitive = is_k_transitive(built.group, 3);
    const auto three = is_k_equitable(built.rule, 3, caps, &cert);
    const std::size_t s = built.set.set.size();
    const double thm_bound = 6 * std::sqrt(dn) * std::log(dn) + 2;
    const double prop_bound = 2 * std::sqrt(dn) * std::log(static_cast<double>(m)) + 2;
    const bool winning =
        is_winning_coalition(built.rule, built.set.set, WinningMethod::Exhaustive, caps);
    const bool deterministic = serialize_rule({built.rule, built.provenance}) ==
                               serialize_rule({again.rule, again.provenance});
    const bool pass = built.set.certified && verify_intersecting(built.group, built.set.set) &&
                      s <= 2 * built.set.ell && m == order && three_transitive &&
                      three.verdict == Verdict::True && winning &&
                      static_cast<double>(s) <= thm_bound && deterministic;
    std::ostringstream bounds;
    bounds << std::fixed << std::setprecision(3) << "6 sqrt(n) ln n + 2 = " << thm_bound
           << ", 2 sqrt(n) ln m + 2 = " << prop_bound;
    out.push_back({"pgl2 p=" + std::to_string(p) + " (n=" + std::to_string(n) + ") seed " +
                       std::to_string(seed),
                   "3-equitable rule with a winning coalition within " + bounds.str(),
                   {{"group_order", m},
                    {"expected_order", order},
                    {"three_transitive", three_transitive},
                    {"three_equitable", verdict_str(three)},
                    {"ell", built.set.ell},
                    {"coalition_size", s},
                    {"coalition", coalition_to_json(built.set.set)},
                    {"winning", winning},
                    {"family_size", std::get<CoalitionRule>(built.rule.variant()).family.size()},
                    {"deterministic", deterministic}},
                   pass});
  }
  return out;
}

Instances verify_pivotality(Params&, const Caps& caps) {
  std::vector<Named> rules;
  for (std::size_t n = 3; n <= 8; ++n)
    rules.push_back({"majority n=" + std::to_string(n), VotingRule::majority(n)});
  for (std::size_t n = 4; n <= 8; ++n)
    rules.push_back({"longest_run n=" + std::to_string(n), VotingRule::longest_run(n)});
  rules.push_back({"ccc 2x2", VotingRule::ccc(2, 2)});
  rules.push_back({"ccc 2x3", VotingRule::ccc(2, 3)});
  rules.push_back({"grd 2,3", VotingRule::grd(GrdTree::uniform(std::vector<std::size_t>{2, 3}))});
  rules.push_back({"projective p=2", build_projective_rule(2)});
  for (std::uint32_t p : {3u, 5u, 7u})
    rules.push_back({"pgl2 p=" + std::to_string(p), build_3_equitable_rule(p, 1, caps).rule});

  Instances out;
  auto constant = [](const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [&](const Rational& r) { return r == v.front(); });
  };
  for (const auto& [name, rule] : rules) {
    const auto eq = is_equitable(rule, caps);
    const auto bin = pivotality(rule, Distribution::BinaryUniform, caps);
    const auto ter = pivotality(rule, Distribution::TernaryUniform, caps);
    out.push_back({name, "equitable, so pivotality is equal across voters",
                   {{"equitable", verdict_str(eq)},
                    {"binary_uniform", rationals_json(bin)},
                    {"ternary_uniform", rationals_json(ter)}},
                   eq.verdict == Verdict::True && constant(bin) && constant(ter)});
  }
  for (std::size_t n = 3; n <= 5; ++n) {
    const auto rule = VotingRule::dictator(n, 0);
    const auto bin = pivotality(rule, Distribution::BinaryUniform, caps);
    std::vector<Rational> want(n, Rational{0, 1});
    want[0] = {1, 1};
    out.push_back({"dictator n=" + std::to_string(n), "binary pivotality (1,0,...,0)",
                   {{"binary_uniform", rationals_json(bin)}}, bin == want});
  }
  return out;
}

Instances verify_grd_unequal(Params&, const Caps& caps) {
  const auto rule = unequal_grd();
  MinCoalitionOptions opts;
  opts.method = SearchMethod::Exhaustive;
  const auto mc = min_winning_coalitions(rule, caps, opts);
  const auto eq = is_equitable(rule, caps);
  bool rejected = false;
  try {
    check_sqrt_lower_bound(rule, caps);
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::NotEquitable;
  }
  const std::vector<Coalition> want{Coalition(5, {0, 1})};
  Instances out;
  out.push_back({"grd counties {0},{1},{2,3,4}",
                 "minimal winning coalition {0,1} of size 2 < sqrt 5; not equitable",
                 {{"min_size", mc.size},
                  {"witnesses", coalitions_json(mc.witnesses)},
                  {"equitable", verdict_str(eq)},
                  {"sqrt_bound_rejects_input", rejected}},
                 mc.exact && mc.witnesses == want && mc.size * mc.size < 5 &&
                     eq.verdict == Verdict::False && rejected});
  return out;
}

struct Verifier {
  std::string id;
  std::vector<std::string> params;
  std::function<Instances(Params&, const Caps&)> run;
};

const std::vector<Verifier>& verifiers() {
  static const std::vector<Verifier> all = {
      {"thm1", {"n"}, verify_thm1},
      {"thm2", {"longest_run_n"}, verify_thm2},
      {"thm3", {"depth"}, verify_thm3},
      {"lemma1", {"seed"}, verify_lemma1},
      {"lemma3", {"n"}, verify_lemma3},
      {"prop1A", {"n"}, verify_prop1a},
      {"prop1B", {"n"}, verify_prop1b},
      {"prop2A", {"n"}, verify_prop2a},
      {"prop3", {}, verify_prop3},
      {"prop4", {"group", "n", "p", "seed"}, verify_prop4},
      {"thm7", {"p"}, verify_thm7},
      {"thm8", {"p", "seed"}, verify_thm8},
      {"pivotality", {}, verify_pivotality},
      {"grd_unequal", {}, verify_grd_unequal},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& verifier_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& v : verifiers()) out.push_back(v.id);
    return out;
  }();
  return ids;
}

VerificationReport run_verifier(const std::string& id, const Json& params, const Caps& caps) {
  for (const auto& v : verifiers()) {
    if (v.id != id) continue;
    const Json given = params.is_null() ? Json::object() : params;
    if (!given.is_object()) fail(ErrorCode::InvalidArgument, "parameters must be an object");
    for (const auto& [key, value] : given.items())
      if (std::find(v.params.begin(), v.params.end(), key) == v.params.end())
        fail(ErrorCode::InvalidArgument, "verifier " + id + " takes no parameter '" + key + "'");
    Params p(given, {"n", "p", "seed", "depth", "group", "longest_run_n"});
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.theorem = id;
    report.caps = caps;
    try {
      report.instances = v.run(p, caps);
    } catch (const Error& e) {
      // A cap or a failed construction stops the verifier; report it as a
      // failing instance instead of a usage error.
      if (e.code() != ErrorCode::Infeasible && e.code() != ErrorCode::Overflow &&
          e.code() != ErrorCode::ConstructionFailed)
        throw;
      report.instances.push_back({id, "all instances complete within caps",
                                  {{"error", to_string(e.code())}, {"message", e.what()}},
                                  false});
    }
    report.params = p.effective();
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }
  fail(ErrorCode::InvalidArgument, "unknown verifier '" + id + "'");
}

std::vector<VerificationReport> run_all(const Caps& caps) {
  std::vector<VerificationReport> out;
  for (const auto& id : verifier_ids()) out.push_back(run_verifier(id, Json::object(), caps));
  return out;
}

Json report_to_json(const VerificationReport& r) {
  Json instances = Json::array();
  for (const auto& i : r.instances)
    instances.push_back(
        {{"name", i.name}, {"claim", i.claim}, {"measured", i.measured}, {"pass", i.pass}});
  return {{"format_version", kFormatVersion},
          {"kind", "verification"},
          {"theorem", r.theorem},
          {"params", r.params},
          {"caps", caps_to_json(r.caps)},
          {"passed", r.passed()},
          {"instances", std::move(instances)}};
}

Json suite_to_json(const std::vector<VerificationReport>& reports) {
  Json arr = Json::array();
  bool passed = true;
  for (const auto& r : reports) {
    arr.push_back(report_to_json(r));
    passed = passed && r.passed();
  }
  return {{"format_version", kFormatVersion},
          {"kind", "verification_suite"},
          {"passed", passed},
          {"reports", std::move(arr)}};
}

std::string report_to_human(const VerificationReport& r) {
  std::ostringstream os;
  std::size_t ok = 0;
  for (const auto& i : r.instances) ok += i.pass;
  os << r.theorem << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << ok << "/"
     << r.instances.size() << " instances, " << std::fixed << std::setprecision(2)
     << r.wall_seconds << " s)\n";
  for (const auto& i : r.instances) {
    os << "  [" << (i.pass ? "ok" : "FAIL") << "] " << i.name << ": " << i.claim << "\n";
    if (!i.pass) os << "         measured " << i.measured.dump() << "\n";
  }
  return os.str();
}

}  // namespace equivote
