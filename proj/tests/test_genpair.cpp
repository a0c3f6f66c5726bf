#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "derange/catalog.hpp"
#include "derange/derangement.hpp"
#include "derange/errors.hpp"
#include "derange/genpair.hpp"
#include "oracles.hpp"

using namespace derange;

namespace {

using oracle::Images;

Permutation P(const char* text, std::size_t n) { return Permutation::parse(text, n); }

Images images(const Permutation& p) { return {p.images().begin(), p.images().end()}; }
Permutation perm(const Images& x) { return Permutation(std::vector<Point>(x.begin(), x.end())); }

Rational R(long a, long b) { return make_rational(a, b); }

/// Derived series on explicit element sets.
bool soluble_by_closure(std::size_t n, std::set<Images> group) {
  while (group.size() > 1) {
    std::set<Images> comms;
    for (const auto& a : group)
      for (const auto& b : group) comms.insert(oracle::mul(oracle::mul(oracle::inv(a), oracle::inv(b)), oracle::mul(a, b)));
    auto next = oracle::closure(n, {comms.begin(), comms.end()});
    if (next.size() == group.size()) return false;
    group = std::move(next);
  }
  return true;
}

/// Minimum of delta(G, H) over soluble core-free proper subgroups, with every
/// subgroup generated by two elements of G.
Rational alpha_by_pairs(std::size_t n, const std::vector<Images>& g) {
  std::set<std::set<Images>> subgroups;
  for (const auto& a : g)
    for (const auto& b : g) subgroups.insert(oracle::closure(n, {a, b}));
  Rational best = 2;
  for (const auto& h : subgroups) {
    if (h.size() == g.size() || !soluble_by_closure(n, h)) continue;
    std::set<Images> conjugates;
    std::set<Images> core = h;
    for (const auto& x : g) {
      std::set<Images> hx;
      for (const auto& k : h) hx.insert(oracle::conj(k, x));
      conjugates.insert(hx.begin(), hx.end());
      std::set<Images> meet;
      for (const auto& k : core)
        if (hx.count(k)) meet.insert(k);
      core = std::move(meet);
    }
    if (core.size() > 1) continue;
    const Rational delta = make_rational(static_cast<long>(g.size() - conjugates.size()), static_cast<long>(g.size()));
    if (delta < best) best = delta;
  }
  return best;
}

}  // namespace

TEST_CASE("generation tests") {
  const PermGroup a5 = alt(5);
  CHECK(generates(a5, {P("(1,2,3,4,5)", 5), P("(1,2,3)", 5)}));
  CHECK_FALSE(generates(a5, {P("(1,2)(3,4)", 5), P("(1,3)(2,4)", 5)}));
  CHECK_FALSE(generates(a5, {}));
  for (std::size_t n = 5; n <= 10; ++n) {
    CAPTURE(n);
    const std::size_t start = n % 2 == 1 ? 0 : 1;
    std::vector<Point> cycle;
    for (std::size_t i = start; i < n; ++i) cycle.push_back(static_cast<Point>(i));
    const std::vector<Permutation> gens{Permutation::from_cycles(n, {{0, 1, 2}}), Permutation::from_cycles(n, {cycle})};
    CHECK(generates(alt(n), gens));
    CHECK_FALSE(generates(sym(n), gens));
  }
}

TEST_CASE("derived subgroups") {
  CHECK(derived_subgroup(sym(4)).order() == 12);
  CHECK(derived_subgroup(alt(4)).order() == 4);
  CHECK(derived_subgroup(alt(5)).order() == 60);
  CHECK(derived_subgroup(cyclic(7)).order() == 1);
  CHECK(is_soluble(sym(4)));
  CHECK_FALSE(is_soluble(alt(5)));
  CHECK_FALSE(is_soluble(mathieu("M11")));
  CHECK(is_soluble(5, {P("(1,2,3,4,5)", 5), P("(2,3,5,4)", 5)}));
  CHECK_FALSE(is_soluble(sym(5), 2));
  CHECK_THROWS_AS(is_soluble(sym(4), 1), ResourceCapExceeded);
}

TEST_CASE("solubility agrees with an explicit derived series") {
  std::mt19937_64 rng(2024);
  int soluble = 0, insoluble = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + trial % 4;
    std::vector<Images> gens;
    const auto sn = oracle::symmetric(n);
    const int count = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < count; ++i) {
      Images x = sn[rng() % sn.size()];
      // Squares and cubes give a wider spread of small subgroups.
      for (unsigned k = rng() % 3; k > 0; --k) x = oracle::mul(x, sn[rng() % sn.size()]), x = oracle::mul(x, x);
      gens.push_back(x);
    }
    std::vector<Permutation> pgens;
    for (const auto& x : gens) pgens.push_back(perm(x));
    const bool expected = soluble_by_closure(n, oracle::closure(n, gens));
    CAPTURE(trial);
    CHECK(is_soluble(n, pgens) == expected);
    (expected ? soluble : insoluble)++;
  }
  CHECK(soluble > 0);
  CHECK(insoluble > 0);
}

TEST_CASE("fixed point ratios") {
  const auto a5 = ConjClassTable::compute(alt(5));
  const std::vector<Permutation> a4{P("(1,2,3)", 5), P("(1,2)(3,4)", 5)};
  CHECK(fpr(a5, 0, a4) == 1);
  CHECK(fpr(a5, *a5.find("5A"), a4) == 0);
  CHECK(fpr(a5, *a5.find("3A"), a4) == R(2, 5));
  CHECK(fpr(GroupAction::natural(alt(5)), P("(1,2,3)", 5)) == R(2, 5));
}

TEST_CASE("fixed point ratios computed two ways agree") {
  struct Case {
    PermGroup g;
    std::vector<Permutation> h;
  };
  const std::vector<Case> cases{
      {alt(5), {P("(1,2,3)", 5), P("(1,2)(3,4)", 5)}},
      {alt(5), {P("(1,2,3,4,5)", 5), P("(2,5)(3,4)", 5)}},
      {psl2(7), builtin_subgroup_spec("L2_7_S4").generators},
      {mathieu("M11"), builtin_subgroup_spec("M11_L2_11").generators},
      {sym(6), {P("(1,2,3)", 6), P("(1,2)", 6), P("(4,5,6)", 6), P("(4,5)", 6)}},
  };
  for (const auto& c : cases) {
    const auto classes = ConjClassTable::compute(c.g);
    const auto action = GroupAction::cosets(c.g, c.h);
    for (std::size_t i = 0; i < classes.size(); ++i) CHECK(fpr(classes, i, c.h) == fpr(action, classes[i].rep));
  }
}

TEST_CASE("witness criterion") {
  const auto m11 = ConjClassTable::compute(mathieu("M11"));
  const auto l211 = builtin_subgroup_spec("M11_L2_11").generators;
  {
    const auto r = witness_criterion(m11, m11[*m11.find("11A")].rep, {});
    CHECK(r.pass);
    for (const auto& t : r.terms) CHECK(t.sum == 0);
  }
  // An element of order 11 inside the L2(11) subgroup.
  const PermGroup h(11, l211);
  std::optional<Permutation> y;
  h.for_each_element(
      [&](const Permutation& x) {
        if (!y && x.order() == 11) y = x;
      },
      1000);
  REQUIRE(y.has_value());
  const auto r = witness_criterion(m11, *y, {l211});
  REQUIRE(r.contains_y.size() == 1);
  CHECK(r.contains_y[0]);
  CHECK(r.pass);
  const auto action = GroupAction::cosets(mathieu("M11"), l211);
  std::set<std::uint64_t> primes;
  for (const auto& t : r.terms) {
    primes.insert(m11[t.z_class].element_order);
    CHECK(t.sum == fpr(action, m11[t.z_class].rep));
    CHECK(t.sum < 1);
    CHECK(t.pass);
  }
  CHECK(primes == std::set<std::uint64_t>{2, 3, 5, 11});
}

TEST_CASE("witness sums for a 5-cycle in A5") {
  const auto a5 = ConjClassTable::compute(alt(5));
  const auto y = P("(1,2,3,4,5)", 5);
  const std::vector<Permutation> d10{y, P("(2,5)(3,4)", 5)};
  const auto r = witness_criterion(a5, y, {d10});
  CHECK(r.terms.size() == 4);
  std::map<std::string, Rational> sums;
  for (const auto& t : r.terms) sums[a5[t.z_class].name] = t.sum;
  CHECK(sums.at("2A") == R(1, 3));
  CHECK(sums.at("3A") == 0);
  CHECK(sums.at("5A") == R(1, 6));
  CHECK(sums.at("5B") == R(1, 6));
  CHECK(r.pass);
  // Six copies push the involution sum to 2.
  const auto heavy = witness_criterion(a5, y, std::vector<std::vector<Permutation>>(6, d10));
  CHECK_FALSE(heavy.pass);
}

TEST_CASE("certificate for A5 on 5 points") {
  const auto action = GroupAction::natural(alt(5));
  const auto r = find_conjugate_derangement_pair(action);
  REQUIRE(r.found());
  const auto& c = *r.certificate;
  CHECK(c.x.order() == 5);
  CHECK(c.x.fixed_point_count() == 0);
  CHECK(c.y == conjugate(c.x, c.g));
  CHECK(c.checked_order == 60);
  CHECK(oracle::closure(5, {images(c.x), images(c.y)}).size() == 60);
  CHECK(verify_certificate(c).ok);
  CHECK(r.trials == c.trial + 1);
}

TEST_CASE("certificate for M11 on 11 points") {
  const auto r = find_conjugate_derangement_pair(GroupAction::natural(mathieu("M11")));
  REQUIRE(r.found());
  const auto o = r.certificate->x.order();
  CHECK((o == 6 || o == 11));
  CHECK(verify_certificate(*r.certificate).ok);
}

TEST_CASE("certificate for the regular cyclic group of order 4") {
  const auto r = find_conjugate_derangement_pair(GroupAction::natural(cyclic(4)));
  REQUIRE(r.found());
  CHECK(r.certificate->x.order() == 4);
  CHECK(r.certificate->y == r.certificate->x);
  CHECK(verify_certificate(*r.certificate).ok);
}

TEST_CASE("no certificate exists for the Klein four-group") {
  const PermGroup v4(4, {P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)});
  const auto r = find_conjugate_derangement_pair(GroupAction::natural(v4), 200);
  CHECK_FALSE(r.found());
  CHECK(r.trials == 200);
}

TEST_CASE("searches on coset and subset actions") {
  const auto m11 = mathieu("M11");
  for (const auto& action : {GroupAction::cosets(m11, builtin_subgroup_spec("M11_L2_11").generators),
                             GroupAction::ksubsets(alt(7), 2), GroupAction::natural(psl2(13))}) {
    const auto r = find_conjugate_derangement_pair(action);
    REQUIRE(r.found());
    CHECK(action.fixed_point_count(r.certificate->x) == 0);
    CHECK(verify_certificate(*r.certificate).ok);
  }
}

TEST_CASE("tampered certificates are rejected") {
  const auto r = find_conjugate_derangement_pair(GroupAction::natural(alt(6)));
  REQUIRE(r.found());
  auto bad = *r.certificate;
  bad.y = bad.x;
  CHECK_FALSE(verify_certificate(bad).ok);
  bad = *r.certificate;
  bad.x = P("(1,2,3)", 6);
  CHECK_FALSE(verify_certificate(bad).ok);
  bad = *r.certificate;
  bad.g = bad.g * P("(1,2)(3,4)", 6);
  CHECK_FALSE(verify_certificate(bad).ok);
}

TEST_CASE("searches are deterministic across thread counts") {
  const auto action = GroupAction::natural(alt(9));
  const auto one = find_conjugate_derangement_pair(action, 10'000, 17, 1);
  const auto four = find_conjugate_derangement_pair(action, 10'000, 17, 4);
  REQUIRE(one.found());
  REQUIRE(four.found());
  CHECK(one.certificate->to_json("A9") == four.certificate->to_json("A9"));
  CHECK(one.certificate->trial == four.certificate->trial);
  const auto other_seed = find_conjugate_derangement_pair(action, 10'000, 18, 1);
  REQUIRE(other_seed.found());
  CHECK(verify_certificate(*other_seed.certificate).ok);
}

TEST_CASE("intransitive actions are rejected by the search") {
  const PermGroup g(5, {P("(1,2,3)", 5)});
  CHECK_THROWS_AS(find_conjugate_derangement_pair(GroupAction::natural(g)), std::invalid_argument);
}

TEST_CASE("certificate JSON") {
  const auto r = find_conjugate_derangement_pair(GroupAction::natural(alt(5)), 100, 3);
  REQUIRE(r.found());
  const std::string j = r.certificate->to_json("A5");
  for (const char* key : {"\"schema\"", "\"group\"", "\"x\"", "\"g\"", "\"y\"", "\"seed\"", "\"budget\"", "\"action\""})
    CHECK(j.find(key) != std::string::npos);
  CHECK(j.find(r.certificate->x.to_string()) != std::string::npos);
}

TEST_CASE("alpha_s of A5, A6 and A7") {
  const auto a5 = alpha_s_bruteforce(ConjClassTable::compute(alt(5)));
  CHECK(a5.alpha == R(1, 3));
  CHECK(a5.witness_order == 10);
  CHECK(PermGroup(5, a5.witness_generators).order() == 10);
  CHECK(alpha_s_bruteforce(ConjClassTable::compute(alt(6))).alpha == R(2, 5));
  CHECK(alpha_s_bruteforce(ConjClassTable::compute(alt(7))).alpha == R(17, 35));
}

TEST_CASE("alpha_s agrees with an enumeration of two-generated subgroups") {
  for (bool alternating : {false, true})
    for (std::size_t n : {4u, 5u}) {
      if (alternating && n == 4) continue;
      CAPTURE(n);
      CAPTURE(alternating);
      const PermGroup g = alternating ? alt(n) : sym(n);
      const auto elems = alternating ? oracle::alternating(n) : oracle::symmetric(n);
      const auto r = alpha_s_bruteforce(ConjClassTable::compute(g));
      CHECK(r.alpha == alpha_by_pairs(n, elems));
      CHECK(derangement_report(ConjClassTable::compute(g), GroupAction::cosets(g, r.witness_generators)).delta == r.alpha);
      CHECK(is_soluble(n, r.witness_generators));
    }
}

TEST_CASE("alpha_s respects its order cap") {
  CHECK_THROWS_AS(alpha_s_bruteforce(ConjClassTable::compute(mathieu("M11")), 5000), OrderExceedsCap);
  CHECK_THROWS_AS(alpha_s_bruteforce(ConjClassTable::compute(alt(6)), 100), OrderExceedsCap);
}
