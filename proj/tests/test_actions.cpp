#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "derange/actions.hpp"
#include "derange/catalog.hpp"
#include "derange/errors.hpp"
#include "oracles.hpp"

using namespace derange;

namespace {

Permutation P(const char* text, std::size_t n) { return Permutation::parse(text, n); }

oracle::Images images(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

std::size_t num_orbits(const GroupAction& a) {
  std::vector<bool> seen(a.domain_size(), false);
  std::size_t orbits = 0;
  for (Point s = 0; s < a.domain_size(); ++s) {
    if (seen[s]) continue;
    ++orbits;
    std::vector<Point> queue{s};
    seen[s] = true;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const auto& g : a.group().generators()) {
        const Point t = a.apply(g, queue[i]);
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
      }
  }
  return orbits;
}

void check_burnside(const GroupAction& a) {
  BigInt total = 0;
  a.group().for_each_element([&](const Permutation& x) { total += static_cast<unsigned long>(a.fixed_point_count(x)); },
                             100'000);
  CHECK(total == a.group().order() * static_cast<unsigned long>(num_orbits(a)));
}

}  // namespace

TEST_CASE("coset action of A5 on A4 matches the natural action") {
  const PermGroup a5 = alt(5);
  const auto a = GroupAction::cosets(a5, {P("(1,2,3)", 5), P("(2,3,4)", 5)});
  CHECK(a.domain_size() == 5);
  CHECK(a.kind() == ActionKind::Cosets);
  CHECK(a.descriptor() == "cosets");
  CHECK(a.is_transitive());
  const auto nat = GroupAction::natural(a5);
  a5.for_each_element([&](const Permutation& x) { CHECK(a.fixed_point_count(x) == nat.fixed_point_count(x)); }, 100);
  CHECK(a.subgroup().order() == 12);
}

TEST_CASE("coset actions agree with an explicit coset oracle") {
  const PermGroup s4 = sym(4);
  const std::vector<Permutation> h{P("(1,2)", 4), P("(3,4)", 4)};
  const auto a = GroupAction::cosets(s4, h);
  CHECK(a.domain_size() == 6);
  const auto all = s4.elements(100);
  std::vector<oracle::Images> raw_g;
  for (const auto& x : all) raw_g.push_back(images(x));
  const auto raw_h = oracle::closure(4, {images(h[0]), images(h[1])});
  for (const auto& x : all) CHECK(a.fixed_point_count(x) == oracle::coset_fixed_points(raw_g, raw_h, images(x)));
  check_burnside(a);
}

TEST_CASE("Mathieu group M11 on twelve points") {
  const PermGroup m11 = mathieu("M11");
  const auto a = GroupAction::cosets(m11, builtin_subgroup_spec("M11_L2_11").generators);
  CHECK(a.domain_size() == 12);
  CHECK(a.is_transitive());
  CHECK(a.is_primitive());
  // The stabiliser of the base coset is H itself.
  std::size_t stab = 0;
  m11.for_each_element([&](const Permutation& x) { stab += a.apply(x, 0) == 0; }, 10'000);
  CHECK(stab == 660);
  CHECK(a.fixed_point_count(m11.identity()) == 12);
  check_burnside(a);
}

TEST_CASE("L2(7) on the cosets of S4") {
  const PermGroup g = psl2(7);
  const auto a = GroupAction::cosets(g, builtin_subgroup_spec("L2_7_S4").generators);
  CHECK(a.domain_size() == 7);
  CHECK(a.is_primitive());
  check_burnside(a);
}

TEST_CASE("k-subset actions") {
  const auto a = GroupAction::ksubsets(alt(5), 2);
  CHECK(a.domain_size() == 10);
  CHECK(a.is_transitive());
  CHECK(a.descriptor() == "ksubsets:2");
  CHECK(a.subset_size() == 2);
  CHECK(GroupAction::ksubsets(alt(8), 4).domain_size() == 70);
  const Point s01 = static_cast<Point>(GroupAction::colex_rank({0, 1}));
  const Point s12 = static_cast<Point>(GroupAction::colex_rank({1, 2}));
  CHECK(a.apply(P("(1,2,3,4,5)", 5), s01) == s12);
  for (std::uint64_t r = 0; r < 56; ++r) CHECK(GroupAction::colex_rank(GroupAction::colex_unrank(r, 3)) == r);
  CHECK(GroupAction::colex_unrank(0, 3) == std::vector<Point>{0, 1, 2});
  CHECK_THROWS_AS(GroupAction::ksubsets(alt(5), 0), std::invalid_argument);
  CHECK_THROWS_AS(GroupAction::ksubsets(alt(5), 6), std::invalid_argument);
  CHECK_THROWS_AS(GroupAction::ksubsets(sym(20), 10, 1000), ResourceCapExceeded);
  check_burnside(a);
  check_burnside(GroupAction::ksubsets(sym(6), 3));
}

TEST_CASE("fixed point counts") {
  const auto nat = GroupAction::natural(alt(5));
  CHECK(nat.fixed_point_count(P("(1,2,3,4,5)", 5)) == 0);
  CHECK(nat.fixed_point_count(P("(1,2,3)", 5)) == 2);
  const PermGroup m11 = mathieu("M11");
  const auto a12 = GroupAction::cosets(m11, builtin_subgroup_spec("M11_L2_11").generators);
  CHECK(a12.fixed_point_count(m11.identity()) == 12);
  const auto nat11 = GroupAction::natural(m11);
  m11.for_each_element(
      [&](const Permutation& x) {
        if (x.order() == 11) CHECK(nat11.fixed_point_count(x) == 0);
      },
      10'000);
}

TEST_CASE("actions are right actions and characters are class functions") {
  const PermGroup m11 = mathieu("M11");
  const auto a = GroupAction::cosets(m11, builtin_subgroup_spec("M11_L2_11").generators);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    const auto g = m11.random_element(rng), h = m11.random_element(rng);
    for (Point w = 0; w < a.domain_size(); ++w) CHECK(a.apply(g * h, w) == a.apply(h, a.apply(g, w)));
    CHECK(a.apply(m11.identity(), static_cast<Point>(t % 12)) == static_cast<Point>(t % 12));
    CHECK(a.fixed_point_count(conjugate(g, h)) == a.fixed_point_count(g));
    const auto img = a.image(g);
    CHECK(img.fixed_point_count() == a.fixed_point_count(g));
  }
  CHECK(a.generator_images().size() == m11.generators().size());
}

TEST_CASE("primitivity") {
  CHECK(GroupAction::natural(alt(5)).is_primitive());
  const PermGroup v4(4, {P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)});
  const auto a = GroupAction::natural(v4);
  CHECK(a.is_transitive());
  CHECK_FALSE(a.is_primitive());
  CHECK(a.minimal_block(1) == std::vector<Point>{0, 1});
  CHECK(GroupAction::ksubsets(alt(8), 2).domain_size() == 28);
  CHECK(GroupAction::ksubsets(alt(8), 2).is_primitive());
  const PermGroup d8(4, {P("(1,2,3,4)", 4), P("(1,3)", 4)});
  CHECK_FALSE(GroupAction::natural(d8).is_primitive());
  const PermGroup intrans(4, {P("(1,2)", 4)});
  CHECK_FALSE(GroupAction::natural(intrans).is_transitive());
  CHECK_THROWS(GroupAction::natural(intrans).is_primitive());
  check_burnside(GroupAction::natural(intrans));
}

TEST_CASE("coset action errors") {
  CHECK_THROWS_AS(GroupAction::cosets(alt(5), {P("(1,2)", 5)}), NotASubgroup);
  CHECK_THROWS_AS(GroupAction::cosets(sym(8), {P("(1,2)", 8)}, 1000), ResourceCapExceeded);
  const auto a = GroupAction::cosets(alt(5), {});
  CHECK(a.domain_size() == 60);
  CHECK(a.coset_representatives().size() == 60);
  CHECK(a.coset_representative(a.coset_representatives()[7]) == a.coset_representatives()[7]);
}

TEST_CASE("coset actions when the identity is not the least coset element") {
  // AGL(3,2) on the vectors of GF(2)^3; its stabiliser chain has a base point
  // that is not the least point of its basic orbit.
  auto affine = [](auto map) {
    std::vector<Point> img(8);
    for (Point v = 0; v < 8; ++v) img[v] = map(v);
    return Permutation(img);
  };
  const std::vector<Permutation> agl{affine([](Point v) { return v ^ 1u; }),
                                     affine([](Point v) { return ((v << 1) | (v >> 2)) & 7u; }),
                                     affine([](Point v) { return v ^ ((v & 1u) << 1); })};
  const PermGroup a8 = alt(8);
  const auto a = GroupAction::cosets(a8, agl);
  CHECK(a.domain_size() == 15);
  CHECK(a.is_transitive());
  CHECK(a.subgroup().contains(a.coset_representatives()[0]));
  check_burnside(a);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto x = a8.random_element(rng), y = a8.random_element(rng);
    for (Point w = 0; w < 15; ++w) CHECK(a.apply(x * y, w) == a.apply(y, a.apply(x, w)));
  }
}
