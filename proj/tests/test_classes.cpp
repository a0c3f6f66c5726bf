#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <map>

#include "derange/catalog.hpp"
#include "derange/classes.hpp"
#include "derange/errors.hpp"
#include "oracles.hpp"

using namespace derange;

namespace {

Permutation P(const char* text, std::size_t n) { return Permutation::parse(text, n); }

oracle::Images images(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

std::multiset<std::uint64_t> size_multiset(const ConjClassTable& t) {
  std::multiset<std::uint64_t> out;
  for (const auto& c : t.classes()) out.insert(to_u64(c.size));
  return out;
}

void check_table_invariants(const ConjClassTable& t) {
  const BigInt& order = t.group().order();
  BigInt total = 0;
  std::size_t singletons = 0;
  for (const auto& c : t.classes()) {
    total += c.size;
    CHECK(c.size * c.centralizer_order == order);
    CHECK(c.rep.order() == c.element_order);
    CHECK(t.group().contains(c.rep));
    if (c.size == 1) ++singletons;
  }
  CHECK(total == order);
  CHECK(t[0].rep.is_identity());
  CHECK(t[0].size == 1);
  // Singleton classes are exactly the centre; the identity is always among them.
  CHECK(singletons >= 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(t.class_of(t[i].rep) == i);
    CHECK(t.inverse_class(t.inverse_class(i)) == i);
  }
}

/// Centralizer order via orbit-stabiliser on the conjugation action, counted directly.
std::uint64_t centralizer_by_enumeration(const std::vector<Permutation>& elements, const Permutation& x) {
  std::uint64_t n = 0;
  for (const auto& g : elements)
    if (x * g == g * x) ++n;
  return n;
}

}  // namespace

TEST_CASE("classes of A5") {
  const auto t = ConjClassTable::compute(alt(5));
  CHECK(t.size() == 5);
  CHECK(size_multiset(t) == std::multiset<std::uint64_t>{1, 15, 20, 12, 12});
  check_table_invariants(t);
  CHECK(t.has_rank_index());
  CHECK(t.class_by_rank().size() == 60);
  CHECK(t.find("1A") == std::optional<std::size_t>(0));
  CHECK(t.find("3A").has_value());
  CHECK(t.find("5A").has_value());
  CHECK(t.find("5B").has_value());
  CHECK_FALSE(t.find("7A").has_value());
  CHECK(t[*t.find("5A")].size == 12);
  CHECK(t.class_elements(*t.find("2A")).size() == 15);
  CHECK_THROWS_AS(t.class_of(P("(1,2)", 5)), std::invalid_argument);
}

TEST_CASE("classes of M11") {
  const auto t = ConjClassTable::compute(mathieu("M11"));
  CHECK(t.size() == 10);
  check_table_invariants(t);
  int order11 = 0;
  for (const auto& c : t.classes())
    if (c.element_order == 11) {
      ++order11;
      CHECK(c.size == 720);
    }
  CHECK(order11 == 2);
  CHECK(t.find("11A").has_value());
  CHECK(t.find("11B").has_value());
}

TEST_CASE("classes of the trivial group") {
  const auto t = ConjClassTable::compute(PermGroup(4));
  CHECK(t.size() == 1);
  CHECK(t[0].size == 1);
  CHECK(t[0].name == "1A");
  check_table_invariants(t);
}

TEST_CASE("class tables agree with a naive enumeration") {
  for (std::size_t n = 3; n <= 6; ++n) {
    CAPTURE(n);
    for (bool alternating : {false, true}) {
      const PermGroup g = alternating ? alt(n) : sym(n);
      const auto t = ConjClassTable::compute(g);
      const auto all = alternating ? oracle::alternating(n) : oracle::symmetric(n);
      const auto naive = oracle::classes(all);
      REQUIRE(t.size() == naive.size());
      std::multiset<std::uint64_t> naive_sizes;
      for (const auto& c : naive) naive_sizes.insert(c.size());
      CHECK(size_multiset(t) == naive_sizes);
      for (std::size_t i = 0; i < t.size(); ++i) {
        const auto elems = t.class_elements(i);
        std::set<oracle::Images> as_set;
        for (const auto& e : elems) as_set.insert(images(e));
        bool matched = false;
        for (const auto& c : naive) matched = matched || c == as_set;
        CHECK(matched);
        // Representative is the least element of its class.
        CHECK(*as_set.begin() == images(t[i].rep));
      }
      check_table_invariants(t);
    }
  }
}

TEST_CASE("class names are ordered by element order and size") {
  const auto t = ConjClassTable::compute(sym(6));
  for (std::size_t i = 1; i < t.size(); ++i) {
    CHECK(t[i - 1].element_order <= t[i].element_order);
    if (t[i - 1].element_order == t[i].element_order) CHECK(t[i - 1].size >= t[i].size);
  }
  for (const auto& c : t.classes()) CHECK(c.name.rfind(std::to_string(c.element_order), 0) == 0);
}

TEST_CASE("random search path matches the exhaustive path") {
  ClassOptions random_path;
  random_path.exhaustive_limit = 10;
  for (const char* name : {"M11", "M12"}) {
    CAPTURE(name);
    const PermGroup g = mathieu(name);
    const auto exhaustive = ConjClassTable::compute(g);
    const auto random = ConjClassTable::compute(g, random_path);
    CHECK_FALSE(random.has_rank_index());
    REQUIRE(random.size() == exhaustive.size());
    for (std::size_t i = 0; i < random.size(); ++i) {
      CHECK(random[i].rep == exhaustive[i].rep);
      CHECK(random[i].size == exhaustive[i].size);
      CHECK(random[i].name == exhaustive[i].name);
    }
    check_table_invariants(random);
  }
}

TEST_CASE("class computation respects the element budget") {
  ClassOptions tight;
  tight.exhaustive_limit = 10;
  tight.element_budget = 100;
  CHECK_THROWS_AS(ConjClassTable::compute(mathieu("M12"), tight), ResourceCapExceeded);
}

TEST_CASE("centralizer orders computed two ways agree") {
  for (const PermGroup& g : {alt(5), sym(5), psl2(7)}) {
    const auto t = ConjClassTable::compute(g);
    const auto elements = g.elements(1000);
    for (const auto& c : t.classes()) CHECK(c.centralizer_order == centralizer_by_enumeration(elements, c.rep));
  }
}

TEST_CASE("are_conjugate") {
  const PermGroup a5 = alt(5);
  CHECK(are_conjugate(a5, P("(1,2,3)", 5), P("(3,4,5)", 5)));
  const auto five = P("(1,2,3,4,5)", 5);
  CHECK_FALSE(are_conjugate(a5, five, five * five));
  CHECK(are_conjugate(a5, five, five.inverse()));
  CHECK(are_conjugate(a5, five, five));
  CHECK(are_conjugate(sym(5), five, five * five));
  CHECK_FALSE(are_conjugate(sym(5), P("(1,2)", 5), P("(1,2,3)", 5)));

  const auto g = conjugating_element(a5, P("(1,2,3)", 5), P("(2,4,5)", 5));
  REQUIRE(g.has_value());
  CHECK(a5.contains(*g));
  CHECK(conjugate(P("(1,2,3)", 5), *g) == P("(2,4,5)", 5));
  CHECK_FALSE(conjugating_element(a5, five, five * five).has_value());
}

TEST_CASE("are_conjugate agrees with the class table") {
  const PermGroup m11 = mathieu("M11");
  const auto t = ConjClassTable::compute(m11);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = m11.random_element(rng);
    const auto y = m11.random_element(rng);
    CHECK(are_conjugate(m11, x, y) == (t.class_of(x) == t.class_of(y)));
    const auto g = m11.random_element(rng);
    CHECK(are_conjugate(m11, x, conjugate(x, g)));
  }
}

TEST_CASE("class fusion of A4 into A5") {
  const auto g = ConjClassTable::compute(alt(5));
  const auto f = class_fusion(g, {P("(1,2,3)", 5), P("(1,2)(3,4)", 5)});
  CHECK(f.subgroup_classes.size() == 4);
  const std::size_t three = *g.find("3A");
  int h_three_classes = 0;
  for (std::size_t i = 0; i < f.map.size(); ++i)
    if (f.subgroup_classes[i].element_order == 3) {
      ++h_three_classes;
      CHECK(f.map[i] == three);
    }
  CHECK(h_three_classes == 2);
  CHECK(f.intersection_sizes[three] == 8);
  CHECK(f.intersection_sizes[*g.find("2A")] == 3);
  CHECK(f.intersection_sizes[*g.find("5A")] == 0);
  CHECK(f.intersection_sizes[0] == 1);
}

TEST_CASE("class fusion of a 5-cycle subgroup into A5") {
  const auto g = ConjClassTable::compute(alt(5));
  const auto f = class_fusion(g, {P("(1,2,3,4,5)", 5)});
  CHECK(f.subgroup_classes.size() == 5);
  std::map<std::size_t, int> hits;
  for (std::size_t i = 1; i < f.map.size(); ++i) ++hits[f.map[i]];
  CHECK(hits.size() == 2);
  for (const auto& [cls, count] : hits) {
    CHECK(g[cls].size == 12);
    CHECK(count == 2);
  }
}

TEST_CASE("class fusion of the trivial subgroup") {
  const auto g = ConjClassTable::compute(alt(5));
  const auto f = class_fusion(g, {});
  REQUIRE(f.map.size() == 1);
  CHECK(f.map[0] == 0);
}

TEST_CASE("class fusion rejects a non-subgroup") {
  const auto g = ConjClassTable::compute(alt(5));
  CHECK_THROWS_AS(class_fusion(g, {P("(1,2)", 5)}), NotASubgroup);
}

TEST_CASE("class fusion properties") {
  const PermGroup m11 = mathieu("M11");
  const auto g = ConjClassTable::compute(m11);
  // Point stabiliser M10 and a subgroup from the catalog.
  const auto h_spec = builtin_subgroup_spec("M11_L2_11");
  std::vector<std::vector<Permutation>> subgroups{m11.generators(), h_spec.generators};
  {
    std::vector<Permutation> stab;
    std::mt19937_64 rng(3);
    while (generated_order(11, stab) != 720) {
      const auto x = m11.random_element(rng);
      if (x[0] == 0) stab.push_back(x);
    }
    subgroups.push_back(stab);
  }
  for (const auto& gens : subgroups) {
    const auto f = class_fusion(g, gens);
    BigInt total = 0;
    std::vector<BigInt> from_h(g.size(), BigInt(0));
    for (std::size_t i = 0; i < f.map.size(); ++i) {
      const auto& hc = f.subgroup_classes[i];
      const auto& gc = g[f.map[i]];
      CHECK(hc.element_order == gc.element_order);
      CHECK(hc.rep.cycle_type() == gc.rep.cycle_type());
      from_h[f.map[i]] += hc.size;
      total += hc.size;
    }
    CHECK(total == f.subgroup_classes.group().order());
    for (std::size_t j = 0; j < g.size(); ++j) {
      CHECK(from_h[j] == f.intersection_sizes[j]);
      CHECK(f.intersection_sizes[j] <= g[j].size);
    }
  }
}

TEST_CASE("spectrum") {
  CHECK(spectrum(5, {P("(1,2,3)", 5), P("(1,2)(3,4)", 5)}) == std::set<std::uint64_t>{1, 2, 3});
  CHECK(spectrum(11, mathieu("M11").generators()) == std::set<std::uint64_t>{1, 2, 3, 4, 5, 6, 8, 11});
  CHECK(spectrum(5, {P("(1,2,3)(4,5)", 5)}) == std::set<std::uint64_t>{1, 2, 3, 6});
  CHECK(spectrum(3, {}) == std::set<std::uint64_t>{1});
  const auto m12 = mathieu("M12");
  for (auto o : spectrum(12, m12.generators())) CHECK(m12.order() % static_cast<unsigned long>(o) == 0);
}

TEST_CASE("class tables round-trip through JSON lines") {
  const PermGroup g = psl2(7);
  const auto t = ConjClassTable::compute(g);
  const std::string text = t.to_jsonl();
  const auto back = ConjClassTable::from_jsonl(g, text);
  CHECK(back.to_jsonl() == text);
  REQUIRE(back.size() == t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(back[i].rep == t[i].rep);
    CHECK(back[i].name == t[i].name);
  }
  CHECK_THROWS_AS(ConjClassTable::from_jsonl(g, "{not json"), ParseError);
  // Drop the last class: sizes no longer sum to |G|.
  std::string truncated = text.substr(0, text.rfind('\n', text.size() - 2) + 1);
  CHECK_THROWS_AS(ConjClassTable::from_jsonl(g, truncated), ValidationError);
}

TEST_CASE("cached class tables") {
  const auto dir = std::filesystem::temp_directory_path() / "derange_test_classes_cache";
  std::filesystem::remove_all(dir);
  const PermGroup g = mathieu("M11");
  const auto first = ConjClassTable::compute_cached(g, dir);
  CHECK(std::filesystem::exists(dir));
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator()) == 1);
  const auto second = ConjClassTable::compute_cached(g, dir);
  CHECK(first.to_jsonl() == second.to_jsonl());
  CHECK(group_cache_key(g) == group_cache_key(mathieu("M11")));
  CHECK(group_cache_key(g) != group_cache_key(mathieu("M12")));
  std::filesystem::remove_all(dir);
}
