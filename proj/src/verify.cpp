#include "derange/verify.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <stdexcept>

#include "derange/actions.hpp"
#include "derange/alt_comb.hpp"
#include "derange/catalog.hpp"
#include "derange/chartab.hpp"
#include "derange/classes.hpp"
#include "derange/derangement.hpp"
#include "derange/families.hpp"
#include "derange/genpair.hpp"

namespace derange {

namespace {

using Checks = std::vector<CheckResult>;

void check(Checks& out, std::string name, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [ok, detail] = body();
    out.push_back({std::move(name), ok, std::move(detail)});
  } catch (const std::exception& e) {
    out.push_back({std::move(name), false, std::string("error: ") + e.what()});
  }
}

std::pair<bool, std::string> expect_rational(const Rational& got, const Rational& want) {
  return {got == want, "got " + to_fraction_string(got) + ", expected " + to_fraction_string(want)};
}

Checks spor_small() {
  Checks out;
  const PermGroup m11 = mathieu("M11");
  const PermGroup m12 = mathieu("M12");
  const auto c11 = ConjClassTable::compute_default(m11);
  const auto c12 = ConjClassTable::compute_default(m12);
  const auto r11 = derangement_report(c11, GroupAction::natural(m11));
  check(out, "M11 degree 11: delta = 23/66", [&] { return expect_rational(r11.delta, Rational(23, 66)); });
  check(out, "M11 degree 11: width 2", [&] {
    const auto w = width(r11);
    return std::make_pair(w.width == 2u, "width " + w.to_string());
  });
  const auto r12 = derangement_report(c12, GroupAction::natural(m12));
  check(out, "M12 degree 12: delta = 107/288", [&] { return expect_rational(r12.delta, Rational(107, 288)); });
  check(out, "M12 degree 12: width 2", [&] {
    const auto w = width(r12);
    return std::make_pair(w.width == 2u, "width " + w.to_string());
  });
  check(out, "M11 degree 12: no derangement of prime order", [&] {
    const auto sub = builtin_subgroup_spec("M11_L2_11");
    const auto r = derangement_report(c11, GroupAction::cosets(m11, sub.generators));
    return std::make_pair(r.action.domain_size() == 12 && !r.prime_order_derangement_exists,
                          "degree " + std::to_string(r.action.domain_size()) + ", delta " +
                              to_fraction_string(r.delta) + ", derangements " +
                              format_normal_set(r.derangements(), c11));
  });
  return out;
}

Checks alt_suite() {
  Checks out;
  const std::vector<std::tuple<std::size_t, std::size_t, Rational>> cvals{
      {7, 2, Rational(38, 63)}, {8, 2, Rational(7, 12)}, {9, 2, Rational(3691, 6480)}, {4, 3, Rational(3, 4)},
      {5, 3, Rational(3, 5)},   {6, 3, Rational(3, 8)},  {7, 3, Rational(18, 35)},    {8, 3, Rational(25, 48)}};
  for (const auto& [n, k, want] : cvals)
    check(out, "c(" + std::to_string(n) + "," + std::to_string(k) + ") = " + to_fraction_string(want),
          [&] { return expect_rational(abc(n, k).c, want); });
  check(out, "f(n,1) closed form for 5 <= n <= 14", [] {
    for (std::size_t n = 5; n <= 14; ++n)
      if (fnk(n, 1) != fn1_closed_form(n)) return std::make_pair(false, "differs at n = " + std::to_string(n));
    return std::make_pair(true, std::string("10 values equal"));
  });
  check(out, "f(n,k) <= f(n,1) for k < n/2, 5 <= n <= 14", [] {
    for (std::size_t n = 5; n <= 14; ++n)
      for (std::size_t k = 1; 2 * k < n; ++k)
        if (fnk(n, k) > fnk(n, 1))
          return std::make_pair(false, "fails at n = " + std::to_string(n) + ", k = " + std::to_string(k));
    return std::make_pair(true, std::string("all pairs hold"));
  });
  for (std::size_t n = 3; n <= 9; ++n)
    check(out, "a, b, c by group count, n = " + std::to_string(n), [n] {
      const PermGroup an = alt(n), sn = sym(n);
      const auto ca = ConjClassTable::compute_default(an);
      const auto cs = ConjClassTable::compute_default(sn);
      const BigInt an_order = an.order();
      for (std::size_t k = 1; k <= n; ++k) {
        const auto ra = derangement_report(ca, GroupAction::ksubsets(an, k));
        const auto rs = derangement_report(cs, GroupAction::ksubsets(sn, k));
        const Rational a = 1 - ra.delta;
        const Rational b = (1 - rs.delta) * 2 - a;
        const Abc v = abc(n, k);
        if (v.a != a || v.b != b)
          return std::make_pair(false, "k = " + std::to_string(k) + ": sweep (" + to_fraction_string(v.a) + ", " +
                                           to_fraction_string(v.b) + "), count (" + to_fraction_string(a) + ", " +
                                           to_fraction_string(b) + ")");
      }
      return std::make_pair(true, "k = 1.." + std::to_string(n));
    });
  return out;
}

Checks psl2_suite() {
  Checks out;
  for (auto f : {Family::PSL2Borel, Family::PSL2TorusSplit, Family::PSL2TorusNonsplit})
    for (std::uint64_t q : {4, 5, 7, 8, 9, 11, 13})
      check(out, family_name(f) + " q = " + std::to_string(q), [f, q] {
        const auto r = crosscheck_family({f, q});
        return std::make_pair(r.equal, "closed form " + to_fraction_string(r.closed_form.value) + ", count " +
                                           (r.brute_force ? to_fraction_string(*r.brute_force) : r.message));
      });
  check(out, "PSL2Subfield3 q = 27", [] {
    const auto r = crosscheck_family({Family::PSL2Subfield3, 27});
    return std::make_pair(r.equal, "closed form " + to_fraction_string(r.closed_form.value) + ", count " +
                                       (r.brute_force ? to_fraction_string(*r.brute_force) : r.message));
  });
  return out;
}

Checks frobenius_suite() {
  Checks out;
  for (const auto& name : builtin_table_names()) {
    check(out, name + ": character counts equal enumeration", [&] {
      const CharacterTable t = builtin_table(name);
      const auto classes = ConjClassTable::compute_default(resolve_group(t.group_label()).build());
      const auto binding = bind_classes(t, classes);
      const bool eq = character_product_counts(t, binding) == brute_force_product_counts(classes);
      return std::make_pair(eq, std::to_string(t.num_classes()) + " classes");
    });
    check(out, name + ": mass conservation", [&] {
      const CharacterTable t = builtin_table(name);
      const std::size_t k = t.num_classes();
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
          BigInt mass = 0;
          for (std::size_t x = 0; x < k; ++x) mass += frobenius_count(t, a, b, x) * t.classes()[x].size;
          if (mass != t.classes()[a].size * t.classes()[b].size)
            return std::make_pair(false, "fails for " + t.classes()[a].name + ", " + t.classes()[b].name);
        }
      return std::make_pair(true, std::to_string(k * k) + " pairs");
    });
  }
  for (std::uint32_t q : {4u, 8u}) {
    const std::string name = "L2_" + std::to_string(q);
    check(out, name + ": N(g) for C = z^G, D = (z^2)^G, |z| = q+1", [&] {
      const CharacterTable t = builtin_table(name);
      const auto classes = ConjClassTable::compute_default(psl2(q));
      const auto binding = bind_classes(t, classes);
      std::size_t c = t.num_classes();
      for (std::size_t i = 0; i < t.num_classes(); ++i)
        if (t.classes()[i].element_order == q + 1) {
          c = i;
          break;
        }
      const std::size_t sq_computed = classes.class_of(classes[binding[c]].rep.pow(2));
      const std::size_t d =
          static_cast<std::size_t>(std::find(binding.begin(), binding.end(), sq_computed) - binding.begin());
      std::string values;
      bool ok = true;
      for (std::size_t x = 1; x < t.num_classes(); ++x) {
        const BigInt n = frobenius_count(t, c, d, x);
        const std::uint64_t o = t.classes()[x].element_order;
        if (o == 2)
          ok = ok && n == q;
        else if ((q - 1) % o == 0)
          ok = ok && n == q - 1;
        else
          ok = ok && (q + 1) % o == 0 && (n == q + 1 || n == 1);
        values += (values.empty() ? "" : " ") + t.classes()[x].name + ":" + n.get_str();
      }
      return std::make_pair(ok, t.classes()[c].name + " x " + t.classes()[d].name + ": " + values);
    });
  }
  return out;
}

Checks genpair_suite(const VerifyOptions& opts) {
  Checks out;
  auto certify = [&](const std::string& label, const std::function<GroupAction()>& make) {
    check(out, label, [&] {
      const auto res = find_conjugate_derangement_pair(make(), opts.budget, opts.seed, opts.jobs);
      if (!res.found()) return std::make_pair(false, "none in " + std::to_string(res.trials) + " trials");
      const auto v = verify_certificate(*res.certificate);
      return std::make_pair(v.ok, "x of order " + std::to_string(res.certificate->x.order()) + ", trial " +
                                      std::to_string(res.certificate->trial) + ", " + v.message);
    });
  };
  for (std::size_t n = 5; n <= 12; ++n) {
    const PermGroup g = alt(n);
    certify("A" + std::to_string(n) + " natural", [&] { return GroupAction::natural(g); });
  }
  const PermGroup m11 = mathieu("M11");
  const PermGroup m12 = mathieu("M12");
  certify("M11 degree 11", [&] { return GroupAction::natural(m11); });
  certify("M11 degree 12",
          [&] { return GroupAction::cosets(m11, builtin_subgroup_spec("M11_L2_11").generators); });
  certify("M12 degree 12", [&] { return GroupAction::natural(m12); });
  return out;
}

}  // namespace

std::vector<std::string> verify_suite_names() { return {"spor-small", "alt", "psl2", "frobenius", "genpair"}; }

std::vector<CheckResult> run_verify_suite(const std::string& suite, const VerifyOptions& opts) {
  if (suite == "spor-small") return spor_small();
  if (suite == "alt") return alt_suite();
  if (suite == "psl2") return psl2_suite();
  if (suite == "frobenius") return frobenius_suite();
  if (suite == "genpair") return genpair_suite(opts);
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

}  // namespace derange
