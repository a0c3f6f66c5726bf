#include "derange/families.hpp"

#include <algorithm>
#include <stdexcept>

#include "derange/actions.hpp"
#include "derange/catalog.hpp"
#include "derange/classes.hpp"
#include "derange/derangement.hpp"

namespace derange {

namespace {

struct FamilyInfo {
  Family family;
  const char* name;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::SuzukiBorel, "SuzukiBorel"},       {Family::ReeBorel, "ReeBorel"},
    {Family::PSL2Borel, "PSL2Borel"},           {Family::PSL2TorusSplit, "PSL2TorusSplit"},
    {Family::PSL2TorusNonsplit, "PSL2TorusNonsplit"}, {Family::PSL2Subfield3, "PSL2Subfield3"},
    {Family::PSL3Borel, "PSL3Borel"},           {Family::PSU3P1, "PSU3P1"},
    {Family::Sp4BorelBound, "Sp4BorelBound"},
};

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Rational R(std::uint64_t n) { return Rational(from_u64(n)); }

bool is_psl2(Family f) {
  return f == Family::PSL2Borel || f == Family::PSL2TorusSplit || f == Family::PSL2TorusNonsplit;
}

Permutation group_element_order_search(const PermGroup& g, std::uint64_t order) {
  Permutation found;
  bool ok = false;
  g.for_each_element(
      [&](const Permutation& x) {
        if (!ok && x.order() == order) {
          found = x;
          ok = true;
        }
      },
      g.order_u64());
  if (!ok) throw std::logic_error("no element of order " + std::to_string(order));
  return found;
}

// Generators of the subgroup H of PSL(2,q) attached to the family.
std::vector<Permutation> psl2_subgroup(const Psl2Model& m, Family f) {
  const FiniteField& F = m.field();
  const FieldElement lambda = F.primitive_element();
  const Permutation translate = m.mobius(F.one(), F.one(), F.zero(), F.one());
  const Permutation scale = m.mobius(lambda, F.zero(), F.zero(), lambda.inverse());
  const Permutation flip = m.mobius(F.zero(), -F.one(), F.one(), F.zero());
  switch (f) {
    case Family::PSL2Borel: return {translate, scale};
    case Family::PSL2TorusSplit: return {scale, flip};
    case Family::PSL2Subfield3: return {translate, flip};
    case Family::PSL2TorusNonsplit: {
      const std::uint64_t q = m.q();
      const std::uint64_t d = q % 2 == 0 ? 1 : 2;
      const PermGroup& g = m.group();
      const Permutation t = group_element_order_search(g, (q + 1) / d);
      const Permutation t_inv = t.inverse();
      std::optional<Permutation> s;
      g.for_each_element(
          [&](const Permutation& x) {
            if (!s && x.order() == 2 && x * t * x == t_inv) s = x;
          },
          g.order_u64());
      if (!s) throw std::logic_error("no involution inverting the torus");
      return {t, *s};
    }
    default: throw std::invalid_argument("no PSL2 model for " + family_name(f));
  }
}

}  // namespace

std::string family_name(Family f) {
  for (const auto& info : kFamilies)
    if (info.family == f) return info.name;
  throw std::invalid_argument("unknown family");
}

Family parse_family(const std::string& name) {
  for (const auto& info : kFamilies)
    if (name == info.name) return info.family;
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::vector<Family> all_families() {
  std::vector<Family> out;
  for (const auto& info : kFamilies) out.push_back(info.family);
  return out;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = q;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  unsigned f = 0;
  while (q % p == 0) {
    q /= p;
    ++f;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(p, f);
}

bool admissible(const FamilyCase& c) {
  const auto pp = prime_power(c.q);
  if (!pp) return false;
  const auto [p, f] = *pp;
  switch (c.family) {
    case Family::SuzukiBorel: return p == 2 && f % 2 == 1 && c.q >= 8;
    case Family::ReeBorel: return p == 3 && f % 2 == 1 && c.q >= 27;
    case Family::PSL2Borel:
    case Family::PSL2TorusSplit:
    case Family::PSL2TorusNonsplit: return c.q >= 4;
    case Family::PSL2Subfield3: return p == 3 && f % 2 == 1 && is_prime(f);
    case Family::PSL3Borel: return true;
    case Family::PSU3P1: return c.q >= 3;
    case Family::Sp4BorelBound: return p == 2 && c.q >= 4;
  }
  return false;
}

std::vector<std::uint64_t> admissible_orders(Family f, std::uint64_t q_max) {
  std::vector<std::uint64_t> out;
  std::uint64_t base = 0;
  if (f == Family::SuzukiBorel || f == Family::Sp4BorelBound) base = 2;
  if (f == Family::ReeBorel || f == Family::PSL2Subfield3) base = 3;
  if (base != 0) {
    for (std::uint64_t q = base;; q *= base) {
      if (q > q_max) break;
      if (admissible({f, q})) out.push_back(q);
      if (q > q_max / base) break;
    }
    return out;
  }
  for (std::uint64_t q = 2; q <= q_max; ++q)
    if (admissible({f, q})) out.push_back(q);
  return out;
}

FamilyValue delta_closed_form(const FamilyCase& c) {
  if (!admissible(c))
    throw std::invalid_argument("q = " + std::to_string(c.q) + " is not admissible for " + family_name(c.family));
  const Rational q = R(c.q);
  const std::uint64_t p = prime_power(c.q)->first;
  switch (c.family) {
    case Family::SuzukiBorel: return {q * (q - 1) / (2 * (q * q + 1))};
    case Family::ReeBorel: return {(q * q * q - 2 * q * q - 1) / (2 * (q * q * q + 1))};
    case Family::PSL2Borel: return {(q - 1 + (p == 2 ? 1 : 0)) / (2 * (q + 1))};
    case Family::PSL2TorusSplit:
      if (p == 2) return {q / (2 * (q + 1))};
      if (c.q % 4 == 1) return {(q * q + 3 * q + 4) / (2 * q * (q + 1))};
      return {printed_torus_form(c)};
    case Family::PSL2TorusNonsplit:
      if (p == 2) return {(q - 2) / (2 * (q - 1))};
      if (c.q % 4 == 3) return {(q * q + q - 4) / (2 * q * (q - 1))};
      return {printed_torus_form(c)};
    case Family::PSL2Subfield3: return {q * (q - 3) / (q * q - 1)};
    case Family::PSL3Borel: {
      const std::uint64_t d = (c.q - 1) % 3 == 0 ? 3 : 1;
      const Rational e = (q * q + q + 1) / R(d);
      return {((e - 1) / 2 - (q - 1) / R(d) - make_rational(3 - static_cast<long>(d), 2)) * R(d) / (q * q - 1) +
              (e - 1) / (3 * e)};
    }
    case Family::PSU3P1: {
      const std::uint64_t d = (c.q + 1) % 3 == 0 ? 3 : 1;
      const Rational e = (q * q - q + 1) / R(d);
      const Rational s = (q + 1) * (q + 1);
      return {Rational(1, 6) * (e - 1) * R(d) / s + (e - 1) / (3 * e) + (d == 3 ? Rational(1) / s : Rational(0))};
    }
    case Family::Sp4BorelBound:
      return {q * (q - 2) / (8 * (q + 1) * (q + 1)) + q * q / (4 * (q * q + 1)), true};
  }
  throw std::logic_error("unhandled family");
}

Rational printed_torus_form(const FamilyCase& c) {
  const auto pp = prime_power(c.q);
  if (!pp || pp->first == 2 || (c.family != Family::PSL2TorusSplit && c.family != Family::PSL2TorusNonsplit))
    throw std::invalid_argument("no printed torus form for this case");
  const Rational q = R(c.q);
  if (c.family == Family::PSL2TorusSplit) return (q * q + q + 4) / (2 * q * (q + 1));
  return (q * q - q - 4) / (2 * q * (q - 1));
}

CrosscheckReport crosscheck_family(const FamilyCase& c) {
  CrosscheckReport r;
  r.family_case = c;
  try {
    r.closed_form = delta_closed_form(c);
  } catch (const std::exception& e) {
    r.message = e.what();
    return r;
  }
  const auto orders = Psl2Model::supported_orders();
  const bool model_q = std::find(orders.begin(), orders.end(), c.q) != orders.end();
  if (!(is_psl2(c.family) || c.family == Family::PSL2Subfield3) || !model_q) {
    r.message = "no model";
    return r;
  }
  r.has_model = true;
  try {
    const Psl2Model m(static_cast<std::uint32_t>(c.q));
    const auto h = psl2_subgroup(m, c.family);
    const GroupAction action = GroupAction::cosets(m.group(), h);
    const auto classes = ConjClassTable::compute(m.group());
    const auto report = derangement_report(classes, action);
    r.degree = action.domain_size();
    r.brute_force = report.delta;
    r.equal = report.delta == r.closed_form.value;
    r.message = r.equal ? "ok" : "mismatch";
  } catch (const std::exception& e) {
    r.message = e.what();
  }
  return r;
}

}  // namespace derange
