#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "derange/rational.hpp"

namespace derange {

enum class Family {
  SuzukiBorel,
  ReeBorel,
  PSL2Borel,
  PSL2TorusSplit,
  PSL2TorusNonsplit,
  PSL2Subfield3,
  PSL3Borel,
  PSU3P1,
  Sp4BorelBound,
};

std::string family_name(Family f);
/// Inverse of family_name. Throws std::invalid_argument.
Family parse_family(const std::string& name);
std::vector<Family> all_families();

/// (p, f) with q = p^f, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t q);

struct FamilyCase {
  Family family;
  std::uint64_t q;
};

bool admissible(const FamilyCase& c);
/// Admissible field orders of the family up to q_max, increasing.
std::vector<std::uint64_t> admissible_orders(Family f, std::uint64_t q_max);

struct FamilyValue {
  Rational value;
  /// The value is only a lower bound for delta.
  bool lower_bound = false;
};

/**
 * Closed-form delta for an admissible case. Throws std::invalid_argument
 * otherwise. For the two PSL2 torus normalisers with p odd the value depends
 * on q mod 4; printed_torus_form gives the single expression that is exact in
 * one residue class and a lower bound in the other.
 */
FamilyValue delta_closed_form(const FamilyCase& c);

/// (q^2+q+4)/(2q(q+1)) for the split case, (q^2-q-4)/(2q(q-1)) for the
/// nonsplit case (p odd). Throws std::invalid_argument for other families.
Rational printed_torus_form(const FamilyCase& c);

struct CrosscheckReport {
  FamilyCase family_case;
  bool has_model = false;
  FamilyValue closed_form;
  std::optional<Rational> brute_force;
  std::uint64_t degree = 0;  ///< index of the subgroup used
  bool equal = false;
  std::string message;
};

/// Compares the closed form with an exact count in a permutation model
/// (PSL2 families on the built-in field orders). Never throws for
/// admissible cases; problems are reported in `message`.
CrosscheckReport crosscheck_family(const FamilyCase& c);

}  // namespace derange
