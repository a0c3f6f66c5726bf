#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "derange/actions.hpp"
#include "derange/classes.hpp"
#include "derange/perm_group.hpp"
#include "derange/rational.hpp"

namespace derange {

/// True iff <elems> has the order of g. Elements must lie in g.
bool generates(const PermGroup& g, const std::vector<Permutation>& elems);

/// Normal closure of the commutators of the generators.
PermGroup derived_subgroup(const PermGroup& g);
/// Derived series reaches the trivial group within `max_length` steps.
/// Throws ResourceCapExceeded if the series has not stabilised by then.
bool is_soluble(const PermGroup& g, unsigned max_length = 64);
bool is_soluble(std::size_t degree, const std::vector<Permutation>& gens, unsigned max_length = 64);

/// |z^G ∩ H| / |z^G| for the class z_class of G, via class fusion.
Rational fpr(const ConjClassTable& g_classes, std::size_t z_class, const std::vector<Permutation>& h_gens);
/// fixed_point_count(z) / degree.
Rational fpr(const GroupAction& action, const Permutation& z);

struct WitnessTerm {
  std::size_t z_class = 0;
  Rational sum;
  bool pass = false;
};

struct WitnessReport {
  std::vector<WitnessTerm> terms;  ///< one per class of prime order
  /// Whether y lies in each supplied overgroup.
  std::vector<bool> contains_y;
  bool pass = true;
};

/// For each prime-order class z, the sum over the overgroups H of
/// fpr(z, G/H); y passes when every sum is below 1.
WitnessReport witness_criterion(const ConjClassTable& g_classes, const Permutation& y,
                                const std::vector<std::vector<Permutation>>& overgroups);

inline constexpr std::uint64_t kDefaultPairBudget = 10'000;

/// x is a derangement, y = g^-1 x g and <x, y> = G.
struct GenerationCertificate {
  Permutation x;
  Permutation g;
  Permutation y;
  GroupAction action;
  BigInt checked_order;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  /// 0-based index of the successful trial.
  std::uint64_t trial = 0;

  std::string to_json(const std::string& group_label = {}) const;
};

struct PairSearchResult {
  std::optional<GenerationCertificate> certificate;
  std::uint64_t trials = 0;
  bool found() const { return certificate.has_value(); }
};

/**
 * Random search for conjugate derangements generating the group. Trial i
 * draws a uniform derangement x (uniform elements until one has no fixed
 * point) and a uniform g, from an RNG seeded by (seed, i). The reported
 * certificate is the lowest successful trial, whatever `jobs` is. Throws
 * std::invalid_argument for an intransitive action.
 */
PairSearchResult find_conjugate_derangement_pair(const GroupAction& action,
                                                 std::uint64_t budget = kDefaultPairBudget,
                                                 std::uint64_t seed = 0, unsigned jobs = 1);

struct CertificateCheck {
  bool ok = false;
  std::string message;
};

/// Re-checks membership, the derangement property, conjugacy and generation
/// with a fresh stabiliser chain built from the generators in reverse order.
CertificateCheck verify_certificate(const GenerationCertificate& cert);

inline constexpr std::uint64_t kAlphaOrderCap = 10'000;

struct AlphaResult {
  Rational alpha;
  std::vector<Permutation> witness_generators;
  std::uint64_t witness_order = 0;
  /// Conjugacy classes of soluble proper subgroups found.
  std::size_t soluble_classes = 0;
};

/**
 * Minimum of delta(G, H) over soluble, core-free, proper H, by building
 * every soluble subgroup up to conjugacy from smaller ones, one element at a
 * time. Ties go to the larger H. Throws OrderExceedsCap above `order_cap` and
 * std::invalid_argument when no such H exists.
 */
AlphaResult alpha_s_bruteforce(const ConjClassTable& classes, std::uint64_t order_cap = kAlphaOrderCap);

}  // namespace derange
