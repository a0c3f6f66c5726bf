#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "derange/actions.hpp"
#include "derange/chartab.hpp"
#include "derange/classes.hpp"

namespace derange {

/// A union of conjugacy classes, by class index.
using NormalSet = std::set<std::size_t>;

struct DerangementReport {
  GroupAction action;
  ConjClassTable classes;
  /// Permutation character value of each class.
  std::vector<std::size_t> fixed_points;
  std::vector<std::size_t> derangement_classes;
  BigInt derangement_count;
  Rational delta;
  bool prime_order_derangement_exists = false;
  /// delta == 1/|Omega| (the equality case of the lower bound).
  bool attains_lower_bound = false;

  NormalSet derangements() const { return {derangement_classes.begin(), derangement_classes.end()}; }
};

/// Throws std::invalid_argument when the action is intransitive and
/// ValidationError if a nontrivial transitive action has no derangement.
DerangementReport derangement_report(const ConjClassTable& classes, const GroupAction& action);

/// Proportion of elements whose order is not in `h_spectrum`.
Rational spectrum_lower_bound(const ConjClassTable& classes, const std::set<std::uint64_t>& h_spectrum);
/// Proportion of elements whose order does not divide `h_order`.
Rational divisibility_lower_bound(const ConjClassTable& classes, const BigInt& h_order);

enum class ProductStrategy {
  Auto,            ///< Characters when a table is bound, else Representative
  Representative,  ///< one target per class, scan the elements of S
  Convolution,     ///< full enumeration of G per target class
  Characters,      ///< Frobenius formula on a bound character table
};

/// A character table together with its binding to computed classes.
struct BoundCharacters {
  const CharacterTable* table = nullptr;
  std::vector<std::size_t> binding;  ///< table class -> computed class
};

struct ProductOptions {
  ProductStrategy strategy = ProductStrategy::Auto;
  const BoundCharacters* characters = nullptr;
  std::uint64_t representative_cap = 1'000'000;
  std::uint64_t convolution_cap = 100'000;
};

/// Classes meeting S*T. Throws ResourceCapExceeded when the strategy's cap is exceeded.
NormalSet normal_set_product(const NormalSet& s, const NormalSet& t, const ConjClassTable& classes,
                             const ProductOptions& opts = {});

NormalSet all_classes(const ConjClassTable& classes);
/// True iff the inverse of every element of s lies in s.
bool is_inverse_closed(const NormalSet& s, const ConjClassTable& classes);
/// Class names, e.g. "{7A, 7B}".
std::string format_normal_set(const NormalSet& s, const ConjClassTable& classes);

inline constexpr unsigned kDefaultWidthLimit = 8;

struct WidthResult {
  /// Least k with Delta^k = G, or nullopt when not reached by k_max.
  std::optional<unsigned> width;
  unsigned k_max = kDefaultWidthLimit;
  /// Width 2 only: "C2", "CD", "1∪C2", "1∪CD" or "C2∪CD" when such classes exist.
  std::string decomposition;
  /// Derangement classes realising the decomposition (one or two).
  std::vector<std::size_t> decomposition_classes;
  /// The shortcut delta > 1/2 decided the width without products.
  bool by_half_shortcut = false;

  bool bounded() const { return width.has_value(); }
  /// "2" or "Unbounded(8)".
  std::string to_string() const;
};

WidthResult width(const DerangementReport& report, unsigned k_max = kDefaultWidthLimit,
                  const ProductOptions& opts = {});

enum class SquareVariant { Full, MinusIdentity };

/// C*C == G, or C*C contains every non-identity element.
bool class_square_covers(const ConjClassTable& classes, std::size_t c, SquareVariant variant,
                         const ProductOptions& opts = {});

}  // namespace derange
