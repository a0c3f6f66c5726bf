#pragma once

#include <cstddef>
#include <vector>

#include "derange/permutation.hpp"
#include "derange/rational.hpp"

namespace derange {

/// Partitions of n as non-increasing part lists, starting from (n) and
/// ending at (1,...,1). n = 0 yields the single empty partition.
class PartitionIter {
 public:
  explicit PartitionIter(std::size_t n);
  const std::vector<std::size_t>& parts() const { return parts_; }
  /// Advances; false once every partition has been produced.
  bool next();

 private:
  std::vector<std::size_t> parts_;
};

/// n! / prod(k^m_k m_k!) for the cycle type with these parts.
BigInt class_size_sn(const std::vector<std::size_t>& parts);
inline BigInt class_size_sn(const CycleType& t) { return class_size_sn(t.parts); }

/// Some sub-multiset of the parts sums to k.
bool fixes_ksubset(const std::vector<std::size_t>& parts, std::size_t k);

struct Abc {
  Rational a;  ///< even elements of S_n fixing a k-subset, over |A_n|
  Rational b;  ///< odd elements of S_n fixing a k-subset, over |A_n|
  Rational c;  ///< max(a, b)
};

/// Exact a, b, c for 1 <= k <= n, by a sweep over the partitions of n.
Abc abc(std::size_t n, std::size_t k);

/// Proportion of A_n fixing a k-subset; equal to a(n, k).
Rational fnk(std::size_t n, std::size_t k);

/// 1 - [n!/e]/n! + (-1)^n (n-1)/n!.
Rational fn1_closed_form(std::size_t n);

/// (1/n)(k + sum_{j=k+1}^{n-k} c(n-j, k)).
Rational cnk_recurrence_bound(std::size_t n, std::size_t k);

/// Nearest integer to n!/e.
BigInt nearest_factorial_over_e(std::size_t n);

/// sum_{j=0}^{n} (-1)^j / j!.
Rational sn_derangement_proportion(std::size_t n);
/// delta(S_n) - (-1)^n (n-1)/n!.
Rational an_derangement_proportion(std::size_t n);

}  // namespace derange
