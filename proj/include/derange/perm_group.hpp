#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "derange/permutation.hpp"
#include "derange/rational.hpp"

namespace derange {

/// One level of the stabiliser chain G = G0 > G1 > ... > Gk = 1.
struct ChainLevel {
  Point base_point = 0;
  /// Strong generators lying in G_i (they fix all earlier base points).
  std::vector<Permutation> generators;
  /// Basic orbit of base_point under G_i, in discovery order.
  std::vector<Point> orbit;
  /// transversal[j] maps base_point to orbit[j]; inverse_transversal[j] is its inverse.
  std::vector<Permutation> transversal;
  std::vector<Permutation> inverse_transversal;
  /// Position of a point in `orbit`, or -1.
  std::vector<std::int32_t> orbit_position;
};

/**
 * Permutation group carried by a base and strong generating set.
 *
 * Built once by deterministic Schreier-Sims and immutable afterwards, so a
 * PermGroup can be shared read-only between threads. Every element factors
 * uniquely as g = u[k-1] * ... * u[1] * u[0] with u[i] a transversal element
 * of level i; that factorisation drives membership, ranking, enumeration and
 * uniform sampling.
 */
class PermGroup {
 public:
  /// Trivial group on `degree` points.
  explicit PermGroup(std::size_t degree = 0);
  /// Throws DegreeMismatch when a generator has the wrong degree.
  PermGroup(std::size_t degree, std::vector<Permutation> generators);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<ChainLevel>& chain() const { return chain_; }
  std::vector<Point> base() const;
  /// All strong generators (those of level 0).
  const std::vector<Permutation>& strong_generators() const;

  const BigInt& order() const { return order_; }
  /// Order as uint64; throws std::overflow_error for huge groups.
  std::uint64_t order_u64() const { return to_u64(order_); }

  Permutation identity() const { return Permutation(degree_); }

  /// Throws DegreeMismatch.
  bool contains(const Permutation& p) const;

  struct SiftResult {
    Permutation residue;
    std::size_t failed_level;  ///< chain().size() when sifting went all the way through
  };
  SiftResult sift(const Permutation& p, std::size_t from_level = 0) const;

  /// Mixed-radix index of an element, level 0 least significant. Throws
  /// std::invalid_argument for non-members. Requires order() to fit uint64.
  std::uint64_t rank(const Permutation& p) const;
  Permutation unrank(std::uint64_t r) const;

  /// Uniformly distributed element.
  Permutation random_element(std::mt19937_64& rng) const;
  /// Deterministic in the seed.
  Permutation random_element(std::uint64_t seed) const;

  /// Calls f on every element exactly once, in rank order. Throws
  /// OrderExceedsCap when order() > cap.
  void for_each_element(const std::function<void(const Permutation&)>& f, std::uint64_t cap) const;
  std::vector<Permutation> elements(std::uint64_t cap) const;

  /// Orbits on points, each sorted, ordered by least point.
  std::vector<std::vector<Point>> orbits() const;
  bool is_transitive() const;

  /// Orbit of `pt` under the generators (discovery order).
  std::vector<Point> orbit(Point pt) const;

 private:
  void build();

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<ChainLevel> chain_;
  BigInt order_ = 1;
};

/// Order of the group generated by `gens` (degree taken from the first one).
BigInt generated_order(std::size_t degree, const std::vector<Permutation>& gens);

}  // namespace derange
