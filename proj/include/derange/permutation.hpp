#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace derange {

/// A point of the permutation domain, 0-based internally.
using Point = std::uint32_t;

/// Cycle lengths of a permutation, non-increasing, fixed points included as 1s.
struct CycleType {
  std::vector<std::size_t> parts;

  std::size_t degree() const;
  std::size_t num_cycles() const { return parts.size(); }
  /// +1 or -1, i.e. (-1)^(degree - #parts).
  int sign() const;
  /// lcm of the parts.
  std::uint64_t order() const;
  /// "[5,2,1]".
  std::string to_string() const;

  bool operator==(const CycleType&) const = default;
  auto operator<=>(const CycleType&) const = default;
};

/**
 * Bijection of {0..n-1}.
 *
 * Composition is left to right: `p * q` first applies p, then q, so
 * (p * q)[i] == q[p[i]]. Conjugation `conjugate(x, g)` is g^-1 x g, which
 * maps the cycle (a b ...) of x to (a^g b^g ...).
 *
 * External text uses 1-based disjoint-cycle notation, e.g. "(1,2,3)(4,5)";
 * the identity prints as "()".
 */
class Permutation {
 public:
  Permutation() = default;
  /// Identity of the given degree.
  explicit Permutation(std::size_t degree);
  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree) { return Permutation(degree); }
  /// Skips the bijection check; the caller guarantees it.
  static Permutation from_images_unchecked(std::vector<Point> images);
  /// Builds from 0-based cycles; throws std::invalid_argument on repeats or range errors.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);
  /// Parses 1-based cycle notation. Throws ParseError.
  static Permutation parse(std::string_view text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator[](Point i) const { return images_[i]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation operator*(const Permutation& rhs) const;
  Permutation& operator*=(const Permutation& rhs);
  Permutation pow(std::int64_t e) const;

  std::uint64_t order() const;
  CycleType cycle_type() const;
  std::size_t fixed_point_count() const;
  std::size_t first_moved_point() const;  ///< degree() when identity
  int sign() const;
  /// Nontrivial cycles in canonical form (each starting at its least point, sorted).
  std::vector<std::vector<Point>> cycles() const;

  std::string to_string() const;

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<Point> images_;
};

/// q(p(i)); same as p * q. Throws DegreeMismatch.
Permutation compose(const Permutation& p, const Permutation& q);

/// g^-1 * x * g.
Permutation conjugate(const Permutation& x, const Permutation& g);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace derange
