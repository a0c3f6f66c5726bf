#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "derange/finite_field.hpp"
#include "derange/perm_group.hpp"
#include "derange/permutation.hpp"

namespace derange {

/**
 * A named generating set, as read from a .grp file.
 *
 * .grp format (UTF-8, LF): "#" starts a comment; the first other line is
 * "degree N"; every following non-blank line is one generator in 1-based
 * cycle notation. Three comment directives are recognised:
 * "# name: <id>", "# transitive" and "# check: order <N>, <k>-transitive".
 */
struct GroupSpec {
  std::string name;
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::string description;
  bool tagged_transitive = false;
  std::optional<BigInt> expected_order;
  std::optional<unsigned> expected_transitivity;

  PermGroup build() const { return PermGroup(degree, generators); }
};

/// Throws ParseError carrying the 1-based line number.
GroupSpec parse_group_spec(std::string_view text, std::string name = {});
GroupSpec load_group(const std::filesystem::path& path);
std::string format_group_spec(const GroupSpec& spec);

PermGroup sym(std::size_t n);
/// Trivial for n < 3.
PermGroup alt(std::size_t n);
/// Regular action of the cyclic group on n points.
PermGroup cyclic(std::size_t n);

/**
 * PSL(2,q) on the projective line.
 *
 * The point [x : 1] has index code(x) (the base-p code of x in the built-in
 * field), and [1 : 0] = infinity has index q. Generators are
 * x -> x + 1, x -> lambda^2 x and x -> -1/x, with lambda the primitive element
 * of smallest code.
 */
class Psl2Model {
 public:
  /// Throws std::invalid_argument unless q is in supported_orders().
  explicit Psl2Model(std::uint32_t q);
  static std::vector<std::uint32_t> supported_orders();

  std::uint32_t q() const { return field_->order(); }
  const FiniteField& field() const { return *field_; }
  const PermGroup& group() const { return group_; }
  Point infinity() const { return field_->order(); }
  Point point(const FieldElement& x) const { return x.code(); }

  /// The Moebius map x -> (a x + b) / (c x + d). Throws if ad - bc is not a
  /// nonzero square (the map would not lie in PSL(2,q)).
  Permutation mobius(const FieldElement& a, const FieldElement& b, const FieldElement& c,
                     const FieldElement& d) const;

 private:
  const FiniteField* field_;
  PermGroup group_;
};

PermGroup psl2(std::uint32_t q);

/// "M11" or "M12". Throws std::invalid_argument for other names.
GroupSpec mathieu_spec(std::string_view name);
PermGroup mathieu(std::string_view name);

/// Named subgroup generator sets shipped with the library: "M11_L2_11"
/// (an index-12 subgroup of mathieu("M11")) and "L2_7_S4" (an S4 inside psl2(7)).
GroupSpec builtin_subgroup_spec(std::string_view name);

/**
 * Resolves a group source: "M11", "M12", "alt:N", "sym:N", "cyclic:N",
 * "AN", "SN", "CN", "L2(q)", "psl2:q", or "file:<path>".
 */
GroupSpec resolve_group(std::string_view source);

/// Largest k such that the group is k-transitive (0 when intransitive).
/// Counts orbits on ordered tuples; intended for small degrees.
unsigned transitivity_degree(const PermGroup& g, unsigned k_max = 6);

}  // namespace derange
