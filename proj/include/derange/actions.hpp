#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "derange/perm_group.hpp"

namespace derange {

enum class ActionKind { Natural, Cosets, KSubsets };

inline constexpr std::uint64_t kDefaultIndexCap = 1'000'000;

/**
 * A transitive-or-not action of a permutation group on a finite domain.
 *
 * Three kinds exist: the natural action on points, the action on right cosets
 * H g of a subgroup, and the action on k-subsets of the points. The action is
 * a right action, like permutation composition: apply(g * h, w) equals
 * apply(h, apply(g, w)).
 *
 * Cheap to copy; the domain data is shared and immutable.
 */
class GroupAction {
 public:
  static GroupAction natural(const PermGroup& g);

  /// Right cosets of H = <h_gens>. Throws NotASubgroup when H is not inside G
  /// and ResourceCapExceeded when |G:H| > index_cap. Coset 0 is H itself.
  static GroupAction cosets(const PermGroup& g, const std::vector<Permutation>& h_gens,
                            std::uint64_t index_cap = kDefaultIndexCap);

  /// k-subsets of {0..n-1} in colexicographic order. Throws
  /// std::invalid_argument unless 1 <= k <= n, ResourceCapExceeded when
  /// C(n,k) > cap.
  static GroupAction ksubsets(const PermGroup& g, std::size_t k, std::uint64_t cap = kDefaultIndexCap);

  const PermGroup& group() const { return data_->group; }
  ActionKind kind() const { return data_->kind; }
  std::size_t domain_size() const { return data_->domain_size; }
  /// "natural", "cosets" or "ksubsets:<k>".
  std::string descriptor() const;

  /// The stabilising subgroup H for coset actions; the trivial group otherwise.
  const PermGroup& subgroup() const { return data_->subgroup; }
  /// k for subset actions, 1 for the natural action, 0 for cosets.
  std::size_t subset_size() const { return data_->k; }

  Point apply(const Permutation& x, Point w) const;
  /// The permutation of the domain induced by x.
  Permutation image(const Permutation& x) const;
  /// Images of the generators of group(), as permutations of the domain.
  const std::vector<Permutation>& generator_images() const { return data_->gen_images; }

  /// Number of domain points fixed by x (the permutation character value).
  std::size_t fixed_point_count(const Permutation& x) const;

  bool is_transitive() const;
  /// Throws std::invalid_argument when the action is intransitive.
  bool is_primitive() const;
  /// Smallest block containing points 0 and w (w != 0), as a sorted list.
  std::vector<Point> minimal_block(Point w) const;

  /// Colex rank of a sorted k-subset, and its inverse.
  static std::uint64_t colex_rank(const std::vector<Point>& subset);
  static std::vector<Point> colex_unrank(std::uint64_t rank, std::size_t k);

  /// Canonical representative of the right coset H x (coset actions only).
  Permutation coset_representative(const Permutation& x) const;
  /// Coset representatives, indexed like the domain (coset actions only).
  const std::vector<Permutation>& coset_representatives() const { return data_->reps; }

 private:
  struct Data;
  explicit GroupAction(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  struct Data {
    PermGroup group;
    ActionKind kind = ActionKind::Natural;
    std::size_t domain_size = 0;
    std::size_t k = 1;
    PermGroup subgroup;
    std::vector<Permutation> reps;
    std::vector<Permutation> gen_images;
    // Coset lookup: canonical representative images -> index.
    std::unordered_map<Permutation, Point, PermutationHash> index;
  };

  std::shared_ptr<const Data> data_;
};

}  // namespace derange
