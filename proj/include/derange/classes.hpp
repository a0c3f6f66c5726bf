#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "derange/perm_group.hpp"

namespace derange {

struct ClassOptions {
  /// Groups up to this order get an exhaustive rank-indexed table.
  std::uint64_t exhaustive_limit = 1'000'000;
  /// Random path: maximum number of elements held while closing classes.
  std::uint64_t element_budget = 20'000'000;
  std::uint64_t seed = 0;
};

struct ConjClass {
  Permutation rep;  ///< lexicographically least element of the class
  BigInt size;
  BigInt centralizer_order;
  std::uint64_t element_order = 1;
  std::string name;
};

/**
 * Conjugacy classes of a permutation group.
 *
 * Classes are sorted by element order and named "<order><letter>", letters
 * running through each order in descending class size (ties broken by the
 * lexicographically least representative). The identity class is always
 * index 0. Completeness is certified by the class sizes summing to |G|.
 */
class ConjClassTable {
 public:
  /// Throws ResourceCapExceeded when the random path runs out of budget.
  static ConjClassTable compute(const PermGroup& g, const ClassOptions& opts = {});

  /// Looks for a memoised table under `dir` first and stores a fresh one there.
  static ConjClassTable compute_cached(const PermGroup& g, const std::filesystem::path& dir,
                                       const ClassOptions& opts = {});

  /// Uses the directory named by DERANGE_CACHE_DIR when set.
  static ConjClassTable compute_default(const PermGroup& g, const ClassOptions& opts = {});

  const PermGroup& group() const { return data_->group; }
  const std::vector<ConjClass>& classes() const { return data_->classes; }
  std::size_t size() const { return data_->classes.size(); }
  const ConjClass& operator[](std::size_t i) const { return data_->classes[i]; }

  /// Index of the class containing x. Throws std::invalid_argument when x is not in G.
  std::size_t class_of(const Permutation& x) const;
  /// Class of each element by rank; only for groups with an exhaustive index.
  bool has_rank_index() const;
  const std::vector<std::uint16_t>& class_by_rank() const;

  std::size_t inverse_class(std::size_t i) const;
  /// Index of the class with this name, or nullopt.
  std::optional<std::size_t> find(const std::string& name) const;

  /// Every element of class i (conjugation closure of the representative).
  std::vector<Permutation> class_elements(std::size_t i, std::uint64_t cap = 10'000'000) const;

  /// One JSON object per line: name, size, centralizer_order, element_order, rep.
  std::string to_jsonl() const;
  /// Throws ParseError or ValidationError (sizes must sum to |G|, reps must lie in G).
  static ConjClassTable from_jsonl(const PermGroup& g, const std::string& text);

 private:
  struct Data {
    PermGroup group;
    std::vector<ConjClass> classes;
    mutable std::once_flag index_once;
    mutable std::vector<std::uint16_t> class_by_rank;
    mutable std::unordered_map<Permutation, std::uint32_t, PermutationHash> element_class;
    mutable std::vector<std::size_t> inverse;
    bool index_possible = false;
  };
  explicit ConjClassTable(std::shared_ptr<Data> d) : data_(std::move(d)) {}
  void ensure_index() const;
  static void finish(Data& d);

  std::shared_ptr<Data> data_;
};

/// Cycle-type reject, then a bounded backtrack over the stabiliser chain,
/// then a bounded orbit search. Throws ResourceCapExceeded if both searches
/// exhaust their budgets.
bool are_conjugate(const PermGroup& g, const Permutation& x, const Permutation& y,
                   std::uint64_t node_budget = 2'000'000);

/// Some g with g^-1 x g = y, found by the same backtrack, or nullopt.
std::optional<Permutation> conjugating_element(const PermGroup& g, const Permutation& x, const Permutation& y,
                                               std::uint64_t node_budget = 2'000'000);

struct ClassFusion {
  ConjClassTable subgroup_classes;
  /// map[i] is the G-class containing H-class i.
  std::vector<std::size_t> map;
  /// |x^G ∩ H| for each G-class.
  std::vector<BigInt> intersection_sizes;
};

/// Throws NotASubgroup.
ClassFusion class_fusion(const ConjClassTable& g_classes, const std::vector<Permutation>& h_gens,
                         const ClassOptions& opts = {});

/// Set of element orders of <h_gens>.
std::set<std::uint64_t> spectrum(std::size_t degree, const std::vector<Permutation>& h_gens,
                                 const ClassOptions& opts = {});

/// Stable key for a generating set, used for cache file names.
std::string group_cache_key(const PermGroup& g);

}  // namespace derange
