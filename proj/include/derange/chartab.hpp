#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "derange/classes.hpp"
#include "derange/cyclotomic.hpp"

namespace derange {

struct CharacterClass {
  std::string name;
  BigInt size;
  std::uint64_t element_order = 1;
  /// Optional representative in cycle notation, used to bind the table to a group.
  std::string rep;
};

/**
 * Character table with exact cyclotomic entries.
 *
 * .ctbl files are JSON objects with keys conductor, group_order, classes
 * (name, size, element_order, optional rep), inverse_map and irreducibles
 * (rows of entry strings), plus an optional "group" label. Entry strings are
 * kept verbatim, so load followed by save reproduces a file written by save.
 */
class CharacterTable {
 public:
  /// Builds and validates. Throws ValidationError describing the first or
  /// worst violated invariant.
  CharacterTable(std::uint32_t conductor, BigInt group_order, std::vector<CharacterClass> classes,
                 std::vector<std::size_t> inverse_map, std::vector<std::vector<std::string>> entries,
                 std::string group_label = {});

  /// Throws ParseError or ValidationError.
  static CharacterTable parse(const std::string& json_text);
  static CharacterTable load(const std::filesystem::path& path);
  std::string to_json() const;
  void save(const std::filesystem::path& path) const;

  std::uint32_t conductor() const { return conductor_; }
  const BigInt& group_order() const { return group_order_; }
  const std::string& group_label() const { return group_label_; }
  const std::vector<CharacterClass>& classes() const { return classes_; }
  std::size_t num_classes() const { return classes_.size(); }
  const std::vector<std::size_t>& inverse_map() const { return inverse_map_; }
  const Cyclotomic& value(std::size_t chi, std::size_t cls) const { return values_[chi][cls]; }
  const std::vector<std::vector<Cyclotomic>>& irreducibles() const { return values_; }
  const std::vector<std::vector<std::string>>& entry_text() const { return text_; }
  BigInt centralizer_order(std::size_t cls) const { return group_order_ / classes_[cls].size; }
  std::optional<std::size_t> find(const std::string& name) const;

 private:
  void validate() const;

  std::uint32_t conductor_;
  BigInt group_order_;
  std::vector<CharacterClass> classes_;
  std::vector<std::size_t> inverse_map_;
  std::vector<std::vector<std::string>> text_;
  std::vector<std::vector<Cyclotomic>> values_;
  std::string group_label_;
};

/// Names of the tables shipped with the library: A5, L2_4, L2_7, L2_8, S3, S4.
std::vector<std::string> builtin_table_names();
/// Throws std::invalid_argument for unknown names.
CharacterTable builtin_table(const std::string& name);

/**
 * Number of pairs (y1, y2) with y1 in class c1, y2 in class c2 and y1 y2 equal
 * to a fixed element of class x. Throws ValidationError if the character sum
 * is not a non-negative integer.
 */
BigInt frobenius_count(const CharacterTable& t, std::size_t c1, std::size_t c2, std::size_t x);

/// Classes x with frobenius_count(t, c1, c2, x) > 0.
std::set<std::size_t> class_product_via_characters(const CharacterTable& t, std::size_t c1, std::size_t c2);

/// Dense N[c1][c2][x] counts, indexed by class indices of one table.
class ProductTensor {
 public:
  explicit ProductTensor(std::size_t k = 0) : k_(k), n_(k * k * k, 0) {}
  std::size_t num_classes() const { return k_; }
  std::uint64_t& at(std::size_t c1, std::size_t c2, std::size_t x) { return n_[(c1 * k_ + c2) * k_ + x]; }
  std::uint64_t at(std::size_t c1, std::size_t c2, std::size_t x) const { return n_[(c1 * k_ + c2) * k_ + x]; }
  bool operator==(const ProductTensor&) const = default;

 private:
  std::size_t k_;
  std::vector<std::uint64_t> n_;
};

inline constexpr std::uint64_t kBruteForceProductCap = 100'000;

/// N[c1][c2][x] by enumerating G once per target class. Throws OrderExceedsCap.
ProductTensor brute_force_product_counts(const ConjClassTable& classes, std::uint64_t cap = kBruteForceProductCap);

/// The same tensor from the character table, re-indexed by `binding`.
ProductTensor character_product_counts(const CharacterTable& t, const std::vector<std::size_t>& binding);

/**
 * binding[i] is the computed class matching table class i. Classes are
 * matched through their representatives when present, otherwise by
 * (size, element order) when that is unambiguous. Throws ValidationError.
 */
std::vector<std::size_t> bind_classes(const CharacterTable& t, const ConjClassTable& classes);

}  // namespace derange
