#include "derange/chartab.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "builtin_groups.hpp"
#include "derange/errors.hpp"

namespace derange {

namespace {

using nlohmann::json;

BigInt json_bigint(const json& j, const char* what) {
  if (j.is_number_unsigned() || j.is_number_integer()) return BigInt(j.dump());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw ParseError(std::string("field ") + what + " must be an integer");
}

json bigint_json(const BigInt& v) {
  if (v.fits_ulong_p()) return json(static_cast<std::uint64_t>(v.get_ui()));
  return json(v.get_str());
}

}  // namespace

CharacterTable::CharacterTable(std::uint32_t conductor, BigInt group_order, std::vector<CharacterClass> classes,
                               std::vector<std::size_t> inverse_map, std::vector<std::vector<std::string>> entries,
                               std::string group_label)
    : conductor_(conductor),
      group_order_(std::move(group_order)),
      classes_(std::move(classes)),
      inverse_map_(std::move(inverse_map)),
      text_(std::move(entries)),
      group_label_(std::move(group_label)) {
  if (conductor_ == 0) throw ValidationError("conductor must be positive");
  if (text_.size() != classes_.size())
    throw ValidationError(std::to_string(text_.size()) + " characters for " + std::to_string(classes_.size()) +
                          " classes");
  for (std::size_t i = 0; i < text_.size(); ++i) {
    if (text_[i].size() != classes_.size())
      throw ValidationError("character " + std::to_string(i) + " has " + std::to_string(text_[i].size()) +
                            " entries");
    std::vector<Cyclotomic> row;
    for (const auto& e : text_[i]) row.push_back(Cyclotomic::parse(e, conductor_));
    values_.push_back(std::move(row));
  }
  validate();
}

void CharacterTable::validate() const {
  const std::size_t k = classes_.size();
  if (k == 0) throw ValidationError("empty character table");
  if (classes_[0].size != 1 || classes_[0].element_order != 1)
    throw ValidationError("first class must be the identity class");
  BigInt total = 0;
  for (const auto& c : classes_) {
    if (c.size <= 0 || group_order_ % c.size != 0)
      throw ValidationError("class " + c.name + ": size does not divide the group order");
    total += c.size;
  }
  if (total != group_order_) throw ValidationError("class sizes sum to " + total.get_str() + ", not the group order");

  if (inverse_map_.size() != k) throw ValidationError("inverse_map has the wrong length");
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = inverse_map_[i];
    if (j >= k || inverse_map_[j] != i) throw ValidationError("inverse_map is not an involution");
    if (classes_[j].size != classes_[i].size || classes_[j].element_order != classes_[i].element_order)
      throw ValidationError("inverse_map pairs classes " + classes_[i].name + " and " + classes_[j].name +
                            " of different size or order");
  }

  BigInt sum_sq = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const Cyclotomic& d = values_[i][0];
    if (!d.is_integer() || d.to_rational() <= 0)
      throw ValidationError("character " + std::to_string(i) + " has degree " + d.to_string());
    const BigInt deg = d.to_rational().get_num();
    sum_sq += deg * deg;
    for (std::size_t c = 0; c < k; ++c)
      if (values_[i][inverse_map_[c]] != values_[i][c].conj())
        throw ValidationError("character " + std::to_string(i) + " is not conjugated by inverse_map at class " +
                              classes_[c].name);
  }
  if (sum_sq != group_order_)
    throw ValidationError("squared degrees sum to " + sum_sq.get_str() + ", not the group order");

  // Orthogonality; report the largest deviation.
  Rational worst = 0;
  std::string worst_what;
  auto consider = [&](const Cyclotomic& got, const Rational& want, const std::string& what) {
    const Rational dev = (got - Cyclotomic(conductor_, want)).l1_norm();
    if (dev > worst) {
      worst = dev;
      worst_what = what + " = " + got.to_string() + ", expected " + to_fraction_string(want);
    }
  };
  std::vector<std::vector<Cyclotomic>> conj(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < k; ++c) conj[i].push_back(values_[i][c].conj());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      Cyclotomic s(conductor_, 0);
      for (std::size_t c = 0; c < k; ++c) s += values_[i][c] * conj[j][c] * Rational(classes_[c].size);
      consider(s, i == j ? Rational(group_order_) : Rational(0),
               "row orthogonality (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      Cyclotomic s(conductor_, 0);
      for (std::size_t i = 0; i < k; ++i) s += values_[i][a] * conj[i][b];
      consider(s, a == b ? Rational(centralizer_order(a)) : Rational(0),
               "column orthogonality (" + classes_[a].name + ", " + classes_[b].name + ")");
    }
  }
  if (worst != 0) throw ValidationError("orthogonality violated; worst offender: " + worst_what);
}

std::optional<std::size_t> CharacterTable::find(const std::string& name) const {
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (classes_[i].name == name) return i;
  return std::nullopt;
}

CharacterTable CharacterTable::parse(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  try {
    std::vector<CharacterClass> classes;
    for (const auto& c : j.at("classes")) {
      CharacterClass cc;
      cc.name = c.at("name").get<std::string>();
      cc.size = json_bigint(c.at("size"), "size");
      cc.element_order = c.at("element_order").get<std::uint64_t>();
      if (c.contains("rep")) cc.rep = c.at("rep").get<std::string>();
      classes.push_back(std::move(cc));
    }
    auto inverse = j.at("inverse_map").get<std::vector<std::size_t>>();
    auto entries = j.at("irreducibles").get<std::vector<std::vector<std::string>>>();
    return CharacterTable(j.at("conductor").get<std::uint32_t>(), json_bigint(j.at("group_order"), "group_order"),
                          std::move(classes), std::move(inverse), std::move(entries),
                          j.contains("group") ? j.at("group").get<std::string>() : std::string());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

CharacterTable CharacterTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string CharacterTable::to_json() const {
  std::string out = "{\n";
  if (!group_label_.empty()) out += "  \"group\": " + json(group_label_).dump() + ",\n";
  out += "  \"conductor\": " + std::to_string(conductor_) + ",\n";
  out += "  \"group_order\": " + bigint_json(group_order_).dump() + ",\n";
  out += "  \"classes\": [\n";
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const auto& c = classes_[i];
    out += "    {\"name\": " + json(c.name).dump() + ", \"size\": " + bigint_json(c.size).dump() +
           ", \"element_order\": " + std::to_string(c.element_order);
    if (!c.rep.empty()) out += ", \"rep\": " + json(c.rep).dump();
    out += i + 1 < classes_.size() ? "},\n" : "}\n";
  }
  out += "  ],\n  \"inverse_map\": [";
  for (std::size_t i = 0; i < inverse_map_.size(); ++i) out += (i ? ", " : "") + std::to_string(inverse_map_[i]);
  out += "],\n  \"irreducibles\": [\n";
  for (std::size_t i = 0; i < text_.size(); ++i) {
    out += "    [";
    for (std::size_t c = 0; c < text_[i].size(); ++c) out += (c ? ", " : "") + json(text_[i][c]).dump();
    out += i + 1 < text_.size() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

void CharacterTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json();
}

BigInt frobenius_count(const CharacterTable& t, std::size_t c1, std::size_t c2, std::size_t x) {
  const std::size_t k = t.num_classes();
  if (c1 >= k || c2 >= k || x >= k) throw std::out_of_range("class index out of range");
  Cyclotomic sum(t.conductor(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const Rational deg = t.value(i, 0).to_rational();
    sum += t.value(i, c1) * t.value(i, c2) * t.value(i, x).conj() * Rational(Rational(1) / deg);
  }
  const Cyclotomic n = sum * make_rational(t.classes()[c1].size * t.classes()[c2].size, t.group_order());
  if (!n.is_integer() || n.to_rational() < 0)
    throw ValidationError("class product count " + n.to_string() + " for (" + t.classes()[c1].name + ", " +
                          t.classes()[c2].name + ", " + t.classes()[x].name + ") is not a non-negative integer");
  return n.to_rational().get_num();
}

std::set<std::size_t> class_product_via_characters(const CharacterTable& t, std::size_t c1, std::size_t c2) {
  std::set<std::size_t> out;
  for (std::size_t x = 0; x < t.num_classes(); ++x)
    if (frobenius_count(t, c1, c2, x) > 0) out.insert(x);
  return out;
}

ProductTensor brute_force_product_counts(const ConjClassTable& classes, std::uint64_t cap) {
  const PermGroup& g = classes.group();
  if (g.order() > from_u64(cap))
    throw OrderExceedsCap("group order " + g.order().get_str() + " exceeds cap " + std::to_string(cap));
  const auto& cls = classes.class_by_rank();
  const std::size_t k = classes.size();
  ProductTensor n(k);
  for (std::size_t x = 0; x < k; ++x) {
    const Permutation& z = classes[x].rep;
    g.for_each_element(
        [&](const Permutation& y) { ++n.at(cls[g.rank(y)], cls[g.rank(y.inverse() * z)], x); }, cap);
  }
  return n;
}

ProductTensor character_product_counts(const CharacterTable& t, const std::vector<std::size_t>& binding) {
  const std::size_t k = t.num_classes();
  if (binding.size() != k) throw std::invalid_argument("binding has the wrong length");
  ProductTensor n(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t x = 0; x < k; ++x) n.at(binding[a], binding[b], binding[x]) = to_u64(frobenius_count(t, a, b, x));
  return n;
}

std::vector<std::size_t> bind_classes(const CharacterTable& t, const ConjClassTable& classes) {
  const std::size_t k = t.num_classes();
  if (classes.size() != k)
    throw ValidationError("table has " + std::to_string(k) + " classes, group has " + std::to_string(classes.size()));
  if (t.group_order() != classes.group().order()) throw ValidationError("table and group orders differ");
  std::vector<std::size_t> binding(k);
  std::vector<bool> used(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& tc = t.classes()[i];
    std::size_t j = k;
    if (!tc.rep.empty()) {
      Permutation rep;
      try {
        rep = Permutation::parse(tc.rep, classes.group().degree());
      } catch (const ParseError& e) {
        throw ValidationError("class " + tc.name + ": " + e.what());
      }
      if (!classes.group().contains(rep)) throw ValidationError("class " + tc.name + ": representative not in group");
      j = classes.class_of(rep);
    } else {
      for (std::size_t c = 0; c < k; ++c) {
        if (classes[c].size != tc.size || classes[c].element_order != tc.element_order) continue;
        if (j != k) throw ValidationError("class " + tc.name + " is ambiguous without a representative");
        j = c;
      }
      if (j == k) throw ValidationError("class " + tc.name + " has no match in the group");
    }
    if (classes[j].size != tc.size || classes[j].element_order != tc.element_order)
      throw ValidationError("class " + tc.name + " does not match " + classes[j].name);
    if (used[j]) throw ValidationError("two table classes bind to " + classes[j].name);
    used[j] = true;
    binding[i] = j;
  }
  return binding;
}

std::vector<std::string> builtin_table_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : builtin_data::kTables) out.emplace_back(name);
  return out;
}

CharacterTable builtin_table(const std::string& name) {
  for (const auto& [n, text] : builtin_data::kTables)
    if (n == name) return CharacterTable::parse(std::string(text));
  throw std::invalid_argument("no built-in character table '" + name + "'");
}

}  // namespace derange
