#include "derange/classes.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "derange/errors.hpp"

namespace derange {

namespace {

constexpr std::uint16_t kUnassigned = 0xFFFF;

struct BudgetExhausted {};

std::string letters(std::size_t i) {
  // 0 -> A, 25 -> Z, 26 -> AA, ...
  std::string s;
  ++i;
  while (i > 0) {
    --i;
    s.insert(s.begin(), static_cast<char>('A' + i % 26));
    i /= 26;
  }
  return s;
}

struct RawClass {
  Permutation rep;
  BigInt size;
};

// Sorts classes, assigns names and fills sizes/orders. Returns old -> new index.
std::vector<std::size_t> name_classes(const BigInt& group_order, std::vector<RawClass>& raw,
                                      std::vector<ConjClass>& out) {
  std::vector<std::size_t> order(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) order[i] = i;
  std::vector<std::uint64_t> elt_order(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) elt_order[i] = raw[i].rep.order();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (elt_order[a] != elt_order[b]) return elt_order[a] < elt_order[b];
    if (raw[a].size != raw[b].size) return raw[a].size > raw[b].size;
    return raw[a].rep < raw[b].rep;
  });
  std::vector<std::size_t> remap(raw.size());
  out.clear();
  std::size_t letter = 0;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t i = order[pos];
    if (pos > 0 && elt_order[order[pos - 1]] == elt_order[i])
      ++letter;
    else
      letter = 0;
    ConjClass c;
    c.rep = raw[i].rep;
    c.size = raw[i].size;
    c.centralizer_order = group_order / raw[i].size;
    c.element_order = elt_order[i];
    c.name = std::to_string(elt_order[i]) + letters(letter);
    remap[i] = out.size();
    out.push_back(std::move(c));
  }
  return remap;
}

// Conjugation closure of x under the generators; calls visit on each new element.
// visit returns false when the element was already known (closure stops there).
template <class Visit>
void conjugation_closure(const PermGroup& g, const Permutation& x, Visit&& visit) {
  std::deque<Permutation> queue{x};
  while (!queue.empty()) {
    Permutation y = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : g.generators()) {
      Permutation z = conjugate(y, s);
      if (visit(z)) queue.push_back(std::move(z));
    }
  }
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

class Backtrack {
 public:
  Backtrack(const PermGroup& g, const Permutation& x, const Permutation& y, std::uint64_t budget)
      : g_(g), x_(x), y_(y), budget_(budget) {
    index_cycles(x, xcid_, xpos_, xlen_);
    index_cycles(y, ycid_, ypos_, ylen_);
    ycycles_.assign(ylen_.size(), {});
    for (Point p = 0; p < y.degree(); ++p) {
      auto& c = ycycles_[ycid_[p]];
      if (c.empty()) {
        Point q = p;
        do {
          c.push_back(q);
          q = y[q];
        } while (q != p);
      }
    }
  }

  std::optional<Permutation> run() {
    const auto& chain = g_.chain();
    if (chain.empty()) return x_ == y_ ? std::optional<Permutation>(g_.identity()) : std::nullopt;
    return descend(0, g_.identity());
  }

 private:
  static void index_cycles(const Permutation& p, std::vector<std::size_t>& cid, std::vector<std::size_t>& pos,
                           std::vector<std::size_t>& len) {
    const std::size_t n = p.degree();
    cid.assign(n, SIZE_MAX);
    pos.assign(n, 0);
    for (Point s = 0; s < n; ++s) {
      if (cid[s] != SIZE_MAX) continue;
      std::size_t k = 0;
      Point q = s;
      do {
        cid[q] = len.size();
        pos[q] = k++;
        q = p[q];
      } while (q != s);
      len.push_back(k);
    }
  }

  std::optional<Permutation> descend(std::size_t l, const Permutation& s) {
    const auto& chain = g_.chain();
    const Point b = chain[l].base_point;
    for (const auto& u : chain[l].transversal) {
      if (++nodes_ > budget_) throw BudgetExhausted{};
      Permutation t = u * s;
      const Point c = t[b];
      const std::size_t len = xlen_[xcid_[b]];
      if (ylen_[ycid_[c]] != len) continue;
      bool ok = true;
      for (std::size_t m = 0; m < l && ok; ++m) {
        const Point bm = chain[m].base_point;
        if (xcid_[bm] != xcid_[b]) continue;
        const std::size_t offset = (xpos_[b] + len - xpos_[bm]) % len;
        const Point im = t[bm];
        const auto& cyc = ycycles_[ycid_[im]];
        if (cyc[(ypos_[im] + offset) % len] != c) ok = false;
      }
      if (!ok) continue;
      if (l + 1 == chain.size()) {
        if (conjugate(x_, t) == y_) return t;
        continue;
      }
      if (auto r = descend(l + 1, t)) return r;
    }
    return std::nullopt;
  }

  const PermGroup& g_;
  const Permutation& x_;
  const Permutation& y_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::size_t> xcid_, xpos_, xlen_, ycid_, ypos_, ylen_;
  std::vector<std::vector<Point>> ycycles_;
};

}  // namespace

ConjClassTable ConjClassTable::compute(const PermGroup& g, const ClassOptions& opts) {
  auto d = std::make_shared<Data>();
  d->group = g;
  std::vector<RawClass> raw;

  if (g.order() <= from_u64(opts.exhaustive_limit)) {
    const std::uint64_t n = g.order_u64();
    std::vector<std::uint16_t> cls(n, kUnassigned);
    for (std::uint64_t r = 0; r < n; ++r) {
      if (cls[r] != kUnassigned) continue;
      if (raw.size() >= kUnassigned) throw ResourceCapExceeded("too many conjugacy classes");
      const auto id = static_cast<std::uint16_t>(raw.size());
      Permutation x = g.unrank(r);
      cls[r] = id;
      Permutation least = x;
      std::uint64_t count = 1;
      conjugation_closure(g, x, [&](const Permutation& z) {
        const auto rz = g.rank(z);
        if (cls[rz] != kUnassigned) return false;
        cls[rz] = id;
        ++count;
        if (z < least) least = z;
        return true;
      });
      raw.push_back({std::move(least), from_u64(count)});
    }
    const auto remap = name_classes(g.order(), raw, d->classes);
    for (auto& c : cls) c = static_cast<std::uint16_t>(remap[c]);
    d->class_by_rank = std::move(cls);
    d->index_possible = true;
  } else {
    std::mt19937_64 rng(opts.seed);
    std::unordered_map<Permutation, std::uint32_t, PermutationHash> seen;
    BigInt total = 0;
    auto add_class = [&](const Permutation& x) {
      const auto id = static_cast<std::uint32_t>(raw.size());
      seen.emplace(x, id);
      Permutation least = x;
      std::uint64_t count = 1;
      conjugation_closure(g, x, [&](const Permutation& z) {
        if (seen.size() >= opts.element_budget)
          throw ResourceCapExceeded("class enumeration exceeded its element budget");
        if (!seen.emplace(z, id).second) return false;
        ++count;
        if (z < least) least = z;
        return true;
      });
      raw.push_back({std::move(least), from_u64(count)});
      total += from_u64(count);
    };
    add_class(g.identity());
    while (total < g.order()) {
      Permutation x = g.random_element(rng);
      if (!seen.count(x)) add_class(x);
    }
    const auto remap = name_classes(g.order(), raw, d->classes);
    for (auto& [p, c] : seen) c = static_cast<std::uint32_t>(remap[c]);
    d->element_class = std::move(seen);
  }
  finish(*d);
  return ConjClassTable(std::move(d));
}

void ConjClassTable::finish(Data& d) {
  // Marks the index as built when compute() already produced one.
  if (!d.class_by_rank.empty() || !d.element_class.empty()) {
    std::call_once(d.index_once, [&] {
      d.inverse.resize(d.classes.size());
      for (std::size_t i = 0; i < d.classes.size(); ++i) {
        const Permutation inv = d.classes[i].rep.inverse();
        d.inverse[i] = d.class_by_rank.empty() ? d.element_class.at(inv) : d.class_by_rank[d.group.rank(inv)];
      }
    });
  }
}

void ConjClassTable::ensure_index() const {
  Data& d = *data_;
  std::call_once(d.index_once, [&] {
    const PermGroup& g = d.group;
    if (d.index_possible) {
      const std::uint64_t n = g.order_u64();
      d.class_by_rank.assign(n, kUnassigned);
      for (std::size_t i = 0; i < d.classes.size(); ++i) {
        const auto id = static_cast<std::uint16_t>(i);
        d.class_by_rank[g.rank(d.classes[i].rep)] = id;
        conjugation_closure(g, d.classes[i].rep, [&](const Permutation& z) {
          auto& slot = d.class_by_rank[g.rank(z)];
          if (slot != kUnassigned) return false;
          slot = id;
          return true;
        });
      }
    } else {
      for (std::size_t i = 0; i < d.classes.size(); ++i) {
        const auto id = static_cast<std::uint32_t>(i);
        d.element_class.emplace(d.classes[i].rep, id);
        conjugation_closure(g, d.classes[i].rep,
                            [&](const Permutation& z) { return d.element_class.emplace(z, id).second; });
      }
    }
    d.inverse.resize(d.classes.size());
    for (std::size_t i = 0; i < d.classes.size(); ++i) {
      const Permutation inv = d.classes[i].rep.inverse();
      d.inverse[i] = d.class_by_rank.empty() ? d.element_class.at(inv) : d.class_by_rank[g.rank(inv)];
    }
  });
}

bool ConjClassTable::has_rank_index() const {
  ensure_index();
  return !data_->class_by_rank.empty();
}

const std::vector<std::uint16_t>& ConjClassTable::class_by_rank() const {
  ensure_index();
  if (data_->class_by_rank.empty()) throw std::logic_error("class table has no rank index");
  return data_->class_by_rank;
}

std::size_t ConjClassTable::class_of(const Permutation& x) const {
  ensure_index();
  if (!data_->class_by_rank.empty()) return data_->class_by_rank[group().rank(x)];
  auto it = data_->element_class.find(x);
  if (it == data_->element_class.end()) throw std::invalid_argument("element is not in the group");
  return it->second;
}

std::size_t ConjClassTable::inverse_class(std::size_t i) const {
  ensure_index();
  return data_->inverse.at(i);
}

std::optional<std::size_t> ConjClassTable::find(const std::string& name) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (data_->classes[i].name == name) return i;
  return std::nullopt;
}

std::vector<Permutation> ConjClassTable::class_elements(std::size_t i, std::uint64_t cap) const {
  const ConjClass& c = data_->classes.at(i);
  if (c.size > from_u64(cap)) throw ResourceCapExceeded("class of size " + c.size.get_str() + " exceeds cap");
  std::unordered_set<Permutation, PermutationHash> seen{c.rep};
  std::vector<Permutation> out{c.rep};
  conjugation_closure(group(), c.rep, [&](const Permutation& z) {
    if (!seen.insert(z).second) return false;
    out.push_back(z);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::string ConjClassTable::to_jsonl() const {
  std::string out;
  for (const auto& c : classes()) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["size"] = c.size.get_str();
    j["centralizer_order"] = c.centralizer_order.get_str();
    j["element_order"] = c.element_order;
    j["rep"] = c.rep.to_string();
    out += j.dump() + "\n";
  }
  return out;
}

ConjClassTable ConjClassTable::from_jsonl(const PermGroup& g, const std::string& text) {
  auto d = std::make_shared<Data>();
  d->group = g;
  d->index_possible = g.order() <= from_u64(ClassOptions{}.exhaustive_limit);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  BigInt total = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ConjClass c;
    try {
      const auto j = nlohmann::json::parse(line);
      c.name = j.at("name").get<std::string>();
      c.size = BigInt(j.at("size").get<std::string>());
      c.centralizer_order = BigInt(j.at("centralizer_order").get<std::string>());
      c.element_order = j.at("element_order").get<std::uint64_t>();
      c.rep = Permutation::parse(j.at("rep").get<std::string>(), g.degree());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), line_no);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    if (!g.contains(c.rep)) throw ValidationError("class " + c.name + ": representative not in group");
    if (c.rep.order() != c.element_order) throw ValidationError("class " + c.name + ": wrong element order");
    if (c.size * c.centralizer_order != g.order())
      throw ValidationError("class " + c.name + ": size times centralizer order is not |G|");
    total += c.size;
    d->classes.push_back(std::move(c));
  }
  if (total != g.order()) throw ValidationError("class sizes sum to " + total.get_str() + ", not |G|");
  if (d->classes.empty() || !d->classes[0].rep.is_identity())
    throw ValidationError("first class must be the identity class");
  return ConjClassTable(std::move(d));
}

std::string group_cache_key(const PermGroup& g) {
  std::string s = std::to_string(g.degree());
  for (const auto& x : g.generators()) s += ";" + x.to_string();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(s)));
  return buf;
}

ConjClassTable ConjClassTable::compute_cached(const PermGroup& g, const std::filesystem::path& dir,
                                              const ClassOptions& opts) {
  const auto path = dir / (group_cache_key(g) + ".classes");
  if (std::ifstream in(path); in) {
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      return from_jsonl(g, ss.str());
    } catch (const std::exception&) {
      // Stale or corrupt cache entry: recompute below.
    }
  }
  ConjClassTable t = compute(g, opts);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (std::ofstream out(path); out) out << t.to_jsonl();
  return t;
}

ConjClassTable ConjClassTable::compute_default(const PermGroup& g, const ClassOptions& opts) {
  if (const char* dir = std::getenv("DERANGE_CACHE_DIR"); dir && *dir) return compute_cached(g, dir, opts);
  return compute(g, opts);
}

std::optional<Permutation> conjugating_element(const PermGroup& g, const Permutation& x, const Permutation& y,
                                               std::uint64_t node_budget) {
  if (x.degree() != g.degree()) throw DegreeMismatch(g.degree(), x.degree());
  if (y.degree() != g.degree()) throw DegreeMismatch(g.degree(), y.degree());
  if (x.cycle_type() != y.cycle_type()) return std::nullopt;
  if (x == y) return g.identity();
  try {
    return Backtrack(g, x, y, node_budget).run();
  } catch (const BudgetExhausted&) {
    throw ResourceCapExceeded("conjugacy backtrack exceeded its node budget");
  }
}

bool are_conjugate(const PermGroup& g, const Permutation& x, const Permutation& y, std::uint64_t node_budget) {
  try {
    return conjugating_element(g, x, y, node_budget).has_value();
  } catch (const ResourceCapExceeded&) {
  }
  // Orbit search: the conjugation orbit of x, bounded by the same budget.
  std::unordered_set<Permutation, PermutationHash> seen{x};
  bool found = false;
  try {
    conjugation_closure(g, x, [&](const Permutation& z) {
      if (found) return false;
      if (seen.size() >= node_budget) throw BudgetExhausted{};
      if (!seen.insert(z).second) return false;
      if (z == y) found = true;
      return true;
    });
  } catch (const BudgetExhausted&) {
    throw ResourceCapExceeded("conjugacy test exceeded its budget");
  }
  return found;
}

ClassFusion class_fusion(const ConjClassTable& g_classes, const std::vector<Permutation>& h_gens,
                         const ClassOptions& opts) {
  const PermGroup& g = g_classes.group();
  for (const auto& s : h_gens) {
    if (s.degree() != g.degree()) throw DegreeMismatch(g.degree(), s.degree());
    if (!g.contains(s)) throw NotASubgroup();
  }
  ClassFusion f{ConjClassTable::compute(PermGroup(g.degree(), h_gens), opts), {}, {}};
  f.intersection_sizes.assign(g_classes.size(), 0);
  for (const auto& c : f.subgroup_classes.classes()) {
    const std::size_t gi = g_classes.class_of(c.rep);
    f.map.push_back(gi);
    f.intersection_sizes[gi] += c.size;
  }
  return f;
}

std::set<std::uint64_t> spectrum(std::size_t degree, const std::vector<Permutation>& h_gens,
                                 const ClassOptions& opts) {
  std::set<std::uint64_t> orders;
  for (const auto& c : ConjClassTable::compute(PermGroup(degree, h_gens), opts).classes())
    orders.insert(c.element_order);
  return orders;
}

}  // namespace derange
