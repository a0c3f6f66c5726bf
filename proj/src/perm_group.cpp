#include "derange/perm_group.hpp"

#include <algorithm>
#include <stdexcept>

#include "derange/errors.hpp"

namespace derange {

namespace {

void compute_orbit(ChainLevel& level, std::size_t degree) {
  level.orbit.assign(1, level.base_point);
  level.transversal.assign(1, Permutation(degree));
  level.orbit_position.assign(degree, -1);
  level.orbit_position[level.base_point] = 0;
  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    for (const auto& s : level.generators) {
      const Point img = s[level.orbit[i]];
      if (level.orbit_position[img] >= 0) continue;
      level.orbit_position[img] = static_cast<std::int32_t>(level.orbit.size());
      level.orbit.push_back(img);
      level.transversal.push_back(level.transversal[i] * s);
    }
  }
  level.inverse_transversal.clear();
  level.inverse_transversal.reserve(level.transversal.size());
  for (const auto& t : level.transversal) level.inverse_transversal.push_back(t.inverse());
}

}  // namespace

PermGroup::PermGroup(std::size_t degree) : degree_(degree) {}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.degree() != degree_) throw DegreeMismatch(degree_, g.degree());
  build();
}

void PermGroup::build() {
  auto fixes_base = [this](const Permutation& g) {
    for (const auto& level : chain_)
      if (g[level.base_point] != level.base_point) return false;
    return true;
  };
  auto add_level = [this](Point b) {
    ChainLevel level;
    level.base_point = b;
    chain_.push_back(std::move(level));
  };

  std::vector<Permutation> gens;
  for (const auto& g : generators_)
    if (!g.is_identity() && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);

  for (const auto& g : gens)
    if (fixes_base(g)) add_level(static_cast<Point>(g.first_moved_point()));
  for (const auto& g : gens) {
    for (std::size_t l = 0; l < chain_.size(); ++l) {
      chain_[l].generators.push_back(g);
      if (g[chain_[l].base_point] != chain_[l].base_point) break;
    }
  }
  for (auto& level : chain_) compute_orbit(level, degree_);

  // Deterministic Schreier-Sims: every Schreier generator of every level must
  // sift through the levels below it.
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(chain_.size()) - 1;
  while (i >= 0) {
    const auto li = static_cast<std::size_t>(i);
    bool extended = false;
    for (std::size_t a = 0; a < chain_[li].orbit.size() && !extended; ++a) {
      for (std::size_t s = 0; s < chain_[li].generators.size() && !extended; ++s) {
        const ChainLevel& level = chain_[li];
        const Point img = level.generators[s][level.orbit[a]];
        const auto pos = static_cast<std::size_t>(level.orbit_position[img]);
        Permutation h = level.transversal[a] * level.generators[s];
        h *= level.inverse_transversal[pos];
        if (h.is_identity()) continue;
        auto [residue, failed] = sift(h, li + 1);
        if (failed == chain_.size() && residue.is_identity()) continue;
        if (failed == chain_.size()) add_level(static_cast<Point>(residue.first_moved_point()));
        for (std::size_t l = li + 1; l <= failed; ++l) {
          chain_[l].generators.push_back(residue);
          compute_orbit(chain_[l], degree_);
        }
        i = static_cast<std::ptrdiff_t>(failed);
        extended = true;
      }
    }
    if (!extended) --i;
  }

  order_ = 1;
  for (const auto& level : chain_) order_ *= static_cast<unsigned long>(level.orbit.size());
}

std::vector<Point> PermGroup::base() const {
  std::vector<Point> b;
  for (const auto& level : chain_) b.push_back(level.base_point);
  return b;
}

const std::vector<Permutation>& PermGroup::strong_generators() const {
  static const std::vector<Permutation> empty;
  return chain_.empty() ? empty : chain_.front().generators;
}

PermGroup::SiftResult PermGroup::sift(const Permutation& p, std::size_t from_level) const {
  if (p.degree() != degree_) throw DegreeMismatch(degree_, p.degree());
  Permutation g = p;
  for (std::size_t l = from_level; l < chain_.size(); ++l) {
    const auto pos = chain_[l].orbit_position[g[chain_[l].base_point]];
    if (pos < 0) return {std::move(g), l};
    g *= chain_[l].inverse_transversal[static_cast<std::size_t>(pos)];
  }
  return {std::move(g), chain_.size()};
}

bool PermGroup::contains(const Permutation& p) const {
  auto [residue, failed] = sift(p);
  return failed == chain_.size() && residue.is_identity();
}

std::uint64_t PermGroup::rank(const Permutation& p) const {
  if (p.degree() != degree_) throw DegreeMismatch(degree_, p.degree());
  Permutation g = p;
  std::uint64_t r = 0, radix = 1;
  for (const auto& level : chain_) {
    const auto pos = level.orbit_position[g[level.base_point]];
    if (pos < 0) throw std::invalid_argument("rank of a non-member");
    r += static_cast<std::uint64_t>(pos) * radix;
    radix *= level.orbit.size();
    g *= level.inverse_transversal[static_cast<std::size_t>(pos)];
  }
  if (!g.is_identity()) throw std::invalid_argument("rank of a non-member");
  return r;
}

Permutation PermGroup::unrank(std::uint64_t r) const {
  std::vector<std::size_t> digits(chain_.size());
  for (std::size_t l = 0; l < chain_.size(); ++l) {
    digits[l] = r % chain_[l].orbit.size();
    r /= chain_[l].orbit.size();
  }
  if (r != 0) throw std::out_of_range("rank beyond group order");
  Permutation g(degree_);
  for (std::size_t l = chain_.size(); l-- > 0;) g *= chain_[l].transversal[digits[l]];
  return g;
}

Permutation PermGroup::random_element(std::mt19937_64& rng) const {
  Permutation g(degree_);
  for (std::size_t l = chain_.size(); l-- > 0;) {
    std::uniform_int_distribution<std::size_t> pick(0, chain_[l].orbit.size() - 1);
    g *= chain_[l].transversal[pick(rng)];
  }
  return g;
}

Permutation PermGroup::random_element(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  return random_element(rng);
}

void PermGroup::for_each_element(const std::function<void(const Permutation&)>& f, std::uint64_t cap) const {
  if (order_ > from_u64(cap))
    throw OrderExceedsCap("group order " + order_.get_str() + " exceeds cap " + std::to_string(cap));
  if (chain_.empty()) {
    f(Permutation(degree_));
    return;
  }
  // Depth-first over u[k-1] * ... * u[0], top level outermost (rank order).
  std::function<void(std::size_t, const Permutation&)> walk = [&](std::size_t l, const Permutation& partial) {
    if (l == 0) {
      f(partial);
      return;
    }
    for (const auto& t : chain_[l - 1].transversal) walk(l - 1, partial * t);
  };
  walk(chain_.size(), Permutation(degree_));
}

std::vector<Permutation> PermGroup::elements(std::uint64_t cap) const {
  std::vector<Permutation> out;
  for_each_element([&](const Permutation& g) { out.push_back(g); }, cap);
  return out;
}

std::vector<Point> PermGroup::orbit(Point pt) const {
  std::vector<Point> orb{pt};
  std::vector<bool> seen(degree_, false);
  seen[pt] = true;
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (const auto& g : generators_) {
      const Point q = g[orb[i]];
      if (!seen[q]) {
        seen[q] = true;
        orb.push_back(q);
      }
    }
  return orb;
}

std::vector<std::vector<Point>> PermGroup::orbits() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(degree_, false);
  for (Point p = 0; p < degree_; ++p) {
    if (seen[p]) continue;
    auto orb = orbit(p);
    for (auto q : orb) seen[q] = true;
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

bool PermGroup::is_transitive() const { return degree_ <= 1 || orbit(0).size() == degree_; }

BigInt generated_order(std::size_t degree, const std::vector<Permutation>& gens) {
  return PermGroup(degree, gens).order();
}

}  // namespace derange
