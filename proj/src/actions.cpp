#include "derange/actions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "derange/errors.hpp"

namespace derange {

namespace {

Permutation canonical_in_coset(const PermGroup& h, Permutation cur) {
  for (const auto& level : h.chain()) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < level.orbit.size(); ++j)
      if (cur[level.orbit[j]] < cur[level.orbit[best]]) best = j;
    if (best != 0) cur = level.transversal[best] * cur;
  }
  return cur;
}

std::uint64_t choose_u64(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t find_root(std::vector<Point>& parent, Point x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

GroupAction GroupAction::natural(const PermGroup& g) {
  auto d = std::make_shared<Data>();
  d->group = g;
  d->kind = ActionKind::Natural;
  d->domain_size = g.degree();
  d->k = 1;
  d->subgroup = PermGroup(g.degree());
  d->gen_images = g.generators();
  return GroupAction(std::move(d));
}

GroupAction GroupAction::cosets(const PermGroup& g, const std::vector<Permutation>& h_gens,
                                std::uint64_t index_cap) {
  for (const auto& s : h_gens) {
    if (s.degree() != g.degree()) throw DegreeMismatch(g.degree(), s.degree());
    if (!g.contains(s)) throw NotASubgroup();
  }
  auto d = std::make_shared<Data>();
  d->group = g;
  d->kind = ActionKind::Cosets;
  d->k = 0;
  d->subgroup = PermGroup(g.degree(), h_gens);
  const BigInt index = g.order() / d->subgroup.order();
  if (index > from_u64(index_cap))
    throw ResourceCapExceeded("coset index " + index.get_str() + " exceeds cap " + std::to_string(index_cap));
  const auto n = static_cast<std::size_t>(to_u64(index));

  d->reps.reserve(n);
  d->reps.push_back(canonical_in_coset(d->subgroup, g.identity()));
  d->index.emplace(d->reps.front(), 0);
  const auto& gens = g.generators();
  std::vector<std::vector<Point>> images(gens.size());
  for (std::size_t i = 0; i < d->reps.size(); ++i) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Permutation c = canonical_in_coset(d->subgroup, d->reps[i] * gens[s]);
      auto [it, inserted] = d->index.emplace(std::move(c), static_cast<Point>(d->reps.size()));
      if (inserted) {
        if (d->reps.size() >= n) throw std::logic_error("coset enumeration overflowed the index");
        d->reps.push_back(it->first);
      }
      images[s].push_back(it->second);
    }
  }
  if (d->reps.size() != n) throw std::logic_error("coset enumeration did not reach the index");
  d->domain_size = n;
  for (auto& img : images) d->gen_images.push_back(Permutation::from_images_unchecked(std::move(img)));
  return GroupAction(std::move(d));
}

GroupAction GroupAction::ksubsets(const PermGroup& g, std::size_t k, std::uint64_t cap) {
  const std::size_t n = g.degree();
  if (k < 1 || k > n) throw std::invalid_argument("subset size out of range");
  const BigInt count = binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
  if (count > from_u64(cap))
    throw ResourceCapExceeded("C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds cap " +
                              std::to_string(cap));
  auto d = std::make_shared<Data>();
  d->group = g;
  d->kind = ActionKind::KSubsets;
  d->k = k;
  d->domain_size = static_cast<std::size_t>(to_u64(count));
  d->subgroup = PermGroup(n);
  GroupAction a(d);
  for (const auto& s : g.generators()) d->gen_images.push_back(a.image(s));
  return a;
}

std::string GroupAction::descriptor() const {
  switch (kind()) {
    case ActionKind::Natural: return "natural";
    case ActionKind::Cosets: return "cosets";
    case ActionKind::KSubsets: return "ksubsets:" + std::to_string(data_->k);
  }
  return "?";
}

std::uint64_t GroupAction::colex_rank(const std::vector<Point>& subset) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) r += choose_u64(subset[i], i + 1);
  return r;
}

std::vector<Point> GroupAction::colex_unrank(std::uint64_t rank, std::size_t k) {
  std::vector<Point> out(k);
  for (std::size_t i = k; i-- > 0;) {
    std::uint64_t c = i;
    while (choose_u64(c + 1, i + 1) <= rank) ++c;
    out[i] = static_cast<Point>(c);
    rank -= choose_u64(c, i + 1);
  }
  return out;
}

Point GroupAction::apply(const Permutation& x, Point w) const {
  switch (kind()) {
    case ActionKind::Natural: return x[w];
    case ActionKind::Cosets: {
      const Permutation c = canonical_in_coset(data_->subgroup, data_->reps[w] * x);
      return data_->index.at(c);
    }
    case ActionKind::KSubsets: {
      auto s = colex_unrank(w, data_->k);
      for (auto& p : s) p = x[p];
      std::sort(s.begin(), s.end());
      return static_cast<Point>(colex_rank(s));
    }
  }
  return w;
}

Permutation GroupAction::image(const Permutation& x) const {
  if (kind() == ActionKind::Natural) return x;
  std::vector<Point> img(domain_size());
  for (Point w = 0; w < domain_size(); ++w) img[w] = apply(x, w);
  return Permutation::from_images_unchecked(std::move(img));
}

std::size_t GroupAction::fixed_point_count(const Permutation& x) const {
  switch (kind()) {
    case ActionKind::Natural: return x.fixed_point_count();
    case ActionKind::Cosets: {
      // H r is fixed by x iff r x r^-1 lies in H.
      std::size_t count = 0;
      for (const auto& r : data_->reps)
        if (data_->subgroup.contains(r * x * r.inverse())) ++count;
      return count;
    }
    case ActionKind::KSubsets: {
      // A subset is fixed iff it is a union of cycles of x.
      std::size_t count = 0;
      for (Point w = 0; w < domain_size(); ++w)
        if (apply(x, w) == w) ++count;
      return count;
    }
  }
  return 0;
}

Permutation GroupAction::coset_representative(const Permutation& x) const {
  if (kind() != ActionKind::Cosets) throw std::logic_error("not a coset action");
  return canonical_in_coset(data_->subgroup, x);
}

bool GroupAction::is_transitive() const {
  const std::size_t n = domain_size();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::vector<Point> queue{0};
  seen[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& s : data_->gen_images)
      if (!seen[s[queue[i]]]) {
        seen[s[queue[i]]] = true;
        queue.push_back(s[queue[i]]);
      }
  return queue.size() == n;
}

std::vector<Point> GroupAction::minimal_block(Point w) const {
  const std::size_t n = domain_size();
  std::vector<Point> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::pair<Point, Point>> pending{{0, w}};
  while (!pending.empty()) {
    auto [a, b] = pending.back();
    pending.pop_back();
    const auto ra = find_root(parent, a), rb = find_root(parent, b);
    if (ra == rb) continue;
    parent[rb] = static_cast<Point>(ra);
    // Images of a merged pair must lie in a common block as well.
    for (const auto& s : data_->gen_images) pending.emplace_back(s[a], s[b]);
  }
  std::vector<Point> block;
  const auto r0 = find_root(parent, 0);
  for (Point p = 0; p < n; ++p)
    if (find_root(parent, p) == r0) block.push_back(p);
  return block;
}

bool GroupAction::is_primitive() const {
  if (!is_transitive()) throw std::invalid_argument("primitivity is only defined for transitive actions");
  const std::size_t n = domain_size();
  for (Point w = 1; w < n; ++w)
    if (minimal_block(w).size() < n) return false;
  return true;
}

}  // namespace derange
