#include "derange/derangement.hpp"

#include <map>
#include <stdexcept>

#include "derange/errors.hpp"

namespace derange {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class ProductEngine {
 public:
  ProductEngine(const ConjClassTable& classes, const ProductOptions& opts) : classes_(classes), opts_(opts) {
    strategy_ = opts.strategy;
    if (strategy_ == ProductStrategy::Auto)
      strategy_ = opts.characters && opts.characters->table ? ProductStrategy::Characters
                                                            : ProductStrategy::Representative;
    if (strategy_ == ProductStrategy::Characters) {
      if (!opts.characters || !opts.characters->table)
        throw std::invalid_argument("character strategy needs a bound character table");
      table_index_.assign(classes.size(), 0);
      for (std::size_t i = 0; i < opts.characters->binding.size(); ++i) table_index_[opts.characters->binding[i]] = i;
    }
    if (strategy_ == ProductStrategy::Convolution) tensor_ = brute_force_product_counts(classes, opts.convolution_cap);
  }

  const NormalSet& pair(std::size_t a, std::size_t b) {
    auto key = std::make_pair(a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    NormalSet out;
    const std::size_t k = classes_.size();
    switch (strategy_) {
      case ProductStrategy::Convolution:
        for (std::size_t x = 0; x < k; ++x)
          if (tensor_.at(a, b, x) > 0) out.insert(x);
        break;
      case ProductStrategy::Characters: {
        const auto& t = *opts_.characters->table;
        for (std::size_t x = 0; x < k; ++x)
          if (frobenius_count(t, table_index_[a], table_index_[b], table_index_[x]) > 0) out.insert(x);
        break;
      }
      default: out = representative(a, b); break;
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const std::vector<Permutation>& elements(std::size_t c) {
    auto it = elements_.find(c);
    if (it != elements_.end()) return it->second;
    return elements_.emplace(c, classes_.class_elements(c, opts_.representative_cap)).first->second;
  }

  // z lies in C_a C_b iff some y in C_a has y^-1 z in C_b (or some t in C_b has z t^-1 in C_a).
  NormalSet representative(std::size_t a, std::size_t b) {
    NormalSet out;
    const bool scan_a = classes_[a].size <= classes_[b].size;
    const auto& elts = elements(scan_a ? a : b);
    for (std::size_t x = 0; x < classes_.size(); ++x) {
      const Permutation& z = classes_[x].rep;
      for (const auto& y : elts) {
        const bool hit = scan_a ? classes_.class_of(y.inverse() * z) == b : classes_.class_of(z * y.inverse()) == a;
        if (hit) {
          out.insert(x);
          break;
        }
      }
    }
    return out;
  }

  const ConjClassTable& classes_;
  ProductOptions opts_;
  ProductStrategy strategy_;
  std::vector<std::size_t> table_index_;
  ProductTensor tensor_;
  std::map<std::size_t, std::vector<Permutation>> elements_;
  std::map<std::pair<std::size_t, std::size_t>, NormalSet> memo_;
};

NormalSet product_with(ProductEngine& engine, const NormalSet& s, const NormalSet& t) {
  NormalSet out;
  for (auto a : s)
    for (auto b : t) {
      const auto& p = engine.pair(a, b);
      out.insert(p.begin(), p.end());
    }
  return out;
}

}  // namespace

DerangementReport derangement_report(const ConjClassTable& classes, const GroupAction& action) {
  if (!action.is_transitive()) throw std::invalid_argument("action is not transitive");
  DerangementReport r{action, classes, {}, {}, 0, 0, false, false};
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    const std::size_t fix = action.fixed_point_count(c.rep);
    r.fixed_points.push_back(fix);
    if (fix != 0) continue;
    r.derangement_classes.push_back(i);
    r.derangement_count += c.size;
    if (is_prime(c.element_order)) r.prime_order_derangement_exists = true;
  }
  if (action.domain_size() > 1 && r.derangement_classes.empty())
    throw ValidationError("transitive action of degree " + std::to_string(action.domain_size()) +
                          " without derangements");
  r.delta = make_rational(r.derangement_count, classes.group().order());
  r.attains_lower_bound = r.delta == make_rational(1, from_u64(action.domain_size()));
  return r;
}

Rational spectrum_lower_bound(const ConjClassTable& classes, const std::set<std::uint64_t>& h_spectrum) {
  BigInt count = 0;
  for (const auto& c : classes.classes())
    if (!h_spectrum.count(c.element_order)) count += c.size;
  return make_rational(count, classes.group().order());
}

Rational divisibility_lower_bound(const ConjClassTable& classes, const BigInt& h_order) {
  BigInt count = 0;
  for (const auto& c : classes.classes())
    if (h_order % from_u64(c.element_order) != 0) count += c.size;
  return make_rational(count, classes.group().order());
}

NormalSet normal_set_product(const NormalSet& s, const NormalSet& t, const ConjClassTable& classes,
                             const ProductOptions& opts) {
  ProductEngine engine(classes, opts);
  return product_with(engine, s, t);
}

NormalSet all_classes(const ConjClassTable& classes) {
  NormalSet s;
  for (std::size_t i = 0; i < classes.size(); ++i) s.insert(i);
  return s;
}

bool is_inverse_closed(const NormalSet& s, const ConjClassTable& classes) {
  for (auto c : s)
    if (!s.count(classes.inverse_class(c))) return false;
  return true;
}

std::string format_normal_set(const NormalSet& s, const ConjClassTable& classes) {
  std::string out = "{";
  for (auto c : s) out += (out.size() > 1 ? ", " : "") + classes[c].name;
  return out + "}";
}

std::string WidthResult::to_string() const {
  return width ? std::to_string(*width) : "Unbounded(" + std::to_string(k_max) + ")";
}

WidthResult width(const DerangementReport& report, unsigned k_max, const ProductOptions& opts) {
  WidthResult r;
  r.k_max = k_max;
  const ConjClassTable& classes = report.classes;
  const NormalSet delta = report.derangements();
  const NormalSet all = all_classes(classes);
  if (delta.empty() || k_max < 1) return r;
  if (delta == all) {
    r.width = 1;
    return r;
  }
  if (report.delta > Rational(1, 2) && k_max >= 2) {
    r.width = 2;
    r.by_half_shortcut = true;
    return r;
  }

  ProductEngine engine(classes, opts);
  std::set<NormalSet> seen{delta};
  NormalSet cur = delta;
  for (unsigned k = 2; k <= k_max; ++k) {
    cur = product_with(engine, cur, delta);
    if (cur == all) {
      r.width = k;
      break;
    }
    if (!seen.insert(cur).second) break;  // the powers cycle without reaching G
  }
  if (r.width != 2u) return r;

  // Name a covering by one or two derangement classes, in order of preference.
  const std::vector<std::size_t> d(delta.begin(), delta.end());
  auto covers = [&](const NormalSet& s, bool with_identity) {
    NormalSet u = s;
    if (with_identity) u.insert(0);
    return u == all;
  };
  auto try_tag = [&](const std::string& tag, auto&& pred) {
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j)
        if (pred(d[i], d[j])) {
          r.decomposition = tag;
          r.decomposition_classes = i == j ? std::vector<std::size_t>{d[i]} : std::vector<std::size_t>{d[i], d[j]};
          return true;
        }
    return false;
  };
  const bool found =
      try_tag("C2", [&](std::size_t a, std::size_t b) { return a == b && covers(engine.pair(a, a), false); }) ||
      try_tag("CD", [&](std::size_t a, std::size_t b) { return a != b && covers(engine.pair(a, b), false); }) ||
      try_tag("1∪C2", [&](std::size_t a, std::size_t b) { return a == b && covers(engine.pair(a, a), true); }) ||
      try_tag("1∪CD", [&](std::size_t a, std::size_t b) { return a != b && covers(engine.pair(a, b), true); }) ||
      try_tag("C2∪CD", [&](std::size_t a, std::size_t b) {
        if (a == b) return false;
        NormalSet u = engine.pair(a, a);
        const auto& p = engine.pair(a, b);
        u.insert(p.begin(), p.end());
        return covers(u, false);
      });
  (void)found;
  return r;
}

bool class_square_covers(const ConjClassTable& classes, std::size_t c, SquareVariant variant,
                         const ProductOptions& opts) {
  NormalSet sq = normal_set_product({c}, {c}, classes, opts);
  if (variant == SquareVariant::MinusIdentity) sq.insert(0);
  return sq == all_classes(classes);
}

}  // namespace derange
