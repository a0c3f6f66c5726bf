#include "derange/genpair.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <thread>

#include <json.hpp>

#include "derange/derangement.hpp"
#include "derange/errors.hpp"

namespace derange {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Permutation commutator(const Permutation& a, const Permutation& b) { return a.inverse() * b.inverse() * a * b; }

}  // namespace

bool generates(const PermGroup& g, const std::vector<Permutation>& elems) {
  if (elems.empty()) return g.order() == 1;
  return generated_order(g.degree(), elems) == g.order();
}

PermGroup derived_subgroup(const PermGroup& g) {
  const auto& gens = g.generators();
  std::vector<Permutation> ngens;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = commutator(gens[i], gens[j]);
      if (!c.is_identity()) ngens.push_back(std::move(c));
    }
  PermGroup n(g.degree(), ngens);
  // Close under conjugation by G.
  for (std::size_t i = 0; i < ngens.size(); ++i)
    for (const auto& s : gens) {
      Permutation c = conjugate(ngens[i], s);
      if (n.contains(c)) continue;
      ngens.push_back(std::move(c));
      n = PermGroup(g.degree(), ngens);
    }
  return n;
}

bool is_soluble(const PermGroup& g, unsigned max_length) {
  PermGroup cur = g;
  for (unsigned i = 0; i < max_length; ++i) {
    if (cur.order() == 1) return true;
    PermGroup next = derived_subgroup(cur);
    if (next.order() == cur.order()) return false;
    cur = std::move(next);
  }
  if (cur.order() == 1) return true;
  throw ResourceCapExceeded("derived series longer than " + std::to_string(max_length));
}

bool is_soluble(std::size_t degree, const std::vector<Permutation>& gens, unsigned max_length) {
  return is_soluble(PermGroup(degree, gens), max_length);
}

Rational fpr(const ConjClassTable& g_classes, std::size_t z_class, const std::vector<Permutation>& h_gens) {
  const ClassFusion fusion = class_fusion(g_classes, h_gens);
  return make_rational(fusion.intersection_sizes.at(z_class), g_classes[z_class].size);
}

Rational fpr(const GroupAction& action, const Permutation& z) {
  return make_rational(from_u64(action.fixed_point_count(z)), from_u64(action.domain_size()));
}

WitnessReport witness_criterion(const ConjClassTable& g_classes, const Permutation& y,
                                const std::vector<std::vector<Permutation>>& overgroups) {
  WitnessReport r;
  std::vector<ClassFusion> fusions;
  for (const auto& h : overgroups) {
    fusions.push_back(class_fusion(g_classes, h));
    r.contains_y.push_back(fusions.back().subgroup_classes.group().contains(y));
  }
  for (std::size_t c = 0; c < g_classes.size(); ++c) {
    if (!is_prime(g_classes[c].element_order)) continue;
    WitnessTerm t;
    t.z_class = c;
    t.sum = 0;
    for (const auto& f : fusions) t.sum += make_rational(f.intersection_sizes[c], g_classes[c].size);
    t.pass = t.sum < 1;
    r.pass = r.pass && t.pass;
    r.terms.push_back(std::move(t));
  }
  return r;
}

std::string GenerationCertificate::to_json(const std::string& group_label) const {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  if (!group_label.empty()) j["group"] = group_label;
  j["degree"] = action.group().degree();
  j["group_order"] = action.group().order().get_str();
  j["action"] = action.descriptor();
  j["x"] = x.to_string();
  j["g"] = g.to_string();
  j["y"] = y.to_string();
  j["x_order"] = x.order();
  j["checked_order"] = checked_order.get_str();
  j["seed"] = seed;
  j["budget"] = budget;
  j["trial"] = trial;
  return j.dump(2);
}

PairSearchResult find_conjugate_derangement_pair(const GroupAction& action, std::uint64_t budget,
                                                 std::uint64_t seed, unsigned jobs) {
  if (!action.is_transitive()) throw std::invalid_argument("action is not transitive");
  const PermGroup& g = action.group();

  auto trial = [&](std::uint64_t i) -> std::optional<GenerationCertificate> {
    std::seed_seq seq{seed & 0xffffffffu, seed >> 32, i & 0xffffffffu, i >> 32};
    std::mt19937_64 rng(seq);
    Permutation x = g.random_element(rng);
    while (action.fixed_point_count(x) != 0) x = g.random_element(rng);
    const Permutation h = g.random_element(rng);
    const Permutation y = conjugate(x, h);
    if (!generates(g, {x, y})) return std::nullopt;
    return GenerationCertificate{x, h, y, action, g.order(), seed, budget, i};
  };

  PairSearchResult result;
  if (action.domain_size() < 2) return result;
  jobs = std::max(1u, jobs);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{budget};
  std::vector<std::optional<GenerationCertificate>> found(jobs);
  auto worker = [&](unsigned w) {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= best.load()) return;
      auto cert = trial(i);
      if (!cert) continue;
      std::uint64_t cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
      if (!found[w] || found[w]->trial > i) found[w] = std::move(cert);
      return;
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  for (auto& f : found)
    if (f && (!result.certificate || f->trial < result.certificate->trial)) result.certificate = std::move(f);
  result.trials = result.certificate ? result.certificate->trial + 1 : budget;
  return result;
}

CertificateCheck verify_certificate(const GenerationCertificate& cert) {
  const PermGroup& g = cert.action.group();
  auto fail = [](std::string m) { return CertificateCheck{false, std::move(m)}; };
  for (const auto* p : {&cert.x, &cert.g, &cert.y})
    if (p->degree() != g.degree() || !g.contains(*p)) return fail("element outside the group");
  if (cert.action.fixed_point_count(cert.x) != 0) return fail("x has a fixed point");
  if (conjugate(cert.x, cert.g) != cert.y) return fail("y is not g^-1 x g");
  const PermGroup fresh(g.degree(), {cert.y, cert.x});
  if (fresh.order() != g.order())
    return fail("<x, y> has order " + fresh.order().get_str() + ", expected " + g.order().get_str());
  if (fresh.order() != cert.checked_order) return fail("recorded order differs");
  return {true, "ok"};
}

namespace {

// Elements of a small group indexed by rank, with products as rank lookups.
class RankedGroup {
 public:
  explicit RankedGroup(const PermGroup& g) : g_(g), n_(g.order_u64()) {
    elems_.reserve(n_);
    for (std::uint64_t r = 0; r < n_; ++r) elems_.push_back(g.unrank(r));
    identity_ = static_cast<std::uint32_t>(g.rank(g.identity()));
    inv_.resize(n_);
    for (std::uint64_t r = 0; r < n_; ++r) inv_[r] = static_cast<std::uint32_t>(g.rank(elems_[r].inverse()));
    if (n_ <= kTableLimit) {
      table_.resize(n_ * n_);
      for (std::uint64_t a = 0; a < n_; ++a)
        for (std::uint64_t b = 0; b < n_; ++b)
          table_[a * n_ + b] = static_cast<std::uint16_t>(g.rank(elems_[a] * elems_[b]));
    }
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(n_); }
  std::uint32_t identity() const { return identity_; }
  const Permutation& element(std::uint32_t r) const { return elems_[r]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (!table_.empty()) return table_[static_cast<std::uint64_t>(a) * n_ + b];
    return static_cast<std::uint32_t>(g_.rank(elems_[a] * elems_[b]));
  }
  std::uint32_t conj(std::uint32_t a, std::uint32_t g) const { return mul(mul(inv_[g], a), g); }

 private:
  static constexpr std::uint64_t kTableLimit = 4096;
  const PermGroup& g_;
  std::uint64_t n_;
  std::uint32_t identity_ = 0;
  std::vector<Permutation> elems_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint16_t> table_;
};

struct Subgroup {
  std::vector<std::uint32_t> elems;
  std::vector<bool> member;
  std::vector<std::uint32_t> gens;
};

Subgroup closure(const RankedGroup& rg, std::vector<std::uint32_t> start, std::vector<std::uint32_t> gens) {
  Subgroup s;
  s.member.assign(rg.size(), false);
  s.gens = std::move(gens);
  s.elems = std::move(start);
  for (auto e : s.elems) s.member[e] = true;
  for (std::size_t i = 0; i < s.elems.size(); ++i)
    for (auto gen : s.gens) {
      const auto p = rg.mul(s.elems[i], gen);
      if (!s.member[p]) {
        s.member[p] = true;
        s.elems.push_back(p);
      }
    }
  return s;
}

bool conjugate_subgroups(const RankedGroup& rg, const Subgroup& a, const Subgroup& b) {
  for (std::uint32_t g = 0; g < rg.size(); ++g) {
    bool inside = true;
    for (auto x : a.gens)
      if (!b.member[rg.conj(x, g)]) {
        inside = false;
        break;
      }
    if (inside) return true;
  }
  return false;
}

}  // namespace

AlphaResult alpha_s_bruteforce(const ConjClassTable& classes, std::uint64_t order_cap) {
  const PermGroup& g = classes.group();
  if (g.order() > from_u64(order_cap))
    throw OrderExceedsCap("group order " + g.order().get_str() + " exceeds " + std::to_string(order_cap));
  const RankedGroup rg(g);
  const auto& cls = classes.class_by_rank();
  const std::size_t k = classes.size();

  auto histogram = [&](const Subgroup& s) {
    std::vector<std::uint32_t> h(k, 0);
    for (auto e : s.elems) ++h[cls[e]];
    return h;
  };
  auto perms = [&](const Subgroup& s) {
    std::vector<Permutation> out;
    for (auto x : s.gens) out.push_back(rg.element(x));
    return out;
  };

  std::vector<Subgroup> reps;
  std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> buckets;
  auto add = [&](Subgroup s) {
    auto key = histogram(s);
    auto& bucket = buckets[key];
    for (auto i : bucket)
      if (conjugate_subgroups(rg, s, reps[i])) return;
    bucket.push_back(reps.size());
    reps.push_back(std::move(s));
  };
  add(closure(rg, {rg.identity()}, {}));

  for (std::size_t i = 0; i < reps.size(); ++i) {
    std::vector<bool> done(rg.size(), false);
    for (std::uint32_t x = 0; x < rg.size(); ++x) {
      if (reps[i].member[x] || done[x]) continue;
      for (auto h1 : reps[i].elems) {
        const auto t = rg.mul(h1, x);
        for (auto h2 : reps[i].elems) done[rg.mul(t, h2)] = true;
      }
      auto gens = reps[i].gens;
      gens.push_back(x);
      Subgroup s = closure(rg, reps[i].elems, std::move(gens));
      if (s.elems.size() == rg.size()) continue;
      if (!is_soluble(g.degree(), perms(s))) continue;
      add(std::move(s));
    }
  }

  AlphaResult best;
  bool have = false;
  for (const auto& s : reps) {
    const auto h = histogram(s);
    bool core_free = true;
    BigInt count = 0;
    for (std::size_t c = 0; c < k; ++c) {
      if (c != 0 && BigInt(h[c]) == classes[c].size) core_free = false;
      if (h[c] == 0) count += classes[c].size;
    }
    if (!core_free) continue;
    const Rational delta = make_rational(count, g.order());
    if (!have || delta < best.alpha || (delta == best.alpha && s.elems.size() > best.witness_order)) {
      best.alpha = delta;
      best.witness_generators = perms(s);
      best.witness_order = s.elems.size();
      have = true;
    }
  }
  if (!have) throw std::invalid_argument("no soluble core-free proper subgroup");
  best.soluble_classes = reps.size();
  return best;
}

}  // namespace derange
