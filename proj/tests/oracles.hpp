// Naive reference implementations shared by the tests. They work on raw
// image vectors and never touch the stabiliser chain code.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Images = std::vector<std::uint32_t>;

/// (p then q)[i] = q[p[i]].
inline Images mul(const Images& p, const Images& q) {
  Images r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

inline Images inv(const Images& p) {
  Images r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
  return r;
}

inline Images identity(std::size_t n) {
  Images r(n);
  std::iota(r.begin(), r.end(), 0u);
  return r;
}

inline Images conj(const Images& x, const Images& g) { return mul(mul(inv(g), x), g); }

inline std::size_t fixed(const Images& p) {
  std::size_t f = 0;
  for (std::size_t i = 0; i < p.size(); ++i) f += p[i] == i;
  return f;
}

inline std::uint64_t order(const Images& p) {
  std::uint64_t o = 1;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    o = std::lcm(o, len);
  }
  return o;
}

inline int sign(const Images& p) {
  int s = 1;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

/// Every element of <gens> by breadth-first closure.
inline std::set<Images> closure(std::size_t n, const std::vector<Images>& gens) {
  std::set<Images> seen{identity(n)};
  std::vector<Images> queue{identity(n)};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens) {
      Images p = mul(queue[i], g);
      if (seen.insert(p).second) queue.push_back(std::move(p));
    }
  return seen;
}

/// All of S_n in lexicographic order.
inline std::vector<Images> symmetric(std::size_t n) {
  std::vector<Images> out;
  Images p = identity(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<Images> alternating(std::size_t n) {
  std::vector<Images> out;
  for (auto& p : symmetric(n))
    if (sign(p) == 1) out.push_back(p);
  return out;
}

/// Conjugacy classes of a finite group given by all of its elements.
inline std::vector<std::set<Images>> classes(const std::vector<Images>& group) {
  std::set<Images> done;
  std::vector<std::set<Images>> out;
  for (const auto& x : group) {
    if (done.count(x)) continue;
    std::set<Images> cls;
    for (const auto& g : group) cls.insert(conj(x, g));
    done.insert(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  return out;
}

/// Elements of `group` fixing some right coset H g, i.e. lying in a conjugate of H.
inline std::size_t coset_fixed_points(const std::vector<Images>& group, const std::set<Images>& h, const Images& x) {
  // Cosets H g are fixed by x iff g x g^-1 in H; count distinct cosets.
  std::set<std::set<Images>> fixed_cosets;
  for (const auto& g : group)
    if (h.count(mul(mul(g, x), inv(g)))) {
      std::set<Images> coset;
      for (const auto& k : h) coset.insert(mul(k, g));
      fixed_cosets.insert(std::move(coset));
    }
  return fixed_cosets.size();
}

}  // namespace oracle
