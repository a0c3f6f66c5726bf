#include "derange/alt_comb.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace derange {

PartitionIter::PartitionIter(std::size_t n) {
  if (n > 0) parts_.push_back(n);
}

bool PartitionIter::next() {
  // Drop trailing 1s, decrease the last part > 1 and refill greedily.
  std::size_t ones = 0;
  while (!parts_.empty() && parts_.back() == 1) {
    parts_.pop_back();
    ++ones;
  }
  if (parts_.empty()) return false;
  const std::size_t v = --parts_.back();
  std::size_t rest = ones + 1;
  while (rest > 0) {
    const std::size_t p = std::min(v, rest);
    parts_.push_back(p);
    rest -= p;
  }
  return true;
}

BigInt class_size_sn(const std::vector<std::size_t>& parts) {
  std::size_t n = 0;
  std::map<std::size_t, unsigned> mult;
  for (auto p : parts) {
    if (p == 0) throw std::invalid_argument("cycle type with a zero part");
    n += p;
    ++mult[p];
  }
  BigInt denom = 1;
  for (const auto& [len, m] : mult) {
    BigInt pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), len, m);
    denom *= pw * factorial(m);
  }
  return factorial(static_cast<unsigned>(n)) / denom;
}

namespace {

std::vector<bool> subset_sums(const std::vector<std::size_t>& parts) {
  std::size_t n = 0;
  for (auto p : parts) n += p;
  std::vector<bool> reach(n + 1, false);
  reach[0] = true;
  std::size_t hi = 0;
  for (auto p : parts) {
    for (std::size_t s = hi + 1; s-- > 0;)
      if (reach[s]) reach[s + p] = true;
    hi += p;
  }
  return reach;
}

struct Sweep {
  // even[k], odd[k]: number of even / odd elements of S_n fixing a k-subset.
  std::vector<BigInt> even, odd;
};

const Sweep& sweep(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, Sweep> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  Sweep s{std::vector<BigInt>(n + 1, 0), std::vector<BigInt>(n + 1, 0)};
  PartitionIter it(n);
  do {
    const auto& parts = it.parts();
    const BigInt size = class_size_sn(parts);
    const bool even = (n - parts.size()) % 2 == 0;
    const auto reach = subset_sums(parts);
    for (std::size_t k = 0; k <= n; ++k)
      if (reach[k]) (even ? s.even : s.odd)[k] += size;
  } while (it.next());
  return cache.emplace(n, std::move(s)).first->second;
}

}  // namespace

bool fixes_ksubset(const std::vector<std::size_t>& parts, std::size_t k) {
  const auto reach = subset_sums(parts);
  return k < reach.size() && reach[k];
}

Abc abc(std::size_t n, std::size_t k) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("abc needs 1 <= k <= n");
  const Sweep& s = sweep(n);
  BigInt an = factorial(static_cast<unsigned>(n)) / 2;
  if (an == 0) an = 1;
  Abc r;
  r.a = make_rational(s.even[k], an);
  r.b = make_rational(s.odd[k], an);
  r.c = r.a > r.b ? r.a : r.b;
  return r;
}

Rational fnk(std::size_t n, std::size_t k) { return abc(n, k).a; }

BigInt nearest_factorial_over_e(std::size_t n) {
  // n! * sum_{j <= n+20} (-1)^j/j! is within far less than 1/2 of n!/e.
  Rational s = 0;
  for (std::size_t j = 0; j <= n + 20; ++j) {
    const Rational t = make_rational(1, factorial(static_cast<unsigned>(j)));
    s += j % 2 == 0 ? t : Rational(-t);
  }
  return nearest_integer(Rational(s * Rational(factorial(static_cast<unsigned>(n)))));
}

Rational fn1_closed_form(std::size_t n) {
  const BigInt nf = factorial(static_cast<unsigned>(n));
  const BigInt sign = n % 2 == 0 ? 1 : -1;
  return Rational(1) - make_rational(nearest_factorial_over_e(n), nf) +
         make_rational(sign * BigInt(static_cast<unsigned long>(n - 1)), nf);
}

Rational cnk_recurrence_bound(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw std::invalid_argument("bound needs 1 <= k <= n");
  Rational s = static_cast<unsigned long>(k);
  for (std::size_t j = k + 1; j + k <= n; ++j) s += abc(n - j, k).c;
  return Rational(s / static_cast<unsigned long>(n));
}

Rational sn_derangement_proportion(std::size_t n) {
  Rational s = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    const Rational t = make_rational(1, factorial(static_cast<unsigned>(j)));
    s += j % 2 == 0 ? t : Rational(-t);
  }
  return s;
}

Rational an_derangement_proportion(std::size_t n) {
  const BigInt sign = n % 2 == 0 ? 1 : -1;
  return sn_derangement_proportion(n) -
         make_rational(sign * BigInt(static_cast<unsigned long>(n - 1)), factorial(static_cast<unsigned>(n)));
}

}  // namespace derange
