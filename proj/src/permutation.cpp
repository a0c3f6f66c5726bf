#include "derange/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "derange/errors.hpp"
#include "derange/rational.hpp"

namespace derange {

std::size_t CycleType::degree() const { return std::accumulate(parts.begin(), parts.end(), std::size_t{0}); }

int CycleType::sign() const { return (degree() - parts.size()) % 2 == 0 ? 1 : -1; }

std::uint64_t CycleType::order() const {
  std::uint64_t o = 1;
  for (auto p : parts) o = lcm_u64(o, p);
  return o;
}

std::string CycleType::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s + "]";
}

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw std::invalid_argument("image list is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::from_images_unchecked(std::vector<Point> images) {
  Permutation p;
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  Permutation p(degree);
  std::vector<bool> used(degree, false);
  for (const auto& c : cycles) {
    for (auto v : c) {
      if (v >= degree) throw std::invalid_argument("point " + std::to_string(v + 1) + " out of range");
      if (used[v]) throw std::invalid_argument("point " + std::to_string(v + 1) + " repeated");
      used[v] = true;
    }
    for (std::size_t i = 0; i < c.size(); ++i) p.images_[c[i]] = c[(i + 1) % c.size()];
  }
  return p;
}

Permutation Permutation::parse(std::string_view text, std::size_t degree) {
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty permutation");
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in '" + std::string(text) + "'");
    ++i;
    std::vector<Point> cycle;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("expected a point number in '" + std::string(text) + "'");
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > degree + 1) break;
        ++i;
      }
      if (v == 0 || v > degree)
        throw ParseError("point out of range 1.." + std::to_string(degree) + " in '" + std::string(text) + "'");
      cycle.push_back(static_cast<Point>(v - 1));
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_ws();
      } else if (i < text.size() && text[i] != ')') {
        throw ParseError("expected ',' or ')' in '" + std::string(text) + "'");
      }
    }
    if (i == text.size()) throw ParseError("unterminated cycle in '" + std::string(text) + "'");
    ++i;
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    skip_ws();
  }
  try {
    return from_cycles(degree, cycles);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
  return r;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  if (rhs.degree() != degree()) throw DegreeMismatch(degree(), rhs.degree());
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = rhs.images_[images_[i]];
  return r;
}

Permutation& Permutation::operator*=(const Permutation& rhs) {
  if (rhs.degree() != degree()) throw DegreeMismatch(degree(), rhs.degree());
  for (auto& v : images_) v = rhs.images_[v];
  return *this;
}

Permutation Permutation::pow(std::int64_t e) const {
  Permutation base = e < 0 ? inverse() : *this;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  Permutation result(degree());
  while (n) {
    if (n & 1) result *= base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

CycleType Permutation::cycle_type() const {
  CycleType t;
  std::vector<bool> seen(degree(), false);
  for (std::size_t i = 0; i < degree(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    t.parts.push_back(len);
  }
  std::sort(t.parts.begin(), t.parts.end(), std::greater<>());
  return t;
}

std::uint64_t Permutation::order() const { return cycle_type().order(); }

std::size_t Permutation::fixed_point_count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) c += images_[i] == i;
  return c;
}

std::size_t Permutation::first_moved_point() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return i;
  return images_.size();
}

int Permutation::sign() const { return cycle_type().sign(); }

std::vector<std::vector<Point>> Permutation::cycles() const {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(degree(), false);
  for (std::size_t i = 0; i < degree(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    std::vector<Point> c;
    for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
      seen[j] = true;
      c.push_back(j);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string Permutation::to_string() const {
  const auto cs = cycles();
  if (cs.empty()) return "()";
  std::string s;
  for (const auto& c : cs) {
    s += "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c[i] + 1);
    }
    s += ")";
  }
  return s;
}

Permutation compose(const Permutation& p, const Permutation& q) { return p * q; }

Permutation conjugate(const Permutation& x, const Permutation& g) {
  if (x.degree() != g.degree()) throw DegreeMismatch(x.degree(), g.degree());
  // g^-1 x g sends i^g to (i^x)^g.
  std::vector<Point> img(x.degree());
  for (std::size_t i = 0; i < x.degree(); ++i) img[g[static_cast<Point>(i)]] = g[x[static_cast<Point>(i)]];
  return Permutation::from_images_unchecked(std::move(img));
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto v : p.images()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace derange
