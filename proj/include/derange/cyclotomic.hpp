#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "derange/rational.hpp"

namespace derange {

/// Q(zeta_m): the cyclotomic polynomial and reduction tables for one conductor.
class CyclotomicField {
 public:
  /// Shared, cached instance for conductor m >= 1.
  static std::shared_ptr<const CyclotomicField> get(std::uint32_t m);

  explicit CyclotomicField(std::uint32_t m);

  std::uint32_t conductor() const { return m_; }
  /// Euler phi of m: the dimension of the power basis.
  std::size_t dimension() const { return phi_.size() - 1; }
  /// Coefficients of Phi_m, constant term first (monic).
  const std::vector<BigInt>& cyclotomic_polynomial() const { return phi_; }
  /// zeta^k reduced to the power basis, for any k (taken mod m).
  const std::vector<BigInt>& power(std::int64_t k) const;

 private:
  std::uint32_t m_;
  std::vector<BigInt> phi_;
  std::vector<std::vector<BigInt>> powers_;  // zeta^0 .. zeta^(m-1)
};

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<BigInt> cyclotomic_polynomial(std::uint32_t n);

/**
 * Element of Q(zeta_m) at a fixed conductor, held in the power basis
 * {1, zeta, ..., zeta^(phi(m)-1)} reduced modulo Phi_m. Operands of binary
 * operations must share the conductor.
 */
class Cyclotomic {
 public:
  /// Zero at conductor 1.
  Cyclotomic();
  Cyclotomic(std::shared_ptr<const CyclotomicField> field, const Rational& r);
  Cyclotomic(std::uint32_t m, const Rational& r);

  /// zeta_m^k.
  static Cyclotomic zeta(std::uint32_t m, std::int64_t k);

  std::uint32_t conductor() const { return field_->conductor(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const CyclotomicField& field() const { return *field_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Throws std::domain_error unless is_rational().
  Rational to_rational() const;
  bool is_integer() const;

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator*(const Rational& r) const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic pow(unsigned e) const;

  /// Complex conjugate: zeta^i -> zeta^(m-i).
  Cyclotomic conj() const;

  /// Sum of absolute values of the coefficients (a size for error reports).
  Rational l1_norm() const;

  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  /// Power-basis text, e.g. "1 - E(5)^2 - E(5)^3"; parses back to the same value.
  std::string to_string() const;

  /**
   * Parses an entry at conductor m. Grammar: sums and differences of
   * products of factors; a factor is an optionally signed rational literal,
   * E(n) with n dividing m, or a parenthesised expression, optionally raised
   * to a non-negative integer power with "^". The Unicode minus sign is
   * accepted. Throws ParseError.
   */
  static Cyclotomic parse(std::string_view text, std::uint32_t m);

 private:
  Cyclotomic(std::shared_ptr<const CyclotomicField> field, std::vector<Rational> c);
  void check_same(const Cyclotomic& o) const;

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> c_;
};

}  // namespace derange
