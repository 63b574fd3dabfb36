#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace artin {

/// Coefficient field descriptor: the rationals, or Z/p for a prime p.
class Field {
 public:
  constexpr Field() = default;

  static Field rationals() { return Field(); }
  /// Throws DomainError unless p is prime and below 2^62.
  static Field prime(std::uint64_t p);
  /// Accepts "q" / "Q" or "fp:P".
  static Field parse(std::string_view text);

  bool is_rational() const noexcept { return modulus_ == 0; }
  std::uint64_t characteristic() const noexcept { return modulus_; }
  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit constexpr Field(std::uint64_t p) : modulus_(p) {}

  std::uint64_t modulus_ = 0;
};

bool is_prime(std::uint64_t p);

/// Exact element of a Field. Rationals are kept in lowest terms with a
/// positive denominator; residues are kept in [0, p).
class Scalar {
 public:
  Scalar() = default;
  Scalar(Field field, long value);
  Scalar(Field field, const mpq_class& value);
  Scalar(Field field, const mpz_class& num, const mpz_class& den);

  static Scalar zero(Field field) { return Scalar(field, 0L); }
  static Scalar one(Field field) { return Scalar(field, 1L); }
  /// Parses "n" or "n/d" (optionally signed) into the given field.
  static Scalar parse(Field field, std::string_view text);

  const Field& field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool is_minus_one() const;

  /// The rational value; only valid over the rationals.
  const mpq_class& rational() const;
  /// The residue; only valid over a prime field.
  std::uint64_t residue() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;

  /// |numerator| for rationals, the residue for prime fields. Used for
  /// deterministic pivot selection.
  mpz_class pivot_weight() const;

  /// "p/q" (or "p" when q = 1) for rationals, the residue for prime fields.
  std::string to_string() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

 private:
  void require_same_field(const Scalar& o) const;

  Field field_;
  mpq_class q_;
  std::uint64_t r_ = 0;
};

}  // namespace artin
