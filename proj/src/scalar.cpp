#include "artin/scalar.hpp"

#include <ostream>

#include "artin/error.hpp"

namespace artin {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                              19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (p % small == 0) return p == small;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = p - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, p);
    if (x == 1 || x == p - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, p);
      if (x == p - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (1ULL << 62) || !is_prime(p)) {
    throw DomainError("field modulus " + std::to_string(p) + " is not a supported prime");
  }
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.size() > 3 && text.substr(0, 3) == "fp:") {
    std::uint64_t p = 0;
    for (char c : text.substr(3)) {
      if (c < '0' || c > '9') throw DomainError("bad field selector '" + std::string(text) + "'");
      if (p > (1ULL << 62)) throw DomainError("field modulus too large");
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return prime(p);
  }
  throw DomainError("bad field selector '" + std::string(text) + "' (expected q or fp:P)");
}

std::string Field::to_string() const {
  return is_rational() ? "Q" : "fp:" + std::to_string(modulus_);
}

Scalar::Scalar(Field field, long value) : field_(field) {
  if (field_.is_rational()) {
    q_ = value;
  } else {
    const auto p = static_cast<long long>(field_.characteristic());
    long long r = static_cast<long long>(value) % p;
    if (r < 0) r += p;
    r_ = static_cast<std::uint64_t>(r);
  }
}

Scalar::Scalar(Field field, const mpq_class& value) : field_(field) {
  if (field_.is_rational()) {
    q_ = value;
    q_.canonicalize();
  } else {
    const std::uint64_t p = field_.characteristic();
    const std::uint64_t den = reduce_mpz(value.get_den(), p);
    if (den == 0) throw DomainError("denominator vanishes modulo " + std::to_string(p));
    r_ = mulmod(reduce_mpz(value.get_num(), p), powmod(den, p - 2, p), p);
  }
}

Scalar::Scalar(Field field, const mpz_class& num, const mpz_class& den)
    : Scalar(field, [&] {
        if (den == 0) throw DomainError("division by zero");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
      }()) {}

Scalar Scalar::parse(Field field, std::string_view text) {
  const auto slash = text.find('/');
  auto to_mpz = [&](std::string_view part) {
    mpz_class z;
    if (part.empty() || z.set_str(std::string(part), 10) != 0) {
      throw DomainError("bad scalar '" + std::string(text) + "'");
    }
    return z;
  };
  std::string_view num = text.substr(0, slash);
  if (!num.empty() && num.front() == '+') num.remove_prefix(1);
  if (slash == std::string_view::npos) return Scalar(field, mpq_class(to_mpz(num)));
  return Scalar(field, to_mpz(num), to_mpz(text.substr(slash + 1)));
}

bool Scalar::is_zero() const noexcept {
  return field_.is_rational() ? sgn(q_) == 0 : r_ == 0;
}

bool Scalar::is_one() const noexcept {
  return field_.is_rational() ? q_ == 1 : r_ == 1;
}

bool Scalar::is_minus_one() const {
  return field_.is_rational() ? q_ == -1 : r_ == field_.characteristic() - 1;
}

const mpq_class& Scalar::rational() const {
  if (!field_.is_rational()) throw MismatchError("scalar is not rational");
  return q_;
}

std::uint64_t Scalar::residue() const {
  if (field_.is_rational()) throw MismatchError("scalar is not a residue");
  return r_;
}

void Scalar::require_same_field(const Scalar& o) const {
  if (field_ != o.field_) {
    throw MismatchError("scalars over " + field_.to_string() + " and " +
                        o.field_.to_string() + " do not interoperate");
  }
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  if (field_.is_rational()) {
    r.q_ = -q_;
  } else if (r_ != 0) {
    r.r_ = field_.characteristic() - r_;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  require_same_field(o);
  if (field_.is_rational()) {
    q_ += o.q_;
  } else {
    const std::uint64_t p = field_.characteristic();
    r_ = static_cast<std::uint64_t>((static_cast<u128>(r_) + o.r_) % p);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  require_same_field(o);
  if (field_.is_rational()) {
    q_ -= o.q_;
  } else {
    const std::uint64_t p = field_.characteristic();
    r_ = static_cast<std::uint64_t>((static_cast<u128>(r_) + p - o.r_) % p);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  require_same_field(o);
  if (field_.is_rational()) {
    q_ *= o.q_;
  } else {
    r_ = mulmod(r_, o.r_, field_.characteristic());
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  require_same_field(o);
  return *this *= o.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  Scalar r(*this);
  if (field_.is_rational()) {
    r.q_ = 1 / q_;
  } else {
    const std::uint64_t p = field_.characteristic();
    r.r_ = powmod(r_, p - 2, p);
  }
  return r;
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar result = one(field_);
  Scalar base(*this);
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

mpz_class Scalar::pivot_weight() const {
  if (field_.is_rational()) return abs(q_.get_num());
  return mpz_class(static_cast<unsigned long>(r_));
}

std::string Scalar::to_string() const {
  return field_.is_rational() ? q_.get_str() : std::to_string(r_);
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

}  // namespace artin
