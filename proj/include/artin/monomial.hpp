#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace artin {

/// Exponent vector over a VariableContext. The zero vector is the monomial 1.
class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t arity) : e_(arity, 0) {}
  explicit Monomial(std::vector<Exponent> exponents) : e_(std::move(exponents)) {}
  Monomial(std::initializer_list<Exponent> exponents) : e_(exponents) {}

  std::size_t arity() const noexcept { return e_.size(); }
  Exponent operator[](std::size_t i) const { return e_[i]; }
  Exponent& operator[](std::size_t i) { return e_[i]; }
  std::span<const Exponent> exponents() const noexcept { return e_; }

  bool is_one() const noexcept;
  std::uint64_t degree() const noexcept;
  std::uint64_t degree(std::size_t begin, std::size_t end) const noexcept;

  bool divides(const Monomial& m) const noexcept;
  /// Throws DomainError on exponent overflow.
  Monomial operator*(const Monomial& m) const;
  /// Requires divides(*this) of the argument; `m / d`.
  Monomial operator/(const Monomial& d) const;
  Monomial lcm(const Monomial& m) const;
  bool coprime(const Monomial& m) const noexcept;
  Monomial pow(std::uint64_t k) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::size_t hash() const noexcept;

 private:
  std::vector<Exponent> e_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Ordered variable list plus monomial order. Two orders exist: pure lex on
/// the whole list, and a two-block order comparing the leading block
/// lexicographically first, then the trailing block lexicographically.
/// Both are total and compatible with multiplication.
class VariableContext {
 public:
  static std::shared_ptr<const VariableContext> lex(std::vector<std::string> names);
  /// Trailing variables are sorted by name.
  static std::shared_ptr<const VariableContext> block(std::vector<std::string> leading,
                                                      std::vector<std::string> trailing);

  std::size_t arity() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;

  bool is_block() const noexcept { return leading_ < names_.size(); }
  /// Number of variables in the leading block (== arity for pure lex).
  std::size_t leading_size() const noexcept { return leading_; }
  bool is_leading_pure(const Monomial& m) const noexcept;
  /// The leading-block and trailing-block parts of m as monomials of full arity.
  Monomial leading_part(const Monomial& m) const;
  Monomial trailing_part(const Monomial& m) const;

  /// Three-way comparison: negative if a < b in the monomial order.
  int compare(const Monomial& a, const Monomial& b) const noexcept;
  bool less(const Monomial& a, const Monomial& b) const noexcept { return compare(a, b) < 0; }

  Monomial one() const { return Monomial(arity()); }
  Monomial variable(std::size_t i, Monomial::Exponent e = 1) const;
  /// Monomial from (name, exponent) pairs.
  Monomial monomial(std::initializer_list<std::pair<std::string_view, Monomial::Exponent>> factors) const;

  /// "x^2*y" style rendering; "1" for the unit monomial.
  std::string render(const Monomial& m) const;

  bool same_as(const VariableContext& o) const noexcept {
    return this == &o || (names_ == o.names_ && leading_ == o.leading_);
  }

 private:
  VariableContext(std::vector<std::string> names, std::size_t leading);

  std::vector<std::string> names_;
  std::size_t leading_;
  std::unordered_map<std::string, std::size_t> index_;
};

using ContextPtr = std::shared_ptr<const VariableContext>;

}  // namespace artin
