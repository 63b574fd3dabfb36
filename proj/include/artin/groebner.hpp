#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "artin/polynomial.hpp"

namespace artin {

/// Result of multivariate division: f = sum(quotients[i] * divisors[i]) + remainder.
struct Division {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// (lcm / LT(f)) * f - (lcm / LT(g)) * g for the lcm of the leading monomials.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

/// Division that always reduces the order-maximal reducible term, using the
/// first divisor (in the given order) whose leading monomial divides it.
Division divide(const Polynomial& f, std::span<const Polynomial> divisors);

/// Interreduced, unit-leading, ascending-sorted generator list. In a block
/// context every leading monomial must lie in the leading block and carry
/// coefficient +-1, so reduction never divides by a trailing-block coefficient.
class GroebnerBasis {
 public:
  /// Validates the structural invariants (throws DomainError); the result is
  /// uncertified until certify() succeeds.
  explicit GroebnerBasis(std::vector<Polynomial> elements);

  const ContextPtr& context() const noexcept { return ctx_; }
  const Field& field() const noexcept { return field_; }
  std::span<const Polynomial> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const Polynomial& operator[](std::size_t i) const { return elements_[i]; }
  std::vector<Monomial> leading_monomials() const;
  bool certified() const noexcept { return certified_; }

  /// Runs the Buchberger criterion and records the outcome.
  bool certify();

  /// The same basis re-indexed into a larger context (typically a block
  /// context extending the original variables). Certification carries over.
  GroebnerBasis embed(const ContextPtr& target) const;

  /// True when every element involves only leading-block variables.
  bool leading_only() const noexcept { return leading_only_; }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return a.elements_ == b.elements_;
  }

 private:
  friend Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G);
  struct Cache;

  ContextPtr ctx_;
  Field field_;
  std::vector<Polynomial> elements_;
  bool certified_ = false;
  bool leading_only_ = true;
  std::shared_ptr<Cache> cache_;
};

/// Remainder of division by G. Deterministic in (f, G). Throws
/// MismatchError on context mismatch.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G);

struct BuchbergerOptions {
  enum class Strategy { Normal, Naive };
  Strategy strategy = Strategy::Normal;
  /// Skip pairs whose leading monomials are coprime.
  bool first_criterion = true;
};

/// Reduced Groebner basis of the ideal generated by gens; certified.
GroebnerBasis buchberger(std::vector<Polynomial> gens, const BuchbergerOptions& options = {});

/// True iff every S-polynomial of a pair reduces to zero modulo gens.
bool is_groebner(std::span<const Polynomial> gens);

/// NF(f, G) == 0; requires a certified basis.
bool ideal_member(const Polynomial& f, const GroebnerBasis& G);

/// f lies in the radical of <gens>, decided by 1 in <gens, 1 - s f> for a
/// fresh variable s.
bool radical_member(const Polynomial& f, std::span<const Polynomial> gens);

struct IdealFile {
  ContextPtr context;
  std::vector<Polynomial> generators;
};

/// `vars: x y ...` on the first content line, then one polynomial per line.
/// Blank lines and `#` comments are ignored.
IdealFile parse_ideal_file(std::string_view text, Field field);

}  // namespace artin
