#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "artin/monomial.hpp"
#include "artin/scalar.hpp"

namespace artin {

struct Term {
  Monomial monomial;
  Scalar coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial over a VariableContext. Terms are stored in
/// descending monomial order with no zero coefficients; every value is
/// immutable once built and safe to share across threads.
class Polynomial {
 public:
  Polynomial(ContextPtr ctx, Field field);

  static Polynomial constant(ContextPtr ctx, const Scalar& c);
  static Polynomial constant(ContextPtr ctx, Field field, long c) {
    return constant(std::move(ctx), Scalar(field, c));
  }
  static Polynomial term(ContextPtr ctx, Monomial m, const Scalar& c);
  static Polynomial variable(ContextPtr ctx, Field field, std::string_view name);
  /// Merges duplicate monomials and drops zeros.
  static Polynomial from_terms(ContextPtr ctx, Field field, std::vector<Term> terms);

  const ContextPtr& context() const noexcept { return ctx_; }
  const Field& field() const noexcept { return field_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;

  /// The order-maximal term; throws DomainError on the zero polynomial.
  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().monomial; }
  const Scalar& leading_coeff() const { return leading_term().coeff; }

  /// Coefficient of exactly this monomial (zero if absent).
  Scalar coeff(const Monomial& m) const;

  std::uint64_t total_degree() const noexcept;
  bool is_homogeneous(std::uint64_t degree) const noexcept;
  /// Every term has total degree `degree` in the trailing block.
  bool is_trailing_homogeneous(std::uint64_t degree) const noexcept;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& g);
  Polynomial& operator-=(const Polynomial& g);
  friend Polynomial operator+(Polynomial f, const Polynomial& g) { return f += g; }
  friend Polynomial operator-(Polynomial f, const Polynomial& g) { return f -= g; }
  friend Polynomial operator*(const Polynomial& f, const Polynomial& g);

  Polynomial scaled(const Scalar& c) const;
  Polynomial mul_term(const Monomial& m, const Scalar& c) const;
  Polynomial pow(std::uint64_t k) const;

  /// Formal partial derivative with respect to variable index `var`.
  Polynomial derivative(std::size_t var) const;
  Polynomial derivative(std::string_view var) const;

  /// The polynomial in the remaining variables multiplying exactly the
  /// leading-block monomial m. Throws DomainError if m involves a
  /// trailing-block variable.
  Polynomial coefficient_of(const Monomial& m) const;

  /// The same polynomial re-indexed over another context (matched by name).
  /// Throws DomainError if a variable in use is missing from the target.
  Polynomial in_context(const ContextPtr& target) const;

  /// Evaluates at point[i] for variable i.
  Scalar evaluate(std::span<const Scalar> point) const;

  /// Indices of variables with a nonzero exponent somewhere.
  std::vector<std::size_t> support_variables() const;

  /// Canonical text: terms descending, reduced fractions, " + " / " - ".
  std::string render() const;

  friend bool operator==(const Polynomial& f, const Polynomial& g);

 private:
  void require_compatible(const Polynomial& g) const;

  ContextPtr ctx_;
  Field field_;
  std::vector<Term> terms_;
};

/// Parses the ASCII grammar
///   poly := ['+'|'-'] term (('+'|'-') term)*
///   term := coeff ('*' factor)* | factor ('*' factor)*
///   factor := var ('^' uint)?    coeff := int ('/' uint)?
/// Throws ParseError (with offset) or DomainError (unknown variable,
/// vanishing denominator).
Polynomial parse_polynomial(std::string_view text, const ContextPtr& ctx, Field field);

using Substitution = std::map<std::string, Polynomial, std::less<>>;

/// Replaces each variable of f by its image and expands. All images must
/// share one context, which becomes the result's context.
Polynomial compose(const Polynomial& f, const Substitution& images);

/// Replaces one variable by an image in the same context; others fixed.
Polynomial substitute(const Polynomial& f, std::string_view var, const Polynomial& image);

}  // namespace artin
