#pragma once

#include <random>

#include "artin/polynomial.hpp"

namespace artin::testing {

inline Polynomial P(const char* text, const ContextPtr& ctx, Field field = Field::rationals()) {
  return parse_polynomial(text, ctx, field);
}

/// Random polynomial with small rational coefficients and bounded exponents.
inline Polynomial random_polynomial(std::mt19937_64& rng, const ContextPtr& ctx, Field field,
                                    int max_terms = 5, unsigned max_exp = 4) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<unsigned> exp(0, max_exp);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 3);
  std::vector<Term> terms;
  const int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    Monomial m(ctx->arity());
    for (std::size_t v = 0; v < ctx->arity(); ++v) m[v] = exp(rng);
    terms.push_back(Term{m, Scalar(field, mpz_class(num(rng)), mpz_class(den(rng)))});
  }
  return Polynomial::from_terms(ctx, field, std::move(terms));
}

inline Monomial random_monomial(std::mt19937_64& rng, const ContextPtr& ctx, unsigned max_exp = 6) {
  std::uniform_int_distribution<unsigned> exp(0, max_exp);
  Monomial m(ctx->arity());
  for (std::size_t v = 0; v < ctx->arity(); ++v) m[v] = exp(rng);
  return m;
}

}  // namespace artin::testing
