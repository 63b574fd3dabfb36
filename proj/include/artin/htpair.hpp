#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <string_view>

#include <json.hpp>

#include "artin/budget.hpp"
#include "artin/quotient.hpp"

namespace artin {

/// Lex context of the coordinate functions z_<exponents> of a local algebra,
/// one per basis monomial. The unit coordinate (z_00 for two variables) is
/// included and serves as the homogenizing variable.
ContextPtr z_context(const QuotientAlgebra& A);

/// A linear functional pi on the maximal ideal m of a local algebra, given by
/// its values on the non-unit basis monomials. U = ker pi.
class HPairFunctional {
 public:
  /// `coeffs[i]` is pi(basis[i + 1]). Throws MismatchError on a length
  /// mismatch and DomainError for pi = 0 or a non-local algebra.
  static HPairFunctional make(AlgebraPtr A, Vector coeffs);
  /// A linear form in the z-names, e.g. "z_05 + z_06". Throws ParseError on
  /// malformed text and DomainError for anything but a nonzero linear form
  /// without constant term or unit coordinate.
  static HPairFunctional parse(AlgebraPtr A, std::string_view text);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const Vector& coeffs() const noexcept { return coeffs_; }
  /// pi is nonzero on the socle, which is one-dimensional.
  bool complementary() const noexcept { return complementary_; }
  /// ker pi generates A as an algebra.
  bool generating() const noexcept { return generating_; }

  Scalar operator()(const AlgebraElement& u) const;
  /// The largest d with m^d not inside ker pi. Throws DomainError unless
  /// complementary.
  std::size_t degree() const;

  /// The linear form in the z context.
  Polynomial as_polynomial() const;

 private:
  struct Lazy;
  HPairFunctional(AlgebraPtr A, Vector coeffs);

  AlgebraPtr algebra_;
  Vector coeffs_;
  bool complementary_ = false;
  bool generating_ = false;
  std::shared_ptr<Lazy> lazy_;
};

struct HypersurfaceEquation {
  /// Homogeneous of total degree `degree` over z_context(A).
  Polynomial polynomial;
  std::size_t degree;

  nlohmann::json to_json() const;
};

enum class ExpansionRoute {
  /// Powers of the generic element reduced by normal forms in a block order.
  NormalForm,
  /// Powers expanded through the structure constants, in parallel.
  StructureTable,
};

/// z00^d pi(ln(1 + z / z00)) truncated at the degree, for a complementary and
/// generating functional. Throws DomainError on failed preconditions or when
/// 0 < char K <= d.
HypersurfaceEquation hypersurface_equation(const HPairFunctional& F,
                                           ExpansionRoute route = ExpansionRoute::StructureTable,
                                           const Budget& budget = {});

/// Value of the equation at the coordinates of p (the unit coordinate is z00).
Scalar evaluate_equation(const HypersurfaceEquation& eq, const AlgebraElement& p);

/// Whether the point exp(u) lies on the hypersurface. Throws DomainError
/// unless u lies in ker pi inside m.
bool point_membership(const HPairFunctional& F, const HypersurfaceEquation& eq, const AlgebraElement& u);

/// A random element of ker pi inside m. Coordinates have numerators in
/// [-9, 9] and denominators in {1, 2, 3}; one coordinate is then corrected so
/// that pi vanishes.
AlgebraElement random_kernel_point(const HPairFunctional& F, std::mt19937_64& rng);

}  // namespace artin
