#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "artin/groebner.hpp"
#include "artin/linalg.hpp"
#include "artin/polynomial.hpp"

namespace artin {

class QuotientAlgebra;
using AlgebraPtr = std::shared_ptr<const QuotientAlgebra>;

/// Element of a quotient algebra as a coordinate vector over its standard
/// monomial basis.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraPtr algebra, Vector coords);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const Vector& coords() const noexcept { return coords_; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;

  AlgebraElement operator-() const;
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  AlgebraElement scaled(const Scalar& c) const;
  AlgebraElement pow(std::uint64_t k) const;

  Polynomial to_polynomial() const;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

 private:
  void require_same(const AlgebraElement& o) const;

  AlgebraPtr algebra_;
  Vector coords_;
};

/// Classification of a monomial in the quotient.
struct MonomialClass {
  /// Combination covers normal forms that are not a single basis monomial
  /// with coefficient 1; it cannot occur for binomial presentations.
  enum class Tag { Zero, Basis, EqualTo, Combination };
  Tag tag;
  /// The basis monomial equal to g (for Basis and EqualTo).
  std::optional<Monomial> representative;
  /// All monomials with the same nonzero normal form as g, ascending.
  std::vector<Monomial> equal_set;
};

/// K[vars]/I for a certified Groebner basis with finitely many standard
/// monomials. Immutable except for the write-once structure-constant table.
class QuotientAlgebra : public std::enable_shared_from_this<QuotientAlgebra> {
 public:
  /// Throws DomainError if G is uncertified, the quotient is infinite
  /// dimensional, or the ideal is the unit ideal.
  static AlgebraPtr from_basis(GroebnerBasis G);

  const GroebnerBasis& groebner() const noexcept { return gb_; }
  const ContextPtr& context() const noexcept { return gb_.context(); }
  const Field& field() const noexcept { return gb_.field(); }
  std::size_t dimension() const noexcept { return basis_.size(); }
  /// Standard monomials, ascending graded-lex.
  const std::vector<Monomial>& basis() const noexcept { return basis_; }
  std::optional<std::size_t> index_of(const Monomial& m) const;
  std::size_t unit_index() const noexcept { return 0; }

  /// True when every variable is nilpotent, so m = span(basis \ {1}).
  bool is_local() const noexcept { return local_; }
  /// Indices of the non-unit basis monomials; throws unless local.
  std::vector<std::size_t> maximal_ideal() const;

  AlgebraElement reduce(const Polynomial& p) const;
  AlgebraElement zero() const;
  AlgebraElement unit() const;
  AlgebraElement basis_element(std::size_t i) const;
  AlgebraElement variable(std::string_view name) const;
  AlgebraElement from_coords(Vector coords) const;

  /// Coordinates of basis[i] * basis[j], computed on first use.
  const SparseVector& structure_constant(std::size_t i, std::size_t j) const;
  /// Fills every cell of the table, in parallel when `parallel` is set.
  void precompute_structure_constants(bool parallel = true) const;
  /// Reference implementation of the product through normal forms only.
  AlgebraElement multiply_via_normal_form(const AlgebraElement& u, const AlgebraElement& v) const;

  /// Matrix of multiplication by u (column j = u * basis[j]).
  std::vector<Vector> multiplication_matrix(const AlgebraElement& u) const;

  Subspace socle() const;
  /// m^k for k >= 1.
  Subspace ideal_power(std::size_t k) const;
  bool is_gorenstein() const;

  MonomialClass monomial_class(const Monomial& g) const;
  /// Minimal monomials whose normal form vanishes, ascending.
  std::vector<Monomial> zero_generators() const;

  /// ln(1 + u) and exp(u) - 1 as terminating series for nilpotent u.
  AlgebraElement log_nilpotent(const AlgebraElement& u) const;
  AlgebraElement exp_nilpotent(const AlgebraElement& u) const;

  nlohmann::json to_json() const;
  nlohmann::json to_json(const AlgebraElement& u) const;

  explicit QuotientAlgebra(GroebnerBasis G);

 private:
  struct Cell {
    std::once_flag once;
    SparseVector value;
  };

  void require_local() const;
  void require_mine(const AlgebraElement& u) const;
  SparseVector compute_cell(std::size_t i, std::size_t j) const;
  std::size_t nilpotency_bound(const AlgebraElement& u) const;
  AlgebraPtr self() const { return shared_from_this(); }

  GroebnerBasis gb_;
  std::vector<Monomial> basis_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
  bool local_ = false;
  mutable std::unique_ptr<Cell[]> table_;
};

/// Name of the coordinate attached to a basis monomial: prefix plus the
/// exponents run together ("z_05"), or joined by '_' when one exceeds 9.
std::string coordinate_name(std::string_view prefix, const Monomial& m);

}  // namespace artin
