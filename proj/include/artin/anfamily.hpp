#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "artin/budget.hpp"
#include "artin/groebner.hpp"
#include "artin/quotient.hpp"

namespace artin {

/// The algebra A_n = K[x,y] / (y^{2n+3}, x^n y^2 - y^{n+2}, x^{2n+1} - x y^{n+1}).
class AnPresentation {
 public:
  /// Throws DomainError for n < 2 and Error if certification fails.
  static AnPresentation build(unsigned n, Field field = Field::rationals());

  unsigned n() const noexcept { return n_; }
  const Field& field() const noexcept { return field_; }
  const ContextPtr& context() const noexcept { return ctx_; }
  /// f1, f2, f3.
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  /// x y^{n+3}, which lies in the ideal but not among the generators.
  const Polynomial& f4() const noexcept { return f4_; }
  const GroebnerBasis& groebner() const noexcept { return algebra_->groebner(); }
  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  std::size_t dimension() const noexcept { return algebra_->dimension(); }
  static std::size_t expected_dimension(unsigned n) { return std::size_t(n) * n + 6 * n + 2; }

  /// True for a prime field whose characteristic divides n or n - 1.
  bool hypothesis_violated() const noexcept { return hypothesis_violated_; }

  Polynomial monomial(unsigned i, unsigned j) const;
  /// Basis index of x^i y^j; throws DomainError if it is not a standard monomial.
  std::size_t index(unsigned i, unsigned j) const;

 private:
  AnPresentation(unsigned n, Field field, ContextPtr ctx)
      : n_(n), field_(field), ctx_(ctx), f4_(std::move(ctx), field) {}

  unsigned n_ = 0;
  Field field_;
  ContextPtr ctx_;
  std::vector<Polynomial> gens_;
  Polynomial f4_;
  AlgebraPtr algebra_;
  bool hypothesis_violated_ = false;
};

struct Cofactors {
  Polynomial c1, c2, c3;
};
/// The cofactors expressing f4 through f1, f2, f3.
Cofactors f4_cofactors(const AnPresentation& P);
/// c1 f1 + c2 f2 + c3 f3 == f4 exactly in K[x,y].
bool cofactor_identity(const AnPresentation& P, const Cofactors& c);
bool cofactor_identity(const AnPresentation& P);

/// A chain of monomials claimed equal in A_n, or (when `vanishes`) all zero.
struct MonomialRelation {
  std::string label;
  std::vector<Monomial> chain;
  bool vanishes = false;
};
std::vector<MonomialRelation> an_relations(unsigned n);

/// lhs == rhs in A_n, decided by normal forms.
bool equal_in_algebra(const AnPresentation& P, const Polynomial& lhs, const Polynomial& rhs);
/// Every member of the chain reduces to the same nonzero monomial, or all
/// reduce to zero when the relation claims vanishing.
bool relation_holds(const AnPresentation& P, const MonomialRelation& r);

struct RelationCheck {
  std::string label;
  bool pass;
};
std::vector<RelationCheck> verify_relations(const AnPresentation& P);

struct SocleReport {
  Subspace socle;
  bool matches_expected;  // socle == span(y^{2n+2})
  bool gorenstein;
};
SocleReport socle_report(const AnPresentation& P);

/// D_x, D_y: the images of x and y under a derivation.
struct DerivationCandidate {
  AlgebraElement dx, dy;
};

/// Basis (in RREF over the concatenated coordinates of D_x, D_y) of the
/// derivations, obtained from the generator constraints D_f = 0.
std::vector<DerivationCandidate> derivation_space(const AnPresentation& P);
/// Coordinates of (D_x, D_y) concatenated, length 2 * dim.
Vector flatten(const DerivationCandidate& d);

/// Matrix of a linear endomorphism of an algebra: column j = image of basis[j].
using LinearMap = std::vector<Vector>;

/// Extends (D_x, D_y) to the whole algebra by the Leibniz rule.
LinearMap derivation_matrix(const QuotientAlgebra& A, const std::vector<AlgebraElement>& images);
AlgebraElement apply_map(const LinearMap& m, const AlgebraElement& u);

/// Independent check: every derivation of a local quotient algebra, solved
/// from the Leibniz identity on all basis pairs. Throws DomainError when the
/// dimension exceeds `max_dimension`.
std::vector<LinearMap> derivation_full_oracle(const QuotientAlgebra& A, std::size_t max_dimension = 60);
/// Images of the variables under an oracle solution, concatenated.
Vector restrict_to_generators(const QuotientAlgebra& A, const LinearMap& m);

/// Same span, computed independently from both sides.
bool derivation_spaces_agree(const AnPresentation& P, const std::vector<DerivationCandidate>& space,
                             const std::vector<LinearMap>& oracle);

struct AnnihilationReport {
  bool annihilated;         // every basis derivation kills y^{2n+1}
  bool representatives_agree;
  bool hypothesis_violated;
};
AnnihilationReport derivations_annihilate(const AnPresentation& P, const std::vector<DerivationCandidate>& space);

struct AutomorphismCandidate {
  Polynomial phi_x, phi_y;
};

struct AutomorphismReport {
  bool valid = false;
  bool generators_vanish = false;
  bool linear_part_invertible = false;
  std::optional<Scalar> gamma;
  /// The image of y^{2n+1} has no coordinate outside its own slot.
  bool line_preserved = false;
  bool exponent_condition = false;
  bool hypothesis_violated = false;
  /// Non-empty when a valid map contradicts the expected invariance.
  std::string finding;
};

/// Throws DomainError if an image has a nonzero constant term.
AutomorphismReport verify_automorphism(const AnPresentation& P, const AutomorphismCandidate& c);

AutomorphismCandidate identity_map(const AnPresentation& P);
/// x -> -x, y -> (-1)^n y.
AutomorphismCandidate sign_flip(const AnPresentation& P);
AutomorphismCandidate swap_map(const AnPresentation& P);
/// exp(delta) for a derivation delta mapping m into m^2, which is nilpotent.
AutomorphismCandidate exponential(const AnPresentation& P, const DerivationCandidate& delta);
/// outer after inner: x -> inner_x(outer_x, outer_y), reduced in A_n.
AutomorphismCandidate compose_maps(const AnPresentation& P, const AutomorphismCandidate& outer,
                                   const AutomorphismCandidate& inner);
/// Value of p (over the x, y context) at the given algebra elements.
AlgebraElement evaluate_at(const Polynomial& p, const AlgebraElement& x, const AlgebraElement& y);

struct ProofStep {
  int index;
  bool pass;
  std::string detail;
};

struct StepReport {
  enum class Theorem { Automorphisms, Derivations };
  Theorem theorem;
  unsigned n;
  std::vector<ProofStep> steps;

  bool all_pass() const;
  /// One `STEP k: PASS|FAIL` line per step, followed by its detail.
  std::string text() const;
  nlohmann::json to_json() const;
};

/// Symbolic replay of the coefficient-extraction argument at a fixed n.
/// Requires the rationals and n <= 3; throws BudgetExceeded on timeout.
StepReport verify_proof_steps(const AnPresentation& P, StepReport::Theorem theorem, const Budget& budget = {});

}  // namespace artin
