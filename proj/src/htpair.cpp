#include "artin/htpair.hpp"

#include <algorithm>
#include <mutex>

#include "artin/error.hpp"
#include "artin/kernels.hpp"
#include "artin/serialize.hpp"

namespace artin {

namespace {

std::vector<std::string> z_names(const QuotientAlgebra& A) {
  std::vector<std::string> names;
  names.reserve(A.dimension());
  for (const auto& m : A.basis()) names.push_back(coordinate_name("z_", m));
  return names;
}

// Position of each basis coordinate inside z_context(A).
std::vector<std::size_t> z_positions(const QuotientAlgebra& A, const VariableContext& zctx) {
  std::vector<std::size_t> pos;
  for (const auto& name : z_names(A)) pos.push_back(zctx.require_index(name));
  return pos;
}

Vector full_functional(const HPairFunctional& F) {
  Vector pi{Scalar::zero(F.algebra()->field())};
  pi.insert(pi.end(), F.coeffs().begin(), F.coeffs().end());
  return pi;
}

Scalar dot(const Vector& a, const Vector& b) {
  Scalar s = Scalar::zero(a.front().field());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

bool closure_generates(const QuotientAlgebra& A, const Vector& pi) {
  const std::size_t dim = A.dimension();
  const Field field = A.field();
  Vector unit_row = zero_vector(field, dim);
  unit_row[0] = Scalar::one(field);
  Subspace S = Subspace::span(field, dim, nullspace({unit_row, pi}, field, dim));

  // Each round either grows S or stops, so dim rounds always suffice.
  for (std::size_t round = 0; round <= dim; ++round) {
    if (S.dim() + 1 == dim) return true;
    std::vector<Vector> products;
    const auto& rows = S.rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const AlgebraElement u = A.from_coords(rows[i]);
      for (std::size_t j = i; j < rows.size(); ++j) {
        Vector p = (u * A.from_coords(rows[j])).coords();
        if (!S.contains(p)) products.push_back(std::move(p));
      }
    }
    if (products.empty()) return false;
    S = S.sum(Subspace::span(field, dim, std::move(products)));
  }
  throw Error("span closure did not stabilize");
}

}  // namespace

ContextPtr z_context(const QuotientAlgebra& A) {
  auto names = z_names(A);
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
    throw DomainError("basis monomials give clashing coordinate names");
  }
  return VariableContext::lex(std::move(names));
}

struct HPairFunctional::Lazy {
  std::once_flag once;
  std::size_t degree = 0;
};

HPairFunctional::HPairFunctional(AlgebraPtr A, Vector coeffs)
    : algebra_(std::move(A)), coeffs_(std::move(coeffs)), lazy_(std::make_shared<Lazy>()) {}

HPairFunctional HPairFunctional::make(AlgebraPtr A, Vector coeffs) {
  if (!A) throw DomainError("functional needs an algebra");
  if (!A->is_local()) throw DomainError("H-pair functionals need a local algebra");
  if (coeffs.size() + 1 != A->dimension()) throw MismatchError("functional has the wrong number of coefficients");
  if (is_zero(coeffs)) throw DomainError("functional is zero");
  for (const auto& c : coeffs) {
    if (c.field() != A->field()) throw MismatchError("functional coefficient over the wrong field");
  }

  HPairFunctional F(std::move(A), std::move(coeffs));
  const QuotientAlgebra& alg = *F.algebra_;
  const Vector pi = full_functional(F);
  const Subspace soc = alg.socle();
  F.complementary_ = soc.dim() == 1 && !dot(pi, soc.rows().front()).is_zero();
  F.generating_ = closure_generates(alg, pi);
  return F;
}

HPairFunctional HPairFunctional::parse(AlgebraPtr A, std::string_view text) {
  if (!A) throw DomainError("functional needs an algebra");
  const ContextPtr zctx = z_context(*A);
  const Polynomial p = parse_polynomial(text, zctx, A->field());
  if (p.total_degree() > 1) throw DomainError("functional must be linear");
  const auto pos = z_positions(*A, *zctx);
  Vector coeffs;
  for (std::size_t i = 1; i < A->dimension(); ++i) coeffs.push_back(p.coeff(zctx->variable(pos[i])));
  if (!p.coeff(zctx->one()).is_zero()) throw DomainError("functional has a constant term");
  if (!p.coeff(zctx->variable(pos[0])).is_zero()) throw DomainError("functional involves the unit coordinate");
  return make(std::move(A), std::move(coeffs));
}

Scalar HPairFunctional::operator()(const AlgebraElement& u) const {
  if (u.algebra() != algebra_) throw MismatchError("element from another algebra");
  return dot(full_functional(*this), u.coords());
}

std::size_t HPairFunctional::degree() const {
  if (!complementary_) throw DomainError("functional is not complementary");
  std::call_once(lazy_->once, [this] {
    const Vector pi = full_functional(*this);
    for (std::size_t k = 1;; ++k) {
      const Subspace power = algebra_->ideal_power(k);
      if (power.dim() == 0) break;
      const bool outside = std::any_of(power.rows().begin(), power.rows().end(),
                                       [&](const Vector& r) { return !dot(pi, r).is_zero(); });
      if (outside) lazy_->degree = k;
    }
  });
  return lazy_->degree;
}

Polynomial HPairFunctional::as_polynomial() const {
  const ContextPtr zctx = z_context(*algebra_);
  const auto pos = z_positions(*algebra_, *zctx);
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) terms.push_back({zctx->variable(pos[i + 1]), coeffs_[i]});
  return Polynomial::from_terms(zctx, algebra_->field(), std::move(terms));
}

nlohmann::json HypersurfaceEquation::to_json() const {
  return {{"degree", degree}, {"polynomial", artin::to_json(polynomial)}};
}

namespace {

// pi(z^k) for k = 1..d, each over the z context.
std::vector<Polynomial> projected_powers_nf(const HPairFunctional& F, std::size_t d, const ContextPtr& zctx,
                                            const Budget& budget) {
  const QuotientAlgebra& A = *F.algebra();
  const Field field = A.field();
  auto trailing = z_names(A);
  std::sort(trailing.begin(), trailing.end());
  const ContextPtr block = VariableContext::block(A.context()->names(), trailing);
  const GroebnerBasis G = A.groebner().embed(block);
  const std::size_t lead = A.context()->arity();

  auto lift = [&](const Monomial& m) {
    Monomial out(block->arity());
    for (std::size_t v = 0; v < lead; ++v) out[v] = m[v];
    return out;
  };

  std::vector<Term> terms;
  const auto names = z_names(A);
  for (std::size_t i = 1; i < A.dimension(); ++i) {
    Monomial m = lift(A.basis()[i]);
    m[block->require_index(names[i])] = 1;
    terms.push_back({std::move(m), Scalar::one(field)});
  }
  const Polynomial z = Polynomial::from_terms(block, field, std::move(terms));

  std::vector<Polynomial> out;
  Polynomial zk = z;
  for (std::size_t k = 1; k <= d; ++k) {
    budget.check("hypersurface expansion");
    if (k > 1) zk = normal_form(zk * z, G);
    Polynomial proj(block, field);
    for (std::size_t i = 1; i < A.dimension(); ++i) {
      const Scalar& c = F.coeffs()[i - 1];
      if (!c.is_zero()) proj += zk.coefficient_of(lift(A.basis()[i])).scaled(c);
    }
    out.push_back(proj.in_context(zctx));
  }
  return out;
}

std::vector<Polynomial> projected_powers_table(const HPairFunctional& F, std::size_t d, const ContextPtr& zctx,
                                               const Budget& budget) {
  const QuotientAlgebra& A = *F.algebra();
  const Field field = A.field();
  const auto pos = z_positions(A, *zctx);
  SymbolicElement z(A.dimension(), Polynomial(zctx, field));
  for (std::size_t i = 1; i < A.dimension(); ++i) z[i] = Polynomial::term(zctx, zctx->variable(pos[i]), Scalar::one(field));

  std::vector<Polynomial> out;
  SymbolicElement zk = z;
  for (std::size_t k = 1; k <= d; ++k) {
    budget.check("hypersurface expansion");
    if (k > 1) zk = symbolic_multiply(A, zk, z, true);
    Polynomial proj(zctx, field);
    for (std::size_t i = 1; i < A.dimension(); ++i) {
      const Scalar& c = F.coeffs()[i - 1];
      if (!c.is_zero()) proj += zk[i].scaled(c);
    }
    out.push_back(std::move(proj));
  }
  return out;
}

}  // namespace

HypersurfaceEquation hypersurface_equation(const HPairFunctional& F, ExpansionRoute route, const Budget& budget) {
  if (!F.complementary()) throw DomainError("functional is not complementary");
  if (!F.generating()) throw DomainError("kernel does not generate the algebra");
  const std::size_t d = F.degree();
  const QuotientAlgebra& A = *F.algebra();
  const Field field = A.field();
  if (!field.is_rational() && field.characteristic() <= d) {
    throw DomainError("characteristic " + std::to_string(field.characteristic()) + " is too small for degree " +
                      std::to_string(d));
  }

  const ContextPtr zctx = z_context(A);
  const auto powers = route == ExpansionRoute::NormalForm ? projected_powers_nf(F, d, zctx, budget)
                                                          : projected_powers_table(F, d, zctx, budget);
  const Polynomial z00 = Polynomial::term(zctx, zctx->variable(z_positions(A, *zctx)[0]), Scalar::one(field));

  Polynomial sum(zctx, field);
  for (std::size_t k = 1; k <= d; ++k) {
    const Scalar c = Scalar(field, k % 2 == 1 ? 1L : -1L) / Scalar(field, static_cast<long>(k));
    sum += (powers[k - 1] * z00.pow(d - k)).scaled(c);
  }
  if (!sum.is_homogeneous(d)) throw Error("hypersurface equation is not homogeneous");
  return {std::move(sum), d};
}

Scalar evaluate_equation(const HypersurfaceEquation& eq, const AlgebraElement& p) {
  const QuotientAlgebra& A = *p.algebra();
  const ContextPtr& zctx = eq.polynomial.context();
  const auto pos = z_positions(A, *zctx);
  if (zctx->arity() != A.dimension()) throw MismatchError("equation and point live over different algebras");
  Vector point(zctx->arity(), Scalar::zero(A.field()));
  for (std::size_t i = 0; i < A.dimension(); ++i) point[pos[i]] = p[i];
  return eq.polynomial.evaluate(point);
}

bool point_membership(const HPairFunctional& F, const HypersurfaceEquation& eq, const AlgebraElement& u) {
  if (u.algebra() != F.algebra()) throw MismatchError("element from another algebra");
  if (!u[0].is_zero()) throw DomainError("point is not in the maximal ideal");
  if (!F(u).is_zero()) throw DomainError("point is not in the kernel of the functional");
  const QuotientAlgebra& A = *F.algebra();
  return evaluate_equation(eq, A.unit() + A.exp_nilpotent(u)).is_zero();
}

AlgebraElement random_kernel_point(const HPairFunctional& F, std::mt19937_64& rng) {
  const QuotientAlgebra& A = *F.algebra();
  const Field field = A.field();
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 3);
  Vector coords = zero_vector(field, A.dimension());
  for (std::size_t i = 1; i < A.dimension(); ++i) {
    long q = den(rng);
    if (!field.is_rational() && q % static_cast<long>(field.characteristic()) == 0) q = 1;
    coords[i] = Scalar(field, num(rng)) / Scalar(field, q);
  }
  std::size_t j = F.coeffs().size();
  while (F.coeffs()[j - 1].is_zero()) --j;
  AlgebraElement u = A.from_coords(coords);
  const Scalar off = F(u);
  coords[j] -= off / F.coeffs()[j - 1];
  return A.from_coords(std::move(coords));
}

}  // namespace artin
