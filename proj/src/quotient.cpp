#include "artin/quotient.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "artin/error.hpp"
#include "artin/serialize.hpp"

namespace artin {

AlgebraElement::AlgebraElement(AlgebraPtr algebra, Vector coords)
    : algebra_(std::move(algebra)), coords_(std::move(coords)) {
  if (!algebra_) throw DomainError("algebra element without an algebra");
  if (coords_.size() != algebra_->dimension()) throw MismatchError("coordinate vector has the wrong length");
}

bool AlgebraElement::is_zero() const { return artin::is_zero(coords_); }

void AlgebraElement::require_same(const AlgebraElement& o) const {
  if (algebra_ != o.algebra_) throw MismatchError("elements of different algebras");
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r(*this);
  for (auto& c : r.coords_) c = -c;
  return r;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  require_same(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  a.require_same(b);
  const auto& A = *a.algebra_;
  Vector out = zero_vector(A.field(), A.dimension());
  for (std::size_t i = 0; i < a.coords_.size(); ++i) {
    if (a.coords_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coords_.size(); ++j) {
      if (b.coords_[j].is_zero()) continue;
      const Scalar c = a.coords_[i] * b.coords_[j];
      for (const auto& [k, s] : A.structure_constant(i, j)) out[k] += c * s;
    }
  }
  return AlgebraElement(a.algebra_, std::move(out));
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
  AlgebraElement r(*this);
  for (auto& x : r.coords_) x *= c;
  return r;
}

AlgebraElement AlgebraElement::pow(std::uint64_t k) const {
  AlgebraElement result = algebra_->unit();
  AlgebraElement base(*this);
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Polynomial AlgebraElement::to_polynomial() const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!coords_[i].is_zero()) terms.push_back(Term{algebra_->basis()[i], coords_[i]});
  }
  return Polynomial::from_terms(algebra_->context(), algebra_->field(), std::move(terms));
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  return a.algebra_ == b.algebra_ && a.coords_ == b.coords_;
}

namespace {

bool graded_lex_less(const VariableContext& ctx, const Monomial& a, const Monomial& b) {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da < db;
  return ctx.compare(a, b) < 0;
}

}  // namespace

QuotientAlgebra::QuotientAlgebra(GroebnerBasis G) : gb_(std::move(G)) {
  if (!gb_.certified()) throw DomainError("quotient algebra requires a certified Groebner basis");
  const auto& ctx = *gb_.context();
  const auto leads = gb_.leading_monomials();
  for (const auto& lm : leads) {
    if (lm.is_one()) throw DomainError("the ideal is the unit ideal; the quotient is zero");
  }
  // A pure power of every variable bounds the standard monomials in a box.
  std::vector<Monomial::Exponent> bound(ctx.arity(), 0);
  for (std::size_t v = 0; v < ctx.arity(); ++v) {
    for (const auto& lm : leads) {
      if (lm[v] != 0 && lm.degree() == lm[v] && (bound[v] == 0 || lm[v] < bound[v])) bound[v] = lm[v];
    }
    if (bound[v] == 0) {
      throw DomainError("infinite-dimensional quotient: no pure power of '" + ctx.name(v) +
                        "' among the leading monomials");
    }
  }
  Monomial m = ctx.one();
  for (;;) {
    const bool standard = std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
    if (standard) basis_.push_back(m);
    std::size_t v = 0;
    while (v < ctx.arity() && ++m[v] == bound[v]) m[v++] = 0;
    if (v == ctx.arity()) break;
  }
  std::sort(basis_.begin(), basis_.end(),
            [&ctx](const Monomial& a, const Monomial& b) { return graded_lex_less(ctx, a, b); });
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);

  const std::size_t n = basis_.size();
  table_.reset(new Cell[n * n]);

  local_ = true;
  for (std::size_t v = 0; v < ctx.arity() && local_; ++v) {
    const auto p = Polynomial::term(gb_.context(), ctx.variable(v, static_cast<Monomial::Exponent>(n)),
                                    Scalar::one(gb_.field()));
    local_ = normal_form(p, gb_).is_zero();
  }
}

AlgebraPtr QuotientAlgebra::from_basis(GroebnerBasis G) {
  return std::make_shared<const QuotientAlgebra>(std::move(G));
}

std::optional<std::size_t> QuotientAlgebra::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void QuotientAlgebra::require_local() const {
  if (!local_) throw DomainError("the algebra is not local: some variable is not nilpotent");
}

void QuotientAlgebra::require_mine(const AlgebraElement& u) const {
  if (u.algebra().get() != this) throw MismatchError("element belongs to a different algebra");
}

std::vector<std::size_t> QuotientAlgebra::maximal_ideal() const {
  require_local();
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < basis_.size(); ++i) out.push_back(i);
  return out;
}

AlgebraElement QuotientAlgebra::reduce(const Polynomial& p) const {
  if (!p.context()->same_as(*context())) throw MismatchError("polynomial lives in a different context");
  if (p.field() != field()) throw MismatchError("polynomial lives over a different field");
  const Polynomial r = normal_form(p, gb_);
  Vector coords = zero_vector(field(), dimension());
  for (const auto& t : r.terms()) coords[index_.at(t.monomial)] = t.coeff;
  return AlgebraElement(self(), std::move(coords));
}

AlgebraElement QuotientAlgebra::zero() const { return AlgebraElement(self(), zero_vector(field(), dimension())); }

AlgebraElement QuotientAlgebra::unit() const { return basis_element(0); }

AlgebraElement QuotientAlgebra::basis_element(std::size_t i) const {
  Vector coords = zero_vector(field(), dimension());
  coords.at(i) = Scalar::one(field());
  return AlgebraElement(self(), std::move(coords));
}

AlgebraElement QuotientAlgebra::variable(std::string_view name) const {
  return reduce(Polynomial::variable(context(), field(), name));
}

AlgebraElement QuotientAlgebra::from_coords(Vector coords) const { return AlgebraElement(self(), std::move(coords)); }

SparseVector QuotientAlgebra::compute_cell(std::size_t i, std::size_t j) const {
  const Polynomial r =
      normal_form(Polynomial::term(context(), basis_[i] * basis_[j], Scalar::one(field())), gb_);
  SparseVector out;
  for (const auto& t : r.terms()) out.emplace_back(index_.at(t.monomial), t.coeff);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

const SparseVector& QuotientAlgebra::structure_constant(std::size_t i, std::size_t j) const {
  const std::size_t n = dimension();
  if (i >= n || j >= n) throw DomainError("basis index out of range");
  if (i > j) std::swap(i, j);
  Cell& cell = table_[i * n + j];
  std::call_once(cell.once, [&] { cell.value = compute_cell(i, j); });
  return cell.value;
}

void QuotientAlgebra::precompute_structure_constants(bool parallel) const {
  const long n = static_cast<long>(dimension());
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (long i = 0; i < n; ++i) {
    for (long j = i; j < n; ++j) structure_constant(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
}

AlgebraElement QuotientAlgebra::multiply_via_normal_form(const AlgebraElement& u, const AlgebraElement& v) const {
  require_mine(u);
  require_mine(v);
  return reduce(u.to_polynomial() * v.to_polynomial());
}

std::vector<Vector> QuotientAlgebra::multiplication_matrix(const AlgebraElement& u) const {
  require_mine(u);
  const std::size_t n = dimension();
  std::vector<Vector> m(n, zero_vector(field(), n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i].is_zero()) continue;
      for (const auto& [k, s] : structure_constant(i, j)) m[k][j] += u[i] * s;
    }
  }
  return m;
}

Subspace QuotientAlgebra::socle() const {
  require_local();
  std::vector<Vector> rows;
  for (std::size_t v = 0; v < context()->arity(); ++v) {
    auto m = multiplication_matrix(variable(context()->name(v)));
    rows.insert(rows.end(), std::make_move_iterator(m.begin()), std::make_move_iterator(m.end()));
  }
  return Subspace::span(field(), dimension(), nullspace(rows, field(), dimension()));
}

Subspace QuotientAlgebra::ideal_power(std::size_t k) const {
  require_local();
  if (k == 0) throw DomainError("ideal_power needs k >= 1");
  std::vector<Vector> gens;
  for (std::size_t i = 1; i < dimension(); ++i) gens.push_back(basis_element(i).coords());
  Subspace current = Subspace::span(field(), dimension(), std::move(gens));
  std::vector<AlgebraElement> vars;
  for (std::size_t v = 0; v < context()->arity(); ++v) vars.push_back(variable(context()->name(v)));
  for (std::size_t s = 1; s < k && current.dim() > 0; ++s) {
    std::vector<Vector> next;
    for (const auto& row : current.rows()) {
      const AlgebraElement e = from_coords(row);
      for (const auto& x : vars) next.push_back((e * x).coords());
    }
    current = Subspace::span(field(), dimension(), std::move(next));
  }
  return current;
}

bool QuotientAlgebra::is_gorenstein() const { return socle().dim() == 1; }

namespace {

// Breadth-first walk over the monomials with nonzero normal form, which form
// an order ideal. Calls visit(m, NF(m)) for each, and frontier(m) for each
// first-found monomial with zero normal form.
template <class Visit, class Frontier>
void walk_nonzero(const QuotientAlgebra& A, Visit&& visit, Frontier&& frontier) {
  const auto& ctx = A.context();
  std::unordered_set<Monomial, MonomialHash> seen;
  std::deque<Monomial> queue{ctx->one()};
  seen.insert(ctx->one());
  while (!queue.empty()) {
    Monomial m = std::move(queue.front());
    queue.pop_front();
    const Polynomial nf = normal_form(Polynomial::term(ctx, m, Scalar::one(A.field())), A.groebner());
    if (nf.is_zero()) {
      frontier(m);
      continue;
    }
    visit(m, nf);
    for (std::size_t v = 0; v < ctx->arity(); ++v) {
      Monomial next = m * ctx->variable(v);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
}

}  // namespace

MonomialClass QuotientAlgebra::monomial_class(const Monomial& g) const {
  if (g.arity() != context()->arity()) throw MismatchError("monomial arity does not match the algebra");
  const Polynomial nf = normal_form(Polynomial::term(context(), g, Scalar::one(field())), gb_);
  MonomialClass out{MonomialClass::Tag::Zero, std::nullopt, {}};
  if (nf.is_zero()) return out;
  if (index_.count(g)) {
    out.tag = MonomialClass::Tag::Basis;
    out.representative = g;
  } else if (nf.size() == 1 && nf.leading_coeff().is_one()) {
    out.tag = MonomialClass::Tag::EqualTo;
    out.representative = nf.leading_monomial();
  } else {
    out.tag = MonomialClass::Tag::Combination;
  }
  require_local();
  walk_nonzero(
      *this, [&](const Monomial& m, const Polynomial& f) {
        if (f == nf) out.equal_set.push_back(m);
      },
      [](const Monomial&) {});
  const auto& ctx = *context();
  std::sort(out.equal_set.begin(), out.equal_set.end(),
            [&ctx](const Monomial& a, const Monomial& b) { return graded_lex_less(ctx, a, b); });
  return out;
}

std::vector<Monomial> QuotientAlgebra::zero_generators() const {
  require_local();
  std::vector<Monomial> frontier;
  walk_nonzero(*this, [](const Monomial&, const Polynomial&) {}, [&](const Monomial& m) { frontier.push_back(m); });
  std::vector<Monomial> minimal;
  for (const auto& m : frontier) {
    const bool redundant = std::any_of(frontier.begin(), frontier.end(),
                                       [&](const Monomial& d) { return d != m && d.divides(m); });
    if (!redundant) minimal.push_back(m);
  }
  const auto& ctx = *context();
  std::sort(minimal.begin(), minimal.end(),
            [&ctx](const Monomial& a, const Monomial& b) { return graded_lex_less(ctx, a, b); });
  return minimal;
}

std::size_t QuotientAlgebra::nilpotency_bound(const AlgebraElement& u) const {
  require_mine(u);
  if (local_) {
    if (!u[0].is_zero()) throw DomainError("element is not nilpotent: nonzero unit coordinate");
    return dimension();
  }
  if (!u.pow(dimension()).is_zero()) throw DomainError("element is not nilpotent");
  return dimension();
}

AlgebraElement QuotientAlgebra::log_nilpotent(const AlgebraElement& u) const {
  const std::size_t bound = nilpotency_bound(u);
  const std::uint64_t p = field().characteristic();
  AlgebraElement sum = zero();
  AlgebraElement power = u;
  for (std::size_t k = 1; k <= bound && !power.is_zero(); ++k) {
    if (p != 0 && k % p == 0) throw DomainError("characteristic too small for the logarithm series");
    Scalar c(field(), (k % 2 == 1) ? 1L : -1L);
    c /= Scalar(field(), static_cast<long>(k));
    sum += power.scaled(c);
    power = power * u;
  }
  return sum;
}

AlgebraElement QuotientAlgebra::exp_nilpotent(const AlgebraElement& u) const {
  const std::size_t bound = nilpotency_bound(u);
  const std::uint64_t p = field().characteristic();
  AlgebraElement sum = zero();
  AlgebraElement power = u;
  Scalar factorial = Scalar::one(field());
  for (std::size_t k = 1; k <= bound && !power.is_zero(); ++k) {
    if (p != 0 && k >= p) throw DomainError("characteristic too small for the exponential series");
    factorial *= Scalar(field(), static_cast<long>(k));
    sum += power.scaled(factorial.inverse());
    power = power * u;
  }
  return sum;
}

nlohmann::json QuotientAlgebra::to_json() const {
  nlohmann::json j;
  j["vars"] = context()->names();
  if (!field().is_rational()) j["field"] = field().to_string();
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : gb_.elements()) gens.push_back(artin::to_json(g)["terms"]);
  j["groebner"] = std::move(gens);
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& m : basis_) {
    auto e = m.exponents();
    basis.push_back(std::vector<Monomial::Exponent>(e.begin(), e.end()));
  }
  j["basis"] = std::move(basis);
  return j;
}

nlohmann::json QuotientAlgebra::to_json(const AlgebraElement& u) const {
  require_mine(u);
  nlohmann::json j = artin::to_json(u.to_polynomial());
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& m : basis_) {
    auto e = m.exponents();
    basis.push_back(std::vector<Monomial::Exponent>(e.begin(), e.end()));
  }
  j["basis"] = std::move(basis);
  return j;
}

std::string coordinate_name(std::string_view prefix, const Monomial& m) {
  const auto e = m.exponents();
  const bool wide = std::any_of(e.begin(), e.end(), [](auto v) { return v > 9; });
  std::string out(prefix);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (wide && i > 0) out += '_';
    out += std::to_string(e[i]);
  }
  return out;
}

}  // namespace artin
