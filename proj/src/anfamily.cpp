#include "artin/anfamily.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "artin/error.hpp"

namespace artin {

namespace {

Polynomial xy_term(const ContextPtr& ctx, Field field, unsigned i, unsigned j) {
  return Polynomial::term(ctx, Monomial{i, j}, Scalar::one(field));
}

std::string render_chain(const ContextPtr& ctx, const MonomialRelation& r) {
  std::string out;
  for (const auto& m : r.chain) {
    if (!out.empty()) out += " = ";
    out += ctx->render(m);
  }
  if (r.vanishes) out += " = 0";
  return out;
}

}  // namespace

AnPresentation AnPresentation::build(unsigned n, Field field) {
  if (n < 2) throw DomainError("the family needs n >= 2, got n = " + std::to_string(n));
  AnPresentation P(n, field, VariableContext::lex({"x", "y"}));
  auto m = [&](unsigned i, unsigned j) { return xy_term(P.ctx_, field, i, j); };
  P.gens_ = {m(0, 2 * n + 3), m(n, 2) - m(0, n + 2), m(2 * n + 1, 0) - m(1, n + 1)};
  P.f4_ = m(1, n + 3);
  GroebnerBasis G = buchberger(P.gens_);
  if (!G.certified()) throw Error("Groebner basis of the family failed certification");
  P.algebra_ = QuotientAlgebra::from_basis(std::move(G));
  const std::uint64_t p = field.characteristic();
  P.hypothesis_violated_ = p != 0 && (n % p == 0 || (n - 1) % p == 0);
  return P;
}

Polynomial AnPresentation::monomial(unsigned i, unsigned j) const { return xy_term(ctx_, field_, i, j); }

std::size_t AnPresentation::index(unsigned i, unsigned j) const {
  const auto k = algebra_->index_of(Monomial{i, j});
  if (!k) throw DomainError("x^" + std::to_string(i) + "*y^" + std::to_string(j) + " is not a standard monomial");
  return *k;
}

Cofactors f4_cofactors(const AnPresentation& P) {
  const unsigned n = P.n();
  auto m = [&](unsigned i, unsigned j) { return P.monomial(i, j); };
  return {m(1, n - 2), m(n + 1, n - 1) + m(1, 2 * n - 1) + m(n + 1, 0) + m(1, n), -(m(0, n + 1) + m(0, 2))};
}

bool cofactor_identity(const AnPresentation& P, const Cofactors& c) {
  const auto& f = P.generators();
  return c.c1 * f[0] + c.c2 * f[1] + c.c3 * f[2] == P.f4();
}

bool cofactor_identity(const AnPresentation& P) { return cofactor_identity(P, f4_cofactors(P)); }

std::vector<MonomialRelation> an_relations(unsigned n) {
  using M = Monomial;
  std::vector<MonomialRelation> out;
  auto add = [&](std::vector<M> chain, bool vanishes = false) { out.push_back({"", std::move(chain), vanishes}); };
  add({M{0, n + 2}, M{n, 2}});
  for (unsigned k = 1; k + 2 <= n; ++k) add({M{0, n + k + 2}, M{n, k + 2}});
  add({M{0, 2 * n + 1}, M{n, n + 1}, M{3 * n, 0}});
  add({M{0, 2 * n + 2}, M{n, n + 2}, M{2 * n, 2}, M{3 * n, 1}});
  for (unsigned k = 1; k < n; ++k) add({M{k, n + 2}, M{n + k, 2}, M{2 * n + k, 1}});
  add({M{1, n + 1}, M{2 * n + 1, 0}});
  for (unsigned k = 2; k < n; ++k) add({M{k, n + 1}, M{2 * n + k, 0}});
  add({M{0, 2 * n + 3}, M{1, n + 3}, M{n + 1, 3}, M{2 * n + 1, 2}, M{3 * n + 1, 0}}, true);
  const auto ctx = VariableContext::lex({"x", "y"});
  for (auto& r : out) r.label = render_chain(ctx, r);
  return out;
}

bool equal_in_algebra(const AnPresentation& P, const Polynomial& lhs, const Polynomial& rhs) {
  return normal_form(lhs - rhs, P.groebner()).is_zero();
}

bool relation_holds(const AnPresentation& P, const MonomialRelation& r) {
  if (r.chain.empty()) return false;
  const Scalar one = Scalar::one(P.field());
  std::vector<Polynomial> forms;
  for (const auto& m : r.chain) forms.push_back(normal_form(Polynomial::term(P.context(), m, one), P.groebner()));
  if (r.vanishes) return std::all_of(forms.begin(), forms.end(), [](const Polynomial& f) { return f.is_zero(); });
  if (forms[0].is_zero()) return false;
  return std::all_of(forms.begin(), forms.end(), [&](const Polynomial& f) { return f == forms[0]; });
}

std::vector<RelationCheck> verify_relations(const AnPresentation& P) {
  std::vector<RelationCheck> out;
  for (const auto& r : an_relations(P.n())) out.push_back({r.label, relation_holds(P, r)});
  return out;
}

SocleReport socle_report(const AnPresentation& P) {
  const auto& A = *P.algebra();
  Subspace s = A.socle();
  const Subspace expected =
      Subspace::span(P.field(), A.dimension(), {A.basis_element(P.index(0, 2 * P.n() + 2)).coords()});
  const bool matches = s == expected;
  return {std::move(s), matches, A.is_gorenstein()};
}

Vector flatten(const DerivationCandidate& d) {
  Vector v = d.dx.coords();
  v.insert(v.end(), d.dy.coords().begin(), d.dy.coords().end());
  return v;
}

std::vector<DerivationCandidate> derivation_space(const AnPresentation& P) {
  const auto& A = *P.algebra();
  const std::size_t dim = A.dimension();
  std::vector<Vector> rows;
  for (const auto& f : P.generators()) {
    const auto mx = A.multiplication_matrix(A.reduce(f.derivative("x")));
    const auto my = A.multiplication_matrix(A.reduce(f.derivative("y")));
    for (std::size_t r = 0; r < dim; ++r) {
      Vector row = mx[r];
      row.insert(row.end(), my[r].begin(), my[r].end());
      if (!is_zero(row)) rows.push_back(std::move(row));
    }
  }
  std::vector<DerivationCandidate> out;
  for (auto& v : nullspace(rows, P.field(), 2 * dim)) {
    Vector dx(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(dim));
    Vector dy(v.begin() + static_cast<std::ptrdiff_t>(dim), v.end());
    out.push_back({A.from_coords(std::move(dx)), A.from_coords(std::move(dy))});
  }
  return out;
}

namespace {

// For each basis monomial other than 1: a variable v dividing it and the
// index of the quotient monomial, which is again standard.
std::vector<std::pair<std::size_t, std::size_t>> leibniz_tree(const QuotientAlgebra& A) {
  std::vector<std::pair<std::size_t, std::size_t>> tree(A.dimension(), {0, 0});
  for (std::size_t l = 1; l < A.dimension(); ++l) {
    const Monomial& m = A.basis()[l];
    std::size_t v = 0;
    while (m[v] == 0) ++v;
    const auto parent = A.index_of(m / A.context()->variable(v));
    if (!parent) throw Error("standard monomials are not closed under division");
    tree[l] = {v, *parent};
  }
  return tree;
}

std::vector<AlgebraElement> variables_of(const QuotientAlgebra& A) {
  std::vector<AlgebraElement> vars;
  for (const auto& name : A.context()->names()) vars.push_back(A.variable(name));
  return vars;
}

// Linear forms in the unknown images of the variables.
using Form = std::map<std::size_t, Scalar>;
using FormVector = std::vector<Form>;

void axpy(Form& out, const Scalar& c, const Form& in) {
  for (const auto& [k, s] : in) {
    auto [it, inserted] = out.try_emplace(k, c * s);
    if (!inserted) {
      it->second += c * s;
      if (it->second.is_zero()) out.erase(it);
    }
  }
}

void axpy(FormVector& out, const Scalar& c, const FormVector& in) {
  for (std::size_t r = 0; r < in.size(); ++r) axpy(out[r], c, in[r]);
}

// Mult(u) applied to a vector of forms W indexed by basis coordinate.
FormVector multiply(const QuotientAlgebra& A, const Vector& u, const FormVector& W) {
  FormVector out(A.dimension());
  for (std::size_t k = 0; k < W.size(); ++k) {
    if (W[k].empty()) continue;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i].is_zero()) continue;
      for (const auto& [r, s] : A.structure_constant(i, k)) axpy(out[r], u[i] * s, W[k]);
    }
  }
  return out;
}

class LeibnizSystem {
 public:
  explicit LeibnizSystem(const QuotientAlgebra& A)
      : A_(A), dim_(A.dimension()), vars_(variables_of(A)), echelon_(A.field(), A.context()->arity() * dim_) {
    const Scalar one = Scalar::one(A.field());
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      FormVector m(dim_);
      for (std::size_t k = 0; k < dim_; ++k) m[k].emplace(v * dim_ + k, one);
      images_.push_back(std::move(m));
    }
    const auto tree = leibniz_tree(A);
    basis_.assign(dim_, FormVector(dim_));
    for (std::size_t l = 1; l < dim_; ++l) {
      const auto [v, parent] = tree[l];
      basis_[l] = multiply(A, A.basis_element(parent).coords(), images_[v]);
      axpy(basis_[l], one, multiply(A, vars_[v].coords(), basis_[parent]));
    }
  }

  void add_generator_equations() {
    const Scalar one = Scalar::one(A_.field());
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      FormVector eq = combination(vars_[v].coords());
      axpy(eq, -one, images_[v]);
      add(eq);
      for (std::size_t i = 0; i < dim_; ++i) {
        FormVector e = combination((vars_[v] * A_.basis_element(i)).coords());
        axpy(e, -one, multiply(A_, A_.basis_element(i).coords(), images_[v]));
        axpy(e, -one, multiply(A_, vars_[v].coords(), basis_[i]));
        add(e);
      }
    }
  }

  void add_pair_equation(std::size_t i, std::size_t j) {
    const Scalar one = Scalar::one(A_.field());
    FormVector e(dim_);
    for (const auto& [t, s] : A_.structure_constant(i, j)) axpy(e, s, basis_[t]);
    axpy(e, -one, multiply(A_, A_.basis_element(j).coords(), basis_[i]));
    axpy(e, -one, multiply(A_, A_.basis_element(i).coords(), basis_[j]));
    add(e);
  }

  std::vector<LinearMap> solutions() const {
    std::vector<LinearMap> out;
    for (const auto& s : echelon_.nullspace()) {
      LinearMap m(dim_, zero_vector(A_.field(), dim_));
      for (std::size_t l = 0; l < dim_; ++l) {
        for (std::size_t r = 0; r < dim_; ++r) {
          for (const auto& [k, c] : basis_[l][r]) {
            if (!s[k].is_zero()) m[l][r] += c * s[k];
          }
        }
      }
      out.push_back(std::move(m));
    }
    return out;
  }

 private:
  FormVector combination(const Vector& c) const {
    FormVector out(dim_);
    for (std::size_t l = 0; l < dim_; ++l) {
      if (!c[l].is_zero()) axpy(out, c[l], basis_[l]);
    }
    return out;
  }

  void add(const FormVector& eq) {
    for (const auto& f : eq) {
      if (!f.empty()) echelon_.add(SparseVector(f.begin(), f.end()));
    }
  }

  const QuotientAlgebra& A_;
  std::size_t dim_;
  std::vector<AlgebraElement> vars_;
  IncrementalEchelon echelon_;
  std::vector<FormVector> images_;
  std::vector<FormVector> basis_;  // delta(e_l) as forms
};

// u * e_j from the sparse table.
Vector times_basis(const QuotientAlgebra& A, const Vector& u, std::size_t j) {
  Vector out = zero_vector(A.field(), A.dimension());
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k].is_zero()) continue;
    for (const auto& [r, s] : A.structure_constant(k, j)) out[r] += u[k] * s;
  }
  return out;
}

bool leibniz_holds(const QuotientAlgebra& A, const LinearMap& d, std::size_t i, std::size_t j) {
  Vector lhs = zero_vector(A.field(), A.dimension());
  for (const auto& [t, s] : A.structure_constant(i, j)) {
    for (std::size_t r = 0; r < lhs.size(); ++r) {
      if (!d[t][r].is_zero()) lhs[r] += s * d[t][r];
    }
  }
  Vector a = times_basis(A, d[i], j);
  const Vector b = times_basis(A, d[j], i);
  for (std::size_t r = 0; r < a.size(); ++r) a[r] += b[r];
  return lhs == a;
}

}  // namespace

LinearMap derivation_matrix(const QuotientAlgebra& A, const std::vector<AlgebraElement>& images) {
  if (images.size() != A.context()->arity()) throw MismatchError("one image per variable is required");
  const auto tree = leibniz_tree(A);
  const auto vars = variables_of(A);
  std::vector<AlgebraElement> cols{A.zero()};
  for (std::size_t l = 1; l < A.dimension(); ++l) {
    const auto [v, parent] = tree[l];
    cols.push_back(A.basis_element(parent) * images[v] + vars[v] * cols[parent]);
  }
  LinearMap m;
  for (auto& c : cols) m.push_back(c.coords());
  return m;
}

AlgebraElement apply_map(const LinearMap& m, const AlgebraElement& u) {
  const auto& A = *u.algebra();
  if (m.size() != A.dimension()) throw MismatchError("linear map does not match the algebra");
  Vector out = zero_vector(A.field(), A.dimension());
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (u[j].is_zero()) continue;
    for (std::size_t r = 0; r < out.size(); ++r) {
      if (!m[j][r].is_zero()) out[r] += u[j] * m[j][r];
    }
  }
  return A.from_coords(std::move(out));
}

std::vector<LinearMap> derivation_full_oracle(const QuotientAlgebra& A, std::size_t max_dimension) {
  const std::size_t dim = A.dimension();
  if (dim > max_dimension) {
    throw DomainError("algebra dimension " + std::to_string(dim) + " exceeds the oracle bound " +
                      std::to_string(max_dimension));
  }
  A.precompute_structure_constants();
  LeibnizSystem system(A);
  system.add_generator_equations();
  // The generator equations already imply the rule on all pairs; the direct
  // check below guards that argument and repairs the system if it ever fails.
  for (int round = 0; round < 4; ++round) {
    auto maps = system.solutions();
    bool clean = true;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i; j < dim; ++j) {
        const bool ok = std::all_of(maps.begin(), maps.end(), [&](const LinearMap& d) { return leibniz_holds(A, d, i, j); });
        if (!ok) {
          system.add_pair_equation(i, j);
          clean = false;
        }
      }
    }
    if (clean) return maps;
  }
  throw Error("derivation oracle did not converge");
}

Vector restrict_to_generators(const QuotientAlgebra& A, const LinearMap& m) {
  Vector out;
  for (const auto& name : A.context()->names()) {
    const auto img = apply_map(m, A.variable(name));
    out.insert(out.end(), img.coords().begin(), img.coords().end());
  }
  return out;
}

bool derivation_spaces_agree(const AnPresentation& P, const std::vector<DerivationCandidate>& space,
                             const std::vector<LinearMap>& oracle) {
  const auto& A = *P.algebra();
  const std::size_t ambient = 2 * A.dimension();
  std::vector<Vector> s, o;
  for (const auto& d : space) s.push_back(flatten(d));
  for (const auto& m : oracle) o.push_back(restrict_to_generators(A, m));
  const Subspace S = Subspace::span(P.field(), ambient, s);
  const Subspace O = Subspace::span(P.field(), ambient, o);
  if (S.dim() != space.size() || O.dim() != oracle.size() || S.dim() != O.dim()) return false;
  const bool s_in_o = std::all_of(s.begin(), s.end(), [&](const Vector& v) { return O.contains(v); });
  const bool o_in_s = std::all_of(o.begin(), o.end(), [&](const Vector& v) { return S.contains(v); });
  return s_in_o && o_in_s && S == O;
}

AnnihilationReport derivations_annihilate(const AnPresentation& P, const std::vector<DerivationCandidate>& space) {
  const auto& A = *P.algebra();
  const unsigned n = P.n();
  const auto via_y = A.reduce(P.monomial(0, 2 * n).scaled(Scalar(P.field(), long(2 * n + 1))));
  const auto via_x = A.reduce(P.monomial(3 * n - 1, 0).scaled(Scalar(P.field(), long(3 * n))));
  AnnihilationReport report{true, true, P.hypothesis_violated()};
  for (const auto& d : space) {
    const auto a = via_y * d.dy;
    const auto b = via_x * d.dx;
    if (!a.is_zero() || !b.is_zero()) report.annihilated = false;
    if (!(a == b)) report.representatives_agree = false;
  }
  return report;
}

AlgebraElement evaluate_at(const Polynomial& p, const AlgebraElement& x, const AlgebraElement& y) {
  const auto& A = *x.algebra();
  if (p.context()->arity() != 2) throw MismatchError("expected a polynomial in x and y");
  std::vector<AlgebraElement> xs{A.unit()}, ys{A.unit()};
  auto power = [](std::vector<AlgebraElement>& cache, const AlgebraElement& base, std::size_t k) -> const AlgebraElement& {
    while (cache.size() <= k) cache.push_back(cache.back() * base);
    return cache[k];
  };
  AlgebraElement sum = A.zero();
  for (const auto& t : p.terms()) {
    const auto& px = power(xs, x, t.monomial[0]);
    const auto& py = power(ys, y, t.monomial[1]);
    sum += (px * py).scaled(t.coeff);
  }
  return sum;
}

AutomorphismReport verify_automorphism(const AnPresentation& P, const AutomorphismCandidate& c) {
  const auto& A = *P.algebra();
  const Polynomial phi_x = c.phi_x.in_context(P.context());
  const Polynomial phi_y = c.phi_y.in_context(P.context());
  const Monomial one{0, 0};
  if (!phi_x.coeff(one).is_zero() || !phi_y.coeff(one).is_zero()) {
    throw DomainError("automorphism candidate has a nonzero constant term");
  }
  const auto ux = A.reduce(phi_x);
  const auto uy = A.reduce(phi_y);
  AutomorphismReport r;
  r.hypothesis_violated = P.hypothesis_violated();
  r.generators_vanish = std::all_of(P.generators().begin(), P.generators().end(),
                                    [&](const Polynomial& f) { return evaluate_at(f, ux, uy).is_zero(); });
  const std::size_t ix = P.index(1, 0), iy = P.index(0, 1);
  r.linear_part_invertible = !(ux[ix] * uy[iy] - ux[iy] * uy[ix]).is_zero();
  r.valid = r.generators_vanish && r.linear_part_invertible;
  if (!r.valid) return r;

  const unsigned n = P.n();
  const std::size_t slot = P.index(0, 2 * n + 1);
  const auto image = uy.pow(2 * n + 1);
  const auto other = ux.pow(3 * n);
  bool pure = image == other;
  for (std::size_t k = 0; k < image.coords().size(); ++k) {
    if (k != slot && !image[k].is_zero()) pure = false;
  }
  r.line_preserved = pure && !image[slot].is_zero();
  r.gamma = image[slot];
  const unsigned e = (n % 3 == 1) ? (n - 1) / 3 : n - 1;
  r.exponent_condition = r.gamma->pow(e).is_one();
  if (!r.line_preserved && !r.hypothesis_violated) {
    r.finding = "valid automorphism moves y^" + std::to_string(2 * n + 1) + " off its coordinate line";
  }
  return r;
}

AutomorphismCandidate identity_map(const AnPresentation& P) { return {P.monomial(1, 0), P.monomial(0, 1)}; }

AutomorphismCandidate sign_flip(const AnPresentation& P) {
  const Polynomial y = P.monomial(0, 1);
  return {-P.monomial(1, 0), P.n() % 2 == 0 ? y : -y};
}

AutomorphismCandidate swap_map(const AnPresentation& P) { return {P.monomial(0, 1), P.monomial(1, 0)}; }

AutomorphismCandidate exponential(const AnPresentation& P, const DerivationCandidate& delta) {
  const auto& A = *P.algebra();
  const LinearMap d = derivation_matrix(A, {delta.dx, delta.dy});
  auto exp_of = [&](const AlgebraElement& v) {
    AlgebraElement sum = v, term = v;
    for (std::size_t k = 1; k <= A.dimension(); ++k) {
      term = apply_map(d, term).scaled(Scalar(A.field(), long(k)).inverse());
      if (term.is_zero()) return sum;
      sum += term;
    }
    throw DomainError("derivation is not nilpotent");
  };
  return {exp_of(A.variable("x")).to_polynomial(), exp_of(A.variable("y")).to_polynomial()};
}

AutomorphismCandidate compose_maps(const AnPresentation& P, const AutomorphismCandidate& outer,
                                   const AutomorphismCandidate& inner) {
  const auto& A = *P.algebra();
  const auto ox = A.reduce(outer.phi_x.in_context(P.context()));
  const auto oy = A.reduce(outer.phi_y.in_context(P.context()));
  return {evaluate_at(inner.phi_x.in_context(P.context()), ox, oy).to_polynomial(),
          evaluate_at(inner.phi_y.in_context(P.context()), ox, oy).to_polynomial()};
}

}  // namespace artin
