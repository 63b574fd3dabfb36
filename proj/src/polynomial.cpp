#include "artin/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "artin/error.hpp"

namespace artin {

namespace {

void sort_descending(const VariableContext& ctx, std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), [&ctx](const Term& a, const Term& b) {
    return ctx.compare(a.monomial, b.monomial) > 0;
  });
}

std::vector<Term> drain(std::unordered_map<Monomial, Scalar, MonomialHash>& acc,
                        const VariableContext& ctx) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (!c.is_zero()) out.push_back(Term{m, std::move(c)});
  }
  sort_descending(ctx, out);
  return out;
}

}  // namespace

Polynomial::Polynomial(ContextPtr ctx, Field field) : ctx_(std::move(ctx)), field_(field) {
  if (!ctx_) throw DomainError("polynomial requires a variable context");
}

Polynomial Polynomial::constant(ContextPtr ctx, const Scalar& c) {
  Polynomial p(std::move(ctx), c.field());
  if (!c.is_zero()) p.terms_.push_back(Term{p.ctx_->one(), c});
  return p;
}

Polynomial Polynomial::term(ContextPtr ctx, Monomial m, const Scalar& c) {
  Polynomial p(std::move(ctx), c.field());
  if (m.arity() != p.ctx_->arity()) throw MismatchError("monomial arity does not match context");
  if (!c.is_zero()) p.terms_.push_back(Term{std::move(m), c});
  return p;
}

Polynomial Polynomial::variable(ContextPtr ctx, Field field, std::string_view name) {
  const std::size_t idx = ctx->require_index(name);
  Monomial m = ctx->variable(idx);
  return term(std::move(ctx), std::move(m), Scalar::one(field));
}

Polynomial Polynomial::from_terms(ContextPtr ctx, Field field, std::vector<Term> terms) {
  Polynomial p(std::move(ctx), field);
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  for (auto& t : terms) {
    if (t.monomial.arity() != p.ctx_->arity()) {
      throw MismatchError("monomial arity does not match context");
    }
    if (t.coeff.field() != field) throw MismatchError("coefficient field mismatch");
    auto [it, inserted] = acc.try_emplace(std::move(t.monomial), t.coeff);
    if (!inserted) it->second += t.coeff;
  }
  p.terms_ = drain(acc, *p.ctx_);
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return terms_.front();
}

Scalar Polynomial::coeff(const Monomial& m) const {
  // Terms are sorted descending, so binary search applies.
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [this](const Term& t, const Monomial& key) {
    return ctx_->compare(t.monomial, key) > 0;
  });
  if (it != terms_.end() && it->monomial == m) return it->coeff;
  return Scalar::zero(field_);
}

std::uint64_t Polynomial::total_degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree());
  return d;
}

bool Polynomial::is_homogeneous(std::uint64_t degree) const noexcept {
  return std::all_of(terms_.begin(), terms_.end(),
                     [degree](const Term& t) { return t.monomial.degree() == degree; });
}

bool Polynomial::is_trailing_homogeneous(std::uint64_t degree) const noexcept {
  const std::size_t lead = ctx_->leading_size();
  const std::size_t n = ctx_->arity();
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) {
    return t.monomial.degree(lead, n) == degree;
  });
}

void Polynomial::require_compatible(const Polynomial& g) const {
  if (!ctx_->same_as(*g.ctx_)) throw MismatchError("polynomials live in different contexts");
  if (field_ != g.field_) throw MismatchError("polynomials live over different fields");
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& g) {
  require_compatible(g);
  std::vector<Term> out;
  out.reserve(terms_.size() + g.terms_.size());
  auto a = terms_.begin();
  auto b = g.terms_.begin();
  while (a != terms_.end() && b != g.terms_.end()) {
    const int c = ctx_->compare(a->monomial, b->monomial);
    if (c > 0) {
      out.push_back(std::move(*a++));
    } else if (c < 0) {
      out.push_back(*b++);
    } else {
      Scalar s = a->coeff + b->coeff;
      if (!s.is_zero()) out.push_back(Term{std::move(a->monomial), std::move(s)});
      ++a;
      ++b;
    }
  }
  for (; a != terms_.end(); ++a) out.push_back(std::move(*a));
  for (; b != g.terms_.end(); ++b) out.push_back(*b);
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& g) { return *this += -g; }

Polynomial operator*(const Polynomial& f, const Polynomial& g) {
  f.require_compatible(g);
  Polynomial r(f.ctx_, f.field_);
  if (f.is_zero() || g.is_zero()) return r;
  if (f.size() == 1) return g.mul_term(f.terms_[0].monomial, f.terms_[0].coeff);
  if (g.size() == 1) return f.mul_term(g.terms_[0].monomial, g.terms_[0].coeff);
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(f.size() * g.size());
  for (const auto& s : f.terms_) {
    for (const auto& t : g.terms_) {
      Scalar c = s.coeff * t.coeff;
      auto [it, inserted] = acc.try_emplace(s.monomial * t.monomial, c);
      if (!inserted) it->second += c;
    }
  }
  r.terms_ = drain(acc, *r.ctx_);
  return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  Polynomial r(ctx_, field_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.monomial, t.coeff * c});
  return r;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Scalar& c) const {
  Polynomial r(ctx_, field_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the order, so the result stays sorted.
  for (const auto& t : terms_) r.terms_.push_back(Term{t.monomial * m, t.coeff * c});
  return r;
}

Polynomial Polynomial::pow(std::uint64_t k) const {
  Polynomial result = constant(ctx_, Scalar::one(field_));
  Polynomial base(*this);
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= ctx_->arity()) throw DomainError("variable index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const auto e = t.monomial[var];
    if (e == 0) continue;
    Term d{t.monomial, t.coeff * Scalar(field_, static_cast<long>(e))};
    d.monomial[var] = e - 1;
    if (!d.coeff.is_zero()) out.push_back(std::move(d));
  }
  return from_terms(ctx_, field_, std::move(out));
}

Polynomial Polynomial::derivative(std::string_view var) const {
  return derivative(ctx_->require_index(var));
}

Polynomial Polynomial::coefficient_of(const Monomial& m) const {
  if (m.arity() != ctx_->arity()) throw MismatchError("monomial arity does not match context");
  if (!ctx_->is_leading_pure(m)) {
    throw DomainError("coefficient_of: monomial involves a non-block variable");
  }
  const std::size_t lead = ctx_->leading_size();
  Polynomial r(ctx_, field_);
  for (const auto& t : terms_) {
    bool match = true;
    for (std::size_t i = 0; i < lead && match; ++i) match = t.monomial[i] == m[i];
    if (!match) continue;
    Term s{t.monomial, t.coeff};
    for (std::size_t i = 0; i < lead; ++i) s.monomial[i] = 0;
    r.terms_.push_back(std::move(s));
  }
  // Stripping a common leading part keeps the trailing order, hence sorted.
  return r;
}

Polynomial Polynomial::in_context(const ContextPtr& target) const {
  std::vector<std::size_t> map(ctx_->arity());
  std::vector<bool> used(ctx_->arity(), false);
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < ctx_->arity(); ++i) used[i] = used[i] || t.monomial[i] != 0;
  }
  for (std::size_t i = 0; i < ctx_->arity(); ++i) {
    auto idx = target->index_of(ctx_->name(i));
    if (idx) {
      map[i] = *idx;
    } else if (used[i]) {
      throw DomainError("variable '" + ctx_->name(i) + "' is missing from the target context");
    } else {
      map[i] = static_cast<std::size_t>(-1);
    }
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target->arity());
    for (std::size_t i = 0; i < ctx_->arity(); ++i) {
      if (t.monomial[i] != 0) m[map[i]] = t.monomial[i];
    }
    out.push_back(Term{std::move(m), t.coeff});
  }
  return from_terms(target, field_, std::move(out));
}

Scalar Polynomial::evaluate(std::span<const Scalar> point) const {
  if (point.size() != ctx_->arity()) throw MismatchError("evaluation point has wrong arity");
  Scalar sum = Scalar::zero(field_);
  for (const auto& t : terms_) {
    Scalar v = t.coeff;
    for (std::size_t i = 0; i < point.size() && !v.is_zero(); ++i) {
      if (t.monomial[i] != 0) v *= point[i].pow(t.monomial[i]);
    }
    sum += v;
  }
  return sum;
}

std::vector<std::size_t> Polynomial::support_variables() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ctx_->arity(); ++i) {
    for (const auto& t : terms_) {
      if (t.monomial[i] != 0) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

std::string Polynomial::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    bool negative = false;
    std::string mag;
    if (field_.is_rational()) {
      negative = sgn(t.coeff.rational()) < 0;
      mag = mpq_class(abs(t.coeff.rational())).get_str();
    } else {
      mag = t.coeff.to_string();
    }
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const bool unit = t.monomial.is_one();
    if (unit) {
      out += mag;
    } else if (mag == "1") {
      out += ctx_->render(t.monomial);
    } else {
      out += mag + '*' + ctx_->render(t.monomial);
    }
  }
  return out;
}

bool operator==(const Polynomial& f, const Polynomial& g) {
  return f.ctx_->same_as(*g.ctx_) && f.field_ == g.field_ && f.terms_ == g.terms_;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ContextPtr& ctx, Field field)
      : text_(text), ctx_(ctx), field_(field) {}

  Polynomial run() {
    std::vector<Term> terms;
    skip();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
    }
    terms.push_back(term(negative));
    for (;;) {
      skip();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      get();
      terms.push_back(term(c == '-'));
    }
    return Polynomial::from_terms(ctx_, field_, std::move(terms));
  }

 private:
  Term term(bool negative) {
    skip();
    Scalar c = Scalar::one(field_);
    Monomial m = ctx_->one();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = coefficient();
      skip();
      while (peek() == '*') {
        get();
        factor(m);
        skip();
      }
    } else {
      factor(m);
      skip();
      while (peek() == '*') {
        get();
        factor(m);
        skip();
      }
    }
    if (negative) c = -c;
    return Term{std::move(m), std::move(c)};
  }

  Scalar coefficient() {
    const mpz_class num = integer();
    skip();
    if (peek() != '/') return Scalar(field_, mpq_class(num));
    get();
    skip();
    const std::size_t at = pos_;
    const mpz_class den = integer();
    if (den == 0) throw ParseError("zero denominator", at);
    try {
      return Scalar(field_, num, den);
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " at position " + std::to_string(at));
    }
  }

  mpz_class integer() {
    skip();
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  void factor(Monomial& m) {
    skip();
    const std::size_t start = pos_;
    auto is_head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    auto is_tail = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    if (at_end() || !is_head(peek())) fail("expected a variable");
    while (!at_end() && is_tail(peek())) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    const auto idx = ctx_->index_of(name);
    if (!idx) {
      throw DomainError("unknown variable '" + std::string(name) + "' at position " +
                        std::to_string(start));
    }
    std::uint64_t e = 1;
    skip();
    if (peek() == '^') {
      get();
      skip();
      const std::size_t at = pos_;
      const mpz_class z = integer();
      if (!z.fits_ulong_p() || z.get_ui() > 0xffffffffULL) throw ParseError("exponent overflow", at);
      e = z.get_ui();
    }
    if (m[*idx] + e > 0xffffffffULL) throw ParseError("exponent overflow", start);
    m[*idx] += static_cast<Monomial::Exponent>(e);
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char get() { return text_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("syntax error: " + what, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  const ContextPtr& ctx_;
  Field field_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const ContextPtr& ctx, Field field) {
  return Parser(text, ctx, field).run();
}

Polynomial compose(const Polynomial& f, const Substitution& images) {
  if (images.empty()) {
    if (f.is_constant()) return f;
    throw DomainError("compose: no images given");
  }
  const auto& target = images.begin()->second.context();
  const Field field = f.field();
  for (const auto& [name, img] : images) {
    if (!img.context()->same_as(*target)) throw MismatchError("compose: images live in different contexts");
    if (img.field() != field) throw MismatchError("compose: image field mismatch");
  }
  const auto& ctx = *f.context();
  // Per-variable image and cache of its powers.
  std::vector<const Polynomial*> image(ctx.arity(), nullptr);
  for (std::size_t v : f.support_variables()) {
    auto it = images.find(ctx.name(v));
    if (it == images.end()) throw DomainError("compose: missing image for '" + ctx.name(v) + "'");
    image[v] = &it->second;
  }
  std::vector<std::vector<Polynomial>> powers(ctx.arity());
  auto power = [&](std::size_t v, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, Scalar::one(field)));
    while (cache.size() <= e) cache.push_back(cache.back() * *image[v]);
    return cache[e];
  };
  Polynomial result(target, field);
  for (const auto& t : f.terms()) {
    Polynomial prod = Polynomial::constant(target, t.coeff);
    for (std::size_t v = 0; v < ctx.arity() && !prod.is_zero(); ++v) {
      if (t.monomial[v] != 0) prod = prod * power(v, t.monomial[v]);
    }
    result += prod;
  }
  return result;
}

Polynomial substitute(const Polynomial& f, std::string_view var, const Polynomial& image) {
  const auto& ctx = f.context();
  if (!image.context()->same_as(*ctx)) throw MismatchError("substitute: image context mismatch");
  const std::size_t v = ctx->require_index(var);
  std::vector<Polynomial> powers{Polynomial::constant(ctx, Scalar::one(f.field()))};
  Polynomial result(ctx, f.field());
  std::vector<Term> untouched;
  for (const auto& t : f.terms()) {
    const auto e = t.monomial[v];
    if (e == 0) {
      untouched.push_back(t);
      continue;
    }
    while (powers.size() <= e) powers.push_back(powers.back() * image);
    Monomial rest = t.monomial;
    rest[v] = 0;
    result += powers[e].mul_term(rest, t.coeff);
  }
  result += Polynomial::from_terms(ctx, f.field(), std::move(untouched));
  return result;
}

}  // namespace artin
