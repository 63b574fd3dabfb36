#include "artin/groebner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include "artin/error.hpp"

namespace artin {

namespace {

struct Descending {
  const VariableContext* ctx;
  bool operator()(const Monomial& a, const Monomial& b) const { return ctx->compare(a, b) > 0; }
};

void require_same_ring(const Polynomial& f, const Polynomial& g) {
  if (!f.context()->same_as(*g.context())) throw MismatchError("polynomials live in different contexts");
  if (f.field() != g.field()) throw MismatchError("polynomials live over different fields");
}

Polynomial monic(const Polynomial& f) {
  const Scalar& lc = f.leading_coeff();
  return lc.is_one() ? f : f.scaled(lc.inverse());
}

}  // namespace

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("S-polynomial of a zero polynomial");
  require_same_ring(f, g);
  const Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  Polynomial a = f.mul_term(l / f.leading_monomial(), f.leading_coeff().inverse());
  Polynomial b = g.mul_term(l / g.leading_monomial(), g.leading_coeff().inverse());
  return a - b;
}

Division divide(const Polynomial& f, std::span<const Polynomial> divisors) {
  for (const auto& g : divisors) {
    if (g.is_zero()) throw DomainError("division by the zero polynomial");
    require_same_ring(f, g);
  }
  const auto& ctx = f.context();
  std::vector<Scalar> inverse_lc;
  inverse_lc.reserve(divisors.size());
  for (const auto& g : divisors) inverse_lc.push_back(g.leading_coeff().inverse());

  std::map<Monomial, Scalar, Descending> work(Descending{ctx.get()});
  for (const auto& t : f.terms()) work.emplace(t.monomial, t.coeff);
  std::vector<std::vector<Term>> quotients(divisors.size());
  std::vector<Term> remainder;

  while (!work.empty()) {
    auto top = work.begin();
    const Monomial m = top->first;
    const Scalar c = top->second;
    std::size_t which = divisors.size();
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if (divisors[i].leading_monomial().divides(m)) {
        which = i;
        break;
      }
    }
    if (which == divisors.size()) {
      remainder.push_back(Term{m, c});
      work.erase(top);
      continue;
    }
    const Polynomial& g = divisors[which];
    const Monomial q = m / g.leading_monomial();
    const Scalar factor = c * inverse_lc[which];
    quotients[which].push_back(Term{q, factor});
    work.erase(top);
    bool first = true;
    for (const auto& t : g.terms()) {
      if (first) {
        first = false;  // cancels the erased top term
        continue;
      }
      Monomial mm = t.monomial * q;
      Scalar delta = -(factor * t.coeff);
      auto [it, inserted] = work.try_emplace(std::move(mm), delta);
      if (!inserted) {
        it->second += delta;
        if (it->second.is_zero()) work.erase(it);
      }
    }
  }

  Division out{{}, Polynomial::from_terms(ctx, f.field(), std::move(remainder))};
  out.quotients.reserve(divisors.size());
  for (auto& q : quotients) out.quotients.push_back(Polynomial::from_terms(ctx, f.field(), std::move(q)));
  return out;
}

struct GroebnerBasis::Cache {
  std::shared_mutex mutex;
  std::unordered_map<Monomial, std::vector<Term>, MonomialHash> monomial_nf;
};

GroebnerBasis::GroebnerBasis(std::vector<Polynomial> elements)
    : elements_(std::move(elements)), cache_(std::make_shared<Cache>()) {
  if (elements_.empty()) throw DomainError("a Groebner basis needs at least one element");
  ctx_ = elements_.front().context();
  field_ = elements_.front().field();
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const auto& g = elements_[i];
    if (g.is_zero()) throw DomainError("a Groebner basis element is zero");
    require_same_ring(g, elements_.front());
    const Term& lt = g.leading_term();
    if (ctx_->is_block()) {
      if (!ctx_->is_leading_pure(lt.monomial) || !(lt.coeff.is_one() || lt.coeff.is_minus_one())) {
        throw DomainError("leading term " + lt.coeff.to_string() + "*" + ctx_->render(lt.monomial) +
                          " is not a unit multiple of a leading-block monomial");
      }
    } else if (!lt.coeff.is_one()) {
      throw DomainError("Groebner basis element is not monic");
    }
    if (i > 0 && ctx_->compare(elements_[i - 1].leading_monomial(), lt.monomial) >= 0) {
      throw DomainError("Groebner basis is not sorted ascending by leading monomial");
    }
    for (const auto& t : g.terms()) {
      if (!ctx_->is_leading_pure(t.monomial)) leading_only_ = false;
    }
  }
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Monomial& lm = elements_[i].leading_monomial();
    for (std::size_t j = 0; j < elements_.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : elements_[j].terms()) {
        if (lm.divides(t.monomial)) throw DomainError("Groebner basis is not interreduced");
      }
    }
  }
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  out.reserve(elements_.size());
  for (const auto& g : elements_) out.push_back(g.leading_monomial());
  return out;
}

bool GroebnerBasis::certify() {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (std::size_t j = i + 1; j < elements_.size(); ++j) {
      if (!divide(s_polynomial(elements_[i], elements_[j]), elements_).remainder.is_zero()) {
        certified_ = false;
        return false;
      }
    }
  }
  certified_ = true;
  return true;
}

GroebnerBasis GroebnerBasis::embed(const ContextPtr& target) const {
  std::vector<Polynomial> mapped;
  mapped.reserve(elements_.size());
  for (const auto& g : elements_) mapped.push_back(g.in_context(target));
  GroebnerBasis out(std::move(mapped));
  out.certified_ = certified_;
  return out;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) {
  require_same_ring(f, G.elements_.front());
  if (!G.certified_ || !G.leading_only_) return divide(f, G.elements_).remainder;

  // With a certified basis free of trailing variables, reduction is linear
  // over the trailing block: reduce each leading part once and cache it.
  const auto& ctx = *f.context();
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  for (const auto& t : f.terms()) {
    Monomial head = ctx.leading_part(t.monomial);
    const std::vector<Term>* nf = nullptr;
    {
      std::shared_lock lock(G.cache_->mutex);
      auto it = G.cache_->monomial_nf.find(head);
      if (it != G.cache_->monomial_nf.end()) nf = &it->second;
    }
    if (!nf) {
      Polynomial r = divide(Polynomial::term(f.context(), head, Scalar::one(f.field())), G.elements_).remainder;
      std::vector<Term> terms(r.terms().begin(), r.terms().end());
      std::unique_lock lock(G.cache_->mutex);
      nf = &G.cache_->monomial_nf.try_emplace(std::move(head), std::move(terms)).first->second;
    }
    Monomial tail = ctx.trailing_part(t.monomial);
    const bool pure = tail.is_one();
    for (const auto& r : *nf) {
      Monomial m = pure ? r.monomial : r.monomial * tail;
      Scalar c = r.coeff * t.coeff;
      auto [it, inserted] = acc.try_emplace(std::move(m), c);
      if (!inserted) it->second += c;
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (!c.is_zero()) out.push_back(Term{m, std::move(c)});
  }
  return Polynomial::from_terms(f.context(), f.field(), std::move(out));
}

GroebnerBasis buchberger(std::vector<Polynomial> gens, const BuchbergerOptions& options) {
  std::vector<Polynomial> G;
  for (auto& g : gens) {
    if (!g.is_zero()) G.push_back(monic(g));
  }
  if (G.empty()) throw DomainError("buchberger needs at least one nonzero generator");
  for (const auto& g : G) require_same_ring(g, G.front());
  const auto& ctx = *G.front().context();

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::deque<Pair> pairs;
  auto add_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      pairs.push_back(Pair{i, k, G[i].leading_monomial().lcm(G[k].leading_monomial())});
    }
  };
  for (std::size_t k = 1; k < G.size(); ++k) add_pairs(k);

  while (!pairs.empty()) {
    auto pick = pairs.begin();
    if (options.strategy == BuchbergerOptions::Strategy::Normal) {
      for (auto it = pairs.begin(); it != pairs.end(); ++it) {
        const int c = ctx.compare(it->lcm, pick->lcm);
        if (c < 0 || (c == 0 && (it->j < pick->j || (it->j == pick->j && it->i < pick->i)))) pick = it;
      }
    }
    const Pair p = *pick;
    pairs.erase(pick);
    if (options.first_criterion && G[p.i].leading_monomial().coprime(G[p.j].leading_monomial())) continue;
    Polynomial r = divide(s_polynomial(G[p.i], G[p.j]), G).remainder;
    if (r.is_zero()) continue;
    G.push_back(monic(r));
    add_pairs(G.size() - 1);
  }

  // Minimalize, then interreduce against the remaining elements.
  std::stable_sort(G.begin(), G.end(), [&ctx](const Polynomial& a, const Polynomial& b) {
    return ctx.compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  std::vector<Polynomial> minimal;
  for (const auto& g : G) {
    const bool redundant = std::any_of(minimal.begin(), minimal.end(), [&](const Polynomial& h) {
      return h.leading_monomial().divides(g.leading_monomial());
    });
    if (!redundant) minimal.push_back(g);
  }
  std::vector<Polynomial> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    reduced.push_back(monic(divide(minimal[i], others).remainder));
  }
  GroebnerBasis out(std::move(reduced));
  if (!out.certify()) throw Error("internal error: Buchberger output failed certification");
  return out;
}

bool is_groebner(std::span<const Polynomial> gens) {
  for (const auto& g : gens) {
    if (g.is_zero()) throw DomainError("is_groebner: zero generator");
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (!divide(s_polynomial(gens[i], gens[j]), gens).remainder.is_zero()) return false;
    }
  }
  return true;
}

bool ideal_member(const Polynomial& f, const GroebnerBasis& G) {
  if (!G.certified()) throw DomainError("ideal membership requires a certified Groebner basis");
  return normal_form(f, G).is_zero();
}

bool radical_member(const Polynomial& f, std::span<const Polynomial> gens) {
  const auto& src = f.context();
  std::vector<std::string> names = src->names();
  std::string fresh = "rad_s";
  while (src->index_of(fresh)) fresh += "_";
  names.push_back(fresh);
  const auto ctx = VariableContext::lex(std::move(names));
  std::vector<Polynomial> ideal;
  for (const auto& g : gens) {
    require_same_ring(g, f);
    ideal.push_back(g.in_context(ctx));
  }
  const Polynomial one = Polynomial::constant(ctx, Scalar::one(f.field()));
  ideal.push_back(one - Polynomial::variable(ctx, f.field(), fresh) * f.in_context(ctx));
  const GroebnerBasis G = buchberger(std::move(ideal));
  return G.size() == 1 && G[0] == one;
}

IdealFile parse_ideal_file(std::string_view text, Field field) {
  IdealFile out;
  std::size_t offset = 0;
  std::size_t line_no = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(offset, end - offset);
    const std::size_t line_start = offset;
    offset = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    if (!out.context) {
      const std::size_t lead = line.find_first_not_of(" \t");
      if (line.substr(lead, 5) != "vars:") {
        throw ParseError("line " + std::to_string(line_no) + ": expected a 'vars:' header", line_start + lead);
      }
      std::istringstream names{std::string(line.substr(lead + 5))};
      std::vector<std::string> vars;
      for (std::string v; names >> v;) vars.push_back(v);
      if (vars.empty()) throw ParseError("line " + std::to_string(line_no) + ": no variables declared", line_start);
      out.context = VariableContext::lex(std::move(vars));
      continue;
    }
    try {
      out.generators.push_back(parse_polynomial(line, out.context, field));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.detail(), line_start + e.position());
    }
  }
  if (!out.context) throw ParseError("ideal file is empty (no 'vars:' header)", 0);
  if (out.generators.empty()) throw DomainError("ideal file declares no generators");
  return out;
}

}  // namespace artin
