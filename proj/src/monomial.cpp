#include "artin/monomial.hpp"

#include <algorithm>
#include <limits>
#include <regex>

#include "artin/error.hpp"

namespace artin {

bool Monomial::is_one() const noexcept {
  return std::all_of(e_.begin(), e_.end(), [](Exponent e) { return e == 0; });
}

std::uint64_t Monomial::degree() const noexcept { return degree(0, e_.size()); }

std::uint64_t Monomial::degree(std::size_t begin, std::size_t end) const noexcept {
  std::uint64_t d = 0;
  for (std::size_t i = begin; i < end; ++i) d += e_[i];
  return d;
}

bool Monomial::divides(const Monomial& m) const noexcept {
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] > m.e_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& m) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (m.e_[i] > std::numeric_limits<Exponent>::max() - r.e_[i]) {
      throw DomainError("exponent overflow");
    }
    r.e_[i] += m.e_[i];
  }
  return r;
}

Monomial Monomial::operator/(const Monomial& d) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= d.e_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& m) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::max(r.e_[i], m.e_[i]);
  return r;
}

bool Monomial::coprime(const Monomial& m) const noexcept {
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (e_[i] != 0 && m.e_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::pow(std::uint64_t k) const {
  Monomial r(*this);
  for (auto& e : r.e_) {
    const std::uint64_t v = static_cast<std::uint64_t>(e) * k;
    if (v > std::numeric_limits<Exponent>::max()) throw DomainError("exponent overflow");
    e = static_cast<Exponent>(v);
  }
  return r;
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (Exponent e : e_) {
    h ^= e;
    h *= 1099511628211ULL;
  }
  return h;
}

VariableContext::VariableContext(std::vector<std::string> names, std::size_t leading)
    : names_(std::move(names)), leading_(leading) {
  static const std::regex ident("[a-zA-Z_][a-zA-Z0-9_]*");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!std::regex_match(names_[i], ident)) {
      throw DomainError("invalid variable name '" + names_[i] + "'");
    }
    if (!index_.emplace(names_[i], i).second) {
      throw DomainError("duplicate variable name '" + names_[i] + "'");
    }
  }
}

ContextPtr VariableContext::lex(std::vector<std::string> names) {
  const std::size_t n = names.size();
  return ContextPtr(new VariableContext(std::move(names), n));
}

ContextPtr VariableContext::block(std::vector<std::string> leading,
                                  std::vector<std::string> trailing) {
  std::sort(trailing.begin(), trailing.end());
  const std::size_t lead = leading.size();
  leading.insert(leading.end(), std::make_move_iterator(trailing.begin()),
                 std::make_move_iterator(trailing.end()));
  return ContextPtr(new VariableContext(std::move(leading), lead));
}

std::optional<std::size_t> VariableContext::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t VariableContext::require_index(std::string_view name) const {
  auto idx = index_of(name);
  if (!idx) throw DomainError("unknown variable '" + std::string(name) + "'");
  return *idx;
}

bool VariableContext::is_leading_pure(const Monomial& m) const noexcept {
  for (std::size_t i = leading_; i < names_.size(); ++i) {
    if (m[i] != 0) return false;
  }
  return true;
}

Monomial VariableContext::leading_part(const Monomial& m) const {
  Monomial r(m);
  for (std::size_t i = leading_; i < names_.size(); ++i) r[i] = 0;
  return r;
}

Monomial VariableContext::trailing_part(const Monomial& m) const {
  Monomial r(m);
  for (std::size_t i = 0; i < leading_; ++i) r[i] = 0;
  return r;
}

int VariableContext::compare(const Monomial& a, const Monomial& b) const noexcept {
  // Leading block lex, then trailing block lex.
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

Monomial VariableContext::variable(std::size_t i, Monomial::Exponent e) const {
  Monomial m(arity());
  m[i] = e;
  return m;
}

Monomial VariableContext::monomial(
    std::initializer_list<std::pair<std::string_view, Monomial::Exponent>> factors) const {
  Monomial m(arity());
  for (const auto& [name, e] : factors) m[require_index(name)] += e;
  return m;
}

std::string VariableContext::render(const Monomial& m) const {
  std::string out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names_[i];
    if (m[i] != 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace artin
