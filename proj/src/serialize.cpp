#include "artin/serialize.hpp"

#include "artin/error.hpp"

namespace artin {

using nlohmann::json;

json to_json(const Polynomial& f) {
  json j;
  j["vars"] = f.context()->names();
  if (!f.field().is_rational()) j["field"] = f.field().to_string();
  json terms = json::array();
  for (const auto& t : f.terms()) {
    auto e = t.monomial.exponents();
    terms.push_back({{"c", t.coeff.to_string()}, {"e", std::vector<Monomial::Exponent>(e.begin(), e.end())}});
  }
  j["terms"] = std::move(terms);
  return j;
}

Polynomial polynomial_from_json(const json& j, const ContextPtr& ctx) {
  try {
    const auto vars = j.at("vars").get<std::vector<std::string>>();
    ContextPtr context = ctx;
    if (!context) {
      context = VariableContext::lex(vars);
    } else if (context->names() != vars) {
      throw MismatchError("JSON variable list does not match the context");
    }
    const Field field = j.contains("field") ? Field::parse(j.at("field").get<std::string>()) : Field::rationals();
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      auto e = t.at("e").get<std::vector<Monomial::Exponent>>();
      if (e.size() != vars.size()) throw DomainError("JSON term has wrong exponent arity");
      terms.push_back(Term{Monomial(std::move(e)), Scalar::parse(field, t.at("c").get<std::string>())});
    }
    return Polynomial::from_terms(context, field, std::move(terms));
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

std::string dump_polynomial(const Polynomial& f) { return to_json(f).dump(); }

Polynomial load_polynomial(std::string_view text, const ContextPtr& ctx) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  return polynomial_from_json(j, ctx);
}

}  // namespace artin
