#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "artin/polynomial.hpp"

namespace artin {

/// {"vars":[...],"terms":[{"c":"p/q","e":[...]}...]} with terms in canonical
/// order. Prime-field polynomials additionally carry "field":"fp:P".
nlohmann::json to_json(const Polynomial& f);

/// Inverse of to_json. The context is rebuilt as pure lex over "vars"
/// unless `ctx` is given, in which case "vars" must match its names.
Polynomial polynomial_from_json(const nlohmann::json& j, const ContextPtr& ctx = nullptr);

std::string dump_polynomial(const Polynomial& f);
Polynomial load_polynomial(std::string_view text, const ContextPtr& ctx = nullptr);

}  // namespace artin
