#pragma once

#include <string>

#include "term.hpp"

#include "json.hpp"

namespace bergex {

using Json = nlohmann::ordered_json;

Json toJson(const Ix& ix);
Json toJson(const Atom& a);
Json toJson(const Term& t);
Json toJson(const OperatorExpr& e);

Ix ixFromJson(const Json& j);
Atom atomFromJson(const Json& j);
Term termFromJson(const Json& j);
OperatorExpr exprFromJson(const Json& j);

std::string toLatex(const Term& t);
std::string toLatex(const OperatorExpr& e);
std::string toText(const OperatorExpr& e);

}  // namespace bergex
