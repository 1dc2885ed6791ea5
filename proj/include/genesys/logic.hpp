#ifndef GENESYS_LOGIC_HPP
#define GENESYS_LOGIC_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "genesys/ast.hpp"

namespace genesys {

// A concrete value: integer or enum literal name.
using Value = std::variant<long, std::string>;

// Total map identifier -> value.
using Valuation = std::map<std::string, Value>;

std::string to_string(const Value& v);
std::string to_string(const Valuation& v);

// Simultaneous capture-free replacement of free identifiers.
ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& bindings);
PredPtr substitute(const PredPtr& p, const std::map<std::string, ExprPtr>& bindings);

// Weakest precondition of a generalized substitution.
PredPtr wp(const SubstPtr& s, const PredPtr& post);

// Best-effort simplification of p, equivalence-preserving under context:
// context & p  <=>  context & simplify(p, context). Idempotent.
PredPtr simplify(const PredPtr& p, const PredPtr& context);

// Classical evaluation; throws IncompleteValuation when an identifier is
// missing from v.
bool evaluate(const PredPtr& p, const Valuation& v);
long evaluate_int(const ExprPtr& e, const Valuation& v);
Value evaluate_value(const ExprPtr& e, const Valuation& v);

// Executable semantics; nullopt means a SELECT guard blocked.
std::optional<Valuation> exec(const SubstPtr& s, const Valuation& v);

} // namespace genesys

#endif
