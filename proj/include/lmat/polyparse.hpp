#pragma once

#include "lmat/arith.hpp"

#include <functional>
#include <string>
#include <vector>

namespace lmat {

/// One parsed term: coefficient times a product of variable powers.
struct ParsedTerm {
  Rat coeff;
  std::vector<unsigned> exponents;
};

/// Maps an identifier such as "x", "t" or "x3" to a variable index; throws
/// std::invalid_argument for unknown names.
using VariableResolver = std::function<std::size_t(const std::string&)>;

/// Parses a sum of terms like "2*x1^2 - 3/2*x1*x2 + 5" (no parentheses).
/// Like terms are not merged; zero coefficients are kept as written.
std::vector<ParsedTerm> parse_terms(const std::string& text, std::size_t num_vars,
                                    const VariableResolver& resolve);

/// Resolver accepting exactly one name.
VariableResolver single_variable(std::string name);

/// Resolver accepting x1..xk.
VariableResolver indexed_variables(std::string prefix, std::size_t k);

}  // namespace lmat
