#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ltheory/formula.hpp"
#include "ltheory/galerkin.hpp"
#include "ltheory/hyperreal.hpp"

namespace ltheory {

/// Result of evaluating one `hr eval` expression: either a hyperreal value
/// (with classification and standard part where decidable) or a boolean
/// comparison outcome.
struct EvalOutcome {
    std::string value_label;
    std::optional<std::string> classification;
    bool heuristic = false;
    std::optional<std::string> standard_part;
    std::optional<bool> boolean;
    std::uint64_t oracle_decisions_used = 0;
};

/// Grammar: rational literals, omega, eps (= 1/omega), unary -, + - * /,
/// ^ with nonnegative integer exponent, st(...), abs(...), and the top-level
/// comparisons == < >.
EvalOutcome evaluate_expression(const std::string& src, const Hyperreal::Ctx& ctx);

/// Function expressions for `project`: polynomials in x with rational
/// coefficients, sin(k*pi*x), cos(k*pi*x).
ScalarField parse_scalar_field(const std::string& src);

/// A transfer document: a JSON preamble declaring hyperfinite sets and
/// hyperreal values by label, a `%%` line, then one sentence per line.
struct TransferDoc {
    std::map<std::string, HyperfiniteSet> sets;
    std::map<std::string, Hyperreal> values;
    std::vector<std::string> sentences;
};

TransferDoc parse_transfer_document(const std::string& text, const Hyperreal::Ctx& ctx);

}  // namespace ltheory
