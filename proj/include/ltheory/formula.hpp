#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ltheory/internal.hpp"

namespace ltheory {

/// Terms and bounded formulas over exact rationals. All quantifiers range
/// over hyperfinite sets, so evaluation at a fixed level is finite.
struct Term {
    enum class Kind { Const, Var, Add, Sub, Mul, Apply };
    Kind kind = Kind::Const;
    Rational value;                       // Const
    std::string var;                      // Var
    std::shared_ptr<Term> lhs, rhs;       // Add/Sub/Mul; Apply uses lhs only
    std::shared_ptr<RealFunction> fn;     // Apply

    static std::shared_ptr<Term> constant(Rational v);
    static std::shared_ptr<Term> variable(std::string name);
    static std::shared_ptr<Term> add(std::shared_ptr<Term> a, std::shared_ptr<Term> b);
    static std::shared_ptr<Term> sub(std::shared_ptr<Term> a, std::shared_ptr<Term> b);
    static std::shared_ptr<Term> mul(std::shared_ptr<Term> a, std::shared_ptr<Term> b);
    static std::shared_ptr<Term> apply(RealFunction f, std::shared_ptr<Term> a);
};

struct Formula {
    enum class Kind { Cmp, And, Or, Not, Implies, ForAll, Exists };
    enum class CmpOp { Eq, Neq, Lt, Le, Gt, Ge };

    Kind kind = Kind::Cmp;
    CmpOp op = CmpOp::Eq;                  // Cmp
    std::shared_ptr<Term> tlhs, trhs;      // Cmp
    std::shared_ptr<Formula> lhs, rhs;     // connectives; Not uses lhs only
    std::string var;                       // quantifiers
    std::shared_ptr<HyperfiniteSet> range; // quantifiers

    static std::shared_ptr<Formula> cmp(CmpOp op, std::shared_ptr<Term> a,
                                        std::shared_ptr<Term> b);
    static std::shared_ptr<Formula> conj(std::shared_ptr<Formula> a, std::shared_ptr<Formula> b);
    static std::shared_ptr<Formula> disj(std::shared_ptr<Formula> a, std::shared_ptr<Formula> b);
    static std::shared_ptr<Formula> neg(std::shared_ptr<Formula> a);
    static std::shared_ptr<Formula> implies(std::shared_ptr<Formula> a,
                                            std::shared_ptr<Formula> b);
    static std::shared_ptr<Formula> forall(std::string var, HyperfiniteSet range,
                                           std::shared_ptr<Formula> body);
    static std::shared_ptr<Formula> exists(std::string var, HyperfiniteSet range,
                                           std::shared_ptr<Formula> body);

    std::set<std::string> free_variables() const;
    std::string to_string() const;
};

using Assignment = std::map<std::string, Hyperreal>;

/// Strict two-valued evaluation of the formula at one index level, with the
/// given exact rational environment; quantifiers enumerate the level set.
bool eval_at_level(const Formula& p, std::uint64_t level,
                   const std::map<std::string, Rational>& env);

/// Def-style transfer: builds {n : p holds at level n} and asks the oracle.
bool transfer_eval(const Formula& p, const Assignment& assignment, const Hyperreal::Ctx& ctx);
SetDescriptor transfer_set(const Formula& p, const Assignment& assignment,
                           const Hyperreal::Ctx& ctx);

/// Parses the s-expression sentence syntax, e.g. `(forall x A (>= x 0))`.
/// Sets and hyperreals are looked up by name in the symbol tables.
std::shared_ptr<Formula> parse_formula(const std::string& src,
                                       const std::map<std::string, HyperfiniteSet>& sets,
                                       const std::map<std::string, Hyperreal>& values,
                                       Assignment* collected_args = nullptr);

}  // namespace ltheory
