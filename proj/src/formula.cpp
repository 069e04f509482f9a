#include "ltheory/formula.hpp"

#include <cctype>
#include <vector>

#include "ltheory/errors.hpp"

namespace ltheory {

std::shared_ptr<Term> Term::constant(Rational v) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Const;
    t->value = std::move(v);
    return t;
}
std::shared_ptr<Term> Term::variable(std::string name) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Var;
    t->var = std::move(name);
    return t;
}
std::shared_ptr<Term> Term::add(std::shared_ptr<Term> a, std::shared_ptr<Term> b) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Add;
    t->lhs = std::move(a);
    t->rhs = std::move(b);
    return t;
}
std::shared_ptr<Term> Term::sub(std::shared_ptr<Term> a, std::shared_ptr<Term> b) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Sub;
    t->lhs = std::move(a);
    t->rhs = std::move(b);
    return t;
}
std::shared_ptr<Term> Term::mul(std::shared_ptr<Term> a, std::shared_ptr<Term> b) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Mul;
    t->lhs = std::move(a);
    t->rhs = std::move(b);
    return t;
}
std::shared_ptr<Term> Term::apply(RealFunction f, std::shared_ptr<Term> a) {
    auto t = std::make_shared<Term>();
    t->kind = Kind::Apply;
    t->fn = std::make_shared<RealFunction>(std::move(f));
    t->lhs = std::move(a);
    return t;
}

std::shared_ptr<Formula> Formula::cmp(CmpOp op, std::shared_ptr<Term> a, std::shared_ptr<Term> b) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Cmp;
    f->op = op;
    f->tlhs = std::move(a);
    f->trhs = std::move(b);
    return f;
}
std::shared_ptr<Formula> Formula::conj(std::shared_ptr<Formula> a, std::shared_ptr<Formula> b) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::And;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}
std::shared_ptr<Formula> Formula::disj(std::shared_ptr<Formula> a, std::shared_ptr<Formula> b) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Or;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}
std::shared_ptr<Formula> Formula::neg(std::shared_ptr<Formula> a) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Not;
    f->lhs = std::move(a);
    return f;
}
std::shared_ptr<Formula> Formula::implies(std::shared_ptr<Formula> a, std::shared_ptr<Formula> b) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Implies;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
}
std::shared_ptr<Formula> Formula::forall(std::string var, HyperfiniteSet range,
                                         std::shared_ptr<Formula> body) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::ForAll;
    f->var = std::move(var);
    f->range = std::make_shared<HyperfiniteSet>(std::move(range));
    f->lhs = std::move(body);
    return f;
}
std::shared_ptr<Formula> Formula::exists(std::string var, HyperfiniteSet range,
                                         std::shared_ptr<Formula> body) {
    auto f = forall(std::move(var), std::move(range), std::move(body));
    f->kind = Kind::Exists;
    return f;
}

namespace {

void term_vars(const Term& t, std::set<std::string>& out) {
    switch (t.kind) {
        case Term::Kind::Const:
            return;
        case Term::Kind::Var:
            out.insert(t.var);
            return;
        case Term::Kind::Apply:
            term_vars(*t.lhs, out);
            return;
        default:
            term_vars(*t.lhs, out);
            term_vars(*t.rhs, out);
    }
}

void formula_vars(const Formula& p, std::set<std::string>& out) {
    switch (p.kind) {
        case Formula::Kind::Cmp:
            term_vars(*p.tlhs, out);
            term_vars(*p.trhs, out);
            return;
        case Formula::Kind::Not:
            formula_vars(*p.lhs, out);
            return;
        case Formula::Kind::ForAll:
        case Formula::Kind::Exists: {
            std::set<std::string> inner;
            formula_vars(*p.lhs, inner);
            inner.erase(p.var);
            out.insert(inner.begin(), inner.end());
            return;
        }
        default:
            formula_vars(*p.lhs, out);
            formula_vars(*p.rhs, out);
    }
}

Rational eval_term(const Term& t, const std::map<std::string, Rational>& env) {
    switch (t.kind) {
        case Term::Kind::Const:
            return t.value;
        case Term::Kind::Var: {
            auto it = env.find(t.var);
            if (it == env.end()) throw DomainViolation("unbound variable '" + t.var + "'");
            return it->second;
        }
        case Term::Kind::Add:
            return eval_term(*t.lhs, env) + eval_term(*t.rhs, env);
        case Term::Kind::Sub:
            return eval_term(*t.lhs, env) - eval_term(*t.rhs, env);
        case Term::Kind::Mul:
            return eval_term(*t.lhs, env) * eval_term(*t.rhs, env);
        case Term::Kind::Apply:
            return (*t.fn)(eval_term(*t.lhs, env));
    }
    throw DomainViolation("unreachable term kind");
}

std::string term_str(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Const:
            return to_string(t.value);
        case Term::Kind::Var:
            return t.var;
        case Term::Kind::Add:
            return "(+ " + term_str(*t.lhs) + " " + term_str(*t.rhs) + ")";
        case Term::Kind::Sub:
            return "(- " + term_str(*t.lhs) + " " + term_str(*t.rhs) + ")";
        case Term::Kind::Mul:
            return "(* " + term_str(*t.lhs) + " " + term_str(*t.rhs) + ")";
        case Term::Kind::Apply:
            return "(" + t.fn->name() + " " + term_str(*t.lhs) + ")";
    }
    return "?";
}

}  // namespace

std::set<std::string> Formula::free_variables() const {
    std::set<std::string> out;
    formula_vars(*this, out);
    return out;
}

std::string Formula::to_string() const {
    switch (kind) {
        case Kind::Cmp: {
            static const char* ops[] = {"=", "!=", "<", "<=", ">", ">="};
            return "(" + std::string(ops[static_cast<int>(op)]) + " " + term_str(*tlhs) + " " +
                   term_str(*trhs) + ")";
        }
        case Kind::And:
            return "(and " + lhs->to_string() + " " + rhs->to_string() + ")";
        case Kind::Or:
            return "(or " + lhs->to_string() + " " + rhs->to_string() + ")";
        case Kind::Not:
            return "(not " + lhs->to_string() + ")";
        case Kind::Implies:
            return "(implies " + lhs->to_string() + " " + rhs->to_string() + ")";
        case Kind::ForAll:
            return "(forall " + var + " " + range->label() + " " + lhs->to_string() + ")";
        case Kind::Exists:
            return "(exists " + var + " " + range->label() + " " + lhs->to_string() + ")";
    }
    return "?";
}

bool eval_at_level(const Formula& p, std::uint64_t level,
                   const std::map<std::string, Rational>& env) {
    switch (p.kind) {
        case Formula::Kind::Cmp: {
            Rational a = eval_term(*p.tlhs, env);
            Rational b = eval_term(*p.trhs, env);
            switch (p.op) {
                case Formula::CmpOp::Eq:
                    return a == b;
                case Formula::CmpOp::Neq:
                    return a != b;
                case Formula::CmpOp::Lt:
                    return a < b;
                case Formula::CmpOp::Le:
                    return a <= b;
                case Formula::CmpOp::Gt:
                    return a > b;
                case Formula::CmpOp::Ge:
                    return a >= b;
            }
            return false;
        }
        case Formula::Kind::And:
            return eval_at_level(*p.lhs, level, env) && eval_at_level(*p.rhs, level, env);
        case Formula::Kind::Or:
            return eval_at_level(*p.lhs, level, env) || eval_at_level(*p.rhs, level, env);
        case Formula::Kind::Not:
            return !eval_at_level(*p.lhs, level, env);
        case Formula::Kind::Implies:
            return !eval_at_level(*p.lhs, level, env) || eval_at_level(*p.rhs, level, env);
        case Formula::Kind::ForAll:
        case Formula::Kind::Exists: {
            bool exists = p.kind == Formula::Kind::Exists;
            auto inner = env;
            for (const auto& v : p.range->at_level(level)) {
                inner[p.var] = v;
                bool b = eval_at_level(*p.lhs, level, inner);
                if (exists && b) return true;
                if (!exists && !b) return false;
            }
            return !exists;
        }
    }
    return false;
}

SetDescriptor transfer_set(const Formula& p, const Assignment& assignment,
                           const Hyperreal::Ctx& ctx) {
    std::map<std::string, SequenceRep> reps;
    for (const auto& fv : p.free_variables()) {
        auto it = assignment.find(fv);
        if (it == assignment.end())
            throw DomainViolation("free variable '" + fv + "' is not assigned");
        if (it->second.ctx() != ctx)
            throw ContextMismatch("assignment for '" + fv + "' uses a different oracle context");
        reps.emplace(fv, it->second.rep());
    }
    auto body = std::make_shared<Formula>(p);
    SetDescriptor s;
    s.member = [body, reps](std::uint64_t n) {
        std::map<std::string, Rational> env;
        for (const auto& [name, rep] : reps) env.emplace(name, rep.eval(n));
        return eval_at_level(*body, n, env);
    };
    s.classification = SetDescriptor::Unknown{};
    std::string args;
    for (const auto& [name, rep] : reps) args += " " + name + "=" + rep.label;
    s.label = "holds[" + p.to_string() + args + "]";
    return s;
}

bool transfer_eval(const Formula& p, const Assignment& assignment, const Hyperreal::Ctx& ctx) {
    return ctx->is_qualified(transfer_set(p, assignment, ctx));
}

namespace {

struct SExpr {
    std::string atom;  // empty for lists
    std::vector<SExpr> items;
    bool is_atom() const { return items.empty() && !atom.empty(); }
};

struct SParser {
    const std::string& src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size()) {
            if (std::isspace(static_cast<unsigned char>(src[pos]))) {
                ++pos;
            } else if (src[pos] == ';') {
                while (pos < src.size() && src[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }
    SExpr parse() {
        skip_ws();
        if (pos >= src.size()) throw DomainViolation("unexpected end of formula");
        if (src[pos] == '(') {
            ++pos;
            SExpr e;
            e.items.push_back(SExpr{});  // sentinel replaced below
            e.items.clear();
            while (true) {
                skip_ws();
                if (pos >= src.size()) throw DomainViolation("unbalanced parenthesis");
                if (src[pos] == ')') {
                    ++pos;
                    return e;
                }
                e.items.push_back(parse());
            }
        }
        SExpr e;
        while (pos < src.size() && !std::isspace(static_cast<unsigned char>(src[pos])) &&
               src[pos] != '(' && src[pos] != ')')
            e.atom += src[pos++];
        if (e.atom.empty()) throw DomainViolation("empty token in formula");
        return e;
    }
};

bool looks_numeric(const std::string& a) {
    char c = a[0];
    return std::isdigit(static_cast<unsigned char>(c)) ||
           ((c == '-' || c == '+') && a.size() > 1 &&
            std::isdigit(static_cast<unsigned char>(a[1])));
}

struct FormulaBuilder {
    const std::map<std::string, HyperfiniteSet>& sets;
    const std::map<std::string, Hyperreal>& values;
    Assignment* args;
    std::set<std::string> bound;

    std::shared_ptr<Term> term(const SExpr& e) {
        if (e.is_atom()) {
            if (looks_numeric(e.atom)) return Term::constant(rational_from_string(e.atom));
            if (!bound.count(e.atom)) {
                auto it = values.find(e.atom);
                if (it == values.end())
                    throw DomainViolation("unknown symbol '" + e.atom + "' in formula");
                if (args) args->emplace(e.atom, it->second);
            }
            return Term::variable(e.atom);
        }
        if (e.items.empty() || !e.items[0].is_atom())
            throw DomainViolation("malformed term");
        const std::string& head = e.items[0].atom;
        if (head == "+" && e.items.size() == 3) return Term::add(term(e.items[1]), term(e.items[2]));
        if (head == "-" && e.items.size() == 3) return Term::sub(term(e.items[1]), term(e.items[2]));
        if (head == "-" && e.items.size() == 2)
            return Term::sub(Term::constant(Rational(0)), term(e.items[1]));
        if (head == "*" && e.items.size() == 3) return Term::mul(term(e.items[1]), term(e.items[2]));
        if (head == "abs" && e.items.size() == 2)
            return Term::apply(RealFunction::absolute(), term(e.items[1]));
        throw DomainViolation("unknown term head '" + head + "'");
    }

    Formula::CmpOp cmp_op(const std::string& s) {
        if (s == "=") return Formula::CmpOp::Eq;
        if (s == "!=") return Formula::CmpOp::Neq;
        if (s == "<") return Formula::CmpOp::Lt;
        if (s == "<=") return Formula::CmpOp::Le;
        if (s == ">") return Formula::CmpOp::Gt;
        if (s == ">=") return Formula::CmpOp::Ge;
        throw DomainViolation("unknown comparison '" + s + "'");
    }

    std::shared_ptr<Formula> formula(const SExpr& e) {
        if (e.is_atom()) throw DomainViolation("expected a formula, got atom '" + e.atom + "'");
        if (e.items.empty() || !e.items[0].is_atom()) throw DomainViolation("malformed formula");
        const std::string& head = e.items[0].atom;
        if (head == "and" && e.items.size() == 3)
            return Formula::conj(formula(e.items[1]), formula(e.items[2]));
        if (head == "or" && e.items.size() == 3)
            return Formula::disj(formula(e.items[1]), formula(e.items[2]));
        if (head == "not" && e.items.size() == 2) return Formula::neg(formula(e.items[1]));
        if ((head == "implies" || head == "->") && e.items.size() == 3)
            return Formula::implies(formula(e.items[1]), formula(e.items[2]));
        if ((head == "forall" || head == "exists") && e.items.size() == 4) {
            if (!e.items[1].is_atom() || !e.items[2].is_atom())
                throw DomainViolation(head + " expects (var set body)");
            auto it = sets.find(e.items[2].atom);
            if (it == sets.end())
                throw DomainViolation("unknown hyperfinite set '" + e.items[2].atom + "'");
            bool was_bound = bound.count(e.items[1].atom) > 0;
            bound.insert(e.items[1].atom);
            auto body = formula(e.items[3]);
            if (!was_bound) bound.erase(e.items[1].atom);
            return head == "forall" ? Formula::forall(e.items[1].atom, it->second, body)
                                    : Formula::exists(e.items[1].atom, it->second, body);
        }
        if (e.items.size() == 3)
            return Formula::cmp(cmp_op(head), term(e.items[1]), term(e.items[2]));
        throw DomainViolation("unknown formula head '" + head + "'");
    }
};

}  // namespace

std::shared_ptr<Formula> parse_formula(const std::string& src,
                                       const std::map<std::string, HyperfiniteSet>& sets,
                                       const std::map<std::string, Hyperreal>& values,
                                       Assignment* collected_args) {
    SParser p{src};
    SExpr e = p.parse();
    p.skip_ws();
    if (p.pos != src.size()) throw DomainViolation("trailing input after formula");
    FormulaBuilder b{sets, values, collected_args, {}};
    return b.formula(e);
}

}  // namespace ltheory
