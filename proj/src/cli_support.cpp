#include "ltheory/cli_support.hpp"

#include <cctype>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "ltheory/errors.hpp"

namespace ltheory {

namespace {

struct Lexer {
    const std::string& src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool consume(const std::string& s) {
        skip_ws();
        if (src.compare(pos, s.size(), s) == 0) {
            pos += s.size();
            return true;
        }
        return false;
    }
    std::string ident() {
        skip_ws();
        std::string out;
        while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) ||
                                    src[pos] == '_'))
            out += src[pos++];
        return out;
    }
    std::string digits() {
        skip_ws();
        std::string out;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
            out += src[pos++];
        return out;
    }
};

using Value = std::variant<Hyperreal, bool>;

struct ExprParser {
    Lexer lex;
    Hyperreal::Ctx ctx;

    Hyperreal number(const Value& v, const char* where) {
        if (auto* h = std::get_if<Hyperreal>(&v)) return *h;
        throw UsageError(std::string("boolean operand in ") + where);
    }

    Value parse() {
        Value v = comparison();
        if (!lex.eof()) throw UsageError("trailing input in expression");
        return v;
    }

    Value comparison() {
        Value a = sum();
        if (lex.consume("==")) {
            Value b = sum();
            return Hyperreal::eq(number(a, "=="), number(b, "=="));
        }
        if (lex.peek() == '<') {
            lex.consume('<');
            Value b = sum();
            return Hyperreal::lt(number(a, "<"), number(b, "<"));
        }
        if (lex.peek() == '>') {
            lex.consume('>');
            Value b = sum();
            return Hyperreal::lt(number(b, ">"), number(a, ">"));
        }
        return a;
    }

    Value sum() {
        Hyperreal acc = number(term(), "+");
        while (true) {
            if (lex.consume('+'))
                acc = acc + number(term(), "+");
            else if (lex.peek() == '-') {
                lex.consume('-');
                acc = acc - number(term(), "-");
            } else
                return acc;
        }
    }

    Value term() {
        Hyperreal acc = number(unary(), "*");
        while (true) {
            if (lex.consume('*'))
                acc = acc * number(unary(), "*");
            else if (lex.consume('/'))
                acc = acc / number(unary(), "/");
            else
                return acc;
        }
    }

    Value unary() {
        if (lex.peek() == '-') {
            lex.consume('-');
            return -number(unary(), "unary -");
        }
        return power();
    }

    Value power() {
        Value base = atom();
        if (lex.consume('^')) {
            std::string d = lex.digits();
            if (d.empty()) throw UsageError("^ needs a nonnegative integer exponent");
            return number(base, "^").pow(static_cast<unsigned>(std::stoul(d)));
        }
        return base;
    }

    Value atom() {
        char c = lex.peek();
        if (c == '(') {
            lex.consume('(');
            Value v = comparison();
            if (!lex.consume(')')) throw UsageError("missing ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string d = lex.digits();
            return Hyperreal::from_rational(ctx, rational_from_string(d));
        }
        std::string name = lex.ident();
        if (name == "omega") return Hyperreal::omega(ctx);
        if (name == "eps") return Hyperreal::omega(ctx).inv();
        if (name == "st" || name == "abs") {
            if (!lex.consume('(')) throw UsageError(name + " needs parentheses");
            Hyperreal x = number(comparison(), name.c_str());
            if (!lex.consume(')')) throw UsageError("missing ')'");
            if (name == "abs") return x.abs();
            auto st = x.standard_part();
            if (!st) throw DomainViolation("no standard part for " + x.label());
            return Hyperreal::from_rational(ctx, *st);
        }
        throw UsageError(name.empty() ? "unexpected character in expression"
                                      : "unknown name '" + name + "'");
    }
};

}  // namespace

EvalOutcome evaluate_expression(const std::string& src, const Hyperreal::Ctx& ctx) {
    ExprParser p{Lexer{src}, ctx};
    Value v = p.parse();
    EvalOutcome out;
    if (auto* b = std::get_if<bool>(&v)) {
        out.value_label = src;
        out.boolean = *b;
    } else {
        const Hyperreal& x = std::get<Hyperreal>(v);
        out.value_label = x.label();
        try {
            ClassifyResult c = x.classify();
            out.classification = to_string(c.kind);
            out.heuristic = c.heuristic;
        } catch (const Undecided&) {
        }
        if (auto st = x.standard_part()) out.standard_part = to_string(*st);
    }
    out.oracle_decisions_used = ctx->decisions_used();
    return out;
}

namespace {

struct PolyParser {
    Lexer lex;

    Polynomial parse() {
        Polynomial p = expr();
        if (!lex.eof()) throw UsageError("trailing input in function expression");
        return p;
    }
    Polynomial expr() {
        Polynomial acc = lex.consume('-') ? -term() : term();
        while (true) {
            if (lex.consume('+'))
                acc = acc + term();
            else if (lex.consume('-'))
                acc = acc - term();
            else
                return acc;
        }
    }
    Polynomial term() {
        Polynomial acc = factor();
        while (true) {
            if (lex.consume('*'))
                acc = acc * factor();
            else if (lex.consume('/')) {
                std::string d = lex.digits();
                if (d.empty()) throw UsageError("/ needs an integer divisor");
                Rational r = rational_from_string(d);
                if (r == 0) throw UsageError("division by zero");
                acc = acc * Polynomial::constant(1 / r);
            } else
                return acc;
        }
    }
    Polynomial factor() {
        Polynomial base;
        char c = lex.peek();
        if (c == '(') {
            lex.consume('(');
            base = expr();
            if (!lex.consume(')')) throw UsageError("missing ')'");
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            base = Polynomial::constant(rational_from_string(lex.digits()));
        } else if (lex.consume('x')) {
            base = Polynomial::variable();
        } else {
            throw UsageError("unexpected character in function expression");
        }
        if (lex.consume('^')) {
            std::string d = lex.digits();
            if (d.empty()) throw UsageError("^ needs a nonnegative integer exponent");
            unsigned e = static_cast<unsigned>(std::stoul(d));
            Polynomial acc = Polynomial::constant(Rational(1));
            for (unsigned i = 0; i < e; ++i) acc = acc * base;
            return acc;
        }
        return base;
    }
};

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

ScalarField parse_scalar_field(const std::string& src) {
    std::string s = strip(src);
    for (const char* head : {"sin(", "cos("}) {
        if (s.rfind(head, 0) != 0 || s.back() != ')') continue;
        std::string inner = strip(s.substr(4, s.size() - 5));
        unsigned k = 1;
        if (!inner.empty() && std::isdigit(static_cast<unsigned char>(inner[0]))) {
            std::size_t used = 0;
            k = static_cast<unsigned>(std::stoul(inner, &used));
            inner = strip(inner.substr(used));
            if (!inner.empty() && inner[0] == '*') inner = strip(inner.substr(1));
        }
        if (inner == "pi*x" || inner == "pix" || inner == "pi x")
            return head[0] == 's' ? ScalarField::sin_pi(k) : ScalarField::cos_pi(k);
        throw UsageError("trigonometric argument must be [k*]pi*x");
    }
    PolyParser p{Lexer{s}};
    return ScalarField::polynomial(p.parse());
}

TransferDoc parse_transfer_document(const std::string& text, const Hyperreal::Ctx& ctx) {
    std::istringstream in(text);
    std::string line, preamble;
    bool found_separator = false;
    while (std::getline(in, line)) {
        if (strip(line) == "%%") {
            found_separator = true;
            break;
        }
        preamble += line + "\n";
    }
    if (!found_separator) throw UsageError("transfer document needs a %% separator line");

    TransferDoc doc;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(preamble);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad JSON preamble: ") + e.what());
    }
    const nlohmann::json sets = j.value("sets", nlohmann::json::object());
    const nlohmann::json values = j.value("values", nlohmann::json::object());
    for (const auto& [name, decl] : sets.items()) {
        std::string kind = decl.value("kind", "");
        if (kind == "prefix")
            doc.sets.emplace(name, HyperfiniteSet::prefix(name));
        else if (kind == "unit_grid")
            doc.sets.emplace(name, HyperfiniteSet::unit_grid(name));
        else if (kind == "empty")
            doc.sets.emplace(name, HyperfiniteSet::empty());
        else if (kind == "constant") {
            std::vector<Rational> values;
            for (const auto& v : decl.value("values", nlohmann::json::array()))
                values.push_back(rational_from_string(v.get<std::string>()));
            doc.sets.emplace(name, HyperfiniteSet::constant(std::move(values), name));
        } else
            throw UsageError("unknown set kind '" + kind + "' for '" + name + "'");
    }
    for (const auto& [name, decl] : values.items()) {
        std::string kind = decl.value("kind", "");
        if (kind == "rational")
            doc.values.emplace(name, Hyperreal::from_rational(
                                         ctx, rational_from_string(
                                                  decl.at("value").get<std::string>())));
        else if (kind == "omega")
            doc.values.emplace(name, Hyperreal::omega(ctx));
        else if (kind == "eps")
            doc.values.emplace(name, Hyperreal::omega(ctx).inv());
        else
            throw UsageError("unknown value kind '" + kind + "' for '" + name + "'");
    }
    while (std::getline(in, line)) {
        std::string s = strip(line);
        if (s.empty() || s[0] == ';') continue;
        doc.sentences.push_back(s);
    }
    return doc;
}

}  // namespace ltheory
