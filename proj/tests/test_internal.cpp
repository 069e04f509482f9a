#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ltheory/cli_support.hpp"
#include "ltheory/formula.hpp"
#include "ltheory/internal.hpp"

using namespace ltheory;

namespace {

Hyperreal::Ctx ctx() {
    return std::make_shared<UltrafilterOracle>(2048);
}

Hyperreal rat(const Hyperreal::Ctx& c, long num, long den = 1) {
    return Hyperreal::from_rational(c, Rational(num) / den);
}

}  // namespace

TEST_CASE("star membership agrees with plain membership on standard points") {
    auto c = ctx();
    RealSetDescriptor unit = RealSetDescriptor::closed_interval(Rational(0), Rational(1), "unit");
    CHECK(star_membership(rat(c, 1, 2), unit));
    CHECK(star_membership(rat(c, 0), unit));
    CHECK(!star_membership(rat(c, 2), unit));
    CHECK(star_membership(rat(c, 3), RealSetDescriptor::positives()));
    CHECK(!star_membership(rat(c, -3), RealSetDescriptor::positives()));
}

TEST_CASE("the natural extension holds nonstandard members") {
    auto c = ctx();
    Hyperreal eps = Hyperreal::omega(c).inv();
    CHECK(star_membership(eps, RealSetDescriptor::positives()));
    RealSetDescriptor unit =
        RealSetDescriptor::interval(Rational(0), Rational(1), false, true, "(0,1]");
    CHECK(star_membership(eps, unit));
    CHECK(!star_membership(-eps, unit));
    CHECK(!star_membership(Hyperreal::omega(c), unit));
    // the classifications above are exact: closed forms against intervals
    for (const auto& d : c->decision_log()) CHECK(d.exact);
}

TEST_CASE("periodic representatives classify membership exactly") {
    auto c = ctx();
    Hyperreal x(seq_periodic({}, {Rational(1, 2), Rational(3)}, "half-or-three"), c);
    RealSetDescriptor unit = RealSetDescriptor::closed_interval(Rational(0), Rational(1), "unit");
    bool inside = star_membership(x, unit);
    CHECK(inside == Hyperreal::eq(x, rat(c, 1, 2)));
}

TEST_CASE("hypercardinality of the prefix family is omega plus one") {
    auto c = ctx();
    Hyperreal card = hypercardinality(HyperfiniteSet::prefix(), c);
    CHECK(Hyperreal::eq(card, Hyperreal::omega(c) + rat(c, 1)));
    CHECK(Hyperreal::lt(Hyperreal::omega(c), card));
}

TEST_CASE("hyperfinite sums evaluate levelwise") {
    auto c = ctx();
    // sum of k over {0..n} is n(n+1)/2
    Hyperreal s = hyperfinite_sum(HyperfiniteSet::prefix(), RealFunction::identity(), c);
    Hyperreal omega = Hyperreal::omega(c);
    CHECK(Hyperreal::eq(s, omega * (omega + rat(c, 1)) / rat(c, 2)));
    // constant 1 over the unit grid counts the points
    Hyperreal ones =
        hyperfinite_sum(HyperfiniteSet::unit_grid(), RealFunction::constant(Rational(1)), c);
    CHECK(Hyperreal::eq(ones, omega));
}

TEST_CASE("spec'd transfer sentences hold") {
    auto c = ctx();
    auto A = HyperfiniteSet::prefix("A");
    std::map<std::string, HyperfiniteSet> sets{{"A", A}};
    std::map<std::string, Hyperreal> values{{"c", rat(c, 600)}};

    Assignment args;
    auto p1 = parse_formula("(forall x A (>= x 0))", sets, values, &args);
    CHECK(transfer_eval(*p1, args, c));

    args.clear();
    auto p2 = parse_formula("(exists x A (= (* x x) 2))", sets, values, &args);
    CHECK(!transfer_eval(*p2, args, c));

    args.clear();
    auto p3 = parse_formula("(exists x A (> x c))", sets, values, &args);
    CHECK(transfer_eval(*p3, args, c));
}

TEST_CASE("transfer commutes with conjunction and negation") {
    auto sets = std::map<std::string, HyperfiniteSet>{
        {"C", HyperfiniteSet::constant({Rational(0), Rational(1), Rational(2)}, "C")}};
    std::map<std::string, Hyperreal> values;
    const char* bodies[] = {"(forall x C (>= x 0))", "(exists x C (> x 1))",
                            "(forall x C (< x 2))", "(exists x C (= x 3))"};
    for (const char* pa : bodies) {
        for (const char* pb : bodies) {
            auto c = ctx();
            auto p = parse_formula(pa, sets, values);
            auto q = parse_formula(pb, sets, values);
            bool tp = transfer_eval(*p, {}, c);
            bool tq = transfer_eval(*q, {}, c);
            CHECK(transfer_eval(*Formula::conj(p, q), {}, c) == (tp && tq));
            CHECK(transfer_eval(*Formula::neg(p), {}, c) == !tp);
        }
    }
}

TEST_CASE("constant-argument sentences match direct real evaluation") {
    auto sets = std::map<std::string, HyperfiniteSet>{
        {"C", HyperfiniteSet::constant({Rational(-1), Rational(1, 2), Rational(4)}, "C")}};
    std::map<std::string, Hyperreal> values;
    const char* bodies[] = {
        "(exists x C (< x 0))",           "(forall x C (<= x 4))",
        "(exists x C (= (+ x x) 1))",     "(forall x C (!= x 0))",
        "(exists x C (>= (* x x) 16))",   "(forall x C (implies (> x 0) (>= x 1/2)))",
    };
    for (const char* src : bodies) {
        auto c = ctx();
        auto p = parse_formula(src, sets, values);
        CHECK(transfer_eval(*p, {}, c) == eval_at_level(*p, 0, {}));
    }
}

TEST_CASE("quantifier evaluation at a level enumerates the level set") {
    auto A = HyperfiniteSet::prefix("A");
    std::map<std::string, HyperfiniteSet> sets{{"A", A}};
    std::map<std::string, Hyperreal> values;
    auto p = parse_formula("(exists x A (> (* x x) 50))", sets, values);
    CHECK(!eval_at_level(*p, 7, {}));
    CHECK(eval_at_level(*p, 8, {}));  // 8*8 = 64
    CHECK(p->free_variables().empty());
}

TEST_CASE("free variables must be assigned and share the oracle context") {
    auto c1 = ctx(), c2 = ctx();
    std::map<std::string, HyperfiniteSet> sets{{"A", HyperfiniteSet::prefix("A")}};
    std::map<std::string, Hyperreal> values{{"c", rat(c1, 3)}};
    Assignment args;
    auto p = parse_formula("(exists x A (> x c))", sets, values, &args);
    CHECK(p->free_variables() == std::set<std::string>{"c"});
    CHECK_THROWS_AS(transfer_eval(*p, args, c2), ContextMismatch);
    CHECK_THROWS_AS(transfer_eval(*p, {}, c1), DomainViolation);
}

TEST_CASE("the transfer document format parses sets, values and sentences") {
    auto c = ctx();
    std::string doc_text = R"({
      "sets": {"C": {"kind": "constant", "values": ["1", "2"]}},
      "values": {"t": {"kind": "rational", "value": "3/2"}}
    }
    %%
    ; comment line
    (exists x C (> x t))
    (forall x C (> x t))
    )";
    TransferDoc doc = parse_transfer_document(doc_text, c);
    REQUIRE(doc.sentences.size() == 2);
    Assignment args;
    auto p = parse_formula(doc.sentences[0], doc.sets, doc.values, &args);
    CHECK(transfer_eval(*p, args, c));
    args.clear();
    auto q = parse_formula(doc.sentences[1], doc.sets, doc.values, &args);
    CHECK(!transfer_eval(*q, args, c));
}

TEST_CASE("hyperfinite set levels are sorted and deduplicated") {
    HyperfiniteSet s([](std::uint64_t n) {
        std::vector<Rational> v{Rational(3), Rational(1), Rational(3),
                                Rational(static_cast<unsigned long>(n))};
        return v;
    }, "messy");
    auto& level5 = s.at_level(5);
    CHECK(level5 == std::vector<Rational>{Rational(1), Rational(3), Rational(5)});
    CHECK(HyperfiniteSet::empty().at_level(100).empty());
    CHECK(HyperfiniteSet::unit_grid().at_level(4).size() == 4);
}
