#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ltheory/hyperreal.hpp"
#include "ltheory/real_function.hpp"

using namespace ltheory;

namespace {

Hyperreal::Ctx ctx() {
    return std::make_shared<UltrafilterOracle>(4096);
}

Hyperreal rat(const Hyperreal::Ctx& c, long num, long den = 1) {
    return Hyperreal::from_rational(c, Rational(num) / den);
}

Polynomial poly(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return Polynomial(std::move(c));
}

Hyperreal cf(const Hyperreal::Ctx& c, Polynomial num, Polynomial den, const std::string& label) {
    return Hyperreal(seq_closed_form(ClosedForm::make(std::move(num), std::move(den)), label), c);
}

}  // namespace

TEST_CASE("from_rational is an ordered-field embedding") {
    auto c = ctx();
    CHECK(Hyperreal::eq(rat(c, 2, 3), rat(c, 4, 6)));
    CHECK(!Hyperreal::eq(rat(c, 1, 2), rat(c, 1, 3)));
    CHECK(Hyperreal::lt(rat(c, 1, 3), rat(c, 1, 2)));
    CHECK(!Hyperreal::lt(rat(c, 1, 2), rat(c, 1, 3)));
    CHECK(Hyperreal::eq(rat(c, 1, 2) + rat(c, 1, 3), rat(c, 5, 6)));
    CHECK(Hyperreal::eq(rat(c, 1, 2) * rat(c, 2, 3), rat(c, 1, 3)));
}

TEST_CASE("omega is larger than every rational and eps smaller than each positive one") {
    auto c = ctx();
    Hyperreal omega = Hyperreal::omega(c);
    Hyperreal eps = omega.inv();
    for (long q : {1l, 1000l, 1000000l, 1000000000l}) {
        CHECK(Hyperreal::lt(rat(c, q), omega));
        CHECK(Hyperreal::lt(eps, rat(c, 1, q)));
        CHECK(Hyperreal::lt(rat(c, 0), eps));
    }
    CHECK(omega.classify().kind == HClass::Infinite);
    CHECK(!omega.standard_part());
    CHECK(eps.classify().kind == HClass::Infinitesimal);
    CHECK(*eps.standard_part() == 0);
}

TEST_CASE("field axioms hold for random closed-form triples") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coeff(-4, 4);
    auto rand_cf = [&](const Hyperreal::Ctx& c, const std::string& label) {
        Polynomial num = poly({coeff(rng), coeff(rng), coeff(rng)});
        Polynomial den = poly({coeff(rng), coeff(rng), 0}) + poly({0, 0, 1});
        return cf(c, std::move(num), std::move(den), label);
    };
    for (int trial = 0; trial < 40; ++trial) {
        auto c = ctx();
        Hyperreal x = rand_cf(c, "x"), y = rand_cf(c, "y"), z = rand_cf(c, "z");
        CHECK(Hyperreal::eq((x + y) + z, x + (y + z)));
        CHECK(Hyperreal::eq(x + y, y + x));
        CHECK(Hyperreal::eq((x * y) * z, x * (y * z)));
        CHECK(Hyperreal::eq(x * y, y * x));
        CHECK(Hyperreal::eq(x * (y + z), x * y + x * z));
        CHECK(Hyperreal::eq(x + rat(c, 0), x));
        CHECK(Hyperreal::eq(x * rat(c, 1), x));
        CHECK(Hyperreal::eq(x + (-x), rat(c, 0)));
    }
}

TEST_CASE("multiplicative inverse uses the off-qualified-set patch") {
    auto c = ctx();
    // x(n) = (n-3)/(n+1) vanishes at n=3 but is eventually nonzero
    Hyperreal x = cf(c, poly({-3, 1}), poly({1, 1}), "x");
    Hyperreal ix = x.inv();
    CHECK(Hyperreal::eq(x * ix, rat(c, 1)));
    CHECK(ix.rep().eval(3) == 1);  // patched where x vanishes
    CHECK(Hyperreal::eq(Hyperreal::omega(c) * Hyperreal::omega(c).inv(), rat(c, 1)));
    CHECK_THROWS_AS(rat(c, 0).inv(), DivisionByZero);
}

TEST_CASE("order is a total compatible order") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> coeff(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        auto c = ctx();
        Hyperreal x = cf(c, poly({coeff(rng), coeff(rng)}), poly({1}), "x");
        Hyperreal y = cf(c, poly({coeff(rng), coeff(rng)}), poly({1}), "y");
        Hyperreal z = cf(c, poly({coeff(rng), coeff(rng)}), poly({1}), "z");
        int count = (Hyperreal::lt(x, y) ? 1 : 0) + (Hyperreal::lt(y, x) ? 1 : 0) +
                    (Hyperreal::eq(x, y) ? 1 : 0);
        CHECK(count == 1);  // trichotomy
        if (Hyperreal::lt(x, y) && Hyperreal::lt(y, z)) CHECK(Hyperreal::lt(x, z));
        if (Hyperreal::lt(x, y)) {
            CHECK(Hyperreal::lt(x + z, y + z));
            Hyperreal two = rat(c, 2);
            CHECK(Hyperreal::lt(x * two, y * two));
        }
    }
}

TEST_CASE("finite-range representatives collapse to exactly one value") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> pick(-3, 3);
    for (int trial = 0; trial < 25; ++trial) {
        auto c = ctx();
        std::size_t period = 2 + rng() % 4;
        std::vector<Rational> values;
        for (std::size_t i = 0; i < period; ++i) values.emplace_back(pick(rng));
        Hyperreal x(seq_periodic({}, values, "periodic"), c);
        int hits = 0;
        std::vector<Rational> distinct;
        for (const auto& v : values)
            if (std::find(distinct.begin(), distinct.end(), v) == distinct.end())
                distinct.push_back(v);
        for (const auto& v : distinct)
            if (Hyperreal::eq(x, Hyperreal::from_rational(c, v))) ++hits;
        CHECK(hits == 1);
    }
}

TEST_CASE("alternating-sign representative takes one of its cluster values") {
    auto c = ctx();
    // x(n) = n(-1)^n/(n+1) clusters at 1 and -1; the oracle picks the parity
    Hyperreal x(seq_opaque(
                    [](std::uint64_t n) {
                        Rational v(static_cast<unsigned long>(n));
                        v /= Rational(static_cast<unsigned long>(n + 1));
                        return n % 2 == 0 ? v : Rational(-v);
                    },
                    "alternating"),
                c);
    bool even_side = c->is_qualified(SetDescriptor::evens());
    Hyperreal target = even_side ? rat(c, 1) : rat(c, -1);
    // x is within 1/1000 of the cluster value picked by the parity commitment
    CHECK(Hyperreal::lt((x - target).abs(), rat(c, 1, 1000)));
    CHECK(!Hyperreal::lt((x + target).abs(), rat(c, 1, 1000)));
}

TEST_CASE("classification of eventually periodic representatives follows the oracle") {
    auto c = ctx();
    Hyperreal x(seq_periodic({}, {Rational(0), Rational(5)}, "zero-or-five"), c);
    auto st = x.standard_part();
    REQUIRE(st.has_value());
    bool even_side = c->is_qualified(SetDescriptor::evens());
    CHECK(*st == (even_side ? Rational(0) : Rational(5)));
}

TEST_CASE("natural extensions of registered functions act pointwise") {
    auto c = ctx();
    Hyperreal omega = Hyperreal::omega(c);
    RealFunction square = RealFunction::polynomial(poly({0, 0, 1}));
    Hyperreal sq = square.extend_apply(omega);
    CHECK(Hyperreal::lt(omega, sq));
    CHECK(Hyperreal::eq(sq, omega * omega));

    RealFunction ident = RealFunction::identity();
    CHECK(Hyperreal::eq(ident.extend_apply(omega), omega));

    CHECK(Hyperreal::eq(square.extend_apply(rat(c, 3)), rat(c, 9)));

    // |(-1)^n / (n+1)| collapses to 1/(n+1)
    Hyperreal alt(seq_opaque(
                      [](std::uint64_t n) {
                          Rational v(1, static_cast<unsigned long>(n + 1));
                          return n % 2 == 0 ? v : Rational(-v);
                      },
                      "alt"),
                  c);
    Hyperreal a = RealFunction::absolute().extend_apply(alt);
    Hyperreal expected = (omega + rat(c, 1)).inv();
    CHECK(Hyperreal::eq(a, expected));
}

TEST_CASE("piecewise and min/max functions evaluate exactly") {
    RealFunction clamp = RealFunction::piecewise(
        {Rational(0), Rational(1)},
        {Polynomial::constant(Rational(0)), Polynomial::variable(),
         Polynomial::constant(Rational(1))});
    CHECK(clamp(Rational(-5)) == 0);
    CHECK(clamp(Rational(1, 2)) == Rational(1, 2));
    CHECK(clamp(Rational(7)) == 1);
    RealFunction lo = RealFunction::min(RealFunction::identity(),
                                        RealFunction::constant(Rational(2)));
    CHECK(lo(Rational(5)) == 2);
    CHECK(lo(Rational(1)) == 1);
}

TEST_CASE("operations across different oracle contexts are rejected") {
    auto c1 = ctx(), c2 = ctx();
    CHECK_THROWS_AS(rat(c1, 1) + rat(c2, 1), ContextMismatch);
}

TEST_CASE("abs and pow behave algebraically") {
    auto c = ctx();
    Hyperreal x = cf(c, poly({5, -1}), poly({1}), "x");  // 5 - n, eventually negative
    CHECK(Hyperreal::eq(x.abs(), -x));
    CHECK(Hyperreal::eq(x.pow(3), x * x * x));
    CHECK(Hyperreal::eq(x.pow(0), rat(c, 1)));
}
