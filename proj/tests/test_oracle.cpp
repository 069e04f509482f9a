#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ltheory/oracle.hpp"

using namespace ltheory;

namespace {

SetDescriptor random_periodic(std::mt19937_64& rng, std::size_t period, const std::string& label) {
    std::uniform_int_distribution<int> bit(0, 1);
    std::vector<bool> p(period);
    for (std::size_t i = 0; i < period; ++i) p[i] = bit(rng) != 0;
    return SetDescriptor::periodic({}, p, label);
}

}  // namespace

TEST_CASE("fresh oracle reports an empty consistent state") {
    UltrafilterOracle oracle(4096);
    ConsistencyReport rep = oracle.check_consistency();
    CHECK(rep.commitments == 0);
    CHECK(rep.empty_prefix_witnesses == 4096);
    CHECK(rep.ok);
    CHECK(!rep.poisoned);
    CHECK(oracle.decisions_used() == 0);
}

TEST_CASE("cofinite sets are qualified and finite sets are not") {
    UltrafilterOracle oracle(4096);
    CHECK(oracle.is_qualified(SetDescriptor::cofinite_from(100, "tail")));
    CHECK(!oracle.is_qualified(SetDescriptor::finite_below(1000, "head")));
    for (const auto& d : oracle.decision_log()) CHECK(d.exact);
}

TEST_CASE("freeness: no singleton is qualified") {
    UltrafilterOracle oracle(4096);
    for (std::uint64_t k : {0ull, 1ull, 17ull, 4095ull, 100000ull, 1ull << 30})
        CHECK(!oracle.is_qualified(SetDescriptor::singleton(k)));
    CHECK(oracle.check_consistency().ok);
}

TEST_CASE("complement answers flip after a parity commitment") {
    UltrafilterOracle oracle(4096);
    bool evens = oracle.is_qualified(SetDescriptor::evens());
    bool odds = oracle.is_qualified(SetDescriptor::odds());
    CHECK(evens == !odds);
    CHECK(oracle.check_consistency().ok);
}

TEST_CASE("boolean laws on randomized periodic descriptors") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        UltrafilterOracle oracle(4096);
        std::size_t period = 2 + static_cast<std::size_t>(rng() % 10);
        SetDescriptor a = random_periodic(rng, period, "A");
        SetDescriptor b = random_periodic(rng, period, "B");
        bool qa = oracle.is_qualified(a);
        bool qb = oracle.is_qualified(b);

        CHECK(oracle.is_qualified(a.complement()) == !qa);

        SetDescriptor inter;
        inter.member = [a, b](std::uint64_t n) { return a.member(n) && b.member(n); };
        auto& pa = std::get<SetDescriptor::PeriodicUnion>(a.classification);
        auto& pb = std::get<SetDescriptor::PeriodicUnion>(b.classification);
        std::vector<bool> bits(period);
        for (std::size_t i = 0; i < period; ++i) bits[i] = pa.period[i] && pb.period[i];
        inter.classification = SetDescriptor::PeriodicUnion{{}, bits};
        inter.label = "A&B";
        CHECK(oracle.is_qualified(inter) == (qa && qb));

        // A is a subset of A|B, so qualification propagates upward
        SetDescriptor sup;
        sup.member = [a, b](std::uint64_t n) { return a.member(n) || b.member(n); };
        for (std::size_t i = 0; i < period; ++i) bits[i] = pa.period[i] || pb.period[i];
        sup.classification = SetDescriptor::PeriodicUnion{{}, bits};
        sup.label = "A|B";
        if (qa) CHECK(oracle.is_qualified(sup));
        CHECK(oracle.check_consistency().ok);
    }
}

TEST_CASE("opaque descriptors fall back to flagged heuristic sampling") {
    UltrafilterOracle oracle(4096);
    bool q = oracle.is_qualified(
        SetDescriptor::opaque([](std::uint64_t n) { return n % 3 != 0; }, "mostly"));
    CHECK(q);
    auto log = oracle.decision_log();
    REQUIRE(log.size() == 1);
    CHECK(!log[0].exact);
    CHECK(log[0].witness_count >= oracle.theta());
    CHECK(oracle.check_consistency().heuristic_decisions.size() == 1);
}

TEST_CASE("a descriptor contradicting its classification is rejected") {
    UltrafilterOracle oracle(4096);
    SetDescriptor lying;
    lying.member = [](std::uint64_t) { return false; };
    lying.classification = SetDescriptor::Cofinite{10};
    lying.label = "lying";
    CHECK_THROWS_AS(oracle.is_qualified(lying), InconsistentDescriptor);
}

TEST_CASE("memoized answers are stable and do not recommit") {
    UltrafilterOracle oracle(4096);
    SetDescriptor e = SetDescriptor::evens();
    bool first = oracle.is_qualified(e);
    std::uint64_t commits = oracle.check_consistency().commitments;
    CHECK(oracle.is_qualified(SetDescriptor::evens()) == first);
    CHECK(oracle.check_consistency().commitments == commits);
    CHECK(oracle.decisions_used() == 2);
}

TEST_CASE("identical query sequences give identical logs") {
    auto run = [] {
        UltrafilterOracle oracle(4096);
        oracle.is_qualified(SetDescriptor::evens());
        oracle.is_qualified(SetDescriptor::opaque(
            [](std::uint64_t n) { return n % 7 < 3; }, "sevens"));
        oracle.is_qualified(SetDescriptor::cofinite_from(33, "tail33"));
        return oracle.decision_log();
    };
    auto a = run(), b = run();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].label == b[i].label);
        CHECK(a[i].answer == b[i].answer);
        CHECK(a[i].exact == b[i].exact);
        CHECK(a[i].witness_count == b[i].witness_count);
    }
}

TEST_CASE("replay preloading forces recorded answers") {
    UltrafilterOracle first(4096);
    first.is_qualified(SetDescriptor::odds());
    auto log = first.decision_log();

    UltrafilterOracle second(4096);
    second.preload_replay(log);
    CHECK(second.is_qualified(SetDescriptor::odds()) == log[0].answer);
    // a replayed commitment binds later complement queries too
    CHECK(second.is_qualified(SetDescriptor::evens()) == !log[0].answer);
}

TEST_CASE("starved heuristic intersections poison the oracle") {
    UltrafilterOracle oracle(256);
    // commit enough incompatible opaque slices to empty the witness grid
    CHECK_THROWS_AS(
        {
            for (std::uint64_t k = 0; k < 64; ++k) {
                oracle.is_qualified(SetDescriptor::opaque(
                    [k](std::uint64_t n) { return (n >> k) % 2 == 0; },
                    "slice" + std::to_string(k)));
            }
        },
        HorizonExhausted);
    CHECK(oracle.check_consistency().poisoned);
    CHECK_THROWS_AS(oracle.is_qualified(SetDescriptor::evens()), HorizonExhausted);
}

TEST_CASE("exactly certain intersections survive a witness-free horizon") {
    UltrafilterOracle oracle(1024);
    // {n > 10^9} is far beyond the horizon but exactly cofinite
    SetDescriptor far = SetDescriptor::cofinite_from(1000000000, "far-tail");
    CHECK(oracle.is_qualified(far));
    CHECK(oracle.is_qualified(SetDescriptor::cofinite_from(5, "near-tail")));
    CHECK(oracle.check_consistency().ok);
}
