#include "ltheory/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace ltheory {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

SetDescriptor SetDescriptor::complement() const {
    SetDescriptor c;
    auto m = member;
    c.member = [m](std::uint64_t n) { return !m(n); };
    c.label = "not(" + label + ")";
    if (auto* f = std::get_if<Finite>(&classification)) {
        c.classification = Cofinite{f->bound};
    } else if (auto* cf = std::get_if<Cofinite>(&classification)) {
        c.classification = Finite{cf->bound};
    } else if (auto* p = std::get_if<PeriodicUnion>(&classification)) {
        PeriodicUnion q = *p;
        q.preperiod.flip();
        q.period.flip();
        c.classification = q;
    } else {
        c.classification = Unknown{};
    }
    return c;
}

SetDescriptor SetDescriptor::finite_below(std::uint64_t bound, std::string label) {
    SetDescriptor s;
    s.member = [bound](std::uint64_t n) { return n < bound; };
    s.classification = Finite{bound};
    s.label = std::move(label);
    return s;
}

SetDescriptor SetDescriptor::cofinite_from(std::uint64_t bound, std::string label) {
    SetDescriptor s;
    s.member = [bound](std::uint64_t n) { return n >= bound; };
    s.classification = Cofinite{bound};
    s.label = std::move(label);
    return s;
}

SetDescriptor SetDescriptor::singleton(std::uint64_t k) {
    SetDescriptor s;
    s.member = [k](std::uint64_t n) { return n == k; };
    s.classification = Finite{k + 1};
    s.label = "singleton(" + std::to_string(k) + ")";
    return s;
}

SetDescriptor SetDescriptor::periodic(std::vector<bool> preperiod, std::vector<bool> period,
                                      std::string label) {
    if (period.empty()) throw InconsistentDescriptor("empty period in '" + label + "'");
    SetDescriptor s;
    auto pre = preperiod;
    auto per = period;
    s.member = [pre, per](std::uint64_t n) {
        if (n < pre.size()) return static_cast<bool>(pre[n]);
        return static_cast<bool>(per[(n - pre.size()) % per.size()]);
    };
    s.classification = PeriodicUnion{std::move(preperiod), std::move(period)};
    s.label = std::move(label);
    return s;
}

SetDescriptor SetDescriptor::opaque(std::function<bool(std::uint64_t)> member, std::string label) {
    SetDescriptor s;
    s.member = std::move(member);
    s.classification = Unknown{};
    s.label = std::move(label);
    return s;
}

SetDescriptor SetDescriptor::evens() {
    return periodic({}, {true, false}, "evens");
}

SetDescriptor SetDescriptor::odds() {
    return periodic({}, {false, true}, "odds");
}

std::uint64_t UltrafilterOracle::EpSet::count_below(std::uint64_t h) const {
    std::uint64_t c = 0;
    std::uint64_t p = std::min<std::uint64_t>(h, pre.size());
    for (std::uint64_t n = 0; n < p; ++n) c += pre[n] ? 1 : 0;
    if (h <= pre.size()) return c;
    std::uint64_t rest = h - pre.size();
    std::uint64_t per_count = 0;
    for (bool b : period) per_count += b ? 1 : 0;
    c += (rest / period.size()) * per_count;
    for (std::uint64_t r = 0; r < rest % period.size(); ++r) c += period[r] ? 1 : 0;
    return c;
}

UltrafilterOracle::UltrafilterOracle(std::uint64_t horizon, unsigned theta)
    : horizon_(std::max<std::uint64_t>(horizon, 64)), theta_(theta) {
    exact_summary_ = EpSet{{}, {true}};
    std::uint64_t lo = horizon_ / 2;
    std::uint64_t span = horizon_ - lo;
    if (span <= 2 * kMaxGridPoints) {
        for (std::uint64_t n = lo; n < horizon_; ++n) grid_.push_back(n);
    } else {
        // fixed-seed scrambled sample; avoids the aliasing a strided grid would
        // have against small-period sets
        std::uint64_t state = 0x0DDC0FFEEBADF00Dull;
        std::vector<std::uint64_t> pts;
        pts.reserve(kMaxGridPoints);
        while (pts.size() < kMaxGridPoints) pts.push_back(lo + splitmix64(state) % span);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        grid_ = std::move(pts);
    }
    alive_ = grid_;
}

std::shared_ptr<UltrafilterOracle> UltrafilterOracle::create_default() {
    std::uint64_t horizon = kDefaultHorizon;
    if (const char* env = std::getenv("LAMBDA_HORIZON")) {
        char* end = nullptr;
        std::uint64_t h = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && h > 0) horizon = h;
    }
    return std::make_shared<UltrafilterOracle>(horizon);
}

std::optional<UltrafilterOracle::EpSet> UltrafilterOracle::intersect(const EpSet& a,
                                                                     const EpSet& b) {
    std::uint64_t period = std::lcm<std::uint64_t>(a.period.size(), b.period.size());
    std::uint64_t pre = std::max(a.pre.size(), b.pre.size());
    if (period > kEpPeriodCap || pre > kEpPreCap) return std::nullopt;
    EpSet r;
    r.pre.resize(pre);
    for (std::uint64_t n = 0; n < pre; ++n) r.pre[n] = a.member(n) && b.member(n);
    r.period.resize(period);
    for (std::uint64_t k = 0; k < period; ++k) r.period[k] = a.member(pre + k) && b.member(pre + k);
    return r;
}

UltrafilterOracle::EpSet UltrafilterOracle::to_epset(const SetDescriptor& s) {
    EpSet r;
    if (auto* f = std::get_if<SetDescriptor::Finite>(&s.classification)) {
        r.pre.resize(f->bound);
        for (std::uint64_t n = 0; n < f->bound; ++n) r.pre[n] = s.member(n);
        r.period = {false};
    } else if (auto* c = std::get_if<SetDescriptor::Cofinite>(&s.classification)) {
        r.pre.resize(c->bound);
        for (std::uint64_t n = 0; n < c->bound; ++n) r.pre[n] = s.member(n);
        r.period = {true};
    } else if (auto* p = std::get_if<SetDescriptor::PeriodicUnion>(&s.classification)) {
        r.pre = p->preperiod;
        r.period = p->period;
    } else {
        throw Error("to_epset on unknown classification");
    }
    return r;
}

void UltrafilterOracle::validate(const SetDescriptor& s) const {
    if (!s.member) throw InconsistentDescriptor("descriptor '" + s.label + "' has no predicate");
    auto check = [&](std::uint64_t n, bool expect) {
        if (s.member(n) != expect)
            throw InconsistentDescriptor("descriptor '" + s.label +
                                         "' contradicts its classification at n=" + std::to_string(n));
    };
    auto spread = [&](std::uint64_t from, auto expect_at) {
        for (std::uint64_t n = from; n < from + 32 && n < horizon_; ++n) check(n, expect_at(n));
        for (int k = 1; k <= 8; ++k) {
            std::uint64_t n = from + (horizon_ - from) * static_cast<std::uint64_t>(k) / 9;
            if (n < horizon_) check(n, expect_at(n));
        }
    };
    if (auto* f = std::get_if<SetDescriptor::Finite>(&s.classification)) {
        spread(f->bound, [](std::uint64_t) { return false; });
    } else if (auto* c = std::get_if<SetDescriptor::Cofinite>(&s.classification)) {
        spread(c->bound, [](std::uint64_t) { return true; });
    } else if (auto* p = std::get_if<SetDescriptor::PeriodicUnion>(&s.classification)) {
        if (p->period.empty()) throw InconsistentDescriptor("empty period in '" + s.label + "'");
        auto pattern = [p](std::uint64_t n) -> bool {
            if (n < p->preperiod.size()) return p->preperiod[n];
            return p->period[(n - p->preperiod.size()) % p->period.size()];
        };
        for (std::uint64_t n = 0; n < std::min<std::uint64_t>(64, horizon_); ++n) check(n, pattern(n));
        spread(p->preperiod.size(), pattern);
    }
}

std::uint64_t UltrafilterOracle::fingerprint(const SetDescriptor& s) const {
    std::uint64_t range = std::min<std::uint64_t>(horizon_, 4096);
    std::uint64_t step = std::max<std::uint64_t>(1, range / kFingerprintPoints);
    std::uint64_t h = 1469598103934665603ull;  // FNV offset basis
    for (std::uint64_t n = 0; n < range; n += step) {
        h ^= s.member(n) ? 0x9Eu : 0x31u;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

// whether a descriptor fits the bit-pattern caps as an EpSet
bool epset_fits(const SetDescriptor& s) {
    if (auto* f = std::get_if<SetDescriptor::Finite>(&s.classification))
        return f->bound <= UltrafilterOracle::kEpPreCap;
    if (auto* c = std::get_if<SetDescriptor::Cofinite>(&s.classification))
        return c->bound <= UltrafilterOracle::kEpPreCap;
    if (auto* p = std::get_if<SetDescriptor::PeriodicUnion>(&s.classification))
        return p->preperiod.size() <= UltrafilterOracle::kEpPreCap &&
               p->period.size() <= UltrafilterOracle::kEpPeriodCap;
    return false;
}

}  // namespace

void UltrafilterOracle::commit(SetDescriptor s, bool exact_path) {
    if (s.is_exact() && exact_summary_) {
        if (epset_fits(s)) {
            exact_summary_ = intersect(*exact_summary_, to_epset(s));
        } else if (auto* c = std::get_if<SetDescriptor::Cofinite>(&s.classification)) {
            // {n >= bound} only shifts the intersection; record the floor
            exact_floor_ = std::max(exact_floor_, c->bound);
        } else {
            exact_summary_ = std::nullopt;
        }
    }
    if (!s.is_exact()) any_unknown_committed_ = true;
    std::vector<std::uint64_t> next;
    next.reserve(alive_.size());
    for (std::uint64_t n : alive_)
        if (s.member(n)) next.push_back(n);
    alive_ = std::move(next);
    committed_.push_back(CommittedSet{std::move(s), exact_path});
}

bool UltrafilterOracle::decide(const SetDescriptor& s, Decision& d) {
    d.label = s.label;
    if (std::holds_alternative<SetDescriptor::Cofinite>(s.classification)) {
        d.answer = true;
        d.exact = true;
        return true;
    }
    if (std::holds_alternative<SetDescriptor::Finite>(s.classification)) {
        d.answer = false;
        d.exact = true;
        return true;
    }
    if (s.is_exact() && !any_unknown_committed_ && exact_summary_ && epset_fits(s)) {
        auto inter = intersect(*exact_summary_, to_epset(s));
        if (inter) {
            d.answer = inter->infinite();
            d.exact = true;
            return true;
        }
    }
    std::uint64_t count = 0;
    for (std::uint64_t n : alive_)
        if (s.member(n)) ++count;
    d.answer = count >= theta_;
    d.exact = false;
    d.witness_count = count;
    return true;
}

bool UltrafilterOracle::is_qualified(const SetDescriptor& s) {
    std::lock_guard<std::mutex> lock(mu_);
    if (poisoned_)
        throw HorizonExhausted("oracle poisoned by an earlier horizon exhaustion (query '" +
                               s.label + "')");
    validate(s);

    if (auto it = replay_.find(s.label); it != replay_.end()) {
        Decision d{s.label, it->second, true, 0};
        commit(d.answer ? s : s.complement(), true);
        d.witness_count = alive_.size();
        log_.push_back(d);
        replay_.erase(it);
        return d.answer;
    }

    std::string key = s.label + "#" + std::to_string(fingerprint(s));
    if (auto it = memo_.find(key); it != memo_.end()) {
        // stable answer for an equivalent descriptor; no new commitment
        log_.push_back(Decision{s.label, it->second, true, alive_.size()});
        return it->second;
    }

    Decision d;
    decide(s, d);
    commit(d.answer ? s : s.complement(), d.exact);
    d.witness_count = alive_.size();
    memo_[key] = d.answer;
    log_.push_back(d);
    if (alive_.size() < theta_) {
        // exact commitments whose intersection is provably infinite may run
        // out of witnesses below the horizon without being inconsistent
        bool certain = !any_unknown_committed_ && exact_summary_ && exact_summary_->infinite();
        if (!certain) {
            poisoned_ = true;
            throw HorizonExhausted("fewer than " + std::to_string(theta_) +
                                   " intersection witnesses below horizon after deciding '" +
                                   s.label + "'");
        }
    }
    return d.answer;
}

ConsistencyReport UltrafilterOracle::check_consistency() const {
    std::lock_guard<std::mutex> lock(mu_);
    ConsistencyReport rep;
    rep.horizon = horizon_;
    rep.commitments = committed_.size();
    rep.empty_prefix_witnesses = horizon_;
    rep.poisoned = poisoned_;

    std::optional<EpSet> summary = EpSet{{}, {true}};
    std::uint64_t floor = 0;
    std::vector<std::uint64_t> alive = grid_;
    for (const auto& c : committed_) {
        ConsistencyReport::PrefixWitness w;
        w.label = c.set.label;
        if (summary && c.set.is_exact() && epset_fits(c.set))
            summary = intersect(*summary, to_epset(c.set));
        else if (auto* cf = std::get_if<SetDescriptor::Cofinite>(&c.set.classification);
                 summary && cf)
            floor = std::max(floor, cf->bound);
        else
            summary = std::nullopt;
        std::vector<std::uint64_t> next;
        for (std::uint64_t n : alive)
            if (c.set.member(n)) next.push_back(n);
        alive = std::move(next);
        if (summary) {
            std::uint64_t skipped = summary->count_below(std::min(floor, horizon_));
            w.witnesses = summary->count_below(horizon_) - skipped;
            w.exact = true;
        } else {
            w.witnesses = alive.size();
            w.exact = false;
        }
        if (w.witnesses < theta_ && !(summary && summary->infinite())) rep.ok = false;
        rep.prefixes.push_back(std::move(w));
    }
    for (const auto& d : log_)
        if (!d.exact) rep.heuristic_decisions.push_back(d);
    if (poisoned_) rep.ok = false;
    return rep;
}

std::vector<Decision> UltrafilterOracle::decision_log() const {
    std::lock_guard<std::mutex> lock(mu_);
    return log_;
}

std::uint64_t UltrafilterOracle::decisions_used() const {
    std::lock_guard<std::mutex> lock(mu_);
    return log_.size();
}

void UltrafilterOracle::preload_replay(const std::vector<Decision>& log) {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& d : log) replay_[d.label] = d.answer;
}

}  // namespace ltheory
