#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ltheory/errors.hpp"

namespace ltheory {

/// A subset of the index set N, given by a total membership predicate plus an
/// optional exact classification the oracle can reason about symbolically.
struct SetDescriptor {
    struct Finite {
        std::uint64_t bound;  // member(n) == false for all n >= bound
    };
    struct Cofinite {
        std::uint64_t bound;  // member(n) == true for all n >= bound
    };
    struct PeriodicUnion {
        std::vector<bool> preperiod;
        std::vector<bool> period;  // nonempty; member(n) follows the pattern for all n
    };
    struct Unknown {};
    using Classification = std::variant<Finite, Cofinite, PeriodicUnion, Unknown>;

    std::function<bool(std::uint64_t)> member;
    Classification classification = Unknown{};
    std::string label;

    bool is_exact() const { return !std::holds_alternative<Unknown>(classification); }
    SetDescriptor complement() const;

    static SetDescriptor finite_below(std::uint64_t bound, std::string label);
    static SetDescriptor cofinite_from(std::uint64_t bound, std::string label);
    static SetDescriptor singleton(std::uint64_t k);
    static SetDescriptor periodic(std::vector<bool> preperiod, std::vector<bool> period,
                                  std::string label);
    static SetDescriptor opaque(std::function<bool(std::uint64_t)> member, std::string label);
    static SetDescriptor evens();
    static SetDescriptor odds();
};

struct Decision {
    std::string label;
    bool answer = false;
    bool exact = false;  // false => heuristic sampling was used
    std::uint64_t witness_count = 0;
};

struct ConsistencyReport {
    struct PrefixWitness {
        std::string label;         // label of the set committed at this step
        std::uint64_t witnesses;   // members of the intersection of the prefix below horizon
        bool exact;                // witness count computed symbolically vs on the sample grid
    };
    std::uint64_t horizon = 0;
    std::uint64_t commitments = 0;
    std::uint64_t empty_prefix_witnesses = 0;  // convention: horizon for the empty intersection
    std::vector<PrefixWitness> prefixes;
    std::vector<Decision> heuristic_decisions;
    bool poisoned = false;
    bool ok = true;  // all prefixes keep at least theta witnesses
};

/// Lazily simulated free ultrafilter on N. Queries are decided incrementally
/// while maintaining a finite-intersection-property witness below the horizon;
/// once a query is answered, the queried set (or its complement) is committed
/// and every later answer is consistent with it.
class UltrafilterOracle {
  public:
    static constexpr std::uint64_t kDefaultHorizon = 100000;
    static constexpr std::size_t kEpPeriodCap = 8192;   // lcm blowup guard
    static constexpr std::size_t kEpPreCap = 1u << 22;  // bit-pattern prefix guard

    explicit UltrafilterOracle(std::uint64_t horizon = kDefaultHorizon, unsigned theta = 8);

    /// Reads LAMBDA_HORIZON from the environment when set.
    static std::shared_ptr<UltrafilterOracle> create_default();

    bool is_qualified(const SetDescriptor& s);
    ConsistencyReport check_consistency() const;

    std::uint64_t horizon() const { return horizon_; }
    unsigned theta() const { return theta_; }
    std::vector<Decision> decision_log() const;
    std::uint64_t decisions_used() const;

    /// Re-impose a previous decision log: future queries whose label matches a
    /// replayed entry are answered from it (and not re-decided).
    void preload_replay(const std::vector<Decision>& log);

  private:
    // Intersection of exactly classified committed sets, kept as an eventually
    // periodic bit pattern while the preperiod/period stay within caps.
    struct EpSet {
        std::vector<bool> pre;
        std::vector<bool> period;  // nonempty
        bool member(std::uint64_t n) const {
            if (n < pre.size()) return pre[n];
            return period[(n - pre.size()) % period.size()];
        }
        bool infinite() const {
            for (bool b : period)
                if (b) return true;
            return false;
        }
        std::uint64_t count_below(std::uint64_t h) const;
    };

    struct CommittedSet {
        SetDescriptor set;
        bool exact;
    };

    static EpSet to_epset(const SetDescriptor& s);
    static std::optional<EpSet> intersect(const EpSet& a, const EpSet& b);

    void validate(const SetDescriptor& s) const;
    std::uint64_t fingerprint(const SetDescriptor& s) const;
    void commit(SetDescriptor s, bool exact_path);
    bool decide(const SetDescriptor& s, Decision& d);

    std::uint64_t horizon_;
    unsigned theta_;
    std::vector<CommittedSet> committed_;
    std::vector<Decision> log_;
    std::unordered_map<std::string, bool> memo_;          // "label#fingerprint" -> answer
    std::unordered_map<std::string, bool> replay_;        // label -> forced answer
    std::optional<EpSet> exact_summary_;                  // nullopt once the caps overflow
    std::uint64_t exact_floor_ = 0;  // cofinite commitments too large for the bit pattern
    std::vector<std::uint64_t> grid_;                     // sample points in [horizon/2, horizon)
    std::vector<std::uint64_t> alive_;                    // grid points still in the intersection
    bool any_unknown_committed_ = false;
    bool poisoned_ = false;
    mutable std::mutex mu_;

    static constexpr std::size_t kMaxGridPoints = 512;
    static constexpr std::size_t kFingerprintPoints = 256;
};

}  // namespace ltheory
