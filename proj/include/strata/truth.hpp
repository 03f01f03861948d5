#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace strata::kg {

/// Evidential horizon. Confidence c maps to evidence weight k*c/(1-c).
inline constexpr double kHorizon = 1.0;

/// Confidence assigned to directly observed geometric facts.
inline constexpr double kObservationConfidence = 0.9;

/// Frequency/confidence pair. Frequency is the positive-evidence ratio and
/// confidence the total evidence relative to evidence plus the horizon.
struct TruthValue {
    double frequency = 1.0;
    double confidence = 0.0;

    bool valid() const;
    /// Total evidence weight w = k*c/(1-c).
    double weight() const;
    double positive_weight() const { return frequency * weight(); }

    static TruthValue from_weights(double positive, double total);

    friend bool operator==(const TruthValue&, const TruthValue&) = default;
};

/// Sorted set of premise ids backing a belief.
class Stamp {
public:
    Stamp() = default;
    explicit Stamp(std::vector<std::uint64_t> ids);
    static Stamp single(std::uint64_t id) { return Stamp({id}); }

    bool empty() const { return ids_.empty(); }
    std::size_t size() const { return ids_.size(); }
    const std::vector<std::uint64_t>& ids() const { return ids_; }

    bool overlaps(const Stamp& other) const;
    Stamp merged(const Stamp& other) const;

    friend bool operator==(const Stamp&, const Stamp&) = default;
    friend auto operator<=>(const Stamp& a, const Stamp& b) { return a.ids_ <=> b.ids_; }

private:
    std::vector<std::uint64_t> ids_;
};

struct Evidence {
    TruthValue tv;
    Stamp stamp;

    friend bool operator==(const Evidence&, const Evidence&) = default;
};

/// Pools the evidence of two beliefs about the same statement. Returns
/// nullopt when the stamps overlap (the evidence would be counted twice).
std::optional<Evidence> revise(const Evidence& a, const Evidence& b);

/// Strong syllogism: f = f1 f2, c = f1 f2 c1 c2.
TruthValue deduction(const TruthValue& a, const TruthValue& b);

/// c (f - 1/2) + 1/2.
double expectation(const TruthValue& tv);

/// Strict total preference used by choice: higher confidence, then higher
/// expectation, then higher frequency, then the lexicographically smaller stamp.
bool more_confident(const Evidence& a, const Evidence& b);

/// Same as more_confident but ranks by expectation first.
bool more_expected(const Evidence& a, const Evidence& b);

/// Keeps the higher-confidence belief (same statement, overlapping evidence).
const Evidence& choose(const Evidence& a, const Evidence& b);

/// Combines a revision attempt with the confidence choice fallback.
Evidence revise_or_choose(const Evidence& a, const Evidence& b);

} // namespace strata::kg
