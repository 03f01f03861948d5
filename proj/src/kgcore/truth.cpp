#include "strata/truth.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace strata::kg {

bool TruthValue::valid() const {
    return std::isfinite(frequency) && std::isfinite(confidence) && frequency >= 0.0 &&
           frequency <= 1.0 && confidence >= 0.0 && confidence < 1.0;
}

double TruthValue::weight() const { return kHorizon * confidence / (1.0 - confidence); }

TruthValue TruthValue::from_weights(double positive, double total) {
    if (total <= 0.0)
        return {0.5, 0.0};
    return {positive / total, total / (total + kHorizon)};
}

Stamp::Stamp(std::vector<std::uint64_t> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool Stamp::overlaps(const Stamp& other) const {
    auto a = ids_.begin();
    auto b = other.ids_.begin();
    while (a != ids_.end() && b != other.ids_.end()) {
        if (*a == *b)
            return true;
        if (*a < *b)
            ++a;
        else
            ++b;
    }
    return false;
}

Stamp Stamp::merged(const Stamp& other) const {
    Stamp out;
    out.ids_.reserve(ids_.size() + other.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out.ids_));
    return out;
}

std::optional<Evidence> revise(const Evidence& a, const Evidence& b) {
    if (a.stamp.overlaps(b.stamp))
        return std::nullopt;
    const double w1 = a.tv.weight();
    const double w2 = b.tv.weight();
    const double positive = a.tv.frequency * w1 + b.tv.frequency * w2;
    return Evidence{TruthValue::from_weights(positive, w1 + w2), a.stamp.merged(b.stamp)};
}

TruthValue deduction(const TruthValue& a, const TruthValue& b) {
    const double f = a.frequency * b.frequency;
    return {f, f * a.confidence * b.confidence};
}

double expectation(const TruthValue& tv) {
    return tv.confidence * (tv.frequency - 0.5) + 0.5;
}

namespace {

int compare_tail(const Evidence& a, const Evidence& b) {
    if (a.tv.frequency != b.tv.frequency)
        return a.tv.frequency > b.tv.frequency ? -1 : 1;
    if (a.stamp != b.stamp)
        return a.stamp < b.stamp ? -1 : 1;
    return 0;
}

} // namespace

bool more_confident(const Evidence& a, const Evidence& b) {
    if (a.tv.confidence != b.tv.confidence)
        return a.tv.confidence > b.tv.confidence;
    const double ea = expectation(a.tv);
    const double eb = expectation(b.tv);
    if (ea != eb)
        return ea > eb;
    return compare_tail(a, b) < 0;
}

bool more_expected(const Evidence& a, const Evidence& b) {
    const double ea = expectation(a.tv);
    const double eb = expectation(b.tv);
    if (ea != eb)
        return ea > eb;
    if (a.tv.confidence != b.tv.confidence)
        return a.tv.confidence > b.tv.confidence;
    return compare_tail(a, b) < 0;
}

const Evidence& choose(const Evidence& a, const Evidence& b) {
    return more_confident(b, a) ? b : a;
}

Evidence revise_or_choose(const Evidence& a, const Evidence& b) {
    if (auto pooled = revise(a, b))
        return *pooled;
    return choose(a, b);
}

} // namespace strata::kg
