#include "strata/reasoner.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "strata/error.hpp"
#include "strata/geometry.hpp"
#include "strata/semantics.hpp"

namespace strata::reason {

std::string_view to_string(Category category) {
    return category == Category::shelf ? "shelf" : "product";
}

std::string_view to_string(Label label) {
    switch (label) {
    case Label::shelf: return "shelf";
    case Label::product: return "product";
    case Label::other: return "other";
    }
    return "other";
}

Label parse_label(std::string_view text) {
    if (text == "shelf") return Label::shelf;
    if (text == "product") return Label::product;
    if (text == "other") return Label::other;
    throw Error(ErrorCode::parse_error, "unknown label '" + std::string(text) + "'");
}

Category parse_category(std::string_view text) {
    if (text == "shelf") return Category::shelf;
    if (text == "product") return Category::product;
    throw Error(ErrorCode::parse_error, "unknown category '" + std::string(text) + "'");
}

void Budget::validate() const {
    if (wm_capacity == 0 || max_iterations <= 0 || !(delta > 0))
        throw Error(ErrorCode::invalid_argument, "reasoner budget values must be positive");
}

Budget Budget::unbounded() {
    Budget b;
    b.wm_capacity = static_cast<std::size_t>(-1);
    return b;
}

ExpertAxioms axioms_from_json(const nlohmann::json& doc) {
    ExpertAxioms axioms;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "symmetric") {
                axioms.symmetric = value.get<std::vector<std::string>>();
            } else if (key == "inverses") {
                for (const auto& pair : value) {
                    if (!pair.is_array() || pair.size() != 2)
                        throw Error(ErrorCode::parse_error, "inverse entries must be name pairs");
                    axioms.inverses.emplace_back(pair[0].get<std::string>(),
                                                 pair[1].get<std::string>());
                }
            } else {
                throw Error(ErrorCode::parse_error, "unknown expert-axiom key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& err) {
        throw Error(ErrorCode::parse_error, std::string("expert axioms: ") + err.what());
    }
    return axioms;
}

kg::Evidence combine(std::vector<kg::Evidence> candidates) {
    if (candidates.empty())
        throw Error(ErrorCode::invalid_argument, "combine needs at least one candidate");
    std::sort(candidates.begin(), candidates.end(), kg::more_expected);
    kg::Evidence acc = candidates.front();
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (auto pooled = kg::revise(acc, candidates[i]))
            acc = std::move(*pooled);
        else if (kg::more_expected(candidates[i], acc))
            acc = candidates[i];
    }
    return acc;
}

namespace {

using Key = std::pair<std::string, Category>;

struct Premise {
    std::string from;
    std::string to;
    kg::Evidence ev;
};

bool covers_symmetric(const ExpertAxioms& axioms, std::string_view relation) {
    for (const auto& name : axioms.symmetric) {
        if (relation == name)
            return true;
        if (relation.size() > name.size() + 1 && relation.starts_with(name) &&
            relation[name.size()] == '_')
            return true;
    }
    return false;
}

// Relation views over the admitted premises, with expert axioms applied.
// Axioms add read-only views; the graph itself is never touched.
class WorkingMemory {
public:
    WorkingMemory(std::span<const sem::Fact> admitted, const ExpertAxioms& axioms) {
        for (const sem::Fact& fact : admitted) {
            if (fact.is_attribute)
                continue;
            const kg::Evidence ev{fact.tv, fact.stamp};
            add(fact.predicate, fact.subject, fact.object, ev);
            if (covers_symmetric(axioms, fact.predicate))
                add(fact.predicate, fact.object, fact.subject, ev);
            for (const auto& [a, b] : axioms.inverses) {
                if (fact.predicate == a)
                    add(b, fact.object, fact.subject, ev);
                else if (fact.predicate == b)
                    add(a, fact.object, fact.subject, ev);
            }
        }
    }

    std::vector<Premise> list(std::string_view relation) const {
        std::vector<Premise> out;
        auto it = views_.find(std::string(relation));
        if (it == views_.end())
            return out;
        for (const auto& [ends, ev] : it->second)
            out.push_back({ends.first, ends.second, ev});
        return out;
    }

private:
    void add(const std::string& relation, const std::string& from, const std::string& to,
             const kg::Evidence& ev) {
        views_[relation].emplace(std::make_pair(from, to), ev);
    }

    std::map<std::string, std::map<std::pair<std::string, std::string>, kg::Evidence>> views_;
};

bool disjoint(const kg::Evidence& a, const kg::Evidence& b) {
    return !a.stamp.overlaps(b.stamp);
}

kg::Evidence conclude(const kg::TruthValue& tv, const kg::Evidence& a, const kg::Evidence& b) {
    return {tv, a.stamp.merged(b.stamp)};
}

} // namespace

InferResult infer(const kg::LayeredGraph& g, const Budget& budget, const ExpertAxioms& axioms) {
    budget.validate();
    InferResult result;

    std::vector<sem::Fact> facts = sem::collect_facts(g);
    result.premises_total = facts.size();
    std::stable_sort(facts.begin(), facts.end(), [](const sem::Fact& a, const sem::Fact& b) {
        return a.tv.confidence > b.tv.confidence;
    });
    const std::size_t admitted = std::min(budget.wm_capacity, facts.size());
    result.premises_admitted = admitted;
    const WorkingMemory wm{std::span<const sem::Fact>(facts).first(admitted), axioms};

    const std::vector<Premise> contains = wm.list(geom::rel::contains);
    const std::vector<Premise> on_top_of = wm.list(geom::rel::on_top_of);
    std::vector<Premise> aligned = wm.list(geom::rel::aligned_h);
    const std::size_t horizontal = aligned.size();
    for (auto& p : wm.list(geom::rel::aligned_v))
        aligned.push_back(std::move(p));

    std::unordered_map<std::string, kg::Evidence> is_floating;
    for (auto& p : wm.list(sem::kIsFloating))
        is_floating.emplace(p.from, p.ev);

    // Not-floating is reified as an observation for every percept without an
    // admitted is_floating premise; its stamp id depends only on the rect id.
    std::unordered_map<std::string, kg::Evidence> not_floating;
    for (const std::string& id : percept_ids(g)) {
        if (!is_floating.contains(id))
            not_floating.emplace(id, kg::Evidence{{1.0, kg::kObservationConfidence},
                                                  kg::Stamp::single(sem::derived_id(id + "#not_floating"))});
    }

    std::map<Key, kg::Evidence> beliefs;
    auto lookup = [&](const std::string& id, Category c) -> const kg::Evidence* {
        auto it = beliefs.find(Key{id, c});
        return it == beliefs.end() ? nullptr : &it->second;
    };

    for (int iter = 0; iter < budget.max_iterations; ++iter) {
        std::map<Key, std::vector<kg::Evidence>> derived;

        for (const Premise& c : contains) { // R1
            auto nf = not_floating.find(c.to);
            if (nf == not_floating.end() || !disjoint(c.ev, nf->second))
                continue;
            const kg::Evidence out = conclude(kg::deduction(c.ev.tv, nf->second.tv), c.ev, nf->second);
            derived[{c.from, Category::shelf}].push_back(out);
            derived[{c.to, Category::product}].push_back(out);
        }
        for (std::size_t k = 0; k < aligned.size(); ++k) {
            const Premise& a = aligned[k];
            if (const kg::Evidence* s = lookup(a.to, Category::shelf); s && disjoint(a.ev, *s)) // R2
                derived[{a.from, Category::shelf}].push_back(
                    conclude(kg::deduction(a.ev.tv, s->tv), a.ev, *s));
            if (k >= horizontal)
                continue;
            if (const kg::Evidence* p = lookup(a.to, Category::product); p && disjoint(a.ev, *p)) // R3
                derived[{a.from, Category::product}].push_back(
                    conclude(kg::deduction(a.ev.tv, p->tv), a.ev, *p));
        }
        for (const Premise& t : on_top_of) { // R4
            auto fl = is_floating.find(t.from);
            const kg::Evidence* p = lookup(t.to, Category::product);
            if (fl == is_floating.end() || p == nullptr)
                continue;
            if (!disjoint(t.ev, fl->second) || !disjoint(t.ev, *p) || !disjoint(fl->second, *p))
                continue;
            const kg::TruthValue tv = kg::deduction(t.ev.tv, kg::deduction(fl->second.tv, p->tv));
            derived[{t.from, Category::product}].push_back(
                {tv, t.ev.stamp.merged(fl->second.stamp).merged(p->stamp)});
        }

        double change = 0.0;
        std::map<Key, kg::Evidence> next = beliefs;
        for (auto& [key, candidates] : derived) {
            auto it = beliefs.find(key);
            const double before = it == beliefs.end() ? 0.5 : kg::expectation(it->second.tv);
            if (it != beliefs.end())
                candidates.push_back(it->second);
            kg::Evidence merged = combine(std::move(candidates));
            change = std::max(change, std::abs(kg::expectation(merged.tv) - before));
            next.insert_or_assign(key, std::move(merged));
        }
        beliefs = std::move(next);
        result.iterations = iter + 1;
        if (change <= budget.delta)
            break;
    }

    for (auto& [key, ev] : beliefs)
        result.beliefs.push_back({key.first, key.second, std::move(ev)});
    return result;
}

std::vector<Belief> merge_beliefs(std::span<const std::vector<Belief>> parts) {
    std::map<Key, std::vector<kg::Evidence>> grouped;
    for (const auto& part : parts)
        for (const Belief& b : part)
            grouped[{b.subject, b.category}].push_back(b.evidence);
    std::vector<Belief> out;
    for (auto& [key, candidates] : grouped)
        out.push_back({key.first, key.second, combine(std::move(candidates))});
    return out;
}

std::map<std::string, Label> classify(std::span<const Belief> beliefs, double theta) {
    std::map<std::string, std::pair<double, double>> scores;
    for (const Belief& b : beliefs) {
        auto& s = scores.try_emplace(b.subject, 0.5, 0.5).first->second;
        (b.category == Category::shelf ? s.first : s.second) = kg::expectation(b.evidence.tv);
    }
    std::map<std::string, Label> labels;
    for (const auto& [id, s] : scores) {
        const auto [shelf, product] = s;
        Label label = Label::other;
        if (shelf > product && shelf >= theta)
            label = Label::shelf;
        else if (product > shelf && product >= theta)
            label = Label::product;
        labels.emplace(id, label);
    }
    return labels;
}

std::map<std::string, Label> classify(std::span<const Belief> beliefs,
                                      std::span<const std::string> rects, double theta) {
    std::map<std::string, Label> labels = classify(beliefs, theta);
    for (const std::string& id : rects)
        labels.try_emplace(id, Label::other);
    return labels;
}

std::vector<std::string> percept_ids(const kg::LayeredGraph& g) {
    std::vector<std::string> ids;
    for (const auto& [id, node] : g.nodes())
        if (node.kind == kg::NodeKind::percept)
            ids.push_back(id);
    return ids;
}

nlohmann::json belief_to_json(const Belief& belief) {
    return {{"rect", belief.subject},
            {"category", to_string(belief.category)},
            {"f", belief.evidence.tv.frequency},
            {"c", belief.evidence.tv.confidence},
            {"stamp", belief.evidence.stamp.ids()}};
}

Belief belief_from_json(const nlohmann::json& doc) {
    try {
        return {doc.at("rect").get<std::string>(),
                parse_category(doc.at("category").get<std::string>()),
                {{doc.at("f").get<double>(), doc.at("c").get<double>()},
                 kg::Stamp(doc.at("stamp").get<std::vector<std::uint64_t>>())}};
    } catch (const nlohmann::json::exception& err) {
        throw Error(ErrorCode::parse_error, std::string("belief: ") + err.what());
    }
}

nlohmann::json labels_to_json(const std::map<std::string, Label>& labels) {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [id, label] : labels)
        doc[id] = to_string(label);
    return doc;
}

std::map<std::string, Label> labels_from_json(const nlohmann::json& doc) {
    if (!doc.is_object())
        throw Error(ErrorCode::parse_error, "labels file must be a JSON object");
    std::map<std::string, Label> labels;
    for (const auto& [id, value] : doc.items()) {
        if (!value.is_string())
            throw Error(ErrorCode::parse_error, "label for '" + id + "' must be a string");
        labels.emplace(id, parse_label(value.get<std::string>()));
    }
    return labels;
}

} // namespace strata::reason
