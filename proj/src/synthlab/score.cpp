#include <cstdio>
#include <sstream>

#include "strata/error.hpp"
#include "strata/synthlab.hpp"

namespace strata::synth {

namespace {

constexpr reason::Label kLabels[] = {reason::Label::product, reason::Label::shelf,
                                     reason::Label::other};

double pct(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

} // namespace

MetricsReport score(const std::map<std::string, reason::Label>& predicted,
                    const std::map<std::string, reason::Label>& truth) {
    if (predicted.size() != truth.size())
        throw Error(ErrorCode::key_mismatch, "predicted has " + std::to_string(predicted.size()) +
                                                 " ids, truth has " + std::to_string(truth.size()));
    std::map<reason::Label, std::size_t> tp, pred_n, true_n;
    std::size_t correct = 0;
    auto p = predicted.begin();
    for (auto t = truth.begin(); t != truth.end(); ++t, ++p) {
        if (p->first != t->first)
            throw Error(ErrorCode::key_mismatch, "id '" + (p->first < t->first ? p->first : t->first) +
                                                     "' missing from one side");
        ++pred_n[p->second];
        ++true_n[t->second];
        if (p->second == t->second) {
            ++tp[t->second];
            ++correct;
        }
    }
    MetricsReport r;
    r.total = truth.size();
    r.accuracy = pct(correct, r.total);
    for (reason::Label l : kLabels) {
        CategoryScores& s = r.per_category[l];
        s.precision = pct(tp[l], pred_n[l]);
        s.recall = pct(tp[l], true_n[l]);
        s.f1 = s.precision + s.recall > 0 ? 2 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
        s.support = true_n[l];
    }
    return r;
}

std::map<std::string, reason::Label> truth_labels(const geom::Scene& scene) {
    std::map<std::string, reason::Label> out;
    for (const geom::Rect& r : scene.rects)
        out[r.id] = r.label ? reason::parse_label(*r.label) : reason::Label::other;
    return out;
}

nlohmann::json to_json(const MetricsReport& report) {
    nlohmann::json cats = nlohmann::json::object();
    for (const auto& [label, s] : report.per_category)
        cats[std::string(reason::to_string(label))] = {
            {"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}, {"support", s.support}};
    return {{"accuracy", report.accuracy}, {"total", report.total}, {"categories", cats}};
}

MetricsReport metrics_from_json(const nlohmann::json& doc) {
    try {
        MetricsReport r;
        r.accuracy = doc.at("accuracy").get<double>();
        r.total = doc.at("total").get<std::size_t>();
        for (const auto& [name, s] : doc.at("categories").items())
            r.per_category[reason::parse_label(name)] = {
                s.at("precision").get<double>(), s.at("recall").get<double>(),
                s.at("f1").get<double>(), s.at("support").get<std::size_t>()};
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, e.what());
    }
}

std::string format_table(const std::vector<std::pair<std::string, MetricsReport>>& groups) {
    constexpr int kFirst = 18, kCell = 11;
    const int group_w = 3 * kCell;
    auto cell = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f%%", v);
        return std::string(buf);
    };
    auto pad = [](std::string s, int w, bool right) {
        if (static_cast<int>(s.size()) >= w)
            return s;
        const std::string fill(static_cast<std::size_t>(w) - s.size(), ' ');
        return right ? fill + s : s + fill;
    };
    auto center = [](const std::string& s, int w) {
        const int total = std::max(0, w - static_cast<int>(s.size()));
        return std::string(static_cast<std::size_t>(total / 2), ' ') + s +
               std::string(static_cast<std::size_t>(total - total / 2), ' ');
    };

    std::ostringstream out;
    out << pad("", kFirst, false);
    for (const auto& [name, _] : groups)
        out << " |" << center(name, group_w);
    out << '\n' << pad("category", kFirst, false);
    for (std::size_t i = 0; i < groups.size(); ++i)
        out << " |" << pad("precision", kCell, true) << pad("recall", kCell, true)
            << pad("f-1", kCell, true);
    out << '\n' << std::string(kFirst, '-');
    for (std::size_t i = 0; i < groups.size(); ++i)
        out << "-+" << std::string(group_w, '-');
    out << '\n';
    for (reason::Label l : kLabels) {
        out << pad(std::string(reason::to_string(l)), kFirst, false);
        for (const auto& [_, report] : groups) {
            const auto it = report.per_category.find(l);
            const CategoryScores s = it == report.per_category.end() ? CategoryScores{} : it->second;
            out << " |" << pad(cell(s.precision), kCell, true) << pad(cell(s.recall), kCell, true)
                << pad(cell(s.f1), kCell, true);
        }
        out << '\n';
    }
    out << std::string(kFirst, '-');
    for (std::size_t i = 0; i < groups.size(); ++i)
        out << "-+" << std::string(group_w, '-');
    out << '\n' << pad("overall accuracy", kFirst, false);
    for (const auto& [_, report] : groups)
        out << " |" << center(cell(report.accuracy), group_w);
    out << '\n';
    return out.str();
}

} // namespace strata::synth
