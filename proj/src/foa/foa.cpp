#include "strata/foa.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <atomic>
#include <set>
#include <thread>
#include <unordered_map>

#include "strata/error.hpp"
#include "strata/semantics.hpp"

namespace strata::foa {

void FoaParams::validate() const {
    if (min_cover_size < 1 || max_cover_size < min_cover_size)
        throw Error(ErrorCode::invalid_argument, "foa params need max >= min >= 1");
}

namespace {

struct Neighbourhood {
    std::unordered_map<std::string, double> area;
    std::unordered_map<std::string, std::set<std::string>> adjacent;
    std::set<std::string> non_empty;
};

Neighbourhood index_scene(std::span<const geom::Rect> scene, const kg::LayeredGraph& g) {
    Neighbourhood nb;
    for (const geom::Rect& r : scene) {
        nb.area.emplace(r.id, r.area());
        nb.adjacent[r.id];
    }
    for (const auto& [key, edge] : g.edges()) {
        if (!nb.area.contains(edge.from) || !nb.area.contains(edge.to) || edge.from == edge.to)
            continue;
        nb.adjacent[edge.from].insert(edge.to);
        nb.adjacent[edge.to].insert(edge.from);
        if (edge.relation == geom::rel::contains)
            nb.non_empty.insert(edge.from);
        else if (edge.relation == geom::rel::inside)
            nb.non_empty.insert(edge.to);
    }
    return nb;
}

} // namespace

std::vector<Cover> build_covers(std::span<const geom::Rect> scene, const kg::LayeredGraph& g,
                                const FoaParams& params) {
    params.validate();
    const Neighbourhood nb = index_scene(scene, g);

    // Larger first, then id ascending.
    auto before = [&](const std::string& a, const std::string& b) {
        const double aa = nb.area.at(a), ab = nb.area.at(b);
        return aa != ab ? aa > ab : a < b;
    };

    std::vector<std::string> order;
    for (const geom::Rect& r : scene)
        order.push_back(r.id);
    std::sort(order.begin(), order.end(), before);

    std::vector<Cover> covers;
    std::set<std::string> covered;
    for (const std::string& seed : order) {
        if (covered.size() == scene.size())
            break;
        if (!nb.non_empty.contains(seed) || covered.contains(seed))
            continue;
        Cover cover{seed, {seed}};
        std::set<std::string> members{seed};
        std::set<std::string, decltype(before)> frontier(before);
        for (const auto& n : nb.adjacent.at(seed))
            frontier.insert(n);
        while (cover.members.size() < params.max_cover_size && !frontier.empty()) {
            const std::string next = *frontier.begin();
            frontier.erase(frontier.begin());
            cover.members.push_back(next);
            members.insert(next);
            for (const auto& n : nb.adjacent.at(next))
                if (!members.contains(n))
                    frontier.insert(n);
        }
        if (cover.members.size() < params.min_cover_size)
            continue;
        covered.insert(members.begin(), members.end());
        covers.push_back(std::move(cover));
    }

    std::vector<std::string> fallback;
    for (const std::string& id : order)
        if (!covered.contains(id))
            fallback.push_back(id);
    for (const std::string& id : fallback) {
        Cover cover{id, {id}};
        std::vector<std::string> neighbours(nb.adjacent.at(id).begin(), nb.adjacent.at(id).end());
        std::sort(neighbours.begin(), neighbours.end(), before);
        for (const auto& n : neighbours) {
            if (cover.members.size() >= params.max_cover_size)
                break;
            cover.members.push_back(n);
        }
        covers.push_back(std::move(cover));
    }
    return covers;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
                fn(i);
        });
    }
}

} // namespace

FoaResult reason_with_foa(std::span<const geom::Rect> scene, const kg::LayeredGraph& g,
                          const FoaParams& params, const ReasonOptions& options) {
    FoaResult result;
    result.covers = build_covers(scene, g, params);

    std::vector<std::vector<reason::Belief>> parts(result.covers.size());
    std::exception_ptr failure;
    std::mutex failure_lock;
    parallel_for(result.covers.size(), options.threads, [&](std::size_t i) {
        try {
            std::vector<std::string> ids = result.covers[i].members;
            ids.emplace_back(sem::kFloatingMarker);
            parts[i] = reason::infer(g.induced(ids), options.budget, options.axioms).beliefs;
        } catch (...) {
            std::lock_guard lock(failure_lock);
            if (!failure)
                failure = std::current_exception();
        }
    });
    if (failure)
        std::rethrow_exception(failure);

    result.beliefs = reason::merge_beliefs(parts);
    std::vector<std::string> ids;
    for (const geom::Rect& r : scene)
        ids.push_back(r.id);
    result.labels = reason::classify(result.beliefs, ids, options.theta);
    return result;
}

FoaResult reason_whole(const kg::LayeredGraph& g, const ReasonOptions& options) {
    FoaResult result;
    result.beliefs = reason::infer(g, options.budget, options.axioms).beliefs;
    result.labels = reason::classify(result.beliefs, reason::percept_ids(g), options.theta);
    return result;
}

nlohmann::json covers_to_json(std::span<const Cover> covers) {
    nlohmann::json doc = nlohmann::json::array();
    for (const Cover& c : covers)
        doc.push_back({{"seed", c.seed}, {"members", c.members}});
    return doc;
}

std::vector<Cover> covers_from_json(const nlohmann::json& doc) {
    std::vector<Cover> covers;
    try {
        for (const auto& item : doc)
            covers.push_back({item.at("seed").get<std::string>(),
                              item.at("members").get<std::vector<std::string>>()});
    } catch (const nlohmann::json::exception& err) {
        throw Error(ErrorCode::parse_error, std::string("covers: ") + err.what());
    }
    return covers;
}

} // namespace strata::foa
