#include <algorithm>

#include "strata/error.hpp"
#include "strata/percept.hpp"
#include "strata/rng.hpp"
#include "strata/simd/kernels.hpp"

namespace strata::percept {

void HoughParams::validate() const {
    if (edge_threshold <= 0 || vote_threshold <= 0 || min_len <= 0 || max_gap <= 0)
        throw Error(ErrorCode::invalid_argument, "hough parameters must be positive");
}

nlohmann::json to_json(const HoughParams& p) {
    return {{"edge_threshold", p.edge_threshold},
            {"vote_threshold", p.vote_threshold},
            {"min_len", p.min_len},
            {"max_gap", p.max_gap}};
}

HoughParams hough_from_json(const nlohmann::json& doc, HoughParams base) {
    if (!doc.is_object())
        throw Error(ErrorCode::parse_error, "hough params must be an object");
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "edge_threshold")
                base.edge_threshold = value.get<int>();
            else if (key == "vote_threshold")
                base.vote_threshold = value.get<int>();
            else if (key == "min_len")
                base.min_len = value.get<int>();
            else if (key == "max_gap")
                base.max_gap = value.get<int>();
            else
                throw Error(ErrorCode::parse_error, "unknown hough key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, e.what());
    }
    base.validate();
    return base;
}

std::vector<std::uint8_t> edge_map(const GrayImage& img, int threshold) {
    std::vector<std::uint8_t> out(img.pixels.size(), 0);
    if (img.pixels.empty() || threshold > 255)
        return out;
    simd::edge_map(img.pixels, img.width, img.height,
                   static_cast<std::uint8_t>(std::max(threshold, 1)), out);
    return out;
}

namespace {

// Per-orientation state. A pixel can belong to one horizontal and one
// vertical line (corners), so pools and votes are kept apart.
struct Pool {
    std::vector<std::uint8_t> avail;
    std::vector<std::uint8_t> voted;
    std::vector<int> acc; // indexed by row (horizontal) or column (vertical)
};

} // namespace

std::vector<Segment> detect_segments(const GrayImage& img, const HoughParams& p,
                                     std::uint64_t seed) {
    p.validate();
    std::vector<Segment> out;
    const int W = img.width, H = img.height;
    if (W == 0 || H == 0)
        return out;

    const std::vector<std::uint8_t> edges = edge_map(img, p.edge_threshold);
    std::vector<std::uint32_t> pts;
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i])
            pts.push_back(static_cast<std::uint32_t>(i));
    Rng rng(seed);
    for (std::size_t i = pts.size(); i > 1; --i)
        std::swap(pts[i - 1], pts[rng.below(i)]);

    Pool pools[2] = {{edges, std::vector<std::uint8_t>(edges.size(), 0), std::vector<int>(H, 0)},
                     {edges, std::vector<std::uint8_t>(edges.size(), 0), std::vector<int>(W, 0)}};
    auto idx = [W](int x, int y) { return static_cast<std::size_t>(y) * W + x; };

    // Walks the line through (x, y) for orientation o and returns the run.
    auto walk = [&](int o, int x, int y) {
        const auto& avail = pools[o].avail;
        const int limit = o == 0 ? W : H;
        const int pos = o == 0 ? x : y;
        auto on = [&](int t) { return o == 0 ? avail[idx(t, y)] != 0 : avail[idx(x, t)] != 0; };
        int lo = pos, hi = pos, gap = 0;
        for (int t = pos - 1; t >= 0; --t) {
            if (on(t)) {
                lo = t;
                gap = 0;
            } else if (++gap > p.max_gap) {
                break;
            }
        }
        gap = 0;
        for (int t = pos + 1; t < limit; ++t) {
            if (on(t)) {
                hi = t;
                gap = 0;
            } else if (++gap > p.max_gap) {
                break;
            }
        }
        return std::pair{lo, hi};
    };

    for (std::uint32_t i : pts) {
        const int x = static_cast<int>(i % W), y = static_cast<int>(i / W);
        for (int o = 0; o < 2; ++o) {
            Pool& pl = pools[o];
            if (pl.avail[i]) {
                ++pl.acc[o == 0 ? y : x];
                pl.voted[i] = 1;
            }
        }
        // Stronger cell first; a corner pixel may seed one line of each kind.
        int order[2] = {0, 1};
        if (pools[1].acc[x] > pools[0].acc[y])
            std::swap(order[0], order[1]);
        for (int o : order) {
            Pool& pl = pools[o];
            const int cell = o == 0 ? y : x;
            if (!pl.avail[i] || pl.acc[cell] < p.vote_threshold)
                continue;
            const auto [lo, hi] = walk(o, x, y);
            const bool good = hi - lo + 1 >= p.min_len;
            for (int t = lo; t <= hi; ++t) {
                const std::size_t j = o == 0 ? idx(t, y) : idx(x, t);
                if (!pl.avail[j])
                    continue;
                if (good && pl.voted[j]) {
                    --pl.acc[cell];
                    pl.voted[j] = 0;
                }
                pl.avail[j] = 0;
            }
            if (good) {
                if (o == 0)
                    out.push_back({{lo, y}, {hi, y}, Orientation::horizontal});
                else
                    out.push_back({{x, lo}, {x, hi}, Orientation::vertical});
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const Segment& a, const Segment& b) {
        return std::tuple(a.orientation, a.p0.y, a.p0.x, a.p1.y, a.p1.x) <
               std::tuple(b.orientation, b.p0.y, b.p0.x, b.p1.y, b.p1.x);
    });
    return out;
}

nlohmann::json segments_to_json(std::span<const Segment> segments) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Segment& s : segments)
        arr.push_back({{"x0", s.p0.x},
                       {"y0", s.p0.y},
                       {"x1", s.p1.x},
                       {"y1", s.p1.y},
                       {"orientation", s.orientation == Orientation::horizontal ? "horizontal"
                                                                                : "vertical"}});
    return {{"segments", arr}};
}

} // namespace strata::percept
