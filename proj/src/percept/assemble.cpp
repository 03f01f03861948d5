#include <algorithm>
#include <tuple>

#include "strata/percept.hpp"

namespace strata::percept {

namespace {

// Axis-aligned line: fixed coordinate c, inclusive span [lo, hi].
struct Line {
    int c, lo, hi;
};

std::vector<Line> merge_collinear(std::vector<Line> lines) {
    std::sort(lines.begin(), lines.end(),
              [](const Line& a, const Line& b) { return std::tie(a.c, a.lo, a.hi) < std::tie(b.c, b.lo, b.hi); });
    std::vector<Line> out;
    for (const Line& l : lines) {
        if (!out.empty() && out.back().c == l.c && l.lo <= out.back().hi + 1)
            out.back().hi = std::max(out.back().hi, l.hi);
        else
            out.push_back(l);
    }
    return out;
}

struct Box {
    int x0, y0, x1, y1; // inclusive
    long area() const { return static_cast<long>(x1 - x0 + 1) * (y1 - y0 + 1); }
};

double iou(const Box& a, const Box& b) {
    const int ix = std::min(a.x1, b.x1) - std::max(a.x0, b.x0) + 1;
    const int iy = std::min(a.y1, b.y1) - std::max(a.y0, b.y0) + 1;
    if (ix <= 0 || iy <= 0)
        return 0.0;
    const double inter = static_cast<double>(ix) * iy;
    return inter / (static_cast<double>(a.area()) + static_cast<double>(b.area()) - inter);
}

} // namespace

std::vector<geom::Rect> assemble_rects(std::span<const Segment> segments, int eps_corner) {
    std::vector<Line> hs, vs;
    for (const Segment& s : segments) {
        if (s.orientation == Orientation::horizontal)
            hs.push_back({s.p0.y, std::min(s.p0.x, s.p1.x), std::max(s.p0.x, s.p1.x)});
        else
            vs.push_back({s.p0.x, std::min(s.p0.y, s.p1.y), std::max(s.p0.y, s.p1.y)});
    }
    hs = merge_collinear(std::move(hs));
    vs = merge_collinear(std::move(vs));
    const int e = eps_corner;

    // True when some line other than the pair's sides spans [lo, hi] at a
    // coordinate strictly between a and b; such a pair is not a minimal box.
    auto split = [e](const std::vector<Line>& lines, int a, int b, int lo, int hi) {
        for (const Line& l : lines)
            if (l.c > a + e && l.c < b - e && l.lo <= lo + e && l.hi >= hi - e)
                return true;
        return false;
    };

    std::vector<Box> boxes;
    std::vector<const Line*> sides;
    for (std::size_t t = 0; t < hs.size(); ++t) {
        for (std::size_t b = 0; b < hs.size(); ++b) {
            const Line& top = hs[t];
            const Line& bot = hs[b];
            if (bot.c <= top.c + e)
                continue;
            const int xlo = std::max(top.lo, bot.lo) - e;
            const int xhi = std::min(top.hi, bot.hi) + e;
            if (xhi < xlo)
                continue;
            sides.clear();
            for (const Line& v : vs)
                if (v.c >= xlo && v.c <= xhi && v.lo <= top.c + e && v.hi >= bot.c - e)
                    sides.push_back(&v);
            for (std::size_t i = 0; i + 1 < sides.size(); ++i) {
                const Line& left = *sides[i];
                // Nearest right side beyond the corner tolerance.
                std::size_t j = i + 1;
                while (j < sides.size() && sides[j]->c <= left.c + e)
                    ++j;
                if (j >= sides.size())
                    break;
                const Line& right = *sides[j];
                // The horizontals must reach both sides' corners.
                if (top.lo > left.c + e || top.hi < right.c - e || bot.lo > left.c + e ||
                    bot.hi < right.c - e)
                    continue;
                if (split(vs, left.c, right.c, top.c, bot.c) ||
                    split(hs, top.c, bot.c, left.c, right.c))
                    continue;
                boxes.push_back({left.c, top.c, right.c, bot.c});
            }
        }
    }

    // Larger boxes first so suppression keeps the larger of a near-duplicate.
    std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) {
        if (a.area() != b.area())
            return a.area() > b.area();
        return std::tie(a.y0, a.x0, a.y1, a.x1) < std::tie(b.y0, b.x0, b.y1, b.x1);
    });
    std::vector<Box> kept;
    for (const Box& bx : boxes) {
        bool dup = false;
        for (const Box& k : kept)
            if (iou(bx, k) >= 0.9) {
                dup = true;
                break;
            }
        if (!dup)
            kept.push_back(bx);
    }
    std::sort(kept.begin(), kept.end(), [](const Box& a, const Box& b) {
        return std::tie(a.y0, a.x0, a.y1, a.x1) < std::tie(b.y0, b.x0, b.y1, b.x1);
    });

    std::vector<geom::Rect> rects;
    rects.reserve(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const Box& b = kept[i];
        geom::Rect r;
        r.id = "r" + std::to_string(i);
        r.x = b.x0;
        r.y = b.y0;
        r.w = b.x1 - b.x0 + 1;
        r.h = b.y1 - b.y0 + 1;
        rects.push_back(std::move(r));
    }
    return rects;
}

} // namespace strata::percept
