#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "strata/geometry.hpp"
#include "strata/image.hpp"

namespace strata::percept {

enum class Orientation { horizontal, vertical };

struct Point {
    int x = 0;
    int y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned segment with inclusive pixel endpoints, p0 <= p1.
struct Segment {
    Point p0;
    Point p1;
    Orientation orientation = Orientation::horizontal;

    int length() const { return (p1.x - p0.x) + (p1.y - p0.y) + 1; }
    friend bool operator==(const Segment&, const Segment&) = default;
};

struct HoughParams {
    int edge_threshold = 48;
    int vote_threshold = 10;
    int min_len = 12;
    int max_gap = 3;

    void validate() const;
};

nlohmann::json to_json(const HoughParams& p);
HoughParams hough_from_json(const nlohmann::json& doc, HoughParams base = {});

/// Binary edge map (0/1 per pixel) via the vector kernels.
std::vector<std::uint8_t> edge_map(const GrayImage& img, int threshold);

/// Probabilistic Hough transform restricted to the two axis angles. Edge
/// pixels are visited in a seeded random order; each visit votes for its row
/// and column. When a vote count reaches vote_threshold the line through the
/// pixel is walked, bridging gaps of up to max_gap, and runs of at least
/// min_len are emitted. Walked pixels leave the pool for that orientation and
/// an emitted run takes its votes back.
std::vector<Segment> detect_segments(const GrayImage& img, const HoughParams& p,
                                     std::uint64_t seed);

/// Rects from horizontal/vertical segment quadruples. Collinear overlapping
/// segments are merged first; a quadruple qualifies when each side spans the
/// two perpendicular sides within eps_corner and no other full-length segment
/// subdivides it. Near-duplicates (IoU >= 0.9) keep the larger rect. Rect
/// extents are inclusive pixel spans, so a 20-pixel top edge gives w = 20.
std::vector<geom::Rect> assemble_rects(std::span<const Segment> segments, int eps_corner = 4);

nlohmann::json segments_to_json(std::span<const Segment> segments);

} // namespace strata::percept
