#include <algorithm>

#include "strata/simd/kernels.hpp"

namespace strata::simd::detail {

void box_gate_scalar(const Box& q, const BoxArray& boxes, double gap_limit, double margin,
                     GateMasks out) {
    const double limit_sq = gap_limit * gap_limit;
    const double qx0m = q.x0 + margin, qy0m = q.y0 + margin;
    const double qx1m = q.x1 - margin, qy1m = q.y1 - margin;
    for (std::size_t j = 0; j < boxes.size(); ++j) {
        const double bx0 = boxes.x0[j], by0 = boxes.y0[j];
        const double bx1 = boxes.x1[j], by1 = boxes.y1[j];
        const double dx = std::max(std::max(bx0 - q.x1, q.x0 - bx1), 0.0);
        const double dy = std::max(std::max(by0 - q.y1, q.y0 - by1), 0.0);
        const double d2 = dx * dx + dy * dy;
        out.near[j] = d2 <= limit_sq;
        out.inner[j] = bx0 >= qx0m && by0 >= qy0m && bx1 <= qx1m && by1 <= qy1m;
        out.outer[j] = q.x0 >= bx0 + margin && q.y0 >= by0 + margin && q.x1 <= bx1 - margin &&
                       q.y1 <= by1 - margin;
    }
}

void edge_map_scalar(const std::uint8_t* pixels, int width, int height, std::uint8_t threshold,
                     std::uint8_t* out) {
    for (int y = 0; y < height; ++y) {
        const std::uint8_t* row = pixels + static_cast<std::ptrdiff_t>(y) * width;
        const std::uint8_t* up = y > 0 ? row - width : row;
        const std::uint8_t* down = y + 1 < height ? row + width : row;
        std::uint8_t* dst = out + static_cast<std::ptrdiff_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            const std::uint8_t c = row[x];
            const std::uint8_t l = x > 0 ? row[x - 1] : c;
            const std::uint8_t r = x + 1 < width ? row[x + 1] : c;
            const std::uint8_t m = std::min(std::min(l, r), std::min(up[x], down[x]));
            dst[x] = (c > m ? c - m : 0) >= threshold;
        }
    }
}

} // namespace strata::simd::detail
