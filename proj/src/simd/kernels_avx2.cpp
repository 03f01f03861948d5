#include <immintrin.h>

#include <algorithm>

#include "strata/simd/kernels.hpp"

namespace strata::simd::detail {

void box_gate_avx2(const Box& q, const BoxArray& boxes, double gap_limit, double margin,
                   GateMasks out) {
    const std::size_t n = boxes.size();
    const double limit_sq = gap_limit * gap_limit;
    const __m256d zero = _mm256_setzero_pd();
    const __m256d lim = _mm256_set1_pd(limit_sq);
    const __m256d qx0 = _mm256_set1_pd(q.x0), qy0 = _mm256_set1_pd(q.y0);
    const __m256d qx1 = _mm256_set1_pd(q.x1), qy1 = _mm256_set1_pd(q.y1);
    const __m256d qx0m = _mm256_set1_pd(q.x0 + margin), qy0m = _mm256_set1_pd(q.y0 + margin);
    const __m256d qx1m = _mm256_set1_pd(q.x1 - margin), qy1m = _mm256_set1_pd(q.y1 - margin);
    const __m256d m = _mm256_set1_pd(margin);

    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d bx0 = _mm256_loadu_pd(boxes.x0.data() + j);
        const __m256d by0 = _mm256_loadu_pd(boxes.y0.data() + j);
        const __m256d bx1 = _mm256_loadu_pd(boxes.x1.data() + j);
        const __m256d by1 = _mm256_loadu_pd(boxes.y1.data() + j);

        __m256d dx = _mm256_max_pd(_mm256_sub_pd(bx0, qx1), _mm256_sub_pd(qx0, bx1));
        dx = _mm256_max_pd(dx, zero);
        __m256d dy = _mm256_max_pd(_mm256_sub_pd(by0, qy1), _mm256_sub_pd(qy0, by1));
        dy = _mm256_max_pd(dy, zero);
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        const int near = _mm256_movemask_pd(_mm256_cmp_pd(d2, lim, _CMP_LE_OQ));

        __m256d in = _mm256_and_pd(_mm256_cmp_pd(bx0, qx0m, _CMP_GE_OQ),
                                   _mm256_cmp_pd(by0, qy0m, _CMP_GE_OQ));
        in = _mm256_and_pd(in, _mm256_cmp_pd(bx1, qx1m, _CMP_LE_OQ));
        in = _mm256_and_pd(in, _mm256_cmp_pd(by1, qy1m, _CMP_LE_OQ));
        const int inner = _mm256_movemask_pd(in);

        __m256d ou = _mm256_and_pd(_mm256_cmp_pd(qx0, _mm256_add_pd(bx0, m), _CMP_GE_OQ),
                                   _mm256_cmp_pd(qy0, _mm256_add_pd(by0, m), _CMP_GE_OQ));
        ou = _mm256_and_pd(ou, _mm256_cmp_pd(qx1, _mm256_sub_pd(bx1, m), _CMP_LE_OQ));
        ou = _mm256_and_pd(ou, _mm256_cmp_pd(qy1, _mm256_sub_pd(by1, m), _CMP_LE_OQ));
        const int outer = _mm256_movemask_pd(ou);

        for (int lane = 0; lane < 4; ++lane) {
            out.near[j + lane] = (near >> lane) & 1;
            out.inner[j + lane] = (inner >> lane) & 1;
            out.outer[j + lane] = (outer >> lane) & 1;
        }
    }
    if (j < n) {
        const BoxArray tail{boxes.x0.subspan(j), boxes.y0.subspan(j), boxes.x1.subspan(j),
                            boxes.y1.subspan(j)};
        box_gate_scalar(q, tail, gap_limit, margin,
                        {out.near.subspan(j), out.inner.subspan(j), out.outer.subspan(j)});
    }
}

namespace {

inline std::uint8_t edge_at(const std::uint8_t* row, const std::uint8_t* up,
                            const std::uint8_t* down, int x, int width, std::uint8_t threshold) {
    const std::uint8_t c = row[x];
    const std::uint8_t l = x > 0 ? row[x - 1] : c;
    const std::uint8_t r = x + 1 < width ? row[x + 1] : c;
    const std::uint8_t m = std::min(std::min(l, r), std::min(up[x], down[x]));
    return (c > m ? c - m : 0) >= threshold;
}

} // namespace

void edge_map_avx2(const std::uint8_t* pixels, int width, int height, std::uint8_t threshold,
                   std::uint8_t* out) {
    const __m256i thr = _mm256_set1_epi8(static_cast<char>(threshold));
    const __m256i one = _mm256_set1_epi8(1);
    for (int y = 0; y < height; ++y) {
        const std::uint8_t* row = pixels + static_cast<std::ptrdiff_t>(y) * width;
        const std::uint8_t* up = y > 0 ? row - width : row;
        const std::uint8_t* down = y + 1 < height ? row + width : row;
        std::uint8_t* dst = out + static_cast<std::ptrdiff_t>(y) * width;

        int x = 0;
        if (width > 0)
            dst[x] = edge_at(row, up, down, x, width, threshold);
        x = 1;
        // Interior columns only: x-1 and x+32 must stay inside the row.
        for (; x + 33 <= width; x += 32) {
            const __m256i c = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + x));
            const __m256i l = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + x - 1));
            const __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + x + 1));
            const __m256i u = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(up + x));
            const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(down + x));
            const __m256i mn = _mm256_min_epu8(_mm256_min_epu8(l, r), _mm256_min_epu8(u, d));
            const __m256i diff = _mm256_subs_epu8(c, mn);
            const __m256i ge = _mm256_cmpeq_epi8(_mm256_max_epu8(diff, thr), diff);
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + x), _mm256_and_si256(ge, one));
        }
        for (; x < width; ++x)
            dst[x] = edge_at(row, up, down, x, width, threshold);
    }
}

} // namespace strata::simd::detail
