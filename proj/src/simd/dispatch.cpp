#include "strata/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "strata/error.hpp"

namespace strata::simd {

std::string_view to_string(Isa isa) {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

bool available(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(STRATA_HAVE_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

Isa active_isa() {
    static const Isa chosen = [] {
        const char* forced = std::getenv("STRATA_SIMD");
        if (forced != nullptr && std::strcmp(forced, "scalar") == 0)
            return Isa::scalar;
        return available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
    }();
    return chosen;
}

namespace {

void check_masks(const BoxArray& boxes, const GateMasks& out) {
    const std::size_t n = boxes.size();
    if (boxes.y0.size() != n || boxes.x1.size() != n || boxes.y1.size() != n ||
        out.near.size() < n || out.inner.size() < n || out.outer.size() < n)
        throw Error(ErrorCode::invalid_argument, "box_gate: mismatched span sizes");
}

} // namespace

void box_gate(Isa isa, const Box& query, const BoxArray& boxes, double gap_limit, double margin,
              GateMasks out) {
    check_masks(boxes, out);
#if defined(STRATA_HAVE_AVX2)
    if (isa == Isa::avx2 && available(Isa::avx2)) {
        detail::box_gate_avx2(query, boxes, gap_limit, margin, out);
        return;
    }
#endif
    (void)isa;
    detail::box_gate_scalar(query, boxes, gap_limit, margin, out);
}

void edge_map(Isa isa, std::span<const std::uint8_t> pixels, int width, int height,
              std::uint8_t threshold, std::span<std::uint8_t> out) {
    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (width < 0 || height < 0 || pixels.size() < count || out.size() < count)
        throw Error(ErrorCode::invalid_argument, "edge_map: buffer smaller than image");
    if (count == 0)
        return;
#if defined(STRATA_HAVE_AVX2)
    if (isa == Isa::avx2 && available(Isa::avx2)) {
        detail::edge_map_avx2(pixels.data(), width, height, threshold, out.data());
        return;
    }
#endif
    (void)isa;
    detail::edge_map_scalar(pixels.data(), width, height, threshold, out.data());
}

} // namespace strata::simd
