#pragma once

// Data-parallel inner loops with a scalar reference and vector variants.
// Every variant produces bit-identical output to the scalar kernel.

#include <cstdint>
#include <span>
#include <string_view>

namespace strata::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// True when the variant was compiled in and the CPU supports it.
bool available(Isa isa);

/// Best available variant. STRATA_SIMD=scalar in the environment forces the
/// reference path.
Isa active_isa();

/// Axis-aligned box as edge coordinates.
struct Box {
    double x0, y0, x1, y1;
};

/// Structure-of-arrays view of n boxes.
struct BoxArray {
    std::span<const double> x0, y0, x1, y1;
    std::size_t size() const { return x0.size(); }
};

/// Per-box outputs against one query box (0 or 1 per entry):
///   near[j]   squared box-to-box gap <= gap_limit^2
///   inner[j]  box j lies within the query shrunk by margin
///   outer[j]  the query lies within box j shrunk by margin
struct GateMasks {
    std::span<std::uint8_t> near, inner, outer;
};

void box_gate(Isa isa, const Box& query, const BoxArray& boxes, double gap_limit, double margin,
              GateMasks out);
inline void box_gate(const Box& query, const BoxArray& boxes, double gap_limit, double margin,
                     GateMasks out) {
    box_gate(active_isa(), query, boxes, gap_limit, margin, out);
}

/// Edge map by the internal morphological gradient: out[p] = 1 when
/// I(p) - min over the 4-neighbourhood >= threshold, else 0. Neighbours
/// outside the image take the centre value.
void edge_map(Isa isa, std::span<const std::uint8_t> pixels, int width, int height,
              std::uint8_t threshold, std::span<std::uint8_t> out);
inline void edge_map(std::span<const std::uint8_t> pixels, int width, int height,
                     std::uint8_t threshold, std::span<std::uint8_t> out) {
    edge_map(active_isa(), pixels, width, height, threshold, out);
}

namespace detail {

void box_gate_scalar(const Box& query, const BoxArray& boxes, double gap_limit, double margin,
                     GateMasks out);
void edge_map_scalar(const std::uint8_t* pixels, int width, int height, std::uint8_t threshold,
                     std::uint8_t* out);
#if defined(STRATA_HAVE_AVX2)
void box_gate_avx2(const Box& query, const BoxArray& boxes, double gap_limit, double margin,
                   GateMasks out);
void edge_map_avx2(const std::uint8_t* pixels, int width, int height, std::uint8_t threshold,
                   std::uint8_t* out);
#endif

} // namespace detail

} // namespace strata::simd
