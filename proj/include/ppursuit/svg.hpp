#pragma once

#include <string>
#include <vector>

#include "ppursuit/matrix.hpp"

namespace ppursuit::svg {

// 2-D scatter plot; points with the same label share a color and the legend
// lists labels in first-appearance order. `labels` may be empty (single
// color, no legend). Output is deterministic byte-for-byte.
void write_scatter(const std::string& path, const Vector& xs, const Vector& ys,
                   const std::vector<std::string>& labels, const std::string& title);

// Histogram bars (as densities) with a curve overlaid; curve points are
// connected in order.
void write_histogram_overlay(const std::string& path, const Vector& bin_edges,
                             const std::vector<std::uint64_t>& counts,
                             const Vector& curve_xs, const Vector& curve_ys,
                             const std::string& title);

}  // namespace ppursuit::svg
