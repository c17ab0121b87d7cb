#include "ppursuit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "ppursuit/error.hpp"

namespace ppursuit::svg {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMargin = 60.0;

const char* kPalette[] = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Range {
  double lo;
  double hi;
};

Range padded_range(const Vector& v) {
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  double lo = *mn;
  double hi = *mx;
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ExitCode::parse, "cannot write file: " + path);
  }
  return out;
}

void write_frame(std::ofstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << escape(title) << "</text>\n";
  // Axis frame.
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
      << "\" height=\"" << kHeight - 2 * kMargin
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
}

double to_px_x(double v, const Range& r) {
  return kMargin + (v - r.lo) / (r.hi - r.lo) * (kWidth - 2 * kMargin);
}

double to_px_y(double v, const Range& r) {
  return kHeight - kMargin - (v - r.lo) / (r.hi - r.lo) * (kHeight - 2 * kMargin);
}

}  // namespace

void write_scatter(const std::string& path, const Vector& xs, const Vector& ys,
                   const std::vector<std::string>& labels, const std::string& title) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw Error(ExitCode::dimension, "scatter plot: coordinate vectors are empty or mismatched");
  }
  if (!labels.empty() && labels.size() != xs.size()) {
    throw Error(ExitCode::dimension, "scatter plot: label count does not match point count");
  }
  const Range rx = padded_range(xs);
  const Range ry = padded_range(ys);

  // Distinct labels in first-appearance order define the color assignment.
  std::vector<std::string> distinct;
  std::vector<std::size_t> color_of(xs.size(), 0);
  if (!labels.empty()) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto it = std::find(distinct.begin(), distinct.end(), labels[i]);
      if (it == distinct.end()) {
        distinct.push_back(labels[i]);
        color_of[i] = distinct.size() - 1;
      } else {
        color_of[i] = static_cast<std::size_t>(it - distinct.begin());
      }
    }
  }

  std::ofstream out = open_out(path);
  write_frame(out, title);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const char* color = labels.empty() ? kPalette[0] : kPalette[color_of[i] % kPaletteSize];
    out << "<circle cx=\"" << fmt(to_px_x(xs[i], rx)) << "\" cy=\"" << fmt(to_px_y(ys[i], ry))
        << "\" r=\"3\" fill=\"" << color << "\" fill-opacity=\"0.7\"/>\n";
  }
  for (std::size_t l = 0; l < distinct.size(); ++l) {
    const double y = kMargin + 16.0 + 18.0 * static_cast<double>(l);
    out << "<circle cx=\"" << kWidth - kMargin - 110 << "\" cy=\"" << fmt(y - 4.0)
        << "\" r=\"4\" fill=\"" << kPalette[l % kPaletteSize] << "\"/>\n";
    out << "<text x=\"" << kWidth - kMargin - 100 << "\" y=\"" << fmt(y)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(distinct[l])
        << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) {
    throw Error(ExitCode::parse, "write failed: " + path);
  }
}

void write_histogram_overlay(const std::string& path, const Vector& bin_edges,
                             const std::vector<std::uint64_t>& counts, const Vector& curve_xs,
                             const Vector& curve_ys, const std::string& title) {
  if (bin_edges.size() != counts.size() + 1 || counts.empty()) {
    throw Error(ExitCode::dimension, "histogram plot: edges must be one longer than counts");
  }
  if (curve_xs.size() != curve_ys.size()) {
    throw Error(ExitCode::dimension, "histogram plot: curve vectors are mismatched");
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (total == 0) {
    throw Error(ExitCode::dimension, "histogram plot: histogram is empty");
  }

  Vector density(counts.size(), 0.0);
  double max_y = 0.0;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    const double w = bin_edges[b + 1] - bin_edges[b];
    density[b] = static_cast<double>(counts[b]) / (static_cast<double>(total) * w);
    max_y = std::max(max_y, density[b]);
  }
  for (double y : curve_ys) max_y = std::max(max_y, y);

  const Range rx{bin_edges.front(), bin_edges.back()};
  const Range ry{0.0, max_y > 0.0 ? 1.05 * max_y : 1.0};

  std::ofstream out = open_out(path);
  write_frame(out, title);
  for (std::size_t b = 0; b < counts.size(); ++b) {
    const double x0 = to_px_x(bin_edges[b], rx);
    const double x1 = to_px_x(bin_edges[b + 1], rx);
    const double y1 = to_px_y(density[b], ry);
    const double y0 = to_px_y(0.0, ry);
    out << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y1) << "\" width=\"" << fmt(x1 - x0)
        << "\" height=\"" << fmt(y0 - y1)
        << "\" fill=\"#76b7b2\" fill-opacity=\"0.6\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
  }
  if (!curve_xs.empty()) {
    out << "<polyline fill=\"none\" stroke=\"#e15759\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < curve_xs.size(); ++i) {
      if (i > 0) out << ' ';
      out << fmt(to_px_x(curve_xs[i], rx)) << ',' << fmt(to_px_y(curve_ys[i], ry));
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
  if (!out) {
    throw Error(ExitCode::parse, "write failed: " + path);
  }
}

}  // namespace ppursuit::svg
