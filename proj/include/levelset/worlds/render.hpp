#pragma once

#include <vector>

#include "levelset/numerics/simplex.hpp"

namespace levelset::render {

inline constexpr int kCanvasSize = 64;
inline constexpr double kBlurSigma = 1.5;

/// Binary masks: a pixel is foreground iff its center lies inside the shape.
/// Coordinates are in pixels with y pointing down; shapes are clipped at the canvas edge.
void fill_rectangle(Image& canvas, double x0, double y0, double x1, double y1);
/// Isoceles triangle with horizontal base at y = base_y spanning [cx - half_base, cx + half_base]
/// and apex at (cx, base_y - height).
void fill_triangle(Image& canvas, double cx, double base_y, double half_base, double height);
void fill_circle(Image& canvas, double cx, double cy, double radius);

/// Normalized 1-D Gaussian taps, truncated at 4 sigma.
std::vector<double> gaussian_kernel(double sigma);

/// Separable two-pass Gaussian blur with zero (background) padding; output clamped to [0, 1].
Image gaussian_blur(const Image& src, double sigma);

/// House/rocket geometry before blurring: rectangle of width w and height h,
/// bottom-anchored and horizontally centered, with a triangle of height t and
/// base w sitting on its top edge.
Image house_rocket_mask(double w, double h, double t, int size = kCanvasSize);

}  // namespace levelset::render
