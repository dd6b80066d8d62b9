#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shipland/geometry.hpp"

namespace shipland {

/// OpenCV-style 8-bit HSV: H in [0, 179], S and V in [0, 255].
struct Hsv {
  std::uint8_t h = 0;
  std::uint8_t s = 0;
  std::uint8_t v = 0;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
};

Rgb hsv_to_rgb(const Hsv& hsv);

template <typename T>
class Image {
 public:
  Image() = default;
  Image(int width, int height, T fill = T{})
      : width_(width), height_(height), data_(static_cast<std::size_t>(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  T& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
  const T& at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool operator==(const Image& other) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

inline bool operator==(const Hsv& a, const Hsv& b) { return a.h == b.h && a.s == b.s && a.v == b.v; }

using Raster = Image<Hsv>;
using BinaryMask = Image<std::uint8_t>;  // 0 or 1
using GrayImage = Image<float>;

struct GradientField {
  Image<float> gu;
  Image<float> gv;
};

/// Grey level used for gradients: S * V / 255, which separates the saturated
/// cue from the unsaturated background.
GrayImage intensity(const Raster& img);

/// 3x3 Sobel gradient scaled to intensity units per pixel; border pixels
/// replicate their neighbours.
GradientField sobel_gradient(const GrayImage& img);

std::size_t count_foreground(const BinaryMask& mask);

struct PixelBox {
  int x0 = 0;
  int y0 = 0;
  int x1 = -1;  // inclusive
  int y1 = -1;

  bool empty() const { return x1 < x0 || y1 < y0; }
  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
};

/// Smallest box containing every set pixel; empty() when the mask is empty.
PixelBox foreground_box(const BinaryMask& mask);

void write_pgm(const std::string& path, const BinaryMask& mask);
void write_pgm(const std::string& path, const GrayImage& img, float scale = 1.0f);
void write_ppm(const std::string& path, const Raster& img);
void write_ppm(const std::string& path, const Image<Rgb>& img);

Image<Rgb> to_rgb(const Raster& img);

/// Draws a small cross at each pixel onto an RGB overlay.
void draw_crosses(Image<Rgb>& img, const std::vector<Pixel>& points, Rgb color, int arm = 4);

}  // namespace shipland
