#include "shipland/raster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "shipland/error.hpp"

namespace shipland {

Rgb hsv_to_rgb(const Hsv& hsv) {
  const double h = hsv.h * 2.0;  // degrees
  const double s = hsv.s / 255.0;
  const double v = hsv.v / 255.0;
  const double c = v * s;
  const double hp = h / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1) { r = c; g = x; }
  else if (hp < 2) { r = x; g = c; }
  else if (hp < 3) { g = c; b = x; }
  else if (hp < 4) { g = x; b = c; }
  else if (hp < 5) { r = x; b = c; }
  else { r = c; b = x; }
  const double m = v - c;
  auto to8 = [](double f) { return static_cast<std::uint8_t>(std::clamp(std::lround(f * 255.0), 0L, 255L)); };
  return {to8(r + m), to8(g + m), to8(b + m)};
}

GrayImage intensity(const Raster& img) {
  GrayImage out(img.width(), img.height());
  const auto& src = img.data();
  auto& dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = static_cast<float>(src[i].s) * src[i].v / 255.0f;
  return out;
}

GradientField sobel_gradient(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  GradientField g{Image<float>(w, h), Image<float>(w, h)};
  auto px = [&](int x, int y) {
    x = std::clamp(x, 0, w - 1);
    y = std::clamp(y, 0, h - 1);
    return img.at(x, y);
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float gx = (px(x + 1, y - 1) + 2.0f * px(x + 1, y) + px(x + 1, y + 1)) -
                       (px(x - 1, y - 1) + 2.0f * px(x - 1, y) + px(x - 1, y + 1));
      const float gy = (px(x - 1, y + 1) + 2.0f * px(x, y + 1) + px(x + 1, y + 1)) -
                       (px(x - 1, y - 1) + 2.0f * px(x, y - 1) + px(x + 1, y - 1));
      g.gu.at(x, y) = gx / 8.0f;
      g.gv.at(x, y) = gy / 8.0f;
    }
  }
  return g;
}

std::size_t count_foreground(const BinaryMask& mask) {
  return static_cast<std::size_t>(std::count_if(mask.data().begin(), mask.data().end(),
                                                [](std::uint8_t b) { return b != 0; }));
}

PixelBox foreground_box(const BinaryMask& mask) {
  PixelBox box{mask.width(), mask.height(), -1, -1};
  for (int y = 0; y < mask.height(); ++y) {
    const std::uint8_t* row = &mask.at(0, y);
    for (int x = 0; x < mask.width(); ++x) {
      if (!row[x]) continue;
      box.x0 = std::min(box.x0, x);
      box.x1 = std::max(box.x1, x);
      box.y0 = std::min(box.y0, y);
      box.y1 = std::max(box.y1, y);
    }
  }
  if (box.x1 < 0) return {0, 0, -1, -1};
  return box;
}

namespace {

std::ofstream open_binary(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path);
}

}  // namespace

void write_pgm(const std::string& path, const BinaryMask& mask) {
  auto out = open_binary(path);
  out << "P5\n" << mask.width() << ' ' << mask.height() << "\n255\n";
  std::vector<char> row(mask.width());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) row[x] = mask.at(x, y) ? static_cast<char>(255) : 0;
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  finish(out, path);
}

void write_pgm(const std::string& path, const GrayImage& img, float scale) {
  auto out = open_binary(path);
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  for (float f : img.data()) out.put(static_cast<char>(std::clamp(std::lround(f * scale), 0L, 255L)));
  finish(out, path);
}

void write_ppm(const std::string& path, const Image<Rgb>& img) {
  auto out = open_binary(path);
  out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
  for (const Rgb& p : img.data()) {
    out.put(static_cast<char>(p.r));
    out.put(static_cast<char>(p.g));
    out.put(static_cast<char>(p.b));
  }
  finish(out, path);
}

void write_ppm(const std::string& path, const Raster& img) { write_ppm(path, to_rgb(img)); }

Image<Rgb> to_rgb(const Raster& img) {
  Image<Rgb> out(img.width(), img.height());
  for (std::size_t i = 0; i < img.data().size(); ++i) out.data()[i] = hsv_to_rgb(img.data()[i]);
  return out;
}

void draw_crosses(Image<Rgb>& img, const std::vector<Pixel>& points, Rgb color, int arm) {
  for (const auto& p : points) {
    const int cu = static_cast<int>(std::lround(p.u));
    const int cv = static_cast<int>(std::lround(p.v));
    for (int d = -arm; d <= arm; ++d) {
      if (img.in_bounds(cu + d, cv)) img.at(cu + d, cv) = color;
      if (img.in_bounds(cu, cv + d)) img.at(cu, cv + d) = color;
    }
  }
}

}  // namespace shipland
