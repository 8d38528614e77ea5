#pragma once

#include <string>
#include <string_view>

namespace stylo::svg {

// Tiny SVG emitter. Coordinates are formatted with two decimals so the same
// input always yields the same bytes.

std::string num(double v);
std::string escape_text(std::string_view s);

class Writer {
 public:
  Writer(double width, double height);

  void rect(double x, double y, double w, double h, std::string_view attrs);
  void circle(double cx, double cy, double r, std::string_view attrs);
  void line(double x1, double y1, double x2, double y2, std::string_view attrs);
  void text(double x, double y, std::string_view content, std::string_view attrs);
  void path(std::string_view d, std::string_view attrs);
  void open_group(std::string_view attrs);
  void close_group();

  std::string finish() &&;

 private:
  std::string body_;
};

// Path data for a ring segment between fractions [frac0, frac1) of a full
// turn, clockwise from 12 o'clock, radii r_in < r_out.
std::string annulus_segment(double cx, double cy, double r_in, double r_out,
                            double frac0, double frac1);

}  // namespace stylo::svg
