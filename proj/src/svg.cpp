#include "stylo/svg.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace stylo::svg {

std::string num(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

Writer::Writer(double width, double height) {
  body_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
          num(width) + "\" height=\"" + num(height) + "\" viewBox=\"0 0 " +
          num(width) + " " + num(height) + "\">\n";
}

void Writer::rect(double x, double y, double w, double h, std::string_view attrs) {
  body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" " + std::string(attrs) + "/>\n";
}

void Writer::circle(double cx, double cy, double r, std::string_view attrs) {
  body_ += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" +
           num(r) + "\" " + std::string(attrs) + "/>\n";
}

void Writer::line(double x1, double y1, double x2, double y2,
                  std::string_view attrs) {
  body_ += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" +
           num(x2) + "\" y2=\"" + num(y2) + "\" " + std::string(attrs) + "/>\n";
}

void Writer::text(double x, double y, std::string_view content,
                  std::string_view attrs) {
  body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" " +
           std::string(attrs) + ">" + escape_text(content) + "</text>\n";
}

void Writer::path(std::string_view d, std::string_view attrs) {
  body_ += "<path d=\"" + std::string(d) + "\" " + std::string(attrs) + "/>\n";
}

void Writer::open_group(std::string_view attrs) {
  body_ += "<g " + std::string(attrs) + ">\n";
}

void Writer::close_group() { body_ += "</g>\n"; }

std::string Writer::finish() && {
  body_ += "</svg>\n";
  return std::move(body_);
}

std::string annulus_segment(double cx, double cy, double r_in, double r_out,
                            double frac0, double frac1) {
  const auto point = [&](double r, double frac) {
    const double angle = 2.0 * std::numbers::pi * frac - std::numbers::pi / 2.0;
    return std::make_pair(cx + r * std::cos(angle), cy + r * std::sin(angle));
  };
  const auto [x0o, y0o] = point(r_out, frac0);
  const auto [x1o, y1o] = point(r_out, frac1);
  const auto [x0i, y0i] = point(r_in, frac0);
  const auto [x1i, y1i] = point(r_in, frac1);
  const int large = (frac1 - frac0) > 0.5 ? 1 : 0;

  std::string d = "M " + num(x0o) + " " + num(y0o);
  d += " A " + num(r_out) + " " + num(r_out) + " 0 " + std::to_string(large) +
       " 1 " + num(x1o) + " " + num(y1o);
  d += " L " + num(x1i) + " " + num(y1i);
  d += " A " + num(r_in) + " " + num(r_in) + " 0 " + std::to_string(large) +
       " 0 " + num(x0i) + " " + num(y0i);
  d += " Z";
  return d;
}

}  // namespace stylo::svg
