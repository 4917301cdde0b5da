#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

// Minimal polyline SVG charts: axes, ticks, legend, optional vertical
// stems for point masses. Deterministic output (fixed two-decimal pixel
// coordinates), no dependencies.
namespace svgplot {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string label;
  std::string color;
  bool dashed = false;
};

struct Stem {
  double x = 0.0;
  double weight = 0.0;
  std::string color;
};

class Plot {
 public:
  Plot(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)),
        y_label_(std::move(y_label)) {}

  void add_line(std::vector<double> x, std::vector<double> y, std::string label,
                bool dashed = false) {
    if (x.size() != y.size())
      throw std::invalid_argument("svgplot: series length mismatch");
    Series s;
    s.x = std::move(x);
    s.y = std::move(y);
    s.label = std::move(label);
    s.color = kPalette[series_.size() % kPaletteSize];
    s.dashed = dashed;
    series_.push_back(std::move(s));
  }

  // A discrete probability atom, drawn as a dashed stem with its weight.
  void add_stem(double x, double weight) {
    Stem s;
    s.x = x;
    s.weight = weight;
    s.color = series_.empty() ? kPalette[0] : series_.back().color;
    stems_.push_back(s);
  }

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("svgplot: cannot open " + path);
    out << render();
  }

  std::string render() const {
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    for (const auto& s : series_) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        if (first) {
          x0 = x1 = s.x[i];
          y0 = y1 = s.y[i];
          first = false;
        }
        x0 = std::min(x0, s.x[i]);
        x1 = std::max(x1, s.x[i]);
        y0 = std::min(y0, s.y[i]);
        y1 = std::max(y1, s.y[i]);
      }
    }
    for (const auto& st : stems_) {
      x0 = std::min(x0, st.x);
      x1 = std::max(x1, st.x);
    }
    y0 = std::min(y0, 0.0);
    if (x1 <= x0) x1 = x0 + 1;
    if (y1 <= y0) y1 = y0 + 1;
    y1 += 0.05 * (y1 - y0);  // headroom

    const double pw = kW - kMl - kMr, ph = kH - kMt - kMb;
    const auto px = [&](double x) { return kMl + (x - x0) / (x1 - x0) * pw; };
    const auto py = [&](double y) { return kMt + ph - (y - y0) / (y1 - y0) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
           num(kW) + " " + num(kH) + "\" font-family=\"sans-serif\">\n";
    svg += "<rect width=\"" + num(kW) + "\" height=\"" + num(kH) +
           "\" fill=\"white\"/>\n";

    for (double t : ticks(x0, x1)) {
      svg += line(px(t), py(y0), px(t), py(y0) + 5, "#333", 1, false);
      svg += text(px(t), kMt + ph + 18, num_tick(t), "middle", 11);
    }
    for (double t : ticks(y0, y1)) {
      svg += line(kMl - 5, py(t), kMl, py(t), "#333", 1, false);
      svg += text(kMl - 8, py(t) + 4, num_tick(t), "end", 11);
      svg += line(kMl, py(t), kMl + pw, py(t), "#eee", 1, false);
    }
    svg += "<rect x=\"" + num(kMl) + "\" y=\"" + num(kMt) + "\" width=\"" +
           num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (const auto& st : stems_) {
      svg += line(px(st.x), py(y0), px(st.x), kMt + 0.15 * ph, st.color, 1.5, true);
      svg += text(px(st.x) - 4, kMt + 0.15 * ph - 4,
                  "mass " + num_tick(st.weight), "end", 10);
    }
    for (const auto& s : series_) {
      std::string d;
      bool pen_up = true;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
          pen_up = true;
          continue;
        }
        d += (pen_up ? "M" : "L") + num(px(s.x[i])) + "," + num(py(s.y[i]));
        pen_up = false;
      }
      svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + s.color +
             "\" stroke-width=\"1.8\"" +
             (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    }

    double ly = kMt + 14;
    for (const auto& s : series_) {
      if (s.label.empty()) continue;
      svg += line(kMl + pw - 150, ly - 4, kMl + pw - 126, ly - 4, s.color, 2,
                  s.dashed);
      svg += text(kMl + pw - 120, ly, s.label, "start", 11);
      ly += 16;
    }

    svg += text(kMl + pw / 2, 16, title_, "middle", 13);
    svg += text(kMl + pw / 2, kH - 8, x_label_, "middle", 12);
    svg += "<text x=\"14\" y=\"" + num(kMt + ph / 2) +
           "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 " +
           num(kMt + ph / 2) + ")\">" + escape(y_label_) + "</text>\n";
    svg += "</svg>\n";
    return svg;
  }

 private:
  static constexpr double kW = 640, kH = 420, kMl = 62, kMr = 18, kMt = 28,
                          kMb = 46;
  static constexpr const char* kPalette[] = {"#4477aa", "#ee7733", "#009988",
                                             "#cc3377", "#777777"};
  static constexpr std::size_t kPaletteSize = 5;

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
  }

  static std::string num_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
  }

  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '<') out += "&lt;";
      else if (c == '>') out += "&gt;";
      else if (c == '&') out += "&amp;";
      else out += c;
    }
    return out;
  }

  static std::string line(double x1, double y1, double x2, double y2,
                          const std::string& color, double width, bool dashed) {
    return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
           "\" y2=\"" + num(y2) + "\" stroke=\"" + color + "\" stroke-width=\"" +
           num(width) + "\"" + (dashed ? " stroke-dasharray=\"5 4\"" : "") +
           "/>\n";
  }

  static std::string text(double x, double y, const std::string& body,
                          const std::string& anchor, int size) {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" text-anchor=\"" +
           anchor + "\" font-size=\"" + std::to_string(size) + "\">" +
           escape(body) + "</text>\n";
  }

  static std::vector<double> ticks(double lo, double hi) {
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      if (raw <= m * mag) {
        step = m * mag;
        break;
      }
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-12 * step; t += step)
      out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return out;
  }

  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
  std::vector<Stem> stems_;
};

}  // namespace svgplot
