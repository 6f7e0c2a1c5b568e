#include "sac/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "sac/errors.hpp"
#include "sac/numeric.hpp"

namespace sac {

namespace {

constexpr int kCanvas = 800;
constexpr double kMargin = 40.0;

// Fixed-precision coordinate formatting keeps the output byte-stable.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Frame {
  double x_lo, x_hi, y_lo, y_hi;
  double px(double x) const {
    return kMargin + (x - x_lo) / (x_hi - x_lo) * (kCanvas - 2 * kMargin);
  }
  double py(double y) const {
    return kCanvas - kMargin -
           (y - y_lo) / (y_hi - y_lo) * (kCanvas - 2 * kMargin);
  }
};

int column(const Csv& csv, const std::string& name) {
  for (std::size_t i = 0; i < csv.header.size(); ++i)
    if (csv.header[i] == name) return static_cast<int>(i);
  throw UsageError("svg: CSV lacks required column '" + name + "'");
}

double cell(const Csv& csv, std::size_t row, int col) {
  return std::strtod(csv.rows[row][col].c_str(), nullptr);
}

std::string preamble() {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
       "height=\"800\" viewBox=\"0 0 800 800\">\n";
  s += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  return s;
}

std::string frame_rect(const Frame& f) {
  return "<rect x=\"" + num(kMargin) + "\" y=\"" + num(kMargin) + "\" width=\"" +
         num(kCanvas - 2 * kMargin) + "\" height=\"" +
         num(kCanvas - 2 * kMargin) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
}

std::string polyline(const Frame& f, const std::vector<cd>& pts, bool close,
                     const std::string& color) {
  std::string s = close ? "<polygon points=\"" : "<polyline points=\"";
  for (const cd& p : pts)
    s += num(f.px(p.real())) + "," + num(f.py(p.imag())) + " ";
  if (!s.empty() && s.back() == ' ') s.pop_back();
  s += "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
  return s;
}

std::string render_slice(const Csv& csv) {
  int c_theta = column(csv, "theta"), c_r = column(csv, "radius");
  Frame f{-2.0, 2.0, -2.0, 2.0};
  std::string s = preamble() + frame_rect(f);
  // reference unit circle
  std::vector<cd> unit;
  for (int i = 0; i <= 256; ++i) {
    double a = kTwoPi * i / 256.0;
    unit.push_back({std::cos(a), std::sin(a)});
  }
  s += polyline(f, unit, false, "#bbbbbb");
  std::vector<cd> curve;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    double th = cell(csv, i, c_theta), r = cell(csv, i, c_r);
    curve.push_back({r * std::cos(th), r * std::sin(th)});
  }
  if (curve.empty()) throw UsageError("svg: empty slice CSV");
  s += polyline(f, curve, true, "#cc0000");
  s += "</svg>\n";
  return s;
}

std::string render_density(const Csv& csv) {
  int c_lo = column(csv, "bin_lo"), c_hi = column(csv, "bin_hi"),
      c_m = column(csv, "mass");
  double m_max = 0.0;
  for (std::size_t i = 0; i < csv.rows.size(); ++i)
    m_max = std::max(m_max, cell(csv, i, c_m));
  if (m_max <= 0.0) throw UsageError("svg: density CSV has no mass");
  Frame f{0.0, kTwoPi, 0.0, m_max};
  std::string s = preamble() + frame_rect(f);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    double lo = cell(csv, i, c_lo), hi = cell(csv, i, c_hi),
           m = cell(csv, i, c_m);
    double x = f.px(lo), w = f.px(hi) - f.px(lo);
    double y = f.py(m), h = f.py(0.0) - f.py(m);
    s += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
         "\" height=\"" + num(h) +
         "\" fill=\"#4477aa\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string render_zeros(const Csv& csv) {
  int c_theta = column(csv, "theta"), c_t = column(csv, "t");
  Frame f{0.0, kTwoPi, 0.0, 1.0};
  std::string s = preamble() + frame_rect(f);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    double th = wrap_angle(cell(csv, i, c_theta)), t = cell(csv, i, c_t);
    s += "<circle cx=\"" + num(f.px(th)) + "\" cy=\"" + num(f.py(t)) +
         "\" r=\"1.2\" fill=\"#cc0000\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string render_probe(const Csv& csv) {
  int c_j = column(csv, "j"), c_b = column(csv, "bandwidth");
  double x_hi = 1.0, y_hi = 1.0;
  std::vector<cd> pts;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    double j = cell(csv, i, c_j), bw = cell(csv, i, c_b);
    if (j <= 0.0 || bw < 0.0) continue;
    cd p{std::log2(j), std::log2(1.0 + bw)};
    pts.push_back(p);
    x_hi = std::max(x_hi, p.real());
    y_hi = std::max(y_hi, p.imag());
  }
  if (pts.empty()) throw UsageError("svg: probe CSV has no usable rows");
  Frame f{0.0, x_hi * 1.05, 0.0, y_hi * 1.05};
  std::string s = preamble() + frame_rect(f);
  for (const cd& p : pts)
    s += "<circle cx=\"" + num(f.px(p.real())) + "\" cy=\"" +
         num(f.py(p.imag())) + "\" r=\"3\" fill=\"#4477aa\"/>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace

SvgKind svg_kind_from_name(const std::string& name) {
  if (name == "slice") return SvgKind::Slice;
  if (name == "density") return SvgKind::Density;
  if (name == "zeros") return SvgKind::Zeros;
  if (name == "probe") return SvgKind::Probe;
  throw UsageError("svg: unknown kind '" + name + "'");
}

std::string render_svg(const Csv& csv, SvgKind kind) {
  switch (kind) {
    case SvgKind::Slice: return render_slice(csv);
    case SvgKind::Density: return render_density(csv);
    case SvgKind::Zeros: return render_zeros(csv);
    case SvgKind::Probe: return render_probe(csv);
  }
  throw UsageError("svg: unknown kind");
}

void render_svg_file(const std::string& csv_path, SvgKind kind,
                     const std::string& out_path) {
  write_text_atomic(out_path, render_svg(read_csv(csv_path), kind));
}

}  // namespace sac
