#include "toric/shed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace toric {

namespace {

using Point = std::array<double, 3>;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(x) < 0.005 ? 0.0 : x);
  return buf;
}

Point to_point(const IntVector& v) {
  Point p{0, 0, 0};
  for (std::size_t i = 0; i < v.size() && i < 3; ++i) p[i] = static_cast<double>(v[i]);
  return p;
}

/// Cone indices ordered so that det(v_a, v_b, v_c) > 0.
Cone outward(const Fan& fan, Cone c) {
  if (determinant(IntMatrix::from_columns(fan.cone_rays(fan.find_cone(c).value()))) < 0) std::swap(c[0], c[1]);
  return c;
}

void require_dim(const Fan& fan, std::size_t lo, std::size_t hi) {
  if (fan.dim() < lo || fan.dim() > hi)
    throw RenderError("cannot render a shed of dimension " + std::to_string(fan.dim()) + "; supported: " + std::to_string(lo) +
                      (lo == hi ? "" : " to " + std::to_string(hi)));
}

struct Canvas {
  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  static constexpr double size = 480, margin = 40;

  void include(double x, double y) {
    minx = std::min(minx, x), maxx = std::max(maxx, x);
    miny = std::min(miny, y), maxy = std::max(maxy, y);
  }
  double scale() const { return (size - 2 * margin) / std::max({maxx - minx, maxy - miny, 1e-9}); }
  std::string x(double v) const { return num(margin + (v - minx) * scale()); }
  std::string y(double v) const { return num(size - margin - (v - miny) * scale()); }
};

std::string header(const std::string& title) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n";
  s << "<rect width=\"480\" height=\"480\" fill=\"white\"/>\n";
  if (!title.empty()) s << "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  return s.str();
}

std::string svg2(const Fan& fan, const std::string& title) {
  Canvas cv;
  for (const auto& r : fan.rays()) cv.include(static_cast<double>(r[0]), static_cast<double>(r[1]));
  std::ostringstream s;
  s << header(title);
  for (const auto& c : fan.cones()) {
    const auto &a = fan.ray(c[0]), &b = fan.ray(c[1]);
    s << "<polygon points=\"" << cv.x(0) << ',' << cv.y(0) << ' ' << cv.x(a[0]) << ',' << cv.y(a[1]) << ' ' << cv.x(b[0]) << ','
      << cv.y(b[1]) << "\" fill=\"#dde6f0\" stroke=\"#34495e\" stroke-width=\"1.5\"/>\n";
  }
  Int lo0 = 0, hi0 = 0, lo1 = 0, hi1 = 0;
  for (const auto& r : fan.rays()) lo0 = std::min(lo0, r[0]), hi0 = std::max(hi0, r[0]), lo1 = std::min(lo1, r[1]), hi1 = std::max(hi1, r[1]);
  for (Int i = lo0; i <= hi0; ++i)
    for (Int j = lo1; j <= hi1; ++j) {
      IntVector p{i, j};
      const bool inside = p.is_zero() || discrepancy(fan, p) <= Rational(0);
      s << "<circle cx=\"" << cv.x(i) << "\" cy=\"" << cv.y(j) << "\" r=\"" << (inside ? 4 : 2) << "\" fill=\""
        << (inside ? "#c0392b" : "#95a5a6") << "\"/>\n";
    }
  s << "</svg>\n";
  return s.str();
}

std::string svg3(const Fan& fan, const std::string& title, std::optional<std::size_t> highlight) {
  const double az = 0.6, el = 0.35;
  auto view = [&](const Point& p) {
    double x = std::cos(az) * p[0] - std::sin(az) * p[1];
    double d = std::sin(az) * p[0] + std::cos(az) * p[1];
    double y = std::cos(el) * p[2] - std::sin(el) * d;
    double depth = std::sin(el) * p[2] + std::cos(el) * d;
    return Point{x, y, depth};
  };
  std::vector<Point> proj;
  Canvas cv;
  for (const auto& r : fan.rays()) {
    proj.push_back(view(to_point(r)));
    cv.include(proj.back()[0], proj.back()[1]);
  }
  struct Face {
    Cone c;
    double depth;
    double light;
  };
  std::vector<Face> faces;
  for (const auto& c0 : fan.cones()) {
    Cone c = outward(fan, c0);
    Point a = to_point(fan.ray(c[0])), b = to_point(fan.ray(c[1])), d = to_point(fan.ray(c[2]));
    Point u{b[0] - a[0], b[1] - a[1], b[2] - a[2]}, w{d[0] - a[0], d[1] - a[1], d[2] - a[2]};
    Point n{u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
    double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    // facing the viewer: component along the depth axis in model coordinates
    Point toward{std::sin(az) * std::cos(el), std::cos(az) * std::cos(el), std::sin(el)};
    double light = len > 0 ? (n[0] * toward[0] + n[1] * toward[1] + n[2] * toward[2]) / len : 0;
    double depth = (proj[c[0]][2] + proj[c[1]][2] + proj[c[2]][2]) / 3;
    faces.push_back({c, depth, light});
  }
  // largest depth is farthest from the viewer
  std::stable_sort(faces.begin(), faces.end(), [](const Face& p, const Face& q) { return p.depth > q.depth; });
  std::ostringstream s;
  s << header(title);
  for (const auto& f : faces) {
    int shade = static_cast<int>(std::lround(150 + 90 * std::abs(f.light)));
    bool back = f.light < 0;
    bool exceptional = highlight && std::find(f.c.begin(), f.c.end(), static_cast<int>(*highlight)) != f.c.end();
    char fill[16];
    std::snprintf(fill, sizeof fill, "#%02x%02x%02x", exceptional ? 255 : shade, shade, exceptional ? shade / 2 : shade);
    s << "<polygon points=\"";
    for (int i : f.c) s << cv.x(proj[i][0]) << ',' << cv.y(proj[i][1]) << ' ';
    s << "\" fill=\"" << fill << "\" fill-opacity=\"" << (back ? "0.35" : "0.85") << "\" stroke=\"#2c3e50\" stroke-width=\"1\"/>\n";
  }
  s << "<circle cx=\"" << cv.x(0) << "\" cy=\"" << cv.y(0) << "\" r=\"3\" fill=\"black\"/>\n";
  for (std::size_t i = 0; i < proj.size(); ++i)
    s << "<text x=\"" << cv.x(proj[i][0]) << "\" y=\"" << cv.y(proj[i][1]) << "\" font-family=\"sans-serif\" font-size=\"11\">"
      << to_string(fan.ray(i)) << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace

std::string shed_off(const Fan& fan) {
  require_dim(fan, 3, 3);
  std::ostringstream s;
  s << "OFF\n" << fan.rays().size() << ' ' << fan.cones().size() << " 0\n";
  for (const auto& r : fan.rays()) s << r[0] << ' ' << r[1] << ' ' << r[2] << '\n';
  for (const auto& c : fan.cones()) {
    Cone o = outward(fan, c);
    s << "3 " << o[0] << ' ' << o[1] << ' ' << o[2] << '\n';
  }
  return s.str();
}

std::string shed_svg(const Fan& fan, const std::string& title, std::optional<std::size_t> highlight) {
  require_dim(fan, 2, 3);
  return fan.dim() == 2 ? svg2(fan, title) : svg3(fan, title, highlight);
}

}  // namespace toric
