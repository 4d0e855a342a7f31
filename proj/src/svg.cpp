#include "cube/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace cube {

namespace {

constexpr double kUnit = 40.0;
constexpr double kMargin = 20.0;
const double kRow = std::sqrt(3.0) / 2.0;

struct Point {
  double x = 0, y = 0;
};

Point place(const Vertex& v) { return {kUnit * (v.j - v.k) / 2.0, -kUnit * kRow * v.i}; }
Point place_half(const Vertex& twice) { return {kUnit * (twice.j - twice.k) / 4.0, -kUnit * kRow * twice.i / 2.0}; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v == 0.0 ? 0.0 : v);  // no "-0.00"
  return buf;
}

const char* fill_of(const Vertex& v) {
  switch (color(v)) {
    case kRed: return "#d62728";
    case kGreen: return "#2ca02c";
    default: return "#1f4fd6";
  }
}

struct Box {
  double x0 = std::numeric_limits<double>::max(), y0 = x0;
  double x1 = std::numeric_limits<double>::lowest(), y1 = x1;
  void add(Point p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
};

std::string header(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
}

std::string line(Point a, Point b, const char* stroke, double width, const char* extra = "") {
  return "<line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) +
         "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"" + extra + "/>\n";
}

std::string dot(Point p, const char* fill, double r) {
  return "<circle cx=\"" + num(p.x) + "\" cy=\"" + num(p.y) + "\" r=\"" + num(r) + "\" fill=\"" + fill + "\"/>\n";
}

}  // namespace

std::string groves_svg(const GroveRegion& region, const std::vector<Forest>& forests) {
  Box box;
  for (const auto& v : region.vertices) box.add(place(v));
  double w = box.x1 - box.x0, h = box.y1 - box.y0;
  std::size_t panels = std::max<std::size_t>(1, forests.size());
  std::ostringstream out;
  out << header(panels * (w + 2 * kMargin), h + 2 * kMargin);
  for (std::size_t f = 0; f < panels; ++f) {
    double dx = kMargin - box.x0 + f * (w + 2 * kMargin), dy = kMargin - box.y0;
    auto at = [&](const Vertex& v) {
      Point p = place(v);
      return Point{p.x + dx, p.y + dy};
    };
    out << "<g id=\"forest-" << f << "\">\n";
    for (const auto& l : region.lozenges) {
      auto [g1, g2] = l.green();
      out << "<polygon points=\"";
      for (const Vertex& v : {l.red, g1, l.blue, g2}) out << num(at(v).x) << ',' << num(at(v).y) << ' ';
      out << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1.00\"/>\n";
    }
    if (f < forests.size())
      for (std::size_t l = 0; l < region.lozenges.size(); ++l) {
        Diagonal which = forests[f].choice[l];
        auto [u, v] = region.lozenges[l].edge(which);
        out << line(at(u), at(v), which == Diagonal::Green ? "#2ca02c" : "#1f4fd6", 3.0);
      }
    for (const auto& v : region.vertices) out << dot(at(v), fill_of(v), 4.0);
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string network_svg(const Network& net) {
  Vertex period = net.strip_n ? Vertex{0, 3 * net.strip_n, -3 * net.strip_n} : Vertex{};
  auto twice = [&](int node) {
    const NetNode& n = net.nodes[static_cast<std::size_t>(node)];
    return n.is_center() ? net.lozenges[static_cast<std::size_t>(n.lozenge)].center2() : 2 * n.at;
  };
  Box box;
  std::vector<std::pair<Point, Point>> arrows;
  for (const auto& e : net.edges) {
    Point a = place_half(twice(e.from)), b = place_half(twice(e.to) + 2 * (e.winding * period));
    box.add(a);
    box.add(b);
    arrows.emplace_back(a, b);
  }
  for (std::size_t i = 0; i < net.nodes.size(); ++i) box.add(place_half(twice(static_cast<int>(i))));
  if (net.nodes.empty()) box.add({0, 0});
  double dx = kMargin - box.x0, dy = kMargin - box.y0;
  std::ostringstream out;
  out << header(box.x1 - box.x0 + 2 * kMargin, box.y1 - box.y0 + 2 * kMargin);
  out << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
         "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#444444\"/></marker></defs>\n";
  for (auto [a, b] : arrows)
    out << line({a.x + dx, a.y + dy}, {b.x + dx, b.y + dy}, "#444444", 1.5, " marker-end=\"url(#arrow)\"");
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    const NetNode& n = net.nodes[i];
    Point p = place_half(twice(static_cast<int>(i)));
    p = {p.x + dx, p.y + dy};
    if (n.is_center())
      out << "<rect x=\"" << num(p.x - 3) << "\" y=\"" << num(p.y - 3)
          << "\" width=\"6.00\" height=\"6.00\" fill=\"#777777\"/>\n";
    else
      out << dot(p, fill_of(n.at), 4.0);
  }
  out << "</svg>\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing " + path);
}

}  // namespace cube
