#include "convexpos/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace convexpos {

namespace {

struct Viewport {
    double min_x, min_y, max_x, max_y, scale;

    // world -> svg (y axis flipped)
    double sx(double x) const { return (x - min_x) * scale; }
    double sy(double y) const { return (max_y - y) * scale; }
};

Viewport fit_viewport(std::span<const Vec2> pts) {
    Viewport v{pts[0].x, pts[0].y, pts[0].x, pts[0].y, 1.0};
    for (const Vec2& p : pts) {
        v.min_x = std::min(v.min_x, p.x);
        v.min_y = std::min(v.min_y, p.y);
        v.max_x = std::max(v.max_x, p.x);
        v.max_y = std::max(v.max_y, p.y);
    }
    double span = std::max(v.max_x - v.min_x, v.max_y - v.min_y);
    double margin = 0.05 * span;
    v.min_x -= margin;
    v.min_y -= margin;
    v.max_x += margin;
    v.max_y += margin;
    v.scale = 640.0 / std::max(v.max_x - v.min_x, v.max_y - v.min_y);
    return v;
}

std::string num(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", value);
    return buf;
}

void open_svg(std::ostringstream& out, const Viewport& v) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << num((v.max_x - v.min_x) * v.scale) << "\" height=\"" << num((v.max_y - v.min_y) * v.scale)
        << "\">\n";
}

void polygon_path(std::ostringstream& out, const Viewport& v, std::span<const Vec2> pts,
                  const std::string& style) {
    out << "<path d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
        out << (i ? " L " : "M ") << num(v.sx(pts[i].x)) << " " << num(v.sy(pts[i].y));
    out << " Z\" " << style << "/>\n";
}

void dot(std::ostringstream& out, const Viewport& v, Vec2 p, const std::string& fill) {
    out << "<circle cx=\"" << num(v.sx(p.x)) << "\" cy=\"" << num(v.sy(p.y))
        << "\" r=\"4\" fill=\"" << fill << "\"/>\n";
}

}  // namespace

std::string analysis_svg(const Polygon& poly, const LimitShapeReport& report) {
    std::vector<Vec2> frame = report.tangent_polygon.vertices();
    frame.insert(frame.end(), poly.vertices().begin(), poly.vertices().end());
    Viewport v = fit_viewport(frame);

    std::ostringstream out;
    open_svg(out, v);
    polygon_path(out, v, report.tangent_polygon.vertices(),
                 "fill=\"none\" stroke=\"#888888\" stroke-width=\"1.5\" stroke-dasharray=\"8 5\"");
    polygon_path(out, v, poly.vertices(), "fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"2\"");
    // arc chain as native quadratic Beziers
    out << "<path d=\"M " << num(v.sx(report.shape.arcs[0].start.x)) << " "
        << num(v.sy(report.shape.arcs[0].start.y));
    for (const ParabolaArc& arc : report.shape.arcs)
        out << " Q " << num(v.sx(arc.control.x)) << " " << num(v.sy(arc.control.y)) << ", "
            << num(v.sx(arc.end.x)) << " " << num(v.sy(arc.end.y));
    out << " Z\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
    for (const Vec2& p : report.shape.tangency) dot(out, v, p, "#c0392b");
    out << "</svg>\n";
    return out.str();
}

std::string pcp_svg(const Polygon& poly, std::span<const Vec2> points, const PcpData& pcp) {
    Viewport v = fit_viewport(poly.vertices());
    std::ostringstream out;
    open_svg(out, v);
    polygon_path(out, v, poly.vertices(), "fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"2\"");
    polygon_path(out, v, pcp.corners, "fill=\"none\" stroke=\"#2980b9\" stroke-width=\"1.5\"");
    for (const Vec2& p : points) dot(out, v, p, "#444444");
    for (int idx : pcp.contact_index) dot(out, v, points[idx], "#c0392b");
    out << "</svg>\n";
    return out.str();
}

}  // namespace convexpos
