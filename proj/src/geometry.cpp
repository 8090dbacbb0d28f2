#include "convexpos/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace convexpos {

namespace {

constexpr double k_collinear_rel = 1e-12;   // cross-product threshold, scaled by diameter^2
constexpr double k_duplicate_rel = 1e-12;   // vertex coincidence, scaled by diameter

double pairwise_diameter(const std::vector<Vec2>& pts) {
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, dist(pts[i], pts[j]));
    return best;
}

double signed_area(const std::vector<Vec2>& pts) {
    double twice = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[(i + 1) % pts.size()];
        twice += cross(a, b);
    }
    return 0.5 * twice;
}

}  // namespace

// ---------------------------------------------------------------------------
// AffineMap

AffineMap AffineMap::inverse() const {
    double d = det();
    if (d == 0.0) fail(ErrorKind::invalid_input, "SingularMap", "determinant is zero");
    AffineMap inv = linear(a22 / d, -a12 / d, -a21 / d, a11 / d);
    Vec2 it = inv({t.x, t.y});
    inv.t = {-it.x, -it.y};
    return inv;
}

AffineMap AffineMap::translation(Vec2 t) {
    AffineMap m;
    m.t = t;
    return m;
}

AffineMap AffineMap::rotation(double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return linear(c, -s, s, c);
}

AffineMap AffineMap::scaling(double sx, double sy) { return linear(sx, 0, 0, sy); }

AffineMap AffineMap::linear(double a11, double a12, double a21, double a22) {
    AffineMap m;
    m.a11 = a11;
    m.a12 = a12;
    m.a21 = a21;
    m.a22 = a22;
    return m;
}

// ---------------------------------------------------------------------------
// Polygon

Polygon Polygon::from_vertices(std::vector<Vec2> vertices) {
    if (vertices.size() < 3)
        fail(ErrorKind::invalid_input, "TooFewVertices",
             "need at least 3 vertices, got " + std::to_string(vertices.size()));

    const double diameter = pairwise_diameter(vertices);
    if (diameter <= 0.0)
        fail(ErrorKind::invalid_input, "DuplicateVertex", "all vertices coincide");

    const int k = static_cast<int>(vertices.size());
    for (int j = 0; j < k; ++j) {
        if (dist(vertices[j], vertices[(j + 1) % k]) <= k_duplicate_rel * diameter)
            fail(ErrorKind::invalid_input, "DuplicateVertex",
                 "vertices " + std::to_string(j) + " and " + std::to_string((j + 1) % k) +
                     " coincide");
    }

    double area2 = signed_area(vertices);
    if (std::abs(area2) <= k_collinear_rel * diameter * diameter)
        fail(ErrorKind::invalid_input, "CollinearVertices", "polygon has no area");
    if (area2 < 0.0) std::reverse(vertices.begin(), vertices.end());

    const double cross_tol = k_collinear_rel * diameter * diameter;
    for (int j = 0; j < k; ++j) {
        Vec2 e0 = vertices[(j + 1) % k] - vertices[j];
        Vec2 e1 = vertices[(j + 2) % k] - vertices[(j + 1) % k];
        double c = cross(e0, e1);
        if (std::abs(c) <= cross_tol)
            fail(ErrorKind::invalid_input, "CollinearVertices",
                 "vertices " + std::to_string(j) + ".." + std::to_string((j + 2) % k) +
                     " are collinear");
        if (c < 0.0)
            fail(ErrorKind::invalid_input, "NonConvex",
                 "reflex turn at vertex " + std::to_string((j + 1) % k));
    }

    Polygon poly;
    poly.verts_ = std::move(vertices);
    poly.diameter_ = diameter;
    poly.area_ = signed_area(poly.verts_);
    poly.lengths_.resize(k);
    poly.angles_.resize(k);
    poly.lines_.resize(k);
    for (int j = 0; j < k; ++j) {
        Vec2 a = poly.verts_[j];
        Vec2 b = poly.verts_[(j + 1) % k];
        double len = dist(a, b);
        Vec2 dir = (1.0 / len) * (b - a);
        Vec2 normal{-dir.y, dir.x};  // inward for ccw orientation
        poly.lengths_[j] = len;
        poly.lines_[j] = SideLine{a, dir, normal, dot(normal, a)};
    }
    for (int j = 0; j < k; ++j) {
        Vec2 d0 = poly.lines_[j].dir;
        Vec2 d1 = poly.lines_[(j + 1) % k].dir;
        // internal angle between sides j and j+1, in (0, pi)
        poly.angles_[j] = std::atan2(cross(d0, d1), -dot(d0, d1));
    }
    return poly;
}

bool Polygon::contains(Vec2 p, double tol) const {
    for (const SideLine& line : lines_)
        if (line.clearance(p) < -tol) return false;
    return true;
}

Polygon canonicalize(const Polygon& poly) {
    Vec2 v0 = poly.vertex(0);
    Vec2 d = poly.side(0).dir;
    // rotate by -atan2(d) and translate v0 to the origin
    double c = d.x, s = -d.y;
    std::vector<Vec2> out;
    out.reserve(poly.size());
    for (Vec2 v : poly.vertices()) {
        Vec2 w = v - v0;
        out.push_back({c * w.x - s * w.y, s * w.x + c * w.y});
    }
    out[0] = {0.0, 0.0};
    out[1].y = 0.0;
    return Polygon::from_vertices(std::move(out));
}

Polygon apply_affine(const Polygon& poly, const AffineMap& map) {
    double scale = std::abs(map.a11) + std::abs(map.a12) + std::abs(map.a21) + std::abs(map.a22);
    if (std::abs(map.det()) <= 1e-12 * scale * scale)
        fail(ErrorKind::invalid_input, "SingularMap", "affine map is not invertible");
    std::vector<Vec2> out;
    out.reserve(poly.size());
    for (Vec2 v : poly.vertices()) out.push_back(map(v));
    if (map.det() < 0.0) std::reverse(out.begin(), out.end());
    return Polygon::from_vertices(std::move(out));
}

// ---------------------------------------------------------------------------
// Convex hull and convex position

std::vector<int> convex_hull(std::span<const Vec2> points) {
    const int n = static_cast<int>(points.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (points[a].x != points[b].x) return points[a].x < points[b].x;
        return points[a].y < points[b].y;
    });
    // drop exact duplicates
    order.erase(std::unique(order.begin(), order.end(),
                            [&](int a, int b) {
                                return points[a].x == points[b].x && points[a].y == points[b].y;
                            }),
                order.end());
    const int m = static_cast<int>(order.size());
    if (m <= 2) {
        // start from smallest (y, x)
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (points[a].y != points[b].y) return points[a].y < points[b].y;
            return points[a].x < points[b].x;
        });
        return order;
    }

    // Andrew monotone chain with strict turns (collinear points excluded).
    std::vector<int> hull(2 * m);
    int h = 0;
    for (int idx : order) {  // lower hull
        while (h >= 2 &&
               cross(points[hull[h - 1]] - points[hull[h - 2]],
                     points[idx] - points[hull[h - 1]]) <= 0.0)
            --h;
        hull[h++] = idx;
    }
    int lower = h + 1;
    for (int i = m - 2; i >= 0; --i) {  // upper hull
        int idx = order[i];
        while (h >= lower &&
               cross(points[hull[h - 1]] - points[hull[h - 2]],
                     points[idx] - points[hull[h - 1]]) <= 0.0)
            --h;
        hull[h++] = idx;
    }
    hull.resize(h - 1);

    // rotate so the walk starts at the smallest (y, x) point
    int start = 0;
    for (int i = 1; i < static_cast<int>(hull.size()); ++i) {
        Vec2 a = points[hull[i]], b = points[hull[start]];
        if (a.y < b.y || (a.y == b.y && a.x < b.x)) start = i;
    }
    std::rotate(hull.begin(), hull.begin() + start, hull.end());
    return hull;
}

bool is_convex_position(std::span<const Vec2> points) {
    return convex_hull(points).size() == points.size();
}

std::vector<Vec2> clip(const std::vector<Vec2>& loop, const Halfplane& hp) {
    std::vector<Vec2> out;
    const int n = static_cast<int>(loop.size());
    out.reserve(n + 1);
    for (int i = 0; i < n; ++i) {
        Vec2 a = loop[i];
        Vec2 b = loop[(i + 1) % n];
        double ca = hp.clearance(a);
        double cb = hp.clearance(b);
        if (ca >= 0.0) out.push_back(a);
        if ((ca > 0.0 && cb < 0.0) || (ca < 0.0 && cb > 0.0)) {
            double t = ca / (ca - cb);
            out.push_back(a + t * (b - a));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sampling

PolygonSampler::PolygonSampler(const Polygon& poly) : verts_(poly.vertices()) {
    const int k = poly.size();
    cumulative_.resize(k - 2);
    double acc = 0.0;
    for (int i = 1; i + 1 < k; ++i) {
        acc += 0.5 * std::abs(cross(verts_[i] - verts_[0], verts_[i + 1] - verts_[0]));
        cumulative_[i - 1] = acc;
    }
    for (double& c : cumulative_) c /= acc;
    cumulative_.back() = 1.0;
}

Vec2 PolygonSampler::sample(Rng& rng) const {
    double pick = rng.uniform();
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), pick);
    int tri = static_cast<int>(it - cumulative_.begin());
    Vec2 a = verts_[0];
    Vec2 b = verts_[tri + 1];
    Vec2 c = verts_[tri + 2];
    double u = rng.uniform();
    double v = rng.uniform();
    if (u + v > 1.0) {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    return a + u * (b - a) + v * (c - a);
}

std::vector<Vec2> sample_uniform(const Polygon& poly, std::size_t count, std::uint64_t seed) {
    PolygonSampler sampler(poly);
    Rng rng(seed);
    std::vector<Vec2> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.sample(rng));
    return out;
}

}  // namespace convexpos
