#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "convexpos/error.hpp"
#include "convexpos/rng.hpp"

namespace convexpos {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

// Halfplane {p : normal . p >= offset}; `normal` points to the inside.
struct Halfplane {
    Vec2 normal;
    double offset = 0.0;

    double clearance(Vec2 p) const { return dot(normal, p) - offset; }
};

// Supporting line of a polygon side with its inward halfplane.
struct SideLine {
    Vec2 base;     // first vertex of the side
    Vec2 dir;      // unit direction along the side (ccw)
    Vec2 normal;   // unit inward normal
    double offset; // normal . base

    Halfplane halfplane() const { return {normal, offset}; }
    double clearance(Vec2 p) const { return dot(normal, p) - offset; }
};

// Invertible affine map x -> A x + t.
struct AffineMap {
    double a11 = 1.0, a12 = 0.0;
    double a21 = 0.0, a22 = 1.0;
    Vec2 t;

    Vec2 operator()(Vec2 p) const {
        return {a11 * p.x + a12 * p.y + t.x, a21 * p.x + a22 * p.y + t.y};
    }
    double det() const { return a11 * a22 - a12 * a21; }
    AffineMap inverse() const;

    static AffineMap translation(Vec2 t);
    static AffineMap rotation(double angle);
    static AffineMap scaling(double sx, double sy);
    static AffineMap linear(double a11, double a12, double a21, double a22);
};

// Strictly convex polygon, counterclockwise, immutable after construction.
// Side j joins vertex j to vertex j+1 (cyclic); angle j is the internal angle
// between sides j and j+1, i.e. at vertex j+1. All indices are 0-based.
class Polygon {
public:
    // Empty placeholder; every usable Polygon comes from from_vertices.
    Polygon() = default;

    // Validates and normalizes the vertex list (clockwise input is reversed).
    // Throws Error with code TooFewVertices / DuplicateVertex /
    // CollinearVertices / NonConvex.
    static Polygon from_vertices(std::vector<Vec2> vertices);

    int size() const { return static_cast<int>(verts_.size()); }
    int wrap(int j) const {
        int k = size();
        return ((j % k) + k) % k;
    }

    const std::vector<Vec2>& vertices() const { return verts_; }
    Vec2 vertex(int j) const { return verts_[wrap(j)]; }
    double side_length(int j) const { return lengths_[wrap(j)]; }
    double angle(int j) const { return angles_[wrap(j)]; }
    const SideLine& side(int j) const { return lines_[wrap(j)]; }
    const std::vector<double>& side_lengths() const { return lengths_; }
    const std::vector<double>& angles() const { return angles_; }

    double area() const { return area_; }
    double diameter() const { return diameter_; }

    // Signed inward distance from p to the supporting line of side j.
    double side_distance(int j, Vec2 p) const { return lines_[wrap(j)].clearance(p); }
    bool contains(Vec2 p, double tol) const;
    bool contains(Vec2 p) const { return contains(p, 1e-9 * diameter_); }

private:
    std::vector<Vec2> verts_;
    std::vector<double> lengths_;
    std::vector<double> angles_;
    std::vector<SideLine> lines_;
    double area_ = 0.0;
    double diameter_ = 0.0;
};

inline Polygon parse_polygon(std::vector<Vec2> vertices) {
    return Polygon::from_vertices(std::move(vertices));
}

// Rigid motion placing vertex 0 at the origin and side 0 on the positive
// x-axis; side lengths, angles and area are unchanged. Idempotent.
Polygon canonicalize(const Polygon& poly);

// Image polygon; orientation is re-normalized if det < 0. Throws SingularMap.
Polygon apply_affine(const Polygon& poly, const AffineMap& map);

// Indices of the convex hull vertices, counterclockwise, starting from the
// point with smallest (y, x). Points interior to the hull or on a hull edge
// (collinear) are excluded. Exact duplicates contribute a single index.
std::vector<int> convex_hull(std::span<const Vec2> points);

// True iff every point is a vertex of the convex hull.
bool is_convex_position(std::span<const Vec2> points);

// Intersection of a convex ccw polygon (as a vertex loop) with a halfplane.
// Returns the clipped loop; may be empty.
std::vector<Vec2> clip(const std::vector<Vec2>& loop, const Halfplane& hp);

// Uniform sampling by fan triangulation from vertex 0; deterministic per seed.
class PolygonSampler {
public:
    explicit PolygonSampler(const Polygon& poly);
    Vec2 sample(Rng& rng) const;

private:
    std::vector<Vec2> verts_;
    std::vector<double> cumulative_;  // cumulative triangle areas, normalized
};

std::vector<Vec2> sample_uniform(const Polygon& poly, std::size_t count, std::uint64_t seed);

}  // namespace convexpos
