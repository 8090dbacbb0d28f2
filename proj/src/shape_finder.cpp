#include "convexpos/shape_finder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

namespace convexpos {

namespace {

constexpr int k_max_kappa = 24;  // subset enumeration is 2^kappa

// Intersection point of two side lines (normal . p = offset).
std::optional<Vec2> line_intersection(const SideLine& a, const SideLine& b) {
    double det = cross(a.normal, b.normal);
    if (std::abs(det) < 1e-14) return std::nullopt;
    double x = (a.offset * b.normal.y - b.offset * a.normal.y) / det;
    double y = (a.normal.x * b.offset - b.normal.x * a.offset) / det;
    return Vec2{x, y};
}

// Builds the polygon bounded by the chosen side lines by intersecting
// angularly consecutive lines, then validates that it really is the bounded
// halfplane intersection: strictly convex, counterclockwise, every vertex on
// the inner side of every chosen line. Returns nullopt otherwise.
std::optional<Polygon> candidate_polygon(const Polygon& poly, std::span<const int> subset) {
    const int m = static_cast<int>(subset.size());
    const double tol = 1e-9 * poly.diameter();

    // boundedness: outward normal directions must leave no angular gap >= pi.
    // Side normals of a ccw convex polygon are already sorted by angle.
    std::vector<double> ang(m);
    for (int i = 0; i < m; ++i) {
        Vec2 n = poly.side(subset[i]).normal;
        ang[i] = std::atan2(-n.y, -n.x);
    }
    for (int i = 0; i < m; ++i) {
        double gap = ang[(i + 1) % m] - ang[i];
        if (gap < 0) gap += 2.0 * M_PI;
        if (gap >= M_PI - 1e-9) return std::nullopt;
    }

    std::vector<Vec2> verts(m);
    for (int i = 0; i < m; ++i) {
        auto p = line_intersection(poly.side(subset[i]), poly.side(subset[(i + 1) % m]));
        if (!p) return std::nullopt;
        verts[i] = *p;  // vertex between chosen sides i and i+1
    }
    // re-index so that vertex 0 starts the side on subset[0]'s line
    std::rotate(verts.begin(), verts.end() - 1, verts.end());

    Polygon candidate;
    try {
        candidate = Polygon::from_vertices(std::move(verts));
    } catch (const Error&) {
        return std::nullopt;
    }
    if (candidate.size() != m) return std::nullopt;
    for (const Vec2& v : candidate.vertices())
        for (int idx : subset)
            if (poly.side_distance(idx, v) < -tol) return std::nullopt;
    return candidate;
}

}  // namespace

std::vector<std::vector<int>> enumerate_valid_subsets(const Polygon& poly) {
    const int k = poly.size();
    if (k > k_max_kappa)
        fail(ErrorKind::guard_exceeded, "TooLarge",
             "side-subset enumeration is capped at kappa <= " + std::to_string(k_max_kappa));

    std::vector<std::vector<int>> valid;
    std::vector<int> subset;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        if (__builtin_popcount(mask) < 3) continue;
        subset.clear();
        for (int j = 0; j < k; ++j)
            if (mask & (1u << j)) subset.push_back(j);
        if (candidate_polygon(poly, subset)) valid.push_back(subset);
    }
    return valid;
}

Polygon build_candidate(const Polygon& poly, std::span<const int> subset) {
    auto candidate = candidate_polygon(poly, subset);
    if (!candidate)
        fail(ErrorKind::invalid_input, "UnboundedCandidate",
             "chosen side lines do not bound a polygon with one edge per line");
    return *candidate;
}

LimitShapeReport find_limit_shape(const Polygon& poly) {
    const double tol = 1e-9 * poly.diameter();
    std::optional<LimitShapeReport> best;

    for (const std::vector<int>& subset : enumerate_valid_subsets(poly)) {
        auto candidate = candidate_polygon(poly, subset);
        if (!candidate) continue;
        TangencySolution sol = solve_tangency_system(*candidate);
        // tangency points must fall strictly inside the open sides
        bool proper = true;
        for (double w : sol.w)
            if (!(w > 0.0 && w < 1.0)) proper = false;
        if (!proper) continue;

        LimitShape shape = build_limit_shape(*candidate, sol);
        if (!shape_in_polygon(shape, poly, tol)) continue;

        bool take = false;
        if (!best) {
            take = true;
        } else {
            double scale = std::max(sol.ap_star, best->ap_star);
            if (sol.ap_star > best->ap_star + 1e-10 * scale) {
                take = true;
            } else if (sol.ap_star > best->ap_star - 1e-10 * scale) {
                // numerical tie: prefer the richer tangency, then lexicographic
                if (subset.size() > best->winning_sides.size() ||
                    (subset.size() == best->winning_sides.size() && subset < best->winning_sides))
                    take = true;
            }
        }
        if (take) {
            LimitShapeReport report;
            report.winning_sides = subset;
            report.tangent_polygon = std::move(*candidate);
            report.shape = std::move(shape);
            report.solution = std::move(sol);
            report.ap_star = report.solution.ap_star;
            best = std::move(report);
        }
    }

    if (!best)
        fail(ErrorKind::numerical, "NoValidSubset",
             "no candidate curve is contained in the polygon");

    // sides of the input whose supporting line coincides with a side line of
    // the tangent polygon (these are the sides the shape touches)
    const Polygon& kt = best->tangent_polygon;
    const double offset_tol = 1e-8 * poly.diameter();
    for (int j = 0; j < poly.size(); ++j) {
        const SideLine& a = poly.side(j);
        for (int i = 0; i < kt.size(); ++i) {
            const SideLine& b = kt.side(i);
            if (dot(a.normal, b.normal) > 1.0 - 1e-12 && std::abs(a.offset - b.offset) <= offset_tol) {
                best->tangency_set.push_back(j);
                break;
            }
        }
    }
    best->tangency_count = static_cast<int>(best->tangency_set.size());
    return std::move(*best);
}

}  // namespace convexpos
