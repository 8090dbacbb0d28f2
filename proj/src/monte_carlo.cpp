#include "convexpos/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace convexpos {

namespace {

constexpr std::uint64_t k_block_size = 1 << 16;
constexpr double k_z95 = 1.959963984540054;

// Runs trials split into fixed blocks, each with its own derived RNG stream;
// fn(rng, count, counters) runs one block. Workers only add parallelism, so
// totals are independent of the worker count.
template <typename BlockFn>
std::vector<std::uint64_t> run_blocks(std::uint64_t trials, std::uint64_t seed, int workers,
                                      int counters, BlockFn&& fn) {
    const std::uint64_t blocks = (trials + k_block_size - 1) / k_block_size;
    std::vector<std::uint64_t> totals(counters, 0);
    std::atomic<std::uint64_t> next{0};
    auto work = [&](std::vector<std::uint64_t>& local) {
        for (;;) {
            std::uint64_t b = next.fetch_add(1);
            if (b >= blocks) return;
            std::uint64_t lo = b * k_block_size;
            std::uint64_t hi = std::min(trials, lo + k_block_size);
            Rng rng(derive_stream_seed(seed, b));
            fn(rng, hi - lo, local);
        }
    };
    int nw = std::max(1, workers);
    if (nw == 1) {
        work(totals);
    } else {
        std::vector<std::vector<std::uint64_t>> parts(nw, std::vector<std::uint64_t>(counters, 0));
        std::vector<std::thread> threads;
        threads.reserve(nw);
        for (int w = 0; w < nw; ++w) threads.emplace_back([&, w] { work(parts[w]); });
        for (auto& t : threads) t.join();
        for (const auto& part : parts)
            for (int c = 0; c < counters; ++c) totals[c] += part[c];
    }
    return totals;
}

}  // namespace

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // guard rounding so the interval always contains the point estimate
    double lo = std::clamp(std::min(center - half, p), 0.0, 1.0);
    double hi = std::clamp(std::max(center + half, p), 0.0, 1.0);
    return {lo, hi};
}

McEstimate make_estimate(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed) {
    McEstimate est;
    est.trials = trials;
    est.successes = successes;
    est.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
    auto [lo, hi] = wilson_interval(successes, trials, k_z95);
    est.ci_low = lo;
    est.ci_high = hi;
    est.seed = seed;
    return est;
}

McEstimate estimate_convex_probability(const Polygon& poly, int n, const McOptions& opt) {
    if (n < 3) fail(ErrorKind::invalid_input, "InvalidArgument", "need n >= 3");
    PolygonSampler sampler(poly);
    auto totals = run_blocks(
        opt.trials, opt.seed, opt.workers, 1,
        [&](Rng& rng, std::uint64_t count, std::vector<std::uint64_t>& acc) {
            std::vector<Vec2> pts(n);
            for (std::uint64_t t = 0; t < count; ++t) {
                for (int i = 0; i < n; ++i) pts[i] = sampler.sample(rng);
                if (is_convex_position(pts)) ++acc[0];
            }
        });
    return make_estimate(totals[0], opt.trials, opt.seed);
}

const Polygon& bipointed_triangle() {
    // area-1 right triangle; the two anchors are vertices 0 and 1
    static const Polygon tri =
        Polygon::from_vertices({{0.0, 0.0}, {std::sqrt(2.0), 0.0}, {0.0, std::sqrt(2.0)}});
    return tri;
}

McEstimate estimate_bipointed(int n, const McOptions& opt) {
    if (n < 1) fail(ErrorKind::invalid_input, "InvalidArgument", "need n >= 1");
    const Polygon& tri = bipointed_triangle();
    PolygonSampler sampler(tri);
    const Vec2 anchor_a = tri.vertex(0);
    const Vec2 anchor_b = tri.vertex(1);
    auto totals = run_blocks(
        opt.trials, opt.seed, opt.workers, 1,
        [&](Rng& rng, std::uint64_t count, std::vector<std::uint64_t>& acc) {
            std::vector<Vec2> pts(n + 2);
            pts[0] = anchor_a;
            pts[1] = anchor_b;
            for (std::uint64_t t = 0; t < count; ++t) {
                for (int i = 0; i < n; ++i) pts[i + 2] = sampler.sample(rng);
                if (is_convex_position(pts)) ++acc[0];
            }
        });
    return make_estimate(totals[0], opt.trials, opt.seed);
}

std::vector<double> pcp_side_lengths_formula(const Polygon& poly, std::span<const double> ell) {
    const int k = poly.size();
    std::vector<double> c(k);
    for (int j = 0; j < k; ++j) {
        int jm = poly.wrap(j - 1);
        int jp = poly.wrap(j + 1);
        double clj = ell[jm] / std::sin(poly.angle(jm)) + ell[jp] / std::sin(poly.angle(j)) +
                     ell[j] * (1.0 / std::tan(poly.angle(jm)) + 1.0 / std::tan(poly.angle(j)));
        c[j] = poly.side_length(j) - clj;
    }
    return c;
}

FullSidedEstimate estimate_full_sided(const Polygon& poly, int n, const McOptions& opt) {
    if (n < 3) fail(ErrorKind::invalid_input, "InvalidArgument", "need n >= 3");
    PolygonSampler sampler(poly);
    const int k = poly.size();
    const double c_tol = 1e-12 * poly.diameter();
    auto totals = run_blocks(
        opt.trials, opt.seed, opt.workers, 2,
        [&](Rng& rng, std::uint64_t count, std::vector<std::uint64_t>& acc) {
            std::vector<Vec2> pts(n);
            std::vector<double> ell(k);
            for (std::uint64_t t = 0; t < count; ++t) {
                for (int i = 0; i < n; ++i) pts[i] = sampler.sample(rng);
                if (!is_convex_position(pts)) continue;
                ++acc[0];
                for (int j = 0; j < k; ++j) {
                    double best = poly.side_distance(j, pts[0]);
                    for (int i = 1; i < n; ++i)
                        best = std::min(best, poly.side_distance(j, pts[i]));
                    ell[j] = std::max(best, 0.0);
                }
                std::vector<double> c = pcp_side_lengths_formula(poly, ell);
                bool full = true;
                for (double cj : c)
                    if (!(cj > c_tol)) full = false;
                if (full) ++acc[1];
            }
        });
    FullSidedEstimate out;
    out.convex = make_estimate(totals[0], opt.trials, opt.seed);
    out.full_sided = make_estimate(totals[1], opt.trials, opt.seed);
    out.conditional_fraction =
        totals[0] ? static_cast<double>(totals[1]) / static_cast<double>(totals[0]) : 0.0;
    return out;
}

PcpData compute_pcp(const Polygon& poly, std::span<const Vec2> points) {
    if (points.empty()) fail(ErrorKind::invalid_input, "EmptyInput", "no points given");
    const int k = poly.size();
    const int n = static_cast<int>(points.size());
    const double tol = 1e-9 * poly.diameter();
    for (int i = 0; i < n; ++i)
        if (!poly.contains(points[i], tol))
            fail(ErrorKind::invalid_input, "PointOutsidePolygon",
                 "point " + std::to_string(i) + " is outside the polygon");

    PcpData pcp;
    pcp.side_distance.resize(k);
    pcp.contact_index.resize(k);
    for (int j = 0; j < k; ++j) {
        double best = poly.side_distance(j, points[0]);
        int best_idx = 0;
        for (int i = 1; i < n; ++i) {
            double d = poly.side_distance(j, points[i]);
            if (d < best) {
                best = d;
                best_idx = i;
            }
        }
        // lexicographically smallest among (floating-point) ties
        for (int i = 0; i < n; ++i) {
            double d = poly.side_distance(j, points[i]);
            if (d <= best + 1e-12 * poly.diameter()) {
                Vec2 a = points[i], b = points[best_idx];
                if (a.x < b.x || (a.x == b.x && a.y < b.y)) best_idx = i;
            }
        }
        pcp.side_distance[j] = std::max(best, 0.0);
        pcp.contact_index[j] = best_idx;
    }

    // offset the side lines inward and intersect consecutive ones
    pcp.corners.resize(k);
    for (int j = 0; j < k; ++j) {
        int jp = poly.wrap(j + 1);
        const SideLine& a = poly.side(j);
        const SideLine& b = poly.side(jp);
        double oa = a.offset + pcp.side_distance[j];
        double ob = b.offset + pcp.side_distance[jp];
        double det = cross(a.normal, b.normal);
        pcp.corners[j] = {(oa * b.normal.y - ob * a.normal.y) / det,
                          (a.normal.x * ob - b.normal.x * oa) / det};
    }
    pcp.side_length.resize(k);
    for (int j = 0; j < k; ++j) {
        int jm = poly.wrap(j - 1);
        pcp.side_length[j] = dot(pcp.corners[j] - pcp.corners[jm], poly.side(j).dir);
    }
    pcp.side_length_formula = pcp_side_lengths_formula(poly, pcp.side_distance);

    if (is_convex_position(points)) {
        // walk the convex canonical order (ccw hull from the lowest point)
        std::vector<int> hull = convex_hull(points);
        std::vector<int> pos(n, -1);
        for (int i = 0; i < n; ++i) pos[hull[i]] = i;
        std::vector<int> s(k);
        for (int j = 0; j < k; ++j) {
            int a = pos[pcp.contact_index[j]];
            int b = pos[pcp.contact_index[poly.wrap(j + 1)]];
            s[j] = ((b - a) % n + n) % n;
        }
        pcp.size_vector = std::move(s);
    }
    return pcp;
}

bool is_valid_size_vector(std::span<const int> s, int n) {
    const int k = static_cast<int>(s.size());
    long long total = 0;
    for (int j = 0; j < k; ++j) {
        if (s[j] < 0) return false;
        if (s[j] == 0 && s[(j + 1) % k] == 0) return false;
        total += s[j];
    }
    return total == n;
}

double joint_density_unnormalized(const Polygon& poly, std::span<const double> ell,
                                  std::span<const int> s, int n, DensityExponent exponent) {
    const int k = poly.size();
    if (!is_valid_size_vector(s, n))
        fail(ErrorKind::invalid_input, "InvalidSizeVector",
             "size-vector must be nonnegative, sum to n, with no two cyclically adjacent zeros");
    for (double l : ell)
        if (l < 0.0) return 0.0;
    std::vector<double> c = pcp_side_lengths_formula(poly, ell);
    for (double cj : c)
        if (cj < 0.0) return 0.0;

    double log_density = std::lgamma(static_cast<double>(n) + 1.0);
    for (int j = 0; j < k; ++j) {
        int e = exponent == DensityExponent::standard ? s[poly.wrap(j - 1)] + s[j] - 1
                                                       : s[j] + s[poly.wrap(j + 1)] - 1;
        log_density += (s[j] - 1) * std::log(std::sin(poly.angle(j)));
        log_density -= std::lgamma(static_cast<double>(s[j]) + 1.0);
        log_density -= std::lgamma(static_cast<double>(e) + 1.0);
        if (e > 0) {
            if (c[j] <= 0.0) return 0.0;
            log_density += e * std::log(c[j]);
        }
    }
    return std::exp(log_density);
}

// ---------------------------------------------------------------------------
// Quadrature of the joint density

namespace {

void enumerate_size_vectors(int kappa, int n, std::vector<std::vector<int>>& out) {
    std::vector<int> s(kappa, 0);
    // recursive composition of n into kappa nonnegative parts
    std::function<void(int, int)> rec = [&](int j, int left) {
        if (j == kappa - 1) {
            s[j] = left;
            if (is_valid_size_vector(s, n)) out.push_back(s);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            s[j] = v;
            rec(j + 1, left - v);
        }
    };
    rec(0, n);
}

// Fraction of the axis box [-h/2, h/2]^d where center + sum a_i x_i >= 0.
// Exact: volume of a halfspace-box intersection, axes with zero coefficient
// reduced away first.
double box_halfspace_fraction(std::span<const double> a, std::span<const double> h,
                              double center) {
    std::vector<double> w;
    double shift = center;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double wi = std::abs(a[i] * h[i]);
        if (wi > 0.0) {
            w.push_back(wi);
            shift += 0.5 * wi;  // move to u_i in [0,1]
        }
    }
    const int d = static_cast<int>(w.size());
    double total_w = std::accumulate(w.begin(), w.end(), 0.0);
    if (shift <= 0.0) return 0.0;
    if (shift >= total_w) return 1.0;
    // P(sum w_i u_i <= shift), u uniform in [0,1]^d, by inclusion-exclusion
    double denom = 1.0;
    for (double wi : w) denom *= wi;
    double volume = 0.0;
    for (int mask = 0; mask < (1 << d); ++mask) {
        double t = shift;
        int bits = 0;
        for (int i = 0; i < d; ++i)
            if (mask & (1 << i)) {
                t -= w[i];
                ++bits;
            }
        if (t > 0.0) {
            double term = 1.0;
            for (int i = 0; i < d; ++i) term *= t;
            volume += (bits % 2 ? -1.0 : 1.0) * term;
        }
    }
    double fact = 1.0;
    for (int i = 2; i <= d; ++i) fact *= i;
    return std::clamp(volume / (fact * denom), 0.0, 1.0);
}

struct DensityGrid {
    // linear parts of c_j(ell): c_j = c0_j + sum_i slope[j][i] * ell_i
    std::vector<double> c0;
    std::vector<std::vector<double>> slope;
};

DensityGrid density_coefficients(const Polygon& poly) {
    const int k = poly.size();
    DensityGrid grid;
    grid.c0.resize(k);
    grid.slope.assign(k, std::vector<double>(k, 0.0));
    for (int j = 0; j < k; ++j) {
        int jm = poly.wrap(j - 1);
        int jp = poly.wrap(j + 1);
        grid.c0[j] = poly.side_length(j);
        grid.slope[j][jm] -= 1.0 / std::sin(poly.angle(jm));
        grid.slope[j][jp] -= 1.0 / std::sin(poly.angle(j));
        grid.slope[j][j] -= 1.0 / std::tan(poly.angle(jm)) + 1.0 / std::tan(poly.angle(j));
    }
    return grid;
}

double quadrature_pass(const Polygon& poly, int n, int grid_n, DensityExponent exponent) {
    const int k = poly.size();
    DensityGrid coef = density_coefficients(poly);

    // the feasible set lies within [0, width_j] per axis
    std::vector<double> width(k, 0.0);
    for (int j = 0; j < k; ++j)
        for (const Vec2& v : poly.vertices())
            width[j] = std::max(width[j], poly.side_distance(j, v));
    std::vector<double> h(k);
    for (int j = 0; j < k; ++j) h[j] = width[j] / grid_n;

    std::vector<std::vector<int>> size_vectors;
    enumerate_size_vectors(k, n, size_vectors);

    // per size-vector constants and exponents
    const int ns = static_cast<int>(size_vectors.size());
    std::vector<double> coef_s(ns);
    std::vector<std::vector<int>> exps(ns, std::vector<int>(k));
    for (int si = 0; si < ns; ++si) {
        const auto& s = size_vectors[si];
        double log_c = std::lgamma(static_cast<double>(n) + 1.0);
        for (int j = 0; j < k; ++j) {
            int e = exponent == DensityExponent::standard ? s[poly.wrap(j - 1)] + s[j] - 1
                                                           : s[j] + s[poly.wrap(j + 1)] - 1;
            exps[si][j] = e;
            log_c += (s[j] - 1) * std::log(std::sin(poly.angle(j)));
            log_c -= std::lgamma(static_cast<double>(s[j]) + 1.0);
            log_c -= std::lgamma(static_cast<double>(e) + 1.0);
        }
        coef_s[si] = std::exp(log_c);
    }

    double cell_volume = 1.0;
    for (int j = 0; j < k; ++j) cell_volume *= h[j];

    std::vector<double> ell(k), c(k), halfspan(k), frac_pos(k);
    std::vector<int> idx(k, 0);
    for (int j = 0; j < k; ++j) {
        halfspan[j] = 0.0;
        for (int i = 0; i < k; ++i) halfspan[j] += std::abs(coef.slope[j][i]) * h[i] * 0.5;
    }

    double total = 0.0;
    bool done = false;
    while (!done) {
        for (int j = 0; j < k; ++j) ell[j] = (idx[j] + 0.5) * h[j];
        double weight = 1.0;
        bool feasible = true;
        for (int j = 0; j < k && feasible; ++j) {
            c[j] = coef.c0[j];
            for (int i = 0; i < k; ++i) c[j] += coef.slope[j][i] * ell[i];
            if (c[j] <= -halfspan[j]) {
                feasible = false;
            } else if (c[j] < halfspan[j]) {
                // cell is cut by the c_j >= 0 boundary: exact volume fraction
                weight *= box_halfspace_fraction(coef.slope[j], h, c[j]);
                if (c[j] < 0.0) c[j] = 0.0;
            }
        }
        if (feasible && weight > 0.0) {
            double cell_sum = 0.0;
            for (int si = 0; si < ns; ++si) {
                double term = coef_s[si];
                for (int j = 0; j < k; ++j) {
                    int e = exps[si][j];
                    if (e == 0) continue;
                    if (c[j] <= 0.0) {
                        term = 0.0;
                        break;
                    }
                    double base = c[j];
                    for (int q = 0; q < e; ++q) term *= base;
                }
                cell_sum += term;
            }
            total += weight * cell_sum;
        }
        // advance the multi-index
        done = true;
        for (int j = 0; j < k; ++j) {
            if (++idx[j] < grid_n) {
                done = false;
                break;
            }
            idx[j] = 0;
        }
    }
    return total * cell_volume;
}

}  // namespace

double full_sided_probability_quadrature(const Polygon& poly, int n,
                                         const QuadratureOptions& opt) {
    const int k = poly.size();
    if (k > 4 || n > 8)
        fail(ErrorKind::guard_exceeded, "TooLarge",
             "quadrature is guarded to kappa <= 4 and n <= 8");
    if (n < 3) fail(ErrorKind::invalid_input, "InvalidArgument", "need n >= 3");
    int fine = opt.grid > 0 ? opt.grid : (k == 3 ? 96 : 40);
    double coarse_val = quadrature_pass(poly, n, fine / 2, opt.exponent);
    double fine_val = quadrature_pass(poly, n, fine, opt.exponent);
    return fine_val + (fine_val - coarse_val) / 3.0;  // Richardson, O(h^2) midpoint
}

// ---------------------------------------------------------------------------
// Limit density and Hausdorff distances

double limit_density(const AsymptoticModel& model, std::span<const double> ell_bar,
                     std::span<const double> x) {
    const int k = model.kappa_t;
    double log_d = 0.0;
    for (int j = 0; j < k; ++j) {
        if (ell_bar[j] < 0.0) return 0.0;
        log_d += std::log(model.m_rates[j]) - model.m_rates[j] * ell_bar[j];
    }
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), k - 1);
    double quad = xv.dot(model.sigma_inv * xv);
    log_d += 0.5 * std::log(model.d_k) - 0.5 * (k - 1) * std::log(2.0 * M_PI) - 0.5 * quad;
    return std::exp(log_d);
}

namespace {

double point_to_segment(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    return dist(p, a + t * ab);
}

// distance from p to a convex ccw region given by its boundary points
double point_to_region(Vec2 p, std::span<const Vec2> boundary) {
    const int m = static_cast<int>(boundary.size());
    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        Vec2 a = boundary[i];
        Vec2 b = boundary[(i + 1) % m];
        if (cross(b - a, p - a) < 0.0) inside = false;
        best = std::min(best, point_to_segment(p, a, b));
    }
    return inside ? 0.0 : best;
}

}  // namespace

double hausdorff_hull_to_shape(std::span<const Vec2> hull_ccw, std::span<const Vec2> shape_ccw) {
    // d(hull, shape): distance to a convex region is convex, so the supremum
    // over the hull boundary is attained at a hull vertex
    double d1 = 0.0;
    for (const Vec2& v : hull_ccw) d1 = std::max(d1, point_to_region(v, shape_ccw));
    double d2 = 0.0;
    for (const Vec2& q : shape_ccw) d2 = std::max(d2, point_to_region(q, hull_ccw));
    return std::max(d1, d2);
}

double hausdorff_to_limit_shape(const Polygon& poly, std::span<const Vec2> points) {
    if (points.size() < 3 || !is_convex_position(points))
        fail(ErrorKind::invalid_input, "InvalidInput", "need >= 3 points in convex position");
    LimitShapeReport report = find_limit_shape(poly);
    std::vector<Vec2> shape = sample_shape(report.shape, 1024);
    std::vector<int> hull = convex_hull(points);
    std::vector<Vec2> hull_pts;
    hull_pts.reserve(hull.size());
    for (int i : hull) hull_pts.push_back(points[i]);
    return hausdorff_hull_to_shape(hull_pts, shape);
}

std::vector<std::vector<Vec2>> conditioned_convex_samples(const Polygon& poly, int n, int count,
                                                          std::uint64_t seed, int workers) {
    if (n < 3 || n > 12)
        fail(ErrorKind::guard_exceeded, "TooLarge",
             "rejection sampling of conditioned tuples is capped at 3 <= n <= 12");
    PolygonSampler sampler(poly);
    std::vector<std::vector<Vec2>> out(count);
    std::atomic<int> next{0};
    auto work = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count) return;
            Rng rng(derive_stream_seed(seed, static_cast<std::uint64_t>(i)));
            std::vector<Vec2> pts(n);
            do {
                for (int j = 0; j < n; ++j) pts[j] = sampler.sample(rng);
            } while (!is_convex_position(pts));
            out[i] = std::move(pts);
        }
    };
    int nw = std::max(1, workers);
    if (nw == 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(nw);
        for (int w = 0; w < nw; ++w) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }
    return out;
}

}  // namespace convexpos
