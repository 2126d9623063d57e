#pragma once

// Shared fixtures for the test suites: the worked four-quadrangle example,
// random curve pairs, unimodular maps, and oracles that avoid the library's
// own code paths.

#include <diams/diams.hpp>

#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

namespace diams::testing {

inline ConormalNet example_net(double y, double du = 0.1, double dv = 0.1) {
    return to_net(example_curve_pair(y, du, dv));
}

/// Cofactor expansion along the first row, written out independently of triple().
inline double det3_rows(const std::array<double, 3> &r0, const std::array<double, 3> &r1,
                        const std::array<double, 3> &r2) {
    return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
           r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
}

inline double angle_deg_2d(double x, double y) {
    double a = std::atan2(y, x) * 180.0 / M_PI;
    return a < 0 ? a + 360.0 : a;
}

/// 2D crossing oracle by angles: q rays interleave with the p rays around the origin.
inline bool interleave_by_angles(double p1, double p2, double q1, double q2) {
    auto inside = [&](double x) { // strictly inside ccw arc from p1 to p2
        double span = std::fmod(p2 - p1 + 360.0, 360.0);
        double off = std::fmod(x - p1 + 360.0, 360.0);
        return off > 0 && off < span;
    };
    return inside(q1) != inside(q2);
}

/// Random 3x3 matrix with determinant exactly normalised to 1 (up to rounding).
inline Mat3 random_unimodular(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> U(-0.6, 0.6);
    Mat3 a = Mat3::identity();
    for (auto &x : a.m) x += U(rng);
    double d = a.det();
    if (d < 0) {
        for (int c = 0; c < 3; ++c) std::swap(a(0, c), a(1, c));
        d = -d;
    }
    const double s = 1.0 / std::cbrt(d);
    for (auto &x : a.m) x *= s;
    return a;
}

inline ConormalNet transform_net(const ConormalNet &net, const Mat3 &a, Vec3 shift = {}) {
    auto map = [&](const PolyCurve &c) {
        std::vector<Vec3> pts;
        for (const auto &p : c.points()) pts.push_back(a * p + shift);
        return PolyCurve(c.first_index(), std::move(pts), c.name());
    };
    return ConormalNet(map(net.alpha()), map(net.beta()));
}

inline ConormalNet translate_net(const ConormalNet &net, Vec3 c) {
    return transform_net(net, Mat3::identity(), c);
}

/// Reverses the u parametrisation: alpha_new(u) = alpha(-u).
inline ConormalNet reverse_u(const ConormalNet &net) {
    std::vector<Vec3> pts(net.alpha().points().rbegin(), net.alpha().points().rend());
    return ConormalNet(PolyCurve(-net.alpha().last_index(), std::move(pts), "alpha"), net.beta());
}

/// Polynomial curve pair sampled on a grid with small per-point noise, shaped
/// so that Omega changes sign inside the domain for most draws.
inline ConormalNet random_smooth_net(std::mt19937_64 &rng, int quads = 20, double noise = 0.02) {
    std::uniform_real_distribution<double> C(-1.5, 1.5);
    std::uniform_real_distribution<double> S(-0.3, 0.3);
    std::normal_distribution<double> N(0.0, 1.0);
    const double h = 2.0 / quads;
    const int lo = -quads / 2;
    const std::array<double, 3> p = {C(rng), C(rng), C(rng)}, q = {C(rng), C(rng), C(rng)};
    const Vec3 ta{S(rng), S(rng), S(rng)}, tb{S(rng), S(rng), S(rng)};
    const Vec3 za{S(rng), S(rng), S(rng)}, zb{S(rng), S(rng), S(rng)};
    std::vector<Vec3> a, b;
    for (int k = 0; k <= quads; ++k) {
        const double t = (lo + k) * h;
        const Vec3 na{N(rng), N(rng), N(rng)}, nb{N(rng), N(rng), N(rng)};
        a.push_back(Vec3{t, p[0] * t * t + p[1] * t * t * t, 1.0 + 0.3 * p[2] * t} + ta * t + za * (t * t) +
                    na * (noise * h));
        b.push_back(Vec3{t, q[0] * t * t + q[1] * t * t * t, 0.3 * q[2] * t} + tb * t + zb * (t * t) +
                    nb * (noise * h));
    }
    return ConormalNet(PolyCurve(lo, a, "alpha"), PolyCurve(lo, b, "beta"));
}

/// True when the net passes every precondition of the classification:
/// generic position, nondegenerate metric and admissible singular vertices.
inline bool is_admissible(const ConormalNet &net, double tol = kDefaultSignTol) {
    if (!validate_generic_position(net, tol).empty()) return false;
    if (!degenerate_quads(net).empty()) return false;
    const auto metric = compute_metric(net);
    const auto edges = singular_edges(metric);
    for (const auto &sv : singular_vertices(edges, net.domain())) {
        if (sv.configuration == Configuration::Boundary) continue;
        if (sv.configuration == Configuration::Inadmissible) return false;
        try {
            if (!admissibility_check(net, sv, tol)) return false;
        } catch (const Error &) {
            return false;
        }
    }
    return true;
}

/// Rejection-sampled admissible random net.
inline ConormalNet random_admissible_net(std::mt19937_64 &rng, int quads = 20) {
    for (;;) {
        try {
            auto net = random_smooth_net(rng, quads);
            if (is_admissible(net)) return net;
        } catch (const Error &) {
        }
    }
}

/// min |Omega| / scale^3, compared against the degenerate-quad threshold.
inline double min_relative_omega(const ConormalNet &net) {
    double m = INFINITY;
    const double s = net.scale();
    net.domain().for_each_quad([&](QuadIndex q) { m = std::fmin(m, std::fabs(omega_quad(net, q)) / (s * s * s)); });
    return m;
}

/// Admissible nets whose every |Omega| stays 1000x above the degenerate threshold. The threshold
/// scales with max |coordinate|, which a linear map changes, so invariance checks need the margin.
inline ConormalNet random_robust_net(std::mt19937_64 &rng, int quads = 20) {
    for (;;) {
        auto net = random_admissible_net(rng, quads);
        if (min_relative_omega(net) > 1000 * kDegenerateMetricTol) return net;
    }
}

struct Point2 {
    double u, v;
};

inline double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const double dx = b.u - a.u, dy = b.v - a.v;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((p.u - a.u) * dx + (p.v - a.v) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.u - (a.u + t * dx), p.v - (a.v + t * dy));
}

/// Symmetric Hausdorff distance between two sets of segments, each segment
/// sampled at `per_segment` points when measuring distance to the other set.
inline double hausdorff(const std::vector<std::pair<Point2, Point2>> &A,
                        const std::vector<std::pair<Point2, Point2>> &B, int per_segment = 21) {
    auto directed = [&](const auto &from, const auto &to) {
        double worst = 0.0;
        for (const auto &[a, b] : from)
            for (int k = 0; k < per_segment; ++k) {
                const double t = double(k) / (per_segment - 1);
                const Point2 p{a.u + t * (b.u - a.u), a.v + t * (b.v - a.v)};
                double best = INFINITY;
                for (const auto &[c, d] : to) best = std::fmin(best, point_segment_distance(p, c, d));
                worst = std::fmax(worst, best);
            }
        return worst;
    };
    return std::fmax(directed(A, B), directed(B, A));
}

} // namespace diams::testing
