#pragma once

// Smooth indefinite affine minimal surfaces from a pair of parametric curves:
// the metric Omega, its zero set, the kernel slope lambda and swallowtail points.
// Used as a reference for the discrete singular set under refinement.

#include "conormal_net.hpp"
#include "orient.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace diams::smooth {

struct SmoothCurve {
    std::function<Vec3(double)> value;
    std::function<Vec3(double)> d1;
    std::function<Vec3(double)> d2;
};

struct Interval {
    double lo = -1.0, hi = 1.0;
    bool contains(double t) const { return t >= lo && t <= hi; }
};

struct SmoothCurvePair {
    std::string name;
    SmoothCurve alpha, beta;
    Interval u_range, v_range;
};

struct ParamPoint {
    double u = 0.0, v = 0.0;
};

struct ParamChain {
    std::vector<ParamPoint> points;
    bool closed = false;
};

// -- built-in catalogue -------------------------------------------------------

/// alpha(u) = (u,0,1), beta(v) = (0,v,0): Omega is identically 1.
inline SmoothCurvePair identity_pair() {
    return {"identity",
            {[](double u) { return Vec3{u, 0, 1}; }, [](double) { return Vec3{1, 0, 0}; },
             [](double) { return Vec3{0, 0, 0}; }},
            {[](double v) { return Vec3{0, v, 0}; }, [](double) { return Vec3{0, 1, 0}; },
             [](double) { return Vec3{0, 0, 0}; }},
            {-1, 1},
            {-1, 1}};
}

/// alpha(u) = (u,u^2,1), beta(v) = (v,-v^2+v^3,0): Omega = 3v^2 - 2v - 2u, one swallowtail at the origin.
inline SmoothCurvePair parabolic_pair() {
    return {"parabolic",
            {[](double u) { return Vec3{u, u * u, 1}; }, [](double u) { return Vec3{1, 2 * u, 0}; },
             [](double) { return Vec3{0, 2, 0}; }},
            {[](double v) { return Vec3{v, -v * v + v * v * v, 0}; },
             [](double v) { return Vec3{1, -2 * v + 3 * v * v, 0}; },
             [](double v) { return Vec3{0, -2 + 6 * v, 0}; }},
            {-1, 1},
            {-1, 1}};
}

/// alpha(u) = (u,u^2,1), beta(v) = (v,-v^2,0): lambda = dv/du = -1 along the whole singular line.
/// The u-range is shifted by an irrational amount so no lattice node of the
/// tracer lands on the singular line u = -v.
inline SmoothCurvePair symmetric_pair() {
    const double shift = 0.1 * std::sqrt(2.0);
    return {"symmetric",
            {[](double u) { return Vec3{u, u * u, 1}; }, [](double u) { return Vec3{1, 2 * u, 0}; },
             [](double) { return Vec3{0, 2, 0}; }},
            {[](double v) { return Vec3{v, -v * v, 0}; }, [](double v) { return Vec3{1, -2 * v, 0}; },
             [](double) { return Vec3{0, -2, 0}; }},
            {-1 + shift, 1 + shift},
            {-1, 1}};
}

inline std::optional<SmoothCurvePair> builtin_pair(const std::string &name) {
    if (name == "identity") return identity_pair();
    if (name == "parabolic") return parabolic_pair();
    if (name == "symmetric") return symmetric_pair();
    return std::nullopt;
}

inline std::vector<std::string> builtin_pair_names() { return {"identity", "parabolic", "symmetric"}; }

/// Largest relative mismatch between the derivative evaluators and central
/// differences of the evaluators one order below, over `samples` points per curve.
inline double derivative_consistency(const SmoothCurvePair &pair, int samples = 33,
                                     double step = 1e-5) {
    double worst = 0.0;
    auto check = [&](const SmoothCurve &c, Interval r) {
        for (int k = 0; k < samples; ++k) {
            const double t = r.lo + (r.hi - r.lo) * (k + 0.5) / samples;
            const Vec3 fd1 = (c.value(t + step) - c.value(t - step)) * (0.5 / step);
            const Vec3 fd2 = (c.d1(t + step) - c.d1(t - step)) * (0.5 / step);
            worst = std::fmax(worst, norm(fd1 - c.d1(t)) / std::fmax(1.0, norm(c.d1(t))));
            worst = std::fmax(worst, norm(fd2 - c.d2(t)) / std::fmax(1.0, norm(c.d2(t))));
        }
    };
    check(pair.alpha, pair.u_range);
    check(pair.beta, pair.v_range);
    return worst;
}

// -- metric and projected quantities -------------------------------------------

inline void require_in_range(const SmoothCurvePair &pair, double u, double v) {
    if (!pair.u_range.contains(u) || !pair.v_range.contains(v))
        throw Error(ErrorKind::OutOfRange,
                    "(" + std::to_string(u) + "," + std::to_string(v) + ") outside the parameter ranges");
}

/// Omega(u,v) = [alpha(u) - beta(v), alpha'(u), beta'(v)].
inline double omega_smooth(const SmoothCurvePair &pair, double u, double v) {
    require_in_range(pair, u, v);
    return triple(pair.alpha.value(u) - pair.beta.value(v), pair.alpha.d1(u), pair.beta.d1(v));
}

namespace detail {

inline Vec3 unit_conormal(const SmoothCurvePair &pair, double u, double v) {
    const Vec3 n = pair.alpha.value(u) - pair.beta.value(v);
    const double len = norm(n);
    if (len == 0.0) throw Error(ErrorKind::DegenerateGeometry, "curves intersect");
    return n * (1.0 / len);
}

/// Orthogonal projection onto the plane normal to unit n.
inline Vec3 project(const Vec3 &n, const Vec3 &x) { return x - n * dot(x, n); }

/// 2x2 determinant of Px, Py in the plane normal to unit n (oriented by n).
inline double det2(const Vec3 &n, const Vec3 &x, const Vec3 &y) { return triple(n, x, y); }

} // namespace detail

struct LambdaResult {
    double lambda = 0.0;
    double residual = 0.0; ///< |P alpha' + lambda P beta'|
};

/// Least-squares lambda with P alpha' + lambda P beta' = 0 in the plane transversal to nu.
inline LambdaResult lambda_along_curve(const SmoothCurvePair &pair, double u, double v) {
    require_in_range(pair, u, v);
    const Vec3 n = detail::unit_conormal(pair, u, v);
    const Vec3 pa = detail::project(n, pair.alpha.d1(u));
    const Vec3 pb = detail::project(n, pair.beta.d1(v));
    const double bb = dot(pb, pb);
    if (bb <= 1e-24 * std::fmax(1.0, dot(pair.beta.d1(v), pair.beta.d1(v))))
        throw Error(ErrorKind::DegenerateDirection,
                    "projected beta' vanishes at (" + std::to_string(u) + "," + std::to_string(v) + ")");
    const double lambda = -dot(pa, pb) / bb;
    return {lambda, norm(pa + pb * lambda)};
}

/// [P alpha', P alpha''] - lambda^3 [P beta', P beta''].
inline double curvature_gap(const SmoothCurvePair &pair, double u, double v) {
    const double lambda = lambda_along_curve(pair, u, v).lambda;
    const Vec3 n = detail::unit_conormal(pair, u, v);
    return detail::det2(n, pair.alpha.d1(u), pair.alpha.d2(u)) -
           lambda * lambda * lambda * detail::det2(n, pair.beta.d1(v), pair.beta.d2(v));
}

/// False iff P alpha' x P beta', P alpha'' x P beta' and P alpha' x P beta'' all vanish within tol.
inline bool check_regularity(const SmoothCurvePair &pair, double u, double v, double tol) {
    require_in_range(pair, u, v);
    const Vec3 n = detail::unit_conormal(pair, u, v);
    const double c1 = detail::det2(n, pair.alpha.d1(u), pair.beta.d1(v));
    const double c2 = detail::det2(n, pair.alpha.d2(u), pair.beta.d1(v));
    const double c3 = detail::det2(n, pair.alpha.d1(u), pair.beta.d2(v));
    return !(std::fabs(c1) <= tol && std::fabs(c2) <= tol && std::fabs(c3) <= tol);
}

// -- tracing the singular curve ------------------------------------------------

/// Marching-squares extraction of {Omega = 0} on a grid_n x grid_n lattice of cells.
/// Each crossing is linearly interpolated on its cell edge, then bisected until |Omega| <= tol.
inline std::vector<ParamChain> trace_singular_curve(const SmoothCurvePair &pair, int grid_n,
                                                    double tol) {
    if (grid_n < 16) throw Error(ErrorKind::ParameterOutOfRange, "grid_n must be at least 16");
    const int n = grid_n;
    const auto &ur = pair.u_range;
    const auto &vr = pair.v_range;
    auto u_at = [&](int i) { return i == n ? ur.hi : ur.lo + (ur.hi - ur.lo) * i / n; };
    auto v_at = [&](int j) { return j == n ? vr.hi : vr.lo + (vr.hi - vr.lo) * j / n; };

    std::vector<double> w(size_t(n + 1) * (n + 1));
    auto W = [&](int i, int j) -> double & { return w[size_t(i) * (n + 1) + j]; };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            W(i, j) = omega_smooth(pair, u_at(i), v_at(j));
            if (std::fabs(W(i, j)) <= tol)
                throw Error(ErrorKind::NonGenericCell,
                            "Omega vanishes at lattice node (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
        }

    // Crossing points keyed by lattice edge: (0, i, j) joins (i,j)-(i+1,j); (1, i, j) joins (i,j)-(i,j+1).
    using Key = std::tuple<int, int, int>;
    std::map<Key, int> ids;
    std::vector<ParamPoint> pts;
    auto refine = [&](ParamPoint a, double wa, ParamPoint b, double wb) {
        double t = wa / (wa - wb);
        auto at = [&](double s) { return ParamPoint{a.u + s * (b.u - a.u), a.v + s * (b.v - a.v)}; };
        double lo = 0.0, hi = 1.0;
        ParamPoint p = at(t);
        double wp = omega_smooth(pair, p.u, p.v);
        for (int it = 0; it < 200 && std::fabs(wp) > tol; ++it) {
            if ((wp < 0) == (wa < 0)) lo = t;
            else hi = t;
            t = 0.5 * (lo + hi);
            p = at(t);
            wp = omega_smooth(pair, p.u, p.v);
        }
        return p;
    };
    auto crossing = [&](int dir, int i, int j) -> std::optional<int> {
        const int i2 = dir == 0 ? i + 1 : i;
        const int j2 = dir == 0 ? j : j + 1;
        if ((W(i, j) < 0) == (W(i2, j2) < 0)) return std::nullopt;
        const Key k{dir, i, j};
        if (auto it = ids.find(k); it != ids.end()) return it->second;
        pts.push_back(refine({u_at(i), v_at(j)}, W(i, j), {u_at(i2), v_at(j2)}, W(i2, j2)));
        ids[k] = int(pts.size()) - 1;
        return int(pts.size()) - 1;
    };

    std::vector<std::vector<int>> adj;
    auto link = [&](int a, int b) {
        if (int(adj.size()) < int(pts.size())) adj.resize(pts.size());
        adj[a].push_back(b);
        adj[b].push_back(a);
    };

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto bottom = crossing(0, i, j);
            const auto top = crossing(0, i, j + 1);
            const auto left = crossing(1, i, j);
            const auto right = crossing(1, i + 1, j);
            std::vector<int> hits;
            for (const auto &c : {bottom, right, top, left})
                if (c) hits.push_back(*c);
            if (hits.size() == 2) {
                link(hits[0], hits[1]);
            } else if (hits.size() == 4) {
                const double centre = 0.25 * (W(i, j) + W(i + 1, j) + W(i, j + 1) + W(i + 1, j + 1));
                if ((centre < 0) == (W(i, j) < 0)) {
                    link(*bottom, *right); // isolate corner (i+1, j)
                    link(*left, *top);     // isolate corner (i, j+1)
                } else {
                    link(*bottom, *left);
                    link(*right, *top);
                }
            }
        }
    }
    adj.resize(pts.size());

    std::vector<ParamChain> chains;
    std::vector<bool> seen(pts.size(), false);
    auto walk = [&](int start) {
        ParamChain c;
        int prev = -1, cur = start;
        while (true) {
            seen[cur] = true;
            c.points.push_back(pts[cur]);
            int next = -1;
            for (int nb : adj[cur])
                if (nb != prev && !seen[nb]) {
                    next = nb;
                    break;
                }
            if (next < 0) {
                c.closed = adj[cur].size() == 2 &&
                           std::find(adj[cur].begin(), adj[cur].end(), start) != adj[cur].end() &&
                           c.points.size() > 2;
                break;
            }
            prev = cur;
            cur = next;
        }
        chains.push_back(std::move(c));
    };
    for (size_t k = 0; k < pts.size(); ++k)
        if (!seen[k] && adj[k].size() == 1) walk(int(k));
    for (size_t k = 0; k < pts.size(); ++k)
        if (!seen[k]) walk(int(k));
    return chains;
}

// -- swallowtail detection ------------------------------------------------------

enum class SmoothKind { CuspidalEdge, SwallowtailCandidate };

struct SmoothSingularPoint {
    double u = 0.0, v = 0.0;
    double lambda = 0.0;
    double dvdu = 0.0; ///< slope of the chain; infinite where the chain is vertical in u
    SmoothKind kind = SmoothKind::CuspidalEdge;
};

struct SwallowtailScan {
    std::vector<SmoothSingularPoint> points;     ///< every chain point, classified
    std::vector<SmoothSingularPoint> candidates; ///< one per isolated tangency
    std::vector<double> tangency;                ///< (dv - lambda du)/|(du,dv)| per chain point
    bool non_generic = false;                    ///< tangency vanishes along the whole chain
};

/// Swallowtail candidates are the points where the kernel direction (1, lambda)
/// becomes tangent to the chain. Tangency is measured as the normalized cross
/// product dv - lambda du of the chain tangent with (1, lambda), which changes
/// sign exactly where lambda - dv/du does, without a pole where du vanishes.
inline SwallowtailScan find_swallowtails(const SmoothCurvePair &pair, const ParamChain &chain,
                                         double flat_tol = 1e-6) {
    const auto &p = chain.points;
    const size_t m = p.size();
    if (m < 3) throw Error(ErrorKind::ParameterOutOfRange, "chain needs at least 3 points");

    SwallowtailScan scan;
    scan.points.resize(m);
    scan.tangency.resize(m);
    for (size_t k = 0; k < m; ++k) {
        size_t a = k == 0 ? (chain.closed ? m - 1 : 0) : k - 1;
        size_t b = k + 1 == m ? (chain.closed ? 0 : m - 1) : k + 1;
        const double du = p[b].u - p[a].u, dv = p[b].v - p[a].v;
        const double len = std::hypot(du, dv);
        const auto lam = lambda_along_curve(pair, p[k].u, p[k].v);
        scan.points[k] = {p[k].u, p[k].v, lam.lambda, du != 0.0 ? dv / du : INFINITY,
                          SmoothKind::CuspidalEdge};
        scan.tangency[k] = len > 0 ? (dv - lam.lambda * du) / len : 0.0;
    }

    double worst = 0.0;
    for (double g : scan.tangency) worst = std::fmax(worst, std::fabs(g));
    if (worst <= flat_tol) {
        scan.non_generic = true;
        return scan;
    }

    const size_t segs = chain.closed ? m : m - 1;
    for (size_t k = 0; k < segs; ++k) {
        const size_t k2 = (k + 1) % m;
        const double g0 = scan.tangency[k], g1 = scan.tangency[k2];
        if (!(g0 * g1 < 0.0)) continue;
        const double t = g0 / (g0 - g1);
        const auto &a = scan.points[k];
        const auto &b = scan.points[k2];
        SmoothSingularPoint c{a.u + t * (b.u - a.u), a.v + t * (b.v - a.v),
                              a.lambda + t * (b.lambda - a.lambda), 0.0,
                              SmoothKind::SwallowtailCandidate};
        c.dvdu = (b.u != a.u) ? (b.v - a.v) / (b.u - a.u) : INFINITY;
        scan.candidates.push_back(c);
    }
    return scan;
}

// -- discretization -------------------------------------------------------------

/// Samples both curves at parameters k*h inside their ranges.
inline ConormalNet discretize(const SmoothCurvePair &pair, double h) {
    if (!(h > 0)) throw Error(ErrorKind::ParameterOutOfRange, "sampling step must be positive");
    auto sample = [&](const SmoothCurve &c, Interval r, const std::string &name) {
        const int lo = int(std::ceil(r.lo / h - 1e-9));
        const int hi = int(std::floor(r.hi / h + 1e-9));
        std::vector<Vec3> pts;
        for (int k = lo; k <= hi; ++k) pts.push_back(c.value(k * h));
        return PolyCurve(lo, std::move(pts), name);
    };
    return ConormalNet(sample(pair.alpha, pair.u_range, "alpha"),
                       sample(pair.beta, pair.v_range, "beta"));
}

} // namespace diams::smooth
