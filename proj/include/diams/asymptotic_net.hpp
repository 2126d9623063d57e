#pragma once

// Discrete Lelieuvre integration: f_u = nu x nu_u, f_v = -nu x nu_v.

#include "conormal_net.hpp"

#include <algorithm>
#include <cmath>

namespace diams {

struct AsymptoticNet {
    GridDomain domain;
    VertexGrid<Vec3> positions;
    VertexIndex base_vertex;
    Vec3 base_point;

    const Vec3 &f(VertexIndex p) const { return positions.at(p); }
    const Vec3 &f(int u, int v) const { return positions.at({u, v}); }

    /// f(second endpoint) - f(first endpoint)
    Vec3 edge_vector(EdgeIndex e) const {
        domain.require(e);
        return positions[e.second()] - positions[e.first()];
    }

    /// Position differences from the vertex to its neighbours, order u+, u-, v+, v-.
    std::array<Vec3, 4> star(VertexIndex p) const {
        domain.require_interior(p);
        const Vec3 c = positions[p];
        return {positions[{p.u + 1, p.v}] - c, positions[{p.u - 1, p.v}] - c,
                positions[{p.u, p.v + 1}] - c, positions[{p.u, p.v - 1}] - c};
    }
};

/// Lelieuvre edge vector on an edge, computed from the co-normal at its first endpoint.
inline Vec3 lelieuvre_edge(const ConormalNet &net, EdgeIndex e) {
    net.domain().require(e);
    const Vec3 n = net.nu(e.first());
    const Vec3 dn = net.nu_along(e);
    return e.axis == Axis::U ? cross(n, dn) : -cross(n, dn);
}

enum class IntegrationOrder { UFirst, VFirst };

namespace detail {

// Extended-precision copy of a vector; differences of doubles are exact in it for
// the coordinate ranges met here, so nu = alpha - beta keeps the exact Moutard structure.
struct WideVec {
    long double x = 0, y = 0, z = 0;

    WideVec() = default;
    WideVec(long double a, long double b, long double c) : x(a), y(b), z(c) {}
    explicit WideVec(const Vec3 &v) : x(v.x), y(v.y), z(v.z) {}

    WideVec operator+(const WideVec &o) const { return {x + o.x, y + o.y, z + o.z}; }
    WideVec operator-(const WideVec &o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 narrow() const { return {double(x), double(y), double(z)}; }
};

inline WideVec wide_cross(const WideVec &a, const WideVec &b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline WideVec wide_nu(const ConormalNet &net, int u, int v) {
    return WideVec(net.alpha()[u]) - WideVec(net.beta()[v]);
}

/// Lelieuvre edge from the first endpoint to the second, in extended precision.
inline WideVec wide_lelieuvre_edge(const ConormalNet &net, EdgeIndex e) {
    const VertexIndex a = e.first(), b = e.second();
    const WideVec n = wide_nu(net, a.u, a.v);
    const WideVec dn = wide_nu(net, b.u, b.v) - n;
    const WideVec c = wide_cross(n, dn);
    return e.axis == Axis::U ? c : WideVec{} - c;
}

} // namespace detail

/// Positions are accumulated in extended precision and rounded once, so the
/// structural identities survive to within a few ulps of the coordinates.
inline AsymptoticNet integrate_net(const ConormalNet &net, VertexIndex base_vertex,
                                   Vec3 base_point = {},
                                   IntegrationOrder order = IntegrationOrder::UFirst) {
    using detail::WideVec;
    using detail::wide_lelieuvre_edge;
    const auto &d = net.domain();
    d.require(base_vertex);
    VertexGrid<WideVec> f(d);
    f[base_vertex] = WideVec(base_point);

    auto step_u = [&](int v, int from, int to) {
        for (int u = from + 1; u <= to; ++u)
            f[{u, v}] = f[{u - 1, v}] + wide_lelieuvre_edge(net, {Axis::U, u - 1, v});
        for (int u = from - 1; u >= d.u_min; --u)
            f[{u, v}] = f[{u + 1, v}] - wide_lelieuvre_edge(net, {Axis::U, u, v});
    };
    auto step_v = [&](int u, int from, int to) {
        for (int v = from + 1; v <= to; ++v)
            f[{u, v}] = f[{u, v - 1}] + wide_lelieuvre_edge(net, {Axis::V, u, v - 1});
        for (int v = from - 1; v >= d.v_min; --v)
            f[{u, v}] = f[{u, v + 1}] - wide_lelieuvre_edge(net, {Axis::V, u, v});
    };

    if (order == IntegrationOrder::UFirst) {
        step_u(base_vertex.v, base_vertex.u, d.u_max);
        for (int u = d.u_min; u <= d.u_max; ++u) step_v(u, base_vertex.v, d.v_max);
    } else {
        step_v(base_vertex.u, base_vertex.v, d.v_max);
        for (int v = d.v_min; v <= d.v_max; ++v) step_u(v, base_vertex.u, d.u_max);
    }

    AsymptoticNet out{d, VertexGrid<Vec3>(d), base_vertex, base_point};
    d.for_each_vertex([&](VertexIndex p) { out.positions[p] = f[p].narrow(); });
    return out;
}

/// Default base: f(u_min, v_min) = origin.
inline AsymptoticNet integrate_net(const ConormalNet &net) {
    return integrate_net(net, {net.domain().u_min, net.domain().v_min});
}

/// f_u(u+1/2,v) + f_v(u+1,v+1/2) - f_u(u+1/2,v+1) - f_v(u,v+1/2) from Lelieuvre edges.
inline Vec3 quad_closure_residual(const ConormalNet &net, QuadIndex q) {
    net.domain().require(q);
    return lelieuvre_edge(net, {Axis::U, q.u, q.v}) + lelieuvre_edge(net, {Axis::V, q.u + 1, q.v}) -
           lelieuvre_edge(net, {Axis::U, q.u, q.v + 1}) - lelieuvre_edge(net, {Axis::V, q.u, q.v});
}

/// max |nu(p) . e| over the four star edges e of an interior vertex.
inline double star_planarity_residual(const AsymptoticNet &f, const ConormalNet &net,
                                      VertexIndex p) {
    const auto star = f.star(p);
    const Vec3 n = net.nu(p);
    double r = 0.0;
    for (const auto &e : star) r = std::max(r, std::fabs(dot(n, e)));
    return r;
}

} // namespace diams
