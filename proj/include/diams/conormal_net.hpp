#pragma once

// The co-normal field nu(u,v) = alpha(u) - beta(v) of a discrete affine minimal
// surface, plus the structural checks that make a curve pair admissible input.

#include "grid.hpp"
#include "poly_curve.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace diams {

/// Relative threshold below which |nu| counts as the curves intersecting.
inline constexpr double kConormalVanishTol = 1e-12;

class ConormalNet {
public:
    ConormalNet(PolyCurve alpha, PolyCurve beta)
        : m_alpha(std::move(alpha)), m_beta(std::move(beta)),
          m_domain(m_alpha.first_index(), m_alpha.last_index(), m_beta.first_index(),
                   m_beta.last_index()),
          m_scale(std::max(m_alpha.max_abs_coord(), m_beta.max_abs_coord())) {
        m_domain.for_each_vertex([&](VertexIndex p) {
            if (norm(nu(p)) < kConormalVanishTol * m_scale)
                throw Error(ErrorKind::DegenerateGeometry,
                            "co-normal vanishes at vertex " + to_string(p) + " (curves intersect)");
        });
    }

    const PolyCurve &alpha() const { return m_alpha; }
    const PolyCurve &beta() const { return m_beta; }
    const GridDomain &domain() const { return m_domain; }

    /// Characteristic length: largest absolute coordinate over both curves.
    double scale() const { return m_scale; }

    Vec3 nu(VertexIndex p) const { return m_alpha[p.u] - m_beta[p.v]; }
    Vec3 nu(int u, int v) const { return nu(VertexIndex{u, v}); }

    /// alpha'(u + 1/2)
    Vec3 alpha_prime(int u) const { return discrete_derivative(m_alpha, u); }
    /// beta'(v + 1/2)
    Vec3 beta_prime(int v) const { return discrete_derivative(m_beta, v); }

    /// Discrete derivative of nu along an edge: alpha'(u+1/2) on u-edges, -beta'(v+1/2) on v-edges.
    Vec3 nu_along(EdgeIndex e) const { return nu(e.second()) - nu(e.first()); }

private:
    PolyCurve m_alpha;
    PolyCurve m_beta;
    GridDomain m_domain;
    double m_scale;
};

inline Vec3 conormal(const ConormalNet &net, int u, int v) {
    net.domain().require(VertexIndex{u, v});
    return net.nu(u, v);
}

/// Materialized nu grid; also the input format for hand-built co-normal fields.
inline VertexGrid<Vec3> conormal_grid(const ConormalNet &net) {
    VertexGrid<Vec3> g(net.domain());
    net.domain().for_each_vertex([&](VertexIndex p) { g[p] = net.nu(p); });
    return g;
}

/// nu(u+1,v+1) + nu(u,v) - nu(u,v+1) - nu(u+1,v) for an arbitrary co-normal field.
inline Vec3 moutard_residual(const VertexGrid<Vec3> &nu, QuadIndex q) {
    nu.domain().require(q);
    return nu[{q.u + 1, q.v + 1}] + nu[{q.u, q.v}] - nu[{q.u, q.v + 1}] - nu[{q.u + 1, q.v}];
}

inline Vec3 moutard_residual(const ConormalNet &net, QuadIndex q) {
    net.domain().require(q);
    return net.nu(q.u + 1, q.v + 1) + net.nu(q.u, q.v) - net.nu(q.u, q.v + 1) -
           net.nu(q.u + 1, q.v);
}

enum class NeighborPlane { AlphaNext, AlphaPrev, BetaNext, BetaPrev };

inline const char *to_string(NeighborPlane p) {
    switch (p) {
    case NeighborPlane::AlphaNext: return "alpha(u+1)";
    case NeighborPlane::AlphaPrev: return "alpha(u-1)";
    case NeighborPlane::BetaNext: return "beta(v+1)";
    case NeighborPlane::BetaPrev: return "beta(v-1)";
    }
    return "?";
}

struct GenericPositionViolation {
    VertexIndex vertex;
    NeighborPlane first;
    NeighborPlane second;
    friend bool operator==(const GenericPositionViolation &, const GenericPositionViolation &) = default;
};

/// For every vertex with all four neighbours, the line through alpha(u) and beta(v)
/// together with each neighbouring curve point spans a plane; coincident planes
/// (normals parallel within tol, relative) are reported. An empty result means
/// the pair is in generic position.
inline std::vector<GenericPositionViolation> validate_generic_position(const ConormalNet &net,
                                                                       double tol) {
    std::vector<GenericPositionViolation> out;
    const auto &d = net.domain();
    for (int u = d.u_min + 1; u < d.u_max; ++u) {
        for (int v = d.v_min + 1; v < d.v_max; ++v) {
            const Vec3 a = net.alpha()[u];
            const Vec3 b = net.beta()[v];
            const Vec3 line = a - b;
            const std::array<Vec3, 4> pts = {net.alpha()[u + 1], net.alpha()[u - 1],
                                             net.beta()[v + 1], net.beta()[v - 1]};
            std::array<Vec3, 4> normals;
            for (int k = 0; k < 4; ++k) normals[k] = cross(line, pts[k] - b);
            for (int i = 0; i < 4; ++i) {
                for (int j = i + 1; j < 4; ++j) {
                    const double c = norm(cross(normals[i], normals[j]));
                    if (c <= tol * norm(normals[i]) * norm(normals[j]))
                        out.push_back({{u, v}, NeighborPlane(i), NeighborPlane(j)});
                }
            }
        }
    }
    return out;
}

} // namespace diams
