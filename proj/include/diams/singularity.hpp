#pragma once

// Discrete Blaschke metric, singular edges and vertices, and the
// cuspidal-edge / swallowtail classification of singular vertices.

#include "asymptotic_net.hpp"
#include "orient.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace diams {

/// Relative (scale^3-weighted) threshold below which a quadrangle's metric is degenerate.
inline constexpr double kDegenerateMetricTol = 1e-9;

/// Omega(u+1/2, v+1/2) = [alpha(u) - beta(v), alpha'(u+1/2), beta'(v+1/2)].
inline double omega_quad(const ConormalNet &net, QuadIndex q) {
    net.domain().require(q);
    return triple(net.nu(q.u, q.v), net.alpha_prime(q.u), net.beta_prime(q.v));
}

/// M = [f_u(u+1/2,v), f_v(u,v+1/2), f_uv(u+1/2,v+1/2)] from vertex positions.
inline double m_from_positions(const AsymptoticNet &f, QuadIndex q) {
    f.domain.require(q);
    const Vec3 &f00 = f.positions[{q.u, q.v}];
    const Vec3 &f10 = f.positions[{q.u + 1, q.v}];
    const Vec3 &f01 = f.positions[{q.u, q.v + 1}];
    const Vec3 &f11 = f.positions[{q.u + 1, q.v + 1}];
    // [a, b, f11 + f00 - f10 - f01] = [a, b, f11 - f00]; the tetrahedron form in extended
    // precision keeps the cancellation near the singular curve small
    using L = long double;
    const L a[3] = {L(f10.x) - f00.x, L(f10.y) - f00.y, L(f10.z) - f00.z};
    const L b[3] = {L(f01.x) - f00.x, L(f01.y) - f00.y, L(f01.z) - f00.z};
    const L c[3] = {L(f11.x) - f00.x, L(f11.y) - f00.y, L(f11.z) - f00.z};
    return double(a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                  a[2] * (b[0] * c[1] - b[1] * c[0]));
}

struct MetricField {
    QuadGrid<double> omega;
    double scale = 1.0;

    const GridDomain &domain() const { return omega.domain(); }
    double operator[](QuadIndex q) const { return omega.at(q); }
};

inline double degenerate_threshold(double scale, double eps) { return eps * scale * scale * scale; }

/// Quadrangles whose |Omega| is at most eps * scale^3.
inline std::vector<QuadIndex> degenerate_quads(const ConormalNet &net,
                                               double eps = kDegenerateMetricTol) {
    std::vector<QuadIndex> out;
    const double thr = degenerate_threshold(net.scale(), eps);
    net.domain().for_each_quad([&](QuadIndex q) {
        if (std::fabs(omega_quad(net, q)) <= thr) out.push_back(q);
    });
    return out;
}

inline MetricField compute_metric(const ConormalNet &net, double eps = kDegenerateMetricTol) {
    MetricField m{QuadGrid<double>(net.domain()), net.scale()};
    const double thr = degenerate_threshold(net.scale(), eps);
    net.domain().for_each_quad([&](QuadIndex q) {
        const double w = omega_quad(net, q);
        if (std::fabs(w) <= thr)
            throw Error(ErrorKind::DegenerateMetric, "Omega vanishes on quad " + to_string(q));
        m.omega[q] = w;
    });
    return m;
}

struct SingularEdge {
    EdgeIndex edge;
    /// Omega on the two adjacent quads, ordered as GridDomain::adjacent_quads.
    std::pair<double, double> omega_pair;
};

/// Interior edges across which Omega changes sign.
inline std::vector<SingularEdge> singular_edges(const MetricField &metric) {
    std::vector<SingularEdge> out;
    const auto &d = metric.domain();
    d.for_each_interior_edge([&](EdgeIndex e) {
        const auto [q0, q1] = d.adjacent_quads(e);
        const double w0 = metric.omega[q0], w1 = metric.omega[q1];
        if (w0 * w1 < 0.0) out.push_back({e, {w0, w1}});
    });
    std::sort(out.begin(), out.end(),
              [](const SingularEdge &a, const SingularEdge &b) { return a.edge < b.edge; });
    return out;
}

/// Projection-free half-plane test: an edge is singular iff the two curve
/// directions meeting it give opposite orientations together with the third.
inline bool halfplane_edge_test(const ConormalNet &net, EdgeIndex e, double tol = kDefaultSignTol) {
    const auto &d = net.domain();
    if (!d.is_interior(e)) throw Error(ErrorKind::IndexOutOfDomain, "edge " + to_string(e) + " is not interior");
    const Vec3 n0 = net.nu(e.first());
    const std::string ctx = "half-plane test at edge " + to_string(e);
    if (e.axis == Axis::V) {
        const Vec3 b = net.beta_prime(e.v);
        return orient_strict(n0, net.alpha_prime(e.u), b, tol, ctx) !=
               orient_strict(n0, net.alpha_prime(e.u - 1), b, tol, ctx);
    }
    const Vec3 a = net.alpha_prime(e.u);
    return orient_strict(n0, a, net.beta_prime(e.v), tol, ctx) !=
           orient_strict(n0, a, net.beta_prime(e.v - 1), tol, ctx);
}

enum class Configuration { Pending, A, B, C, Boundary, Inadmissible };
enum class SingularityKind { Unclassified, CuspidalEdge, Swallowtail };

inline const char *to_string(Configuration c) {
    switch (c) {
    case Configuration::Pending: return "Pending";
    case Configuration::A: return "A";
    case Configuration::B: return "B";
    case Configuration::C: return "C";
    case Configuration::Boundary: return "Boundary";
    case Configuration::Inadmissible: return "Inadmissible";
    }
    return "?";
}

inline const char *to_string(SingularityKind k) {
    switch (k) {
    case SingularityKind::Unclassified: return "Unclassified";
    case SingularityKind::CuspidalEdge: return "CuspidalEdge";
    case SingularityKind::Swallowtail: return "Swallowtail";
    }
    return "?";
}

using QuadrantSignature = std::pair<Sign, Sign>;

struct VertexDiagnostics {
    std::optional<EdgeIndex> base_edge;
    std::optional<QuadrantSignature> forward_signature;
    std::optional<QuadrantSignature> backward_signature;
    std::optional<bool> alpha_beta_crossing;           ///< P alpha vs P beta
    std::optional<bool> alpha_reflected_beta_crossing; ///< P alpha vs R P beta
    std::optional<bool> star_same_side;
    /// u- and v-edges traversed in opposite directions along the chain
    /// (only defined when one u-edge and one v-edge meet).
    std::optional<bool> opposite_traversal;
};

struct SingularVertex {
    VertexIndex vertex;
    std::vector<EdgeIndex> incident_singular_edges;
    Configuration configuration = Configuration::Pending;
    SingularityKind kind = SingularityKind::Unclassified;
    VertexDiagnostics diagnostics;
};

/// One record per vertex touching a singular edge. Boundary vertices are
/// labelled Boundary; interior vertices without exactly two edges, Inadmissible.
inline std::vector<SingularVertex> singular_vertices(const std::vector<SingularEdge> &edges,
                                                     const GridDomain &domain) {
    std::map<VertexIndex, std::vector<EdgeIndex>> incident;
    for (const auto &se : edges) {
        incident[se.edge.first()].push_back(se.edge);
        incident[se.edge.second()].push_back(se.edge);
    }
    std::vector<SingularVertex> out;
    out.reserve(incident.size());
    for (auto &[p, es] : incident) {
        SingularVertex sv{p, std::move(es), Configuration::Pending, SingularityKind::Unclassified, {}};
        std::sort(sv.incident_singular_edges.begin(), sv.incident_singular_edges.end());
        if (!domain.is_interior(p))
            sv.configuration = Configuration::Boundary;
        else if (sv.incident_singular_edges.size() != 2)
            sv.configuration = Configuration::Inadmissible;
        out.push_back(std::move(sv));
    }
    return out;
}

namespace detail {

/// Directions at a vertex in the transversal plane: the rays towards the
/// projected neighbours of alpha(u0) and beta(v0), which project to the origin.
struct VertexRays {
    Vec3 n;          ///< nu(u0, v0)
    Vec3 alpha_next; ///< towards P alpha(u0+1):  alpha'(u0+1/2)
    Vec3 alpha_prev; ///< towards P alpha(u0-1): -alpha'(u0-1/2)
    Vec3 beta_next;  ///< towards P beta(v0+1):   beta'(v0+1/2)
    Vec3 beta_prev;  ///< towards P beta(v0-1):  -beta'(v0-1/2)
};

inline VertexRays vertex_rays(const ConormalNet &net, VertexIndex p) {
    return {net.nu(p), net.alpha_prime(p.u), -net.alpha_prime(p.u - 1), net.beta_prime(p.v),
            -net.beta_prime(p.v - 1)};
}

/// Quadrant frame for a base singular edge: two lines through the origin and
/// the rays towards the far end of the base edge's curve (forward) and the
/// opposite neighbour on the same curve (backward).
struct QuadrantFrame {
    Vec3 line1, line2, forward, backward;
};

inline QuadrantFrame quadrant_frame(const VertexRays &r, VertexIndex p, EdgeIndex base) {
    if (!base.touches(p))
        throw Error(ErrorKind::IndexOutOfDomain,
                    "edge " + to_string(base) + " is not incident to " + to_string(p));
    if (base.axis == Axis::V) {
        const bool up = base.v == p.v;
        return {r.alpha_next, r.alpha_prev, up ? r.beta_next : r.beta_prev,
                up ? r.beta_prev : r.beta_next};
    }
    const bool right = base.u == p.u;
    return {r.beta_next, r.beta_prev, right ? r.alpha_next : r.alpha_prev,
            right ? r.alpha_prev : r.alpha_next};
}

inline QuadrantSignature signature(const Vec3 &n, const QuadrantFrame &fr, const Vec3 &x,
                                   double tol, const std::string &ctx) {
    return {orient_strict(n, fr.line1, x, tol, ctx), orient_strict(n, fr.line2, x, tol, ctx)};
}

} // namespace detail

/// Base singular edge used for quadrant labelling: a singular v-edge if one
/// exists (v+1/2 side first), else the singular u-edge with the larger Omega contrast.
inline EdgeIndex choose_base_edge(const ConormalNet &net, const SingularVertex &sv) {
    if (sv.incident_singular_edges.empty())
        throw Error(ErrorKind::InadmissibleVertex, "vertex " + to_string(sv.vertex) + " has no singular edge");
    const VertexIndex p = sv.vertex;
    const auto has = [&](EdgeIndex e) {
        return std::find(sv.incident_singular_edges.begin(), sv.incident_singular_edges.end(), e) !=
               sv.incident_singular_edges.end();
    };
    if (has({Axis::V, p.u, p.v})) return {Axis::V, p.u, p.v};
    if (has({Axis::V, p.u, p.v - 1})) return {Axis::V, p.u, p.v - 1};
    const auto contrast = [&](EdgeIndex e) {
        const auto [q0, q1] = net.domain().adjacent_quads(e);
        return std::fabs(omega_quad(net, q1) - omega_quad(net, q0));
    };
    std::optional<EdgeIndex> best;
    for (const auto &e : sv.incident_singular_edges)
        if (e.axis == Axis::U && (!best || contrast(e) > contrast(*best))) best = e;
    return *best;
}

/// False iff the backward ray sits in the quadrant of the forward ray
/// (the forbidden configuration) for the given base singular edge.
inline bool admissibility_check(const ConormalNet &net, VertexIndex p, EdgeIndex base,
                                double tol = kDefaultSignTol) {
    net.domain().require_interior(p);
    const auto rays = detail::vertex_rays(net, p);
    const auto fr = detail::quadrant_frame(rays, p, base);
    const std::string ctx = "quadrant signature at vertex " + to_string(p);
    return detail::signature(rays.n, fr, fr.backward, tol, ctx) !=
           detail::signature(rays.n, fr, fr.forward, tol, ctx);
}

inline bool admissibility_check(const ConormalNet &net, const SingularVertex &sv,
                                double tol = kDefaultSignTol) {
    return admissibility_check(net, sv.vertex, choose_base_edge(net, sv), tol);
}

namespace detail {

inline int star_slot(VertexIndex p, EdgeIndex e) {
    if (e.axis == Axis::U) return e.u == p.u ? 0 : 1;
    return e.v == p.v ? 2 : 3;
}

} // namespace detail

/// Whether both singular star edges lie on the same side of each line spanned
/// by a non-singular star edge (in the star plane, normal nu(u0,v0)).
inline bool star_sidedness_test(const AsymptoticNet &f, const ConormalNet &net,
                                const SingularVertex &sv, double tol = kDefaultSignTol) {
    const VertexIndex p = sv.vertex;
    if (!net.domain().is_interior(p))
        throw Error(ErrorKind::BoundaryVertex, "vertex " + to_string(p));
    if (sv.incident_singular_edges.size() != 2)
        throw Error(ErrorKind::InadmissibleVertex,
                    "vertex " + to_string(p) + " has " +
                        std::to_string(sv.incident_singular_edges.size()) + " singular edges");
    const auto star = f.star(p);
    const Vec3 n = net.nu(p);
    std::array<bool, 4> singular{};
    for (const auto &e : sv.incident_singular_edges) singular[detail::star_slot(p, e)] = true;
    std::vector<Vec3> sing, other;
    for (int k = 0; k < 4; ++k) (singular[k] ? sing : other).push_back(star[k]);
    if (sing.size() != 2)
        throw Error(ErrorKind::InadmissibleVertex, "vertex " + to_string(p) + " has repeated star edges");
    const std::string ctx = "star sidedness at vertex " + to_string(p);
    for (const auto &d : other) {
        if (orient_strict(n, d, sing[0], tol, ctx) != orient_strict(n, d, sing[1], tol, ctx))
            return false;
    }
    return true;
}

/// Classification against an explicit base singular edge.
inline SingularVertex classify_vertex_with_base(const ConormalNet &net, const AsymptoticNet &f,
                                                SingularVertex sv, EdgeIndex base,
                                                double tol = kDefaultSignTol) {
    const VertexIndex p = sv.vertex;
    if (!net.domain().is_interior(p)) {
        sv.configuration = Configuration::Boundary;
        sv.kind = SingularityKind::Unclassified;
        return sv;
    }
    if (sv.incident_singular_edges.size() != 2)
        throw Error(ErrorKind::InadmissibleVertex,
                    "vertex " + to_string(p) + " has " +
                        std::to_string(sv.incident_singular_edges.size()) + " singular edges");

    const auto r = detail::vertex_rays(net, p);
    const auto fr = detail::quadrant_frame(r, p, base);
    const std::string ctx = "classification at vertex " + to_string(p);
    const auto fwd = detail::signature(r.n, fr, fr.forward, tol, ctx);
    const auto back = detail::signature(r.n, fr, fr.backward, tol, ctx);
    if (fwd == back)
        throw Error(ErrorKind::InadmissibleVertex, "forbidden configuration at vertex " + to_string(p));

    auto &dg = sv.diagnostics;
    dg.base_edge = base;
    dg.forward_signature = fwd;
    dg.backward_signature = back;
    dg.alpha_beta_crossing =
        ray_crossing_test(r.n, r.alpha_prev, r.alpha_next, r.beta_prev, r.beta_next, tol);
    dg.alpha_reflected_beta_crossing =
        ray_crossing_test(r.n, r.alpha_prev, r.alpha_next, -r.beta_prev, -r.beta_next, tol);
    dg.star_same_side = star_sidedness_test(f, net, sv, tol);

    const auto &es = sv.incident_singular_edges;
    if (es[0].axis != es[1].axis) {
        const EdgeIndex eu = es[0].axis == Axis::U ? es[0] : es[1];
        const EdgeIndex ev = es[0].axis == Axis::V ? es[0] : es[1];
        const int du = p.u - eu.other(p).u; // arriving along the u-edge
        const int dv = ev.other(p).v - p.v; // leaving along the v-edge
        dg.opposite_traversal = du * dv < 0;
    }

    if (back == QuadrantSignature{-fwd.first, -fwd.second})
        sv.configuration = Configuration::A;
    else
        sv.configuration = *dg.alpha_beta_crossing ? Configuration::B : Configuration::C;
    sv.kind = *dg.alpha_reflected_beta_crossing ? SingularityKind::Swallowtail
                                                : SingularityKind::CuspidalEdge;
    return sv;
}

inline SingularVertex classify_vertex(const ConormalNet &net, const AsymptoticNet &f,
                                      SingularVertex sv, double tol = kDefaultSignTol) {
    if (!net.domain().is_interior(sv.vertex)) return classify_vertex_with_base(net, f, sv, {}, tol);
    const EdgeIndex base = choose_base_edge(net, sv);
    return classify_vertex_with_base(net, f, std::move(sv), base, tol);
}

struct SingularPolyline {
    std::vector<VertexIndex> vertices;
    std::vector<EdgeIndex> edges; ///< edges[i] joins vertices[i] and vertices[i+1] (cyclically if closed)
    bool closed = false;
};

/// Partitions the singular edges into maximal chains. Open chains start at the
/// lexicographically smallest endpoint; loops start at their smallest vertex.
inline std::vector<SingularPolyline> extract_polylines(const std::vector<SingularVertex> &vertices,
                                                       const std::vector<SingularEdge> &edges,
                                                       const GridDomain &domain) {
    for (const auto &sv : vertices)
        if (sv.configuration == Configuration::Inadmissible)
            throw Error(ErrorKind::InadmissibleVertex, "vertex " + to_string(sv.vertex));

    std::map<VertexIndex, std::vector<EdgeIndex>> incident;
    for (const auto &se : edges) {
        incident[se.edge.first()].push_back(se.edge);
        incident[se.edge.second()].push_back(se.edge);
    }
    for (const auto &[p, es] : incident)
        if (domain.is_interior(p) && es.size() != 2)
            throw Error(ErrorKind::InadmissibleVertex,
                        "vertex " + to_string(p) + " has " + std::to_string(es.size()) +
                            " singular edges");

    std::set<EdgeIndex> used;
    auto next_edge = [&](VertexIndex p) -> std::optional<EdgeIndex> {
        for (const auto &e : incident[p])
            if (!used.count(e)) return e;
        return std::nullopt;
    };
    auto walk = [&](VertexIndex start, SingularPolyline &pl) {
        VertexIndex cur = start;
        pl.vertices.push_back(cur);
        while (auto e = next_edge(cur)) {
            used.insert(*e);
            pl.edges.push_back(*e);
            cur = e->other(cur);
            if (cur == start) {
                pl.closed = true;
                break;
            }
            pl.vertices.push_back(cur);
        }
    };

    std::vector<SingularPolyline> out;
    for (const auto &[p, es] : incident) {
        if (es.size() == 1 && !used.count(es.front())) {
            SingularPolyline pl;
            walk(p, pl);
            out.push_back(std::move(pl));
        }
    }
    for (const auto &[p, es] : incident) {
        if (next_edge(p)) {
            SingularPolyline pl;
            walk(p, pl);
            out.push_back(std::move(pl));
        }
    }
    return out;
}

} // namespace diams
