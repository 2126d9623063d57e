#pragma once

// Bilinear (hyperbolic paraboloid) interpolation of a net's quadrangles,
// tessellation, and Wavefront OBJ export.

#include "singularity.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace diams {

/// Corners in (u,v), (u+1,v), (u,v+1), (u+1,v+1) order.
struct BilinearPatch {
    std::array<Vec3, 4> corners;

    const Vec3 &c00() const { return corners[0]; }
    const Vec3 &c10() const { return corners[1]; }
    const Vec3 &c01() const { return corners[2]; }
    const Vec3 &c11() const { return corners[3]; }
};

inline BilinearPatch patch_of(const AsymptoticNet &f, QuadIndex q) {
    f.domain.require(q);
    return {{f.positions[{q.u, q.v}], f.positions[{q.u + 1, q.v}], f.positions[{q.u, q.v + 1}],
             f.positions[{q.u + 1, q.v + 1}]}};
}

inline Vec3 bilinear_point(const BilinearPatch &p, double s, double t) {
    if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0))
        throw Error(ErrorKind::ParameterOutOfRange,
                    "(s,t) = (" + std::to_string(s) + "," + std::to_string(t) + ")");
    return (1 - s) * (1 - t) * p.c00() + s * (1 - t) * p.c10() + (1 - s) * t * p.c01() +
           s * t * p.c11();
}

inline Vec3 bilinear_ds(const BilinearPatch &p, double t) {
    return (1 - t) * (p.c10() - p.c00()) + t * (p.c11() - p.c01());
}
inline Vec3 bilinear_dt(const BilinearPatch &p, double s) {
    return (1 - s) * (p.c01() - p.c00()) + s * (p.c11() - p.c10());
}

enum class PatchSide { S0, S1, T0, T1 };

/// Which side of each patch forms the common edge; both are traversed with
/// increasing free parameter.
struct SharedEdge {
    PatchSide first, second;

    static constexpr SharedEdge u_neighbor() { return {PatchSide::S1, PatchSide::S0}; }
    static constexpr SharedEdge v_neighbor() { return {PatchSide::T1, PatchSide::T0}; }
};

namespace detail {

inline std::pair<double, double> side_params(PatchSide side, double r) {
    switch (side) {
    case PatchSide::S0: return {0.0, r};
    case PatchSide::S1: return {1.0, r};
    case PatchSide::T0: return {r, 0.0};
    case PatchSide::T1: return {r, 1.0};
    }
    return {0.0, 0.0};
}

inline Vec3 patch_normal(const BilinearPatch &p, double s, double t) {
    return cross(bilinear_ds(p, t), bilinear_dt(p, s));
}

} // namespace detail

/// Largest angle (radians) between the tangent planes of the two patches over
/// `samples` points of their common edge.
inline double compatibility_residual(const BilinearPatch &p1, const BilinearPatch &p2,
                                     SharedEdge edge, int samples = 9) {
    if (samples < 2) throw Error(ErrorKind::ParameterOutOfRange, "need at least 2 edge samples");
    for (double r : {0.0, 1.0}) {
        const auto [s1, t1] = detail::side_params(edge.first, r);
        const auto [s2, t2] = detail::side_params(edge.second, r);
        if (bilinear_point(p1, s1, t1) != bilinear_point(p2, s2, t2))
            throw Error(ErrorKind::SharedEdgeMismatch, "patch corners differ on the shared edge");
    }
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double r = double(k) / (samples - 1);
        const auto [s1, t1] = detail::side_params(edge.first, r);
        const auto [s2, t2] = detail::side_params(edge.second, r);
        const Vec3 n1 = detail::patch_normal(p1, s1, t1);
        const Vec3 n2 = detail::patch_normal(p2, s2, t2);
        worst = std::fmax(worst, std::atan2(norm(cross(n1, n2)), std::fabs(dot(n1, n2))));
    }
    return worst;
}

struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> triangles; ///< 0-based
    std::vector<QuadIndex> quad_tags;          ///< one per triangle
    std::vector<std::vector<int>> polylines;   ///< 0-based vertex chains
};

inline constexpr double kDegenerateTriangleTol = 1e-14;

/// Samples each quadrangle's bilinear patch on a (subdiv+1)^2 lattice shared
/// along common edges, splits every lattice cell along its s+t diagonal, and
/// carries the singular chains through as lattice vertex chains.
inline TriangleMesh tessellate(const AsymptoticNet &f, int subdiv,
                               const std::vector<SingularPolyline> &singular = {}) {
    if (subdiv < 1) throw Error(ErrorKind::ParameterOutOfRange, "subdiv must be at least 1");
    const auto &d = f.domain;
    const int K = subdiv;
    const int nu = d.quad_count_u() * K + 1;
    const int nv = d.quad_count_v() * K + 1;
    auto index = [&](int i, int j) { return i * nv + j; };

    TriangleMesh mesh;
    mesh.vertices.resize(size_t(nu) * nv);
    double scale = 0.0;
    for (int i = 0; i < nu; ++i) {
        const int qi = std::min(i / K, d.quad_count_u() - 1);
        const double s = double(i - qi * K) / K;
        for (int j = 0; j < nv; ++j) {
            const int qj = std::min(j / K, d.quad_count_v() - 1);
            const double t = double(j - qj * K) / K;
            const auto patch = patch_of(f, {d.u_min + qi, d.v_min + qj});
            mesh.vertices[index(i, j)] = bilinear_point(patch, s, t);
            scale = std::fmax(scale, max_abs_coord(mesh.vertices[index(i, j)]));
        }
    }

    const double min_area = kDegenerateTriangleTol * scale * scale;
    auto emit = [&](int a, int b, int c, QuadIndex q) {
        const Vec3 n = cross(mesh.vertices[b] - mesh.vertices[a], mesh.vertices[c] - mesh.vertices[a]);
        if (0.5 * norm(n) <= min_area) return;
        mesh.triangles.push_back({a, b, c});
        mesh.quad_tags.push_back(q);
    };
    d.for_each_quad([&](QuadIndex q) {
        const int i0 = (q.u - d.u_min) * K, j0 = (q.v - d.v_min) * K;
        for (int a = 0; a < K; ++a)
            for (int b = 0; b < K; ++b) {
                const int v00 = index(i0 + a, j0 + b), v10 = index(i0 + a + 1, j0 + b);
                const int v01 = index(i0 + a, j0 + b + 1), v11 = index(i0 + a + 1, j0 + b + 1);
                emit(v00, v10, v01, q);
                emit(v10, v11, v01, q);
            }
    });

    auto lattice = [&](VertexIndex p) { return std::pair{(p.u - d.u_min) * K, (p.v - d.v_min) * K}; };
    for (const auto &pl : singular) {
        std::vector<int> chain;
        const size_t n = pl.vertices.size();
        const size_t steps = pl.closed ? n : n - 1;
        for (size_t k = 0; k < steps; ++k) {
            const auto [ia, ja] = lattice(pl.vertices[k]);
            const auto [ib, jb] = lattice(pl.vertices[(k + 1) % n]);
            for (int r = 0; r < K; ++r)
                chain.push_back(index(ia + (ib - ia) / K * r, ja + (jb - ja) / K * r));
        }
        const auto [il, jl] = lattice(pl.closed ? pl.vertices.front() : pl.vertices.back());
        chain.push_back(index(il, jl));
        mesh.polylines.push_back(std::move(chain));
    }
    return mesh;
}

inline std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// "v x y z" lines, one "g quad_<2u+1>_<2v+1>" group per quadrangle followed by
/// its 1-based "f" lines, then one "l" record per singular chain.
inline void write_obj(const TriangleMesh &mesh, std::ostream &os) {
    os << "# discrete affine minimal surface\n";
    for (const auto &v : mesh.vertices)
        os << "v " << format_real(v.x) << ' ' << format_real(v.y) << ' ' << format_real(v.z) << '\n';
    std::optional<QuadIndex> group;
    for (size_t k = 0; k < mesh.triangles.size(); ++k) {
        if (!group || *group != mesh.quad_tags[k]) {
            group = mesh.quad_tags[k];
            const auto key = doubled_key(*group);
            os << "g quad_" << key[0] << '_' << key[1] << '\n';
        }
        const auto &t = mesh.triangles[k];
        os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    }
    if (!mesh.polylines.empty()) os << "g singular\n";
    for (const auto &pl : mesh.polylines) {
        os << 'l';
        for (int i : pl) os << ' ' << i + 1;
        os << '\n';
    }
}

inline void export_obj(const TriangleMesh &mesh, const std::string &path) {
    std::ostringstream ss;
    write_obj(mesh, ss);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoFailure, "cannot open " + path + " for writing");
    out << ss.str();
    if (!out) throw Error(ErrorKind::IoFailure, "write to " + path + " failed");
}

} // namespace diams
