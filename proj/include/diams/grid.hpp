#pragma once

// Integer encodings for vertices, edges and quadrangles of a rectangular net.
// Half-integer positions are never stored: an edge (u+1/2, v) is {Axis::U, u, v},
// an edge (u, v+1/2) is {Axis::V, u, v}, and a quadrangle (u+1/2, v+1/2) is {u, v}.

#include "errors.hpp"

#include <array>
#include <compare>
#include <string>
#include <vector>

namespace diams {

struct VertexIndex {
    int u = 0, v = 0;
    friend constexpr auto operator<=>(const VertexIndex &, const VertexIndex &) = default;
};

struct QuadIndex {
    int u = 0, v = 0; ///< lower-left vertex
    friend constexpr auto operator<=>(const QuadIndex &, const QuadIndex &) = default;
};

enum class Axis { U, V };

struct EdgeIndex {
    Axis axis = Axis::U;
    int u = 0, v = 0; ///< lower endpoint
    friend constexpr auto operator<=>(const EdgeIndex &, const EdgeIndex &) = default;

    constexpr VertexIndex first() const { return {u, v}; }
    constexpr VertexIndex second() const {
        return axis == Axis::U ? VertexIndex{u + 1, v} : VertexIndex{u, v + 1};
    }
    constexpr bool touches(VertexIndex p) const { return first() == p || second() == p; }
    constexpr VertexIndex other(VertexIndex p) const { return first() == p ? second() : first(); }
};

/// Doubled-integer key shared by all grid objects: vertex (u,v) -> [2u,2v],
/// u-edge -> [2u+1,2v], v-edge -> [2u,2v+1], quad -> [2u+1,2v+1].
constexpr std::array<int, 2> doubled_key(VertexIndex p) { return {2 * p.u, 2 * p.v}; }
constexpr std::array<int, 2> doubled_key(QuadIndex q) { return {2 * q.u + 1, 2 * q.v + 1}; }
constexpr std::array<int, 2> doubled_key(EdgeIndex e) {
    return e.axis == Axis::U ? std::array<int, 2>{2 * e.u + 1, 2 * e.v}
                             : std::array<int, 2>{2 * e.u, 2 * e.v + 1};
}

inline std::string format_half(int twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    const int mag = twice < 0 ? -twice : twice;
    return (twice < 0 ? "-" : "") + std::to_string(mag / 2) + ".5";
}

inline std::string to_string(VertexIndex p) {
    return "(" + std::to_string(p.u) + "," + std::to_string(p.v) + ")";
}
inline std::string to_string(QuadIndex q) {
    auto k = doubled_key(q);
    return "(" + format_half(k[0]) + "," + format_half(k[1]) + ")";
}
inline std::string to_string(EdgeIndex e) {
    auto k = doubled_key(e);
    return "(" + format_half(k[0]) + "," + format_half(k[1]) + ")";
}

struct GridDomain {
    int u_min = 0, u_max = 1, v_min = 0, v_max = 1;

    GridDomain() = default;
    GridDomain(int u0, int u1, int v0, int v1) : u_min(u0), u_max(u1), v_min(v0), v_max(v1) {
        if (u_max < u_min + 1 || v_max < v_min + 1)
            throw Error(ErrorKind::ValidationError, "grid domain needs at least one quadrangle");
    }

    friend bool operator==(const GridDomain &, const GridDomain &) = default;

    int vertex_count_u() const { return u_max - u_min + 1; }
    int vertex_count_v() const { return v_max - v_min + 1; }
    int quad_count_u() const { return u_max - u_min; }
    int quad_count_v() const { return v_max - v_min; }

    bool contains(VertexIndex p) const {
        return p.u >= u_min && p.u <= u_max && p.v >= v_min && p.v <= v_max;
    }
    bool contains(QuadIndex q) const {
        return q.u >= u_min && q.u < u_max && q.v >= v_min && q.v < v_max;
    }
    bool contains(EdgeIndex e) const { return contains(e.first()) && contains(e.second()); }

    bool is_interior(VertexIndex p) const {
        return p.u > u_min && p.u < u_max && p.v > v_min && p.v < v_max;
    }
    /// An edge is interior when quadrangles exist on both of its sides.
    bool is_interior(EdgeIndex e) const {
        if (!contains(e)) return false;
        return e.axis == Axis::U ? (e.v > v_min && e.v < v_max) : (e.u > u_min && e.u < u_max);
    }

    /// The two quadrangles adjacent to an interior edge, ordered by increasing
    /// transverse coordinate (u-edges: v-1/2 then v+1/2; v-edges: u-1/2 then u+1/2).
    std::array<QuadIndex, 2> adjacent_quads(EdgeIndex e) const {
        if (e.axis == Axis::U) return {QuadIndex{e.u, e.v - 1}, QuadIndex{e.u, e.v}};
        return {QuadIndex{e.u - 1, e.v}, QuadIndex{e.u, e.v}};
    }

    /// The four star edges of a vertex in the order u+, u-, v+, v-.
    static std::array<EdgeIndex, 4> star_edges(VertexIndex p) {
        return {EdgeIndex{Axis::U, p.u, p.v}, EdgeIndex{Axis::U, p.u - 1, p.v},
                EdgeIndex{Axis::V, p.u, p.v}, EdgeIndex{Axis::V, p.u, p.v - 1}};
    }

    template <class F> void for_each_vertex(F &&f) const {
        for (int u = u_min; u <= u_max; ++u)
            for (int v = v_min; v <= v_max; ++v) f(VertexIndex{u, v});
    }
    template <class F> void for_each_quad(F &&f) const {
        for (int u = u_min; u < u_max; ++u)
            for (int v = v_min; v < v_max; ++v) f(QuadIndex{u, v});
    }
    /// Interior edges in deterministic order: all u-edges, then all v-edges.
    template <class F> void for_each_interior_edge(F &&f) const {
        for (int u = u_min; u < u_max; ++u)
            for (int v = v_min + 1; v < v_max; ++v) f(EdgeIndex{Axis::U, u, v});
        for (int u = u_min + 1; u < u_max; ++u)
            for (int v = v_min; v < v_max; ++v) f(EdgeIndex{Axis::V, u, v});
    }

    void require(VertexIndex p) const {
        if (!contains(p)) throw Error(ErrorKind::IndexOutOfDomain, "vertex " + to_string(p));
    }
    void require(QuadIndex q) const {
        if (!contains(q)) throw Error(ErrorKind::IndexOutOfDomain, "quad " + to_string(q));
    }
    void require(EdgeIndex e) const {
        if (!contains(e)) throw Error(ErrorKind::IndexOutOfDomain, "edge " + to_string(e));
    }
    void require_interior(VertexIndex p) const {
        require(p);
        if (!is_interior(p)) throw Error(ErrorKind::BoundaryVertex, "vertex " + to_string(p));
    }
};

/// Dense per-vertex storage over a GridDomain, row-major in u.
template <class T> class VertexGrid {
public:
    VertexGrid() = default;
    VertexGrid(GridDomain d, T init = T{})
        : m_domain(d), m_data(static_cast<size_t>(d.vertex_count_u()) * d.vertex_count_v(), init) {}

    const GridDomain &domain() const { return m_domain; }

    const T &operator[](VertexIndex p) const { return m_data[offset(p)]; }
    T &operator[](VertexIndex p) { return m_data[offset(p)]; }

    const T &at(VertexIndex p) const {
        m_domain.require(p);
        return (*this)[p];
    }

private:
    size_t offset(VertexIndex p) const {
        return static_cast<size_t>(p.u - m_domain.u_min) * m_domain.vertex_count_v() +
               static_cast<size_t>(p.v - m_domain.v_min);
    }

    GridDomain m_domain;
    std::vector<T> m_data;
};

/// Dense per-quadrangle storage over a GridDomain.
template <class T> class QuadGrid {
public:
    QuadGrid() = default;
    QuadGrid(GridDomain d, T init = T{})
        : m_domain(d), m_data(static_cast<size_t>(d.quad_count_u()) * d.quad_count_v(), init) {}

    const GridDomain &domain() const { return m_domain; }

    const T &operator[](QuadIndex q) const { return m_data[offset(q)]; }
    T &operator[](QuadIndex q) { return m_data[offset(q)]; }

    const T &at(QuadIndex q) const {
        m_domain.require(q);
        return (*this)[q];
    }

private:
    size_t offset(QuadIndex q) const {
        return static_cast<size_t>(q.u - m_domain.u_min) * m_domain.quad_count_v() +
               static_cast<size_t>(q.v - m_domain.v_min);
    }

    GridDomain m_domain;
    std::vector<T> m_data;
};

} // namespace diams
