#pragma once

#include "errors.hpp"
#include "vec3.hpp"

#include <span>
#include <string>
#include <vector>

namespace diams {

/// Polygonal line sampled at consecutive integer indices offset, offset+1, ...
class PolyCurve {
public:
    PolyCurve(int offset, std::vector<Vec3> points, std::string name = "curve")
        : m_offset(offset), m_points(std::move(points)), m_name(std::move(name)) {
        if (m_points.size() < 3)
            throw Error(ErrorKind::ValidationError,
                        m_name + " needs at least 3 points, got " + std::to_string(m_points.size()));
        for (size_t i = 0; i < m_points.size(); ++i) {
            if (!is_finite(m_points[i]))
                throw Error(ErrorKind::ValidationError,
                            m_name + " point " + std::to_string(m_offset + int(i)) + " is not finite");
            if (i > 0 && m_points[i] == m_points[i - 1])
                throw Error(ErrorKind::ValidationError,
                            m_name + " points " + std::to_string(m_offset + int(i) - 1) + " and " +
                                std::to_string(m_offset + int(i)) + " coincide");
        }
    }

    int first_index() const { return m_offset; }
    int last_index() const { return m_offset + int(m_points.size()) - 1; }
    size_t size() const { return m_points.size(); }
    const std::string &name() const { return m_name; }
    std::span<const Vec3> points() const { return m_points; }

    bool contains(int i) const { return i >= first_index() && i <= last_index(); }

    const Vec3 &operator[](int i) const { return m_points[size_t(i - m_offset)]; }

    const Vec3 &at(int i) const {
        if (!contains(i))
            throw Error(ErrorKind::IndexOutOfDomain, m_name + " index " + std::to_string(i));
        return (*this)[i];
    }

    double max_abs_coord() const {
        double s = 0.0;
        for (const auto &p : m_points) s = std::fmax(s, diams::max_abs_coord(p));
        return s;
    }

private:
    int m_offset;
    std::vector<Vec3> m_points;
    std::string m_name;
};

/// Discrete derivative on the half-integer index lower + 1/2: c(lower+1) - c(lower).
inline Vec3 discrete_derivative(const PolyCurve &c, int lower) {
    if (!c.contains(lower) || !c.contains(lower + 1))
        throw Error(ErrorKind::IndexOutOfDomain,
                    c.name() + " derivative at " + std::to_string(lower) + ".5");
    return c[lower + 1] - c[lower];
}

} // namespace diams
