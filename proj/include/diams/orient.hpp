#pragma once

// Sign predicates in the plane transversal to a direction n.
//
// orient(n, x, y) is the sign of [n, x, y]; it equals the orientation of the
// projections Px, Py along n onto any plane transversal to n, so no projection
// plane is ever constructed.

#include "errors.hpp"
#include "vec3.hpp"

#include <cmath>
#include <string>

namespace diams {

/// Default relative threshold for sign predicates.
inline constexpr double kDefaultSignTol = 1e-9;

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

constexpr Sign operator-(Sign s) { return Sign(-int(s)); }

inline const char *to_string(Sign s) {
    return s == Sign::Positive ? "+" : (s == Sign::Negative ? "-" : "0");
}

/// Sign of [n, x, y]; Zero when |[n,x,y]| <= tol * |n| |x| |y|.
inline Sign orient(const Vec3 &n, const Vec3 &x, const Vec3 &y, double tol = kDefaultSignTol) {
    const double d = triple(n, x, y);
    if (std::fabs(d) <= tol * norm(n) * norm(x) * norm(y)) return Sign::Zero;
    return d > 0 ? Sign::Positive : Sign::Negative;
}

inline Sign orient_strict(const Vec3 &n, const Vec3 &x, const Vec3 &y, double tol,
                          const std::string &context) {
    const Sign s = orient(n, x, y, tol);
    if (s == Sign::Zero) throw Error(ErrorKind::DegenerateOrientation, context);
    return s;
}

/// Whether Px and Py point the same way, for x, y parallel modulo n.
inline bool same_direction_mod(const Vec3 &n, const Vec3 &x, const Vec3 &y) {
    return dot(cross(n, x), cross(n, y)) > 0.0;
}

/// Whether ray x lies strictly inside the counter-clockwise sector swept from r1 to r2.
inline bool in_ccw_sector(const Vec3 &n, const Vec3 &r1, const Vec3 &r2, const Vec3 &x,
                          double tol = kDefaultSignTol) {
    const Sign s1x = orient_strict(n, r1, x, tol, "ray lies on a sector boundary");
    const Sign sx2 = orient_strict(n, x, r2, tol, "ray lies on a sector boundary");
    switch (orient(n, r1, r2, tol)) {
    case Sign::Positive: return s1x == Sign::Positive && sx2 == Sign::Positive;
    case Sign::Negative: return s1x == Sign::Positive || sx2 == Sign::Positive;
    case Sign::Zero:
        if (same_direction_mod(n, r1, r2))
            throw Error(ErrorKind::DegenerateOrientation, "sector rays coincide");
        return s1x == Sign::Positive; // half-plane
    }
    return false;
}

/// Local crossing test for two polylines through the origin of the transversal
/// plane: polyline p has rays p_in, p_out and polyline q has rays q_in, q_out.
/// They cross iff the q rays fall on different sides of p, i.e. exactly one of
/// them is inside the sector from p_in to p_out.
inline bool ray_crossing_test(const Vec3 &n, const Vec3 &p_in, const Vec3 &p_out,
                              const Vec3 &q_in, const Vec3 &q_out, double tol = kDefaultSignTol) {
    return in_ccw_sector(n, p_in, p_out, q_in, tol) != in_ccw_sector(n, p_in, p_out, q_out, tol);
}

} // namespace diams
