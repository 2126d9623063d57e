#pragma once

// Curve-pair files and analysis reports (JSON).

#include "analysis.hpp"
#include "smooth_oracle.hpp"
#include "surface_mesh.hpp"

#include <json.hpp>

#include <cmath>
#include <map>
#include <optional>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace diams {

using Json = nlohmann::json;

// -- deterministic serialization ----------------------------------------------

namespace detail {

inline void write_string(const std::string &s, std::string &out) {
    out += Json(s).dump();
}

inline void write_json(const Json &j, std::string &out, int indent, int depth) {
    const std::string pad(size_t(indent) * (depth + 1), ' ');
    const std::string close_pad(size_t(indent) * depth, ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) { // std::map: keys sorted
            if (!first) out += ",\n";
            first = false;
            out += pad;
            write_string(it.key(), out);
            out += ": ";
            write_json(it.value(), out, indent, depth + 1);
        }
        out += "\n" + close_pad + "}";
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // arrays of scalars stay on one line
        const bool flat = std::all_of(j.begin(), j.end(), [](const Json &e) { return e.is_primitive(); });
        if (flat) {
            out += "[";
            for (size_t k = 0; k < j.size(); ++k) {
                if (k) out += ", ";
                write_json(j[k], out, indent, depth + 1);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (size_t k = 0; k < j.size(); ++k) {
            if (k) out += ",\n";
            out += pad;
            write_json(j[k], out, indent, depth + 1);
        }
        out += "\n" + close_pad + "]";
        return;
    }
    case Json::value_t::number_float: {
        const double x = j.get<double>();
        out += std::isfinite(x) ? format_real(x) : "null";
        return;
    }
    default: out += j.dump(); return;
    }
}

} // namespace detail

/// Sorted keys, two-space indent, reals with 17 significant digits.
inline std::string to_deterministic_json(const Json &j) {
    std::string out;
    detail::write_json(j, out, 2, 0);
    out += '\n';
    return out;
}

// -- curve pair files ------------------------------------------------------------

struct CurvePairFile {
    int alpha_offset = 0;
    int beta_offset = 0;
    std::vector<Vec3> alpha;
    std::vector<Vec3> beta;

    friend bool operator==(const CurvePairFile &, const CurvePairFile &) = default;
};

namespace detail {

inline std::vector<Vec3> parse_points(const Json &j, const char *key, int offset) {
    if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing \"") + key + "\"");
    const Json &arr = j.at(key);
    if (!arr.is_array()) throw Error(ErrorKind::ParseError, std::string("\"") + key + "\" must be an array");
    std::vector<Vec3> pts;
    for (size_t k = 0; k < arr.size(); ++k) {
        const Json &p = arr[k];
        const std::string where = std::string(key) + " index " + std::to_string(offset + int(k));
        if (!p.is_array() || p.size() != 3)
            throw Error(ErrorKind::ParseError, where + ": expected [x, y, z]");
        std::array<double, 3> c{};
        for (int i = 0; i < 3; ++i) {
            if (!p[i].is_number()) throw Error(ErrorKind::ParseError, where + ": non-numeric coordinate");
            c[i] = p[i].get<double>();
            if (!std::isfinite(c[i]))
                throw Error(ErrorKind::ValidationError, where + ": non-finite coordinate");
        }
        pts.push_back({c[0], c[1], c[2]});
    }
    if (pts.size() < 3)
        throw Error(ErrorKind::ValidationError,
                    std::string(key) + " needs at least 3 points, got " + std::to_string(pts.size()));
    for (size_t k = 1; k < pts.size(); ++k)
        if (pts[k] == pts[k - 1])
            throw Error(ErrorKind::ValidationError,
                        std::string(key) + " index " + std::to_string(offset + int(k)) +
                            " repeats the previous point");
    return pts;
}

inline int parse_offset(const Json &j, const char *key) {
    if (!j.contains(key)) return 0;
    const Json &o = j.at(key);
    if (!o.is_number_integer()) throw Error(ErrorKind::ParseError, std::string("\"") + key + "\" must be an integer");
    return o.get<int>();
}

} // namespace detail

namespace detail {

/// DOM builder that remembers the top-level key and the element counts of the
/// open arrays, so a number overflow can be reported as "<key> index <i>".
class LocatingSax {
  public:
    explicit LocatingSax(Json &root) : m_dom(root, false) {}

    bool null() { return scalar() && m_dom.null(); }
    bool boolean(bool b) { return scalar() && m_dom.boolean(b); }
    bool number_integer(Json::number_integer_t x) {
        if (m_counts.size() == 1) m_offsets[m_key] = int(x);
        return scalar() && m_dom.number_integer(x);
    }
    bool number_unsigned(Json::number_unsigned_t x) {
        if (m_counts.size() == 1) m_offsets[m_key] = int(x);
        return scalar() && m_dom.number_unsigned(x);
    }
    bool number_float(Json::number_float_t x, const Json::string_t &s) { return scalar() && m_dom.number_float(x, s); }
    bool string(Json::string_t &s) { return scalar() && m_dom.string(s); }
    bool binary(Json::binary_t &b) { return scalar() && m_dom.binary(b); }
    bool start_object(std::size_t n) {
        scalar();
        m_counts.push_back(-1);
        return m_dom.start_object(n);
    }
    bool key(Json::string_t &k) {
        if (m_counts.size() == 1) m_key = k;
        return m_dom.key(k);
    }
    bool end_object() {
        m_counts.pop_back();
        return m_dom.end_object();
    }
    bool start_array(std::size_t n) {
        scalar();
        m_counts.push_back(0);
        return m_dom.start_array(n);
    }
    bool end_array() {
        m_counts.pop_back();
        return m_dom.end_array();
    }
    template <class Exception>
    bool parse_error(std::size_t pos, const std::string &tok, const Exception &ex) {
        m_error = ex.what();
        m_overflow = ex.id == 406;
        if (m_overflow && m_counts.size() >= 2 && m_counts[1] > 0) m_point = m_counts[1] - 1;
        return m_dom.parse_error(pos, tok, ex);
    }

    bool failed() const { return !m_error.empty(); }
    bool overflow() const { return m_overflow; }
    const std::string &error() const { return m_error; }
    const std::string &top_key() const { return m_key; }
    std::optional<int> point() const { return m_point; }
    int offset_of(const std::string &key) const {
        const auto it = m_offsets.find(key + "_offset");
        return it == m_offsets.end() ? 0 : it->second;
    }

  private:
    bool scalar() {
        if (!m_counts.empty() && m_counts.back() >= 0) ++m_counts.back();
        return true;
    }

    nlohmann::detail::json_sax_dom_parser<Json> m_dom;
    std::vector<int> m_counts; ///< element count per open array, -1 for objects
    std::string m_key, m_error;
    bool m_overflow = false;
    std::optional<int> m_point;
    std::map<std::string, int> m_offsets;
};

} // namespace detail

/// {"alpha_offset": int, "alpha": [[x,y,z],...], "beta_offset": int, "beta": [[x,y,z],...]}
inline CurvePairFile parse_curves(std::string_view bytes) {
    Json j;
    detail::LocatingSax sax(j);
    Json::sax_parse(bytes.begin(), bytes.end(), &sax, nlohmann::detail::input_format_t::json, true);
    if (sax.failed()) {
        if (sax.overflow()) {
            std::string where = sax.top_key().empty() ? "input" : sax.top_key();
            if (sax.point() && (where == "alpha" || where == "beta"))
                where += " index " + std::to_string(sax.offset_of(where) + *sax.point());
            throw Error(ErrorKind::ValidationError, where + ": non-finite coordinate");
        }
        throw Error(ErrorKind::ParseError, sax.error());
    }
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "top level must be an object");
    CurvePairFile f;
    f.alpha_offset = detail::parse_offset(j, "alpha_offset");
    f.beta_offset = detail::parse_offset(j, "beta_offset");
    f.alpha = detail::parse_points(j, "alpha", f.alpha_offset);
    f.beta = detail::parse_points(j, "beta", f.beta_offset);
    return f;
}

inline std::string write_curves(const CurvePairFile &f) {
    auto pts = [](const std::vector<Vec3> &v) {
        Json a = Json::array();
        for (const auto &p : v) a.push_back({p.x, p.y, p.z});
        return a;
    };
    Json j = {{"alpha_offset", f.alpha_offset},
              {"alpha", pts(f.alpha)},
              {"beta_offset", f.beta_offset},
              {"beta", pts(f.beta)}};
    return to_deterministic_json(j);
}

inline ConormalNet to_net(const CurvePairFile &f) {
    return ConormalNet(PolyCurve(f.alpha_offset, f.alpha, "alpha"), PolyCurve(f.beta_offset, f.beta, "beta"));
}

inline CurvePairFile from_net(const ConormalNet &net) {
    auto pts = [](const PolyCurve &c) { return std::vector<Vec3>(c.points().begin(), c.points().end()); };
    return {net.alpha().first_index(), net.beta().first_index(), pts(net.alpha()), pts(net.beta())};
}

/// The four-quadrangle example: alpha and beta sampled at -1, 0, 1 with a free
/// y-coordinate on beta(-1) that selects the singular configuration.
inline CurvePairFile example_curve_pair(double y, double du = 0.1, double dv = 0.1) {
    const Vec3 a0{0, 0, 1};
    return {-1,
            -1,
            {a0 + Vec3{-1, -1, 1} * du, a0, a0 + Vec3{1, 0, 0} * du},
            {Vec3{-1, y, 0} * dv, Vec3{0, 0, 0}, Vec3{2, 1, 0} * dv}};
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoFailure, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string &path, const std::string &bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoFailure, "cannot open " + path + " for writing");
    out << bytes;
    if (!out) throw Error(ErrorKind::IoFailure, "write to " + path + " failed");
}

// -- reports -----------------------------------------------------------------------

namespace detail {

inline Json key_json(std::array<int, 2> k) { return Json::array({k[0], k[1]}); }
inline Json vertex_json(VertexIndex p) { return Json::array({p.u, p.v}); }

inline Json optional_bool(const std::optional<bool> &b) { return b ? Json(*b) : Json(nullptr); }

inline Json signature_json(const std::optional<QuadrantSignature> &s) {
    if (!s) return nullptr;
    return Json::array({to_string(s->first), to_string(s->second)});
}

inline const char *status_name(AnalysisStatus s) {
    switch (s) {
    case AnalysisStatus::Ok: return "ok";
    case AnalysisStatus::ValidationFailed: return "validation_failed";
    case AnalysisStatus::Degenerate: return "degenerate";
    }
    return "?";
}

} // namespace detail

/// Report of a discrete analysis; every grid object is keyed in the doubled-integer space.
inline Json build_report(const ConormalNet &net, const Analysis &a, const AnalysisOptions &opt) {
    using detail::key_json;
    using detail::vertex_json;
    const auto &d = net.domain();

    Json omega = Json::array();
    if (a.metric)
        d.for_each_quad([&](QuadIndex q) {
            omega.push_back({{"quad", key_json(doubled_key(q))}, {"value", (*a.metric)[q]}});
        });

    Json edges = Json::array();
    for (const auto &se : a.edges)
        edges.push_back({{"axis", se.edge.axis == Axis::U ? "u" : "v"},
                         {"base_vertex", vertex_json(se.edge.first())},
                         {"key", key_json(doubled_key(se.edge))},
                         {"omega_pair", Json::array({se.omega_pair.first, se.omega_pair.second})}});

    Json vertices = Json::array();
    for (const auto &sv : a.vertices) {
        Json inc = Json::array();
        for (const auto &e : sv.incident_singular_edges) inc.push_back(key_json(doubled_key(e)));
        const auto &dg = sv.diagnostics;
        Json diag = {
            {"base_edge", dg.base_edge ? key_json(doubled_key(*dg.base_edge)) : Json(nullptr)},
            {"forward_signature", detail::signature_json(dg.forward_signature)},
            {"backward_signature", detail::signature_json(dg.backward_signature)},
            {"alpha_beta_crossing", detail::optional_bool(dg.alpha_beta_crossing)},
            {"alpha_reflected_beta_crossing", detail::optional_bool(dg.alpha_reflected_beta_crossing)},
            {"star_same_side", detail::optional_bool(dg.star_same_side)},
            {"opposite_traversal", detail::optional_bool(dg.opposite_traversal)},
        };
        vertices.push_back({{"vertex", vertex_json(sv.vertex)},
                            {"configuration", to_string(sv.configuration)},
                            {"kind", to_string(sv.kind)},
                            {"incident_edges", inc},
                            {"diagnostics", diag}});
    }

    Json polylines = Json::array();
    for (const auto &pl : a.polylines) {
        Json vs = Json::array(), es = Json::array();
        for (const auto &p : pl.vertices) vs.push_back(vertex_json(p));
        for (const auto &e : pl.edges) es.push_back(key_json(doubled_key(e)));
        polylines.push_back({{"closed", pl.closed}, {"vertices", vs}, {"edges", es}});
    }

    Json generic = Json::array();
    for (const auto &g : a.generic_position)
        generic.push_back({{"vertex", vertex_json(g.vertex)},
                           {"planes", Json::array({to_string(g.first), to_string(g.second)})}});
    Json admiss = Json::array();
    for (const auto &p : a.admissibility) admiss.push_back({{"vertex", vertex_json(p)}});
    Json degen = Json::array();
    for (const auto &q : a.degenerate_quads) degen.push_back(key_json(doubled_key(q)));

    return {{"smooth", false},
            {"status", detail::status_name(a.status)},
            {"message", a.message},
            {"domain", {{"u", Json::array({d.u_min, d.u_max})}, {"v", Json::array({d.v_min, d.v_max})}}},
            {"scale", net.scale()},
            {"omega", omega},
            {"singular_edges", edges},
            {"vertices", vertices},
            {"polylines", polylines},
            {"validations",
             {{"generic_position", generic}, {"admissibility", admiss}, {"degenerate_quads", degen}}},
            {"tolerances", {{"sign", opt.sign_tol}, {"degenerate_metric", opt.degenerate_tol}}}};
}

inline std::string write_report(const Json &report) { return to_deterministic_json(report); }

/// Oracle report in the same layout, marked "smooth": true.
inline Json build_oracle_report(const smooth::SmoothCurvePair &pair, int grid_n, double tol) {
    const auto chains = smooth::trace_singular_curve(pair, grid_n, tol);
    Json polylines = Json::array(), vertices = Json::array(), non_generic = Json::array(),
         irregular = Json::array();
    for (size_t c = 0; c < chains.size(); ++c) {
        Json pts = Json::array();
        for (const auto &p : chains[c].points) {
            pts.push_back(Json::array({p.u, p.v}));
            if (!smooth::check_regularity(pair, p.u, p.v, tol))
                irregular.push_back(Json::array({p.u, p.v}));
        }
        polylines.push_back({{"closed", chains[c].closed}, {"points", pts}});
        if (chains[c].points.size() < 3) continue;
        const auto scan = smooth::find_swallowtails(pair, chains[c]);
        if (scan.non_generic) non_generic.push_back(c);
        for (const auto &s : scan.candidates)
            vertices.push_back({{"param", Json::array({s.u, s.v})},
                                {"kind", "SwallowtailCandidate"},
                                {"lambda", s.lambda},
                                {"dvdu", std::isfinite(s.dvdu) ? Json(s.dvdu) : Json(nullptr)},
                                {"curvature_gap", smooth::curvature_gap(pair, s.u, s.v)}});
    }
    return {{"smooth", true},
            {"status", "ok"},
            {"pair", pair.name},
            {"grid", grid_n},
            {"omega", Json::array()},
            {"singular_edges", Json::array()},
            {"vertices", vertices},
            {"polylines", polylines},
            {"validations", {{"non_generic_chains", non_generic}, {"irregular_points", irregular}}},
            {"tolerances", {{"trace", tol}}}};
}

} // namespace diams
