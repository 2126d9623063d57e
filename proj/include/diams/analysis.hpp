#pragma once

#include "singularity.hpp"

#include <string>
#include <vector>

namespace diams {

struct AnalysisOptions {
    double sign_tol = kDefaultSignTol;            ///< sign predicates and generic position
    double degenerate_tol = kDegenerateMetricTol; ///< |Omega| <= tol * scale^3 is degenerate
};

enum class AnalysisStatus {
    Ok,
    ValidationFailed, ///< generic position or admissibility violated
    Degenerate,       ///< degenerate metric or orientation
};

struct Analysis {
    AsymptoticNet f;
    std::optional<MetricField> metric;
    std::vector<QuadIndex> degenerate_quads;
    std::vector<GenericPositionViolation> generic_position;
    std::vector<VertexIndex> admissibility;
    std::vector<SingularEdge> edges;
    std::vector<SingularVertex> vertices;
    std::vector<SingularPolyline> polylines;
    AnalysisStatus status = AnalysisStatus::Ok;
    std::string message;
};

/// Full pipeline: integrate, compute the metric, find and classify the singular set.
inline Analysis analyze(const ConormalNet &net, const AnalysisOptions &opt = {}) {
    Analysis a{integrate_net(net), std::nullopt, {}, {}, {}, {}, {}, {}, AnalysisStatus::Ok, {}};
    a.generic_position = validate_generic_position(net, opt.sign_tol);
    a.degenerate_quads = degenerate_quads(net, opt.degenerate_tol);
    if (!a.degenerate_quads.empty()) {
        a.status = AnalysisStatus::Degenerate;
        a.message = "Omega vanishes on quad " + to_string(a.degenerate_quads.front());
        return a;
    }
    a.metric = compute_metric(net, opt.degenerate_tol);
    a.edges = singular_edges(*a.metric);
    a.vertices = singular_vertices(a.edges, net.domain());

    try {
        for (auto &sv : a.vertices) {
            if (sv.configuration == Configuration::Boundary) continue;
            if (sv.configuration == Configuration::Inadmissible ||
                !admissibility_check(net, sv, opt.sign_tol)) {
                sv.configuration = Configuration::Inadmissible;
                a.admissibility.push_back(sv.vertex);
                continue;
            }
            sv = classify_vertex(net, a.f, std::move(sv), opt.sign_tol);
        }
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::DegenerateOrientation) throw;
        a.status = AnalysisStatus::Degenerate;
        a.message = e.what();
        return a;
    }

    if (!a.admissibility.empty()) {
        a.status = AnalysisStatus::ValidationFailed;
        a.message = "forbidden configuration at vertex " + to_string(a.admissibility.front());
        return a;
    }
    a.polylines = extract_polylines(a.vertices, a.edges, net.domain());
    if (!a.generic_position.empty()) {
        const auto &g = a.generic_position.front();
        a.status = AnalysisStatus::ValidationFailed;
        a.message = "planes through " + std::string(to_string(g.first)) + " and " +
                    to_string(g.second) + " coincide at vertex " + to_string(g.vertex);
    }
    return a;
}

} // namespace diams
