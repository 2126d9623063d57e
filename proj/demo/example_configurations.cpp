// Classifies the central vertex of the four-quadrangle example for three
// choices of beta(-1), one per configuration.

#include <diams/diams.hpp>

#include <cstdio>

int main() {
    for (double y : {1.0, -0.5, -2.0}) {
        const auto net = diams::to_net(diams::example_curve_pair(y, 0.1, 0.1));
        const auto a = diams::analyze(net);
        std::printf("y = %g: %zu singular edges%s\n", y, a.edges.size(),
                    a.status == diams::AnalysisStatus::Ok ? "" : (" (" + a.message + ")").c_str());
        for (const auto &e : a.edges)
            std::printf("  edge %s  Omega %+.4f / %+.4f\n", diams::to_string(e.edge).c_str(),
                        e.omega_pair.first, e.omega_pair.second);
        for (const auto &sv : a.vertices) {
            if (sv.configuration == diams::Configuration::Boundary) continue;
            std::printf("  vertex %s: configuration %s, %s\n", diams::to_string(sv.vertex).c_str(),
                        diams::to_string(sv.configuration), diams::to_string(sv.kind));
        }
    }
}
