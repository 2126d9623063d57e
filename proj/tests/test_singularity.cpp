#include "support/test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace diams;
using diams::testing::det3_rows;
using diams::testing::example_net;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const EdgeIndex kUp{Axis::V, 0, 0};     // (0, 1/2)
const EdgeIndex kDown{Axis::V, 0, -1};  // (0, -1/2)
const EdgeIndex kRight{Axis::U, 0, 0};  // (1/2, 0)
const EdgeIndex kLeft{Axis::U, -1, 0};  // (-1/2, 0)

std::set<EdgeIndex> edge_set(const std::vector<SingularEdge> &edges) {
    std::set<EdgeIndex> s;
    for (const auto &e : edges) s.insert(e.edge);
    return s;
}

// beta(-1) moved into the quadrant of beta(1): four singular edges meet at (0,0)
ConormalNet forbidden_net() {
    auto c = example_curve_pair(1.0);
    c.beta[0] = {0.1, 0.02, 0};
    return to_net(c);
}

const SingularVertex &center(const Analysis &a) {
    auto it = std::find_if(a.vertices.begin(), a.vertices.end(),
                           [](const SingularVertex &s) { return s.vertex == VertexIndex{0, 0}; });
    REQUIRE(it != a.vertices.end());
    return *it;
}

Vec3 at_deg(double deg) {
    const double r = deg * M_PI / 180.0;
    return {std::cos(r), std::sin(r), 0.0};
}

} // namespace

TEST_CASE("discrete metric on the worked example", "[omega]") {
    for (double y : {1.0, -0.5, -2.0}) {
        CAPTURE(y);
        const auto net = example_net(y);
        REQUIRE_THAT(omega_quad(net, {0, 0}), WithinAbs(0.01, 1e-12));
        REQUIRE_THAT(omega_quad(net, {-1, 0}), WithinAbs(-0.01, 1e-12));
        REQUIRE_THAT(omega_quad(net, {0, -1}), WithinAbs(-0.01 * y, 1e-12));
        REQUIRE_THAT(omega_quad(net, {-1, -1}), WithinAbs(-0.01 * (1 + y), 1e-12));

        // cofactor-expansion oracle on every quad
        net.domain().for_each_quad([&](QuadIndex q) {
            const Vec3 n = net.nu({q.u, q.v}), a = net.alpha_prime(q.u), b = net.beta_prime(q.v);
            const double ref = det3_rows({n.x, n.y, n.z}, {a.x, a.y, a.z}, {b.x, b.y, b.z});
            REQUIRE_THAT(omega_quad(net, q), WithinAbs(ref, 1e-15));
        });
    }
    REQUIRE_THROWS_AS(omega_quad(example_net(1.0), {1, 0}), Error);
}

TEST_CASE("metric from positions is the square of Omega", "[omega]") {
    const auto net = example_net(1.0);
    const auto f = integrate_net(net);
    REQUIRE_THAT(m_from_positions(f, {0, 0}), WithinRel(1e-4, 1e-10));
    REQUIRE_THAT(m_from_positions(f, {-1, -1}), WithinRel(4e-4, 1e-10));
    net.domain().for_each_quad([&](QuadIndex q) {
        const double w = omega_quad(net, q);
        REQUIRE(m_from_positions(f, q) >= 0.0);
        REQUIRE(std::fabs(m_from_positions(f, q) - w * w) <= 1e-10 * w * w);
    });
}

TEST_CASE("degenerate metric is rejected", "[omega]") {
    // beta'(1/2) parallel to alpha'(1/2) makes Omega vanish on quad (1/2,1/2)
    auto c = example_curve_pair(1.0);
    c.beta[2] = {0.1, 0, 0};
    const auto net = to_net(c);
    const auto d = degenerate_quads(net);
    REQUIRE(d == std::vector<QuadIndex>{{0, 0}});
    try {
        compute_metric(net);
        FAIL("no error");
    } catch (const Error &e) {
        REQUIRE(e.kind() == ErrorKind::DegenerateMetric);
        REQUIRE(std::string(e.what()).find("(0.5,0.5)") != std::string::npos);
    }
    const auto a = analyze(net);
    REQUIRE(a.status == AnalysisStatus::Degenerate);
}

TEST_CASE("singular edges", "[edges]") {
    REQUIRE(edge_set(singular_edges(compute_metric(example_net(-0.5)))) == std::set<EdgeIndex>{kUp, kDown});
    REQUIRE(edge_set(singular_edges(compute_metric(example_net(-2.0)))) == std::set<EdgeIndex>{kUp, kLeft});
    REQUIRE(edge_set(singular_edges(compute_metric(example_net(1.0)))) == std::set<EdgeIndex>{kUp, kRight});
    for (const auto &e : singular_edges(compute_metric(example_net(1.0))))
        REQUIRE(e.omega_pair.first * e.omega_pair.second < 0.0);
}

TEST_CASE("half-plane edge test", "[edges]") {
    const auto net = example_net(1.0);
    REQUIRE(halfplane_edge_test(net, kUp));
    REQUIRE_FALSE(halfplane_edge_test(net, kDown));
    REQUIRE(halfplane_edge_test(net, kRight));
    REQUIRE_FALSE(halfplane_edge_test(net, kLeft));

    SECTION("parallel directions are degenerate") {
        const PolyCurve a(-1, {Vec3{-1, 0, 1}, Vec3{0, 0, 1}, Vec3{1, 0, 1}}, "alpha");
        const PolyCurve b(-1, {Vec3{-1, 0, 0}, Vec3{0, 0, 0}, Vec3{2, 0, 0}}, "beta");
        const ConormalNet n(a, b);
        try {
            halfplane_edge_test(n, kUp);
            FAIL("no error");
        } catch (const Error &e) {
            REQUIRE(e.kind() == ErrorKind::DegenerateOrientation);
        }
    }
}

TEST_CASE("singular vertices", "[vertices]") {
    const auto net = example_net(1.0);
    const auto sv = singular_vertices(singular_edges(compute_metric(net)), net.domain());
    REQUIRE(sv.size() == 3);
    int interior = 0;
    for (const auto &s : sv) {
        if (s.vertex == VertexIndex{0, 0}) {
            ++interior;
            REQUIRE(std::set<EdgeIndex>(s.incident_singular_edges.begin(), s.incident_singular_edges.end()) ==
                    std::set<EdgeIndex>{kUp, kRight});
            REQUIRE(s.configuration == Configuration::Pending);
        } else {
            REQUIRE(s.configuration == Configuration::Boundary);
            REQUIRE(s.kind == SingularityKind::Unclassified);
        }
    }
    REQUIRE(interior == 1);
    REQUIRE(singular_vertices({}, net.domain()).empty());

    const auto bad = forbidden_net();
    const auto bv = singular_vertices(singular_edges(compute_metric(bad)), bad.domain());
    const auto c = std::find_if(bv.begin(), bv.end(), [](auto &s) { return s.vertex == VertexIndex{0, 0}; });
    REQUIRE(c != bv.end());
    REQUIRE(c->incident_singular_edges.size() == 4);
    REQUIRE(c->configuration == Configuration::Inadmissible);
}

TEST_CASE("admissibility check", "[admissibility]") {
    for (double y : {1.0, -0.5, -2.0}) {
        const auto net = example_net(y);
        REQUIRE(admissibility_check(net, {0, 0}, kUp));
    }
    // forbidden: -beta'(-1/2) = (0.1, 0.02, 0) shares the quadrant of beta'(1/2) = (0.2, 0.1, 0)
    const auto bad = forbidden_net();
    REQUIRE_FALSE(admissibility_check(bad, {0, 0}, kUp));
    const auto a = analyze(bad);
    REQUIRE(a.status == AnalysisStatus::ValidationFailed);
    REQUIRE(a.admissibility == std::vector<VertexIndex>{{0, 0}});
    REQUIRE(a.polylines.empty());
    REQUIRE_THROWS_AS(admissibility_check(bad, {1, 0}, kRight), Error);
}

TEST_CASE("quadrant signatures of the worked example", "[admissibility]") {
    const auto a1 = analyze(example_net(1.0));
    const auto &y1 = center(a1);
    REQUIRE(y1.diagnostics.forward_signature == QuadrantSignature{Sign::Positive, Sign::Positive});
    REQUIRE(y1.diagnostics.backward_signature == QuadrantSignature{Sign::Positive, Sign::Negative});

    const auto a = analyze(example_net(-0.5));
    REQUIRE(center(a).diagnostics.forward_signature == QuadrantSignature{Sign::Positive, Sign::Positive});
    REQUIRE(center(a).diagnostics.backward_signature == QuadrantSignature{Sign::Negative, Sign::Negative});
}

TEST_CASE("ray crossing test", "[crossing]") {
    const Vec3 n{0, 0, 1};
    REQUIRE(ray_crossing_test(n, at_deg(225), at_deg(0), at_deg(315), at_deg(207)));
    REQUIRE_FALSE(ray_crossing_test(n, at_deg(225), at_deg(0), at_deg(27), at_deg(207)));
    REQUIRE_FALSE(ray_crossing_test(n, at_deg(225), at_deg(0), at_deg(315), at_deg(315)));
    // the rays need not be unit length or lie in the transversal plane
    REQUIRE(ray_crossing_test(n, at_deg(225) * 3 + n * 5, at_deg(0) * 0.2, at_deg(315) - n, at_deg(207)));
    REQUIRE_THROWS_AS(ray_crossing_test(n, at_deg(225), at_deg(0), at_deg(0) * 2, at_deg(207)), Error);

    // exhaustive comparison with an angle-based oracle
    for (int p1 = 0; p1 < 360; p1 += 15)
        for (int p2 = 7; p2 < 360; p2 += 29)
            for (int q1 = 3; q1 < 360; q1 += 31)
                for (int q2 = 11; q2 < 360; q2 += 37) {
                    if (p1 == p2 || (p1 - p2 + 720) % 360 == 180) continue;
                    auto on_line = [](int q, int p) { return (q - p + 720) % 180 == 0; };
                    if (on_line(q1, p1) || on_line(q1, p2) || on_line(q2, p1) || on_line(q2, p2)) {
                        // a ray on a line through the sector boundary violates generic position
                        REQUIRE_THROWS_AS(ray_crossing_test(n, at_deg(p1), at_deg(p2), at_deg(q1), at_deg(q2)), Error);
                        continue;
                    }
                    const bool want = diams::testing::interleave_by_angles(p1, p2, q1, q2);
                    REQUIRE(ray_crossing_test(n, at_deg(p1), at_deg(p2), at_deg(q1), at_deg(q2)) == want);
                }
}

TEST_CASE("star sidedness", "[sidedness]") {
    const std::vector<std::pair<double, bool>> cases{{1.0, true}, {-2.0, false}, {-0.5, false}};
    for (const auto &[y, same] : cases) {
        CAPTURE(y);
        const auto net = example_net(y);
        const auto a = analyze(net);
        REQUIRE(star_sidedness_test(a.f, net, center(a)) == same);
    }
    const auto net = example_net(1.0);
    const auto a = analyze(net);
    const auto boundary =
        *std::find_if(a.vertices.begin(), a.vertices.end(), [](auto &s) { return s.vertex == VertexIndex{1, 0}; });
    REQUIRE_THROWS_AS(star_sidedness_test(a.f, net, boundary), Error);
}

TEST_CASE("vertex classification of the worked example", "[classify]") {
    struct Case {
        double y;
        Configuration config;
        SingularityKind kind;
    };
    for (const auto &c : {Case{-0.5, Configuration::A, SingularityKind::CuspidalEdge},
                          Case{-2.0, Configuration::B, SingularityKind::CuspidalEdge},
                          Case{1.0, Configuration::C, SingularityKind::Swallowtail}}) {
        CAPTURE(c.y);
        const auto net = example_net(c.y);
        const auto a = analyze(net);
        const auto &v = center(a);
        REQUIRE(v.configuration == c.config);
        REQUIRE(v.kind == c.kind);
        REQUIRE(v.diagnostics.alpha_reflected_beta_crossing == (c.kind == SingularityKind::Swallowtail));
        REQUIRE(v.diagnostics.star_same_side == (c.kind == SingularityKind::Swallowtail));

        // every incident singular edge is a valid base and yields the same labels
        for (const auto &base : v.incident_singular_edges) {
            SingularVertex fresh = v;
            fresh.configuration = Configuration::Pending;
            fresh.kind = SingularityKind::Unclassified;
            const auto r = classify_vertex_with_base(net, a.f, fresh, base);
            REQUIRE(r.configuration == c.config);
            REQUIRE(r.kind == c.kind);
        }
    }

    SECTION("inadmissible vertices raise") {
        const auto bad = forbidden_net();
        const auto sv = singular_vertices(singular_edges(compute_metric(bad)), bad.domain());
        const auto c = *std::find_if(sv.begin(), sv.end(), [](auto &s) { return s.vertex == VertexIndex{0, 0}; });
        try {
            classify_vertex(bad, integrate_net(bad), c);
            FAIL("no error");
        } catch (const Error &e) {
            REQUIRE(e.kind() == ErrorKind::InadmissibleVertex);
            REQUIRE(std::string(e.what()).find("(0,0)") != std::string::npos);
        }
    }

    SECTION("boundary vertices are labelled, not classified") {
        const auto net = example_net(1.0);
        const auto a = analyze(net);
        for (const auto &s : a.vertices)
            if (s.vertex != VertexIndex{0, 0}) {
                REQUIRE(s.configuration == Configuration::Boundary);
                REQUIRE(s.kind == SingularityKind::Unclassified);
            }
    }
}

TEST_CASE("singular polylines", "[polylines]") {
    auto chain_matches = [](const SingularPolyline &p, std::vector<VertexIndex> want) {
        if (p.vertices == want) return true;
        std::reverse(want.begin(), want.end());
        return p.vertices == want;
    };
    {
        const auto a = analyze(example_net(1.0));
        REQUIRE(a.polylines.size() == 1);
        REQUIRE_FALSE(a.polylines[0].closed);
        REQUIRE(chain_matches(a.polylines[0], {{1, 0}, {0, 0}, {0, 1}}));
        REQUIRE(a.polylines[0].edges.size() == 2);
        REQUIRE(std::set<EdgeIndex>(a.polylines[0].edges.begin(), a.polylines[0].edges.end()) ==
                std::set<EdgeIndex>{kUp, kRight});
    }
    {
        const auto a = analyze(example_net(-0.5));
        REQUIRE(a.polylines.size() == 1);
        REQUIRE(chain_matches(a.polylines[0], {{0, -1}, {0, 0}, {0, 1}}));
    }
    {
        const auto net = example_net(1.0);
        REQUIRE(extract_polylines({}, {}, net.domain()).empty());
    }
    {
        const auto bad = forbidden_net();
        const auto edges = singular_edges(compute_metric(bad));
        const auto sv = singular_vertices(edges, bad.domain());
        REQUIRE_THROWS_AS(extract_polylines(sv, edges, bad.domain()), Error);
    }
}

TEST_CASE("closed singular loop", "[polylines]") {
    // projected tangents (1, r^2 - u^2) and (1, v^2) give Omega = 2(u^2 + v^2 - r^2)
    // up to discretization, a ring around the origin; the small quadratic terms
    // break the odd symmetry that would put beta(-1), beta(0), beta(1) on a line
    const double r2 = 0.37;
    std::vector<Vec3> a, b;
    for (int k = -10; k <= 10; ++k) {
        const double t = k * 0.1;
        a.push_back({t, r2 * t - t * t * t / 3 + 0.031 * t * t, 2.0});
        b.push_back({t, t * t * t / 3 + 0.047 * t * t, 0.0});
    }
    const ConormalNet net(PolyCurve(-10, a, "alpha"), PolyCurve(-10, b, "beta"));
    const auto an = analyze(net);
    REQUIRE(an.status == AnalysisStatus::Ok);
    REQUIRE(an.polylines.size() == 1);
    const auto &loop = an.polylines[0];
    REQUIRE(loop.closed);
    REQUIRE(loop.vertices.size() == loop.edges.size());
    REQUIRE(loop.edges.size() == an.edges.size());
    for (size_t i = 0; i < loop.edges.size(); ++i) {
        REQUIRE(net.domain().is_interior(loop.vertices[i]));
        REQUIRE(loop.edges[i].touches(loop.vertices[i]));
        REQUIRE(loop.edges[i].touches(loop.vertices[(i + 1) % loop.vertices.size()]));
    }
}

TEST_CASE("reversing the u parameter", "[relabel]") {
    for (double y : {1.0, -0.5, -2.0}) {
        CAPTURE(y);
        const auto net = example_net(y);
        const auto rev = diams::testing::reverse_u(net);
        net.domain().for_each_quad([&](QuadIndex q) {
            // quad (u+1/2) maps to (-u-1/2), lower-left index -u-1
            REQUIRE_THAT(omega_quad(rev, {-q.u - 1, q.v}), WithinAbs(-omega_quad(net, q), 1e-15));
        });
        const auto a = analyze(net), r = analyze(rev);
        std::set<EdgeIndex> mapped;
        for (const auto &e : a.edges)
            mapped.insert(e.edge.axis == Axis::U ? EdgeIndex{Axis::U, -e.edge.u - 1, e.edge.v}
                                                 : EdgeIndex{Axis::V, -e.edge.u, e.edge.v});
        REQUIRE(edge_set(r.edges) == mapped);
        REQUIRE(center(r).kind == center(a).kind);
    }
}
