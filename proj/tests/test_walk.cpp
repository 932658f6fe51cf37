#include "hdx/generators.hpp"
#include "hdx/spectral.hpp"
#include "hdx/walk.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace hdx;

namespace {

SimplicialComplex two_triangles() { return build_complex({{"a", "b", "c"}, {"a", "c", "d"}}); }

std::size_t idx(const SimplicialComplex& X, std::vector<std::string> names)
{
    return X.require_index(X.face_from_labels(names));
}

std::vector<SimplicialComplex> corpus()
{
    return {build_complex({{"a", "b", "c"}}), two_triangles(), complete_complex(5, 2), complete_complex(5, 3),
            complete_multipartite_complex({2, 2, 2}), random_lm_complex(6, 2, 0.5, 3),
            build_complex({{"a", "b", "c", "d"}, {"a", "b", "c", "e"}, {"a", "c", "d", "e"}, {"b", "c", "d", "f"}})};
}

} // namespace

TEST_CASE("i-graph of a triangle")
{
    auto X = build_complex({{"a", "b", "c"}});
    auto G = build_igraph(X, 1);
    CHECK(G.order() == 3);
    for (std::size_t v = 0; v < 3; ++v) {
        CHECK(G.weighted_degree(v) == 2);
        for (const auto& [u, w] : G.neighbors(v))
            CHECK(w == 1);
    }
    CHECK_THROWS_AS(build_igraph(X, 2), Error);
    CHECK_THROWS_AS(build_igraph(X, -1), Error);
}

TEST_CASE("i-graph of two triangles")
{
    auto X = two_triangles();
    auto G = build_igraph(X, 1);
    CHECK(G.order() == 5);
    for (std::size_t v = 0; v < 5; ++v)
        CHECK(G.weighted_degree(v) == (v == idx(X, {"a", "c"}) ? 4 : 2));
    CHECK(G.connected());
}

TEST_CASE("edge weights and degree identity")
{
    for (const auto& X : corpus()) {
        const int d = X.dimension();
        for (int i = 0; i < d; ++i) {
            auto G = build_igraph(X, i);
            for (std::size_t u = 0; u < G.order(); ++u) {
                CHECK(G.weighted_degree(u) == (d - i) * (i + 1) * X.degree(i, u));
                for (std::size_t v = 0; v < G.order(); ++v) {
                    if (u == v)
                        continue;
                    const Face joined = X.face(i, u).united(X.face(i, v));
                    const bool adjacent = joined.dimension() == i + 1 && X.contains(joined);
                    CHECK((G.edge_weight(u, v) > 0) == adjacent);
                    if (adjacent)
                        CHECK(G.edge_weight(u, v) == X.degree(joined));
                }
            }
        }
    }
}

TEST_CASE("transition rows")
{
    auto T = build_complex({{"a", "b", "c"}});
    auto G = build_igraph(T, 1);
    auto row = transition_step(G, indicator(G, idx(T, {"a", "b"})));
    CHECK(row[idx(T, {"a", "b"})] == 0);
    CHECK(row[idx(T, {"a", "c"})] == Rational(1, 2));
    CHECK(row[idx(T, {"b", "c"})] == Rational(1, 2));

    auto X = two_triangles();
    auto H = build_igraph(X, 1);
    auto from_ac = transition_step(H, indicator(H, idx(X, {"a", "c"})));
    CHECK(from_ac[idx(X, {"a", "c"})] == 0);
    for (auto e : {std::vector<std::string>{"a", "b"}, {"b", "c"}, {"a", "d"}, {"c", "d"}})
        CHECK(from_ac[idx(X, e)] == Rational(1, 4));

    auto pi = stationary(H);
    CHECK(transition_step(H, pi) == pi);
    CHECK_THROWS_AS(transition_step(H, Distribution(3, Rational(1, 3))), Error);
    Distribution bad(5, Rational(1, 4));
    CHECK_THROWS_AS(transition_step(H, bad), Error);
}

TEST_CASE("stationary distribution")
{
    auto X = two_triangles();
    auto G = build_igraph(X, 1);
    auto pi = stationary(G);
    CHECK(pi[idx(X, {"a", "c"})] == Rational(1, 3));
    for (auto e : {std::vector<std::string>{"a", "b"}, {"b", "c"}, {"a", "d"}, {"c", "d"}})
        CHECK(pi[idx(X, e)] == Rational(1, 6));

    for (const auto& Y : corpus())
        for (int i = 0; i < Y.dimension(); ++i) {
            auto H = build_igraph(Y, i);
            auto p = stationary(H);
            for (std::size_t s = 0; s < Y.count(i); ++s)
                CHECK(p[s] == norm(Y, Cochain::from_indices(Y, i, {s})));
        }
}

TEST_CASE("rows are stochastic, reversible and match the sampler")
{
    for (const auto& X : corpus()) {
        for (int i = 0; i < X.dimension(); ++i) {
            auto G = build_igraph(X, i);
            auto pi = stationary(G);
            std::vector<Distribution> P;
            for (std::size_t u = 0; u < G.order(); ++u) {
                P.push_back(transition_step(G, indicator(G, u)));
                Rational total = 0;
                for (const auto& p : P.back())
                    total += p;
                CHECK(total == 1);
                CHECK(P.back() == sampler_branch_distribution(X, i, u));
            }
            for (std::size_t u = 0; u < G.order(); ++u)
                for (std::size_t v = 0; v < G.order(); ++v)
                    CHECK(pi[u] * P[u][v] == pi[v] * P[v][u]);
        }
    }
}

TEST_CASE("lazy graph")
{
    auto T = build_complex({{"a", "b", "c"}});
    auto lazy = lazy_igraph(build_igraph(T, 0));
    for (std::size_t v = 0; v < 3; ++v) {
        CHECK(lazy.self_loop_weight(v) == 2);
        CHECK(transition_step(lazy, indicator(lazy, v))[v] == Rational(1, 2));
    }
    CHECK_THROWS_AS(lazy_igraph(build_igraph(T, 1)), Error);
}

TEST_CASE("simulation")
{
    auto T = build_complex({{"a", "b", "c"}});
    const Face ab = T.face_from_labels({"a", "b"});
    CHECK(simulate_walk(T, 1, ab, 0, 5) == std::vector<Face>{ab});
    auto path = simulate_walk(T, 1, ab, 20, 5);
    CHECK(path.size() == 21);
    for (std::size_t t = 1; t < path.size(); ++t)
        CHECK(path[t] != path[t - 1]);
    CHECK(path == simulate_walk(T, 1, ab, 20, 5));
    CHECK_THROWS_AS(simulate_walk(T, 1, Face{0, 7}, 3, 1), Error);
    CHECK_THROWS_AS(simulate_walk(T, 2, T.face(2, 0), 3, 1), Error);

    auto X = two_triangles();
    const auto start = idx(X, {"a", "c"});
    const std::size_t trials = 100000;
    auto counts = simulate_endpoints(X, 1, start, 1, trials, 11);
    const double sd = std::sqrt(trials * 0.25 * 0.75);
    for (auto e : {std::vector<std::string>{"a", "b"}, {"b", "c"}, {"a", "d"}, {"c", "d"}})
        CHECK(std::abs(static_cast<double>(counts[idx(X, e)]) - trials * 0.25) <= 3 * sd);
    CHECK(counts[start] == 0);
    CHECK(counts == simulate_endpoints(X, 1, start, 1, trials, 11, 4));
}

TEST_CASE("trajectory dump format")
{
    auto X = two_triangles();
    auto path = simulate_walk(X, 1, X.face_from_labels({"a", "c"}), 2, 9);
    std::ostringstream out;
    write_trajectory(out, X, 1, 9, path);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "# level=1 seed=9 steps=2");
    std::getline(in, line);
    CHECK(line == "a,c");
}

TEST_CASE("mixing bound on the triangle")
{
    auto T = build_complex({{"a", "b", "c"}});
    auto G = build_igraph(T, 1);
    auto report = verify_mixing_bound(G, indicator(G, idx(T, {"a", "b"})), 5, 0.5, 1e-12);
    CHECK(report.rows[1].distance == Catch::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-12));
    CHECK(report.rows[1].bound == Catch::Approx(0.5));
    CHECK(report.checks.ok());

    auto still = verify_mixing_bound(G, stationary(G), 5, 0.5, 0.0);
    for (const auto& row : still.rows)
        CHECK(row.distance == 0.0);

    auto broken = verify_mixing_bound(G, indicator(G, 0), 3, 0.1, 0.0, OnViolation::Collect);
    CHECK_FALSE(broken.checks.ok());
    CHECK_THROWS_AS(verify_mixing_bound(G, indicator(G, 0), 3, 0.1, 0.0), BoundViolation);
}

TEST_CASE("mixing bound refuses disconnected graphs")
{
    auto X = build_complex({{"a", "b", "c"}, {"d", "e", "f"}});
    auto G = build_igraph(X, 0);
    CHECK_FALSE(G.connected());
    try {
        verify_mixing_bound(G, indicator(G, 0), 3, 0.5, 0.0);
        FAIL("expected DisconnectedGraph");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DisconnectedGraph);
    }
}

TEST_CASE("rng streams are reproducible")
{
    WalkRng a(42, 3);
    WalkRng b(42, 3);
    WalkRng c(42, 4);
    bool differs = false;
    for (int k = 0; k < 100; ++k) {
        const auto x = a.next();
        CHECK(x == b.next());
        differs = differs || x != c.next();
    }
    CHECK(differs);
    WalkRng d(1);
    for (int k = 0; k < 1000; ++k)
        CHECK(d.below(7) < 7);
}
