#include "hdx/certifier.hpp"
#include "hdx/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

using namespace hdx;

namespace {

SimplicialComplex triangle() { return build_complex({{"a", "b", "c"}}); }
SimplicialComplex two_triangles() { return build_complex({{"a", "b", "c"}, {"a", "c", "d"}}); }

std::vector<SimplicialComplex> corpus()
{
    return {triangle(),
            two_triangles(),
            complete_complex(4, 2),
            complete_complex(5, 3),
            complete_multipartite_complex({2, 2, 2}),
            complete_multipartite_complex({1, 2, 2}),
            random_lm_complex(6, 2, 0.4, 5),
            build_complex({{"a", "b", "c"}, {"d", "e", "f"}}),
            build_complex({{"a", "b", "c", "d"}, {"a", "b", "c", "e"}, {"a", "c", "d", "e"}})};
}

ErrorKind kind_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::BadParameter;
}

// max over links with edges and nonempty S of ||E(S)||/||S|| - ||S||, through
// explicit link complexes and cochain norms.
Rational alpha_oracle(const SimplicialComplex& X)
{
    Rational best = 0;
    for (int level = -1; level + 2 <= X.dimension(); ++level) {
        for (const auto& sigma : X.faces(level)) {
            auto L = link(X, sigma).complex;
            if (L.dimension() < 1)
                continue;
            const std::size_t n = L.count(0);
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
                Cochain S = Cochain::empty(L, 0);
                Cochain E = Cochain::empty(L, 1);
                for (std::size_t v = 0; v < n; ++v)
                    if (mask >> v & 1U)
                        S.insert(v);
                for (std::size_t e = 0; e < L.count(1); ++e) {
                    const auto& ends = L.facets(1, e);
                    if (S.contains(ends[0]) && S.contains(ends[1]))
                        E.insert(e);
                }
                const Rational s = norm(L, S);
                best = std::max(best, Rational(norm(L, E) / s - s));
            }
        }
    }
    return best;
}

std::optional<Rational> epsilon_oracle(const SimplicialComplex& X)
{
    std::optional<Rational> best;
    for (int i = 0; i < X.dimension(); ++i) {
        const std::size_t n = X.count(i);
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            Cochain W = Cochain::empty(X, i);
            for (std::size_t s = 0; s < n; ++s)
                if (mask >> s & 1U)
                    W.insert(s);
            const Rational w = norm(X, W);
            if (w > Rational(1, 2))
                continue;
            const Rational ratio = norm(X, expanding_faces(X, W)) / w;
            if (!best || ratio < *best)
                best = ratio;
        }
    }
    return best;
}

Rational conductance_oracle(const IGraph& G)
{
    const std::size_t n = G.order();
    std::optional<Rational> best;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        Rational vol = 0;
        Rational cut = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (!(mask >> v & 1U))
                continue;
            vol += G.degree(v);
            for (const auto& [u, w] : G.neighbors(v))
                if (!(mask >> u & 1U))
                    cut += w;
        }
        if (vol * 2 > G.volume())
            continue;
        if (!best || cut / vol < *best)
            best = cut / vol;
    }
    return *best;
}

Rational bipartite_oracle(const IGraph& G)
{
    const std::size_t n = G.order();
    std::optional<Rational> best;
    std::vector<int> state(n, 0);
    std::function<void(std::size_t)> go = [&](std::size_t v) {
        if (v == n) {
            Rational vol = 0;
            Rational num = 0;
            for (std::size_t x = 0; x < n; ++x) {
                if (state[x] == 0)
                    continue;
                vol += G.degree(x);
                num += G.self_loop_weight(x);
                for (const auto& [y, w] : G.neighbors(x)) {
                    if (state[y] == 0)
                        num += w;
                    else if (state[y] == state[x] && y > x)
                        num += 2 * w;
                }
            }
            if (vol > 0 && (!best || num / vol < *best))
                best = num / vol;
            return;
        }
        for (int s = 0; s < 3; ++s) {
            state[v] = s;
            go(v + 1);
        }
    };
    go(0);
    return *best;
}

} // namespace

TEST_CASE("lexicographic mask order")
{
    CHECK(lex_less(0b001, 0b010));  // {0} < {1}
    CHECK(lex_less(0b001, 0b011));  // {0} < {0,1}
    CHECK(lex_less(0b011, 0b010));  // {0,1} < {1}
    CHECK(lex_less(0b101, 0b110));  // {0,2} < {1,2}
    CHECK(lex_less(0b011, 0b101));  // {0,1} < {0,2}
    CHECK_FALSE(lex_less(0b010, 0b010));
    CHECK_FALSE(lex_less(0b110, 0b101));
}

TEST_CASE("triangle constants")
{
    auto X = triangle();
    auto alpha = skeleton_alpha(X);
    CHECK(alpha.value == 0);
    CHECK(alpha.provenance == Provenance::Exact);

    auto eps = colorful_epsilon(X);
    REQUIRE(eps.value);
    CHECK(*eps.value == 2);
    CHECK(eps.level == 0);
    CHECK(eps.witness == std::vector<std::size_t>{0});

    CHECK(conductance(build_igraph(X, 0)).value == 1);
    auto phi1 = conductance(build_igraph(X, 1));
    CHECK(phi1.value == 1);
    CHECK(phi1.witness == std::vector<std::size_t>{0});
    auto beta = bipartiteness_ratio(build_igraph(X, 1));
    CHECK(beta.value == Rational(1, 3));
    CHECK(beta.assignment == std::vector<int>{1, 1, 2});
}

TEST_CASE("exact constants agree with independent enumeration")
{
    for (const auto& X : corpus()) {
        CHECK(skeleton_alpha(X).value == alpha_oracle(X));
        auto eps = colorful_epsilon(X);
        auto expected = epsilon_oracle(X);
        REQUIRE(eps.value.has_value() == expected.has_value());
        if (expected)
            CHECK(*eps.value == *expected);
        for (int i = 0; i < X.dimension(); ++i) {
            auto G = build_igraph(X, i);
            CHECK(conductance(G).value == conductance_oracle(G));
            if (G.order() <= 10) {
                CHECK(bipartiteness_ratio(G).value == bipartite_oracle(G));
                auto lazy = with_self_loops(G);
                CHECK(bipartiteness_ratio(lazy).value == bipartite_oracle(lazy));
            }
        }
    }
}

TEST_CASE("witnesses reproduce the reported values")
{
    for (const auto& X : corpus()) {
        auto eps = colorful_epsilon(X);
        if (eps.value) {
            auto W = Cochain::from_indices(X, eps.level, eps.witness);
            CHECK(norm(X, W) <= Rational(1, 2));
            CHECK(norm(X, expanding_faces(X, W)) / norm(X, W) == *eps.value);
        }
        for (int i = 0; i < X.dimension(); ++i) {
            auto G = build_igraph(X, i);
            auto phi = conductance(G);
            Rational vol = 0;
            Rational cut = 0;
            std::vector<bool> in(G.order(), false);
            for (auto v : phi.witness)
                in[v] = true;
            for (auto v : phi.witness) {
                vol += G.degree(v);
                for (const auto& [u, w] : G.neighbors(v))
                    if (!in[u])
                        cut += w;
            }
            CHECK(cut / vol == phi.value);
        }
    }
}

TEST_CASE("disconnected complexes have zero expansion")
{
    auto X = build_complex({{"a", "b", "c"}, {"d", "e", "f"}});
    CHECK(*colorful_epsilon(X).value == 0);
    CHECK(conductance(build_igraph(X, 0)).value == 0);
    CHECK(conductance(build_igraph(X, 1)).value == 0);
}

TEST_CASE("bipartite graphs have zero bipartiteness ratio")
{
    IGraph path(0, 4);
    path.add_edge(0, 1, 2);
    path.add_edge(1, 2, 1);
    path.add_edge(2, 3, 3);
    CHECK(bipartiteness_ratio(path).value == 0);
}

TEST_CASE("elimination program matches the 3^n enumeration")
{
    std::mt19937_64 rng(2024);
    ExactCaps force;
    force.bipartite_vertices = 0;
    for (int round = 0; round < 120; ++round) {
        const std::size_t n = 2 + rng() % 10;
        IGraph G(0, n);
        for (std::size_t v = 1; v < n; ++v)
            G.add_edge(v, rng() % v, 1 + static_cast<std::int64_t>(rng() % 3));
        for (std::size_t e = 0; e < n; ++e) {
            const std::size_t u = rng() % n;
            const std::size_t v = rng() % n;
            if (u != v)
                G.add_edge(u, v, 1 + static_cast<std::int64_t>(rng() % 2));
        }
        if (round % 3 == 0)
            G.set_self_loop(rng() % n, 1 + static_cast<std::int64_t>(rng() % 4));
        const auto plan = detail::elimination_plan(G);
        REQUIRE(plan.order.size() == n);
        const auto enumerated = bipartiteness_ratio(G);
        const auto eliminated = bipartiteness_ratio(G, force);
        CHECK(eliminated.provenance == Provenance::Exact);
        CHECK(eliminated.value == enumerated.value);
        CHECK(eliminated.assignment == enumerated.assignment);
    }
    for (const auto& X : {complete_complex(6, 2), random_lm_complex(6, 2, 0.5, 11)}) {
        const auto G = build_igraph(X, 1);
        const auto enumerated = bipartiteness_ratio(G);
        const auto eliminated = bipartiteness_ratio(G, force);
        CHECK(eliminated.value == enumerated.value);
        CHECK(eliminated.assignment == enumerated.assignment);
    }
}

TEST_CASE("exact caps")
{
    auto X = complete_complex(8, 2);
    SearchOptions tight;
    tight.caps.epsilon_faces = 20;
    CHECK(kind_of([&] { colorful_epsilon(X, tight); }) == ErrorKind::TooLargeForExact);
    tight.sampled = true;
    tight.trials = 200;
    auto sampled = colorful_epsilon(X, tight);
    CHECK(sampled.provenance == Provenance::Sampled);
    REQUIRE(sampled.value);
    CHECK(*sampled.value > 0);

    ExactCaps caps;
    caps.bipartite_vertices = 5;
    caps.bipartite_frontier = 2;
    auto G = build_igraph(complete_complex(5, 2), 1);
    CHECK(kind_of([&] { bipartiteness_ratio(G, caps); }) == ErrorKind::TooLargeForExact);
    auto heuristic = bipartiteness_ratio(G, caps, true);
    CHECK(heuristic.provenance == Provenance::Heuristic);
    CHECK(heuristic.value >= bipartiteness_ratio(G).value);

    caps.conductance_vertices = 5;
    CHECK(kind_of([&] { conductance(G, caps); }) == ErrorKind::TooLargeForExact);
    auto cut = conductance_sampled(G, 300, 4);
    CHECK(cut.provenance == Provenance::Sampled);
    CHECK(cut.value >= conductance(G).value);
    std::int64_t vol = 0;
    std::int64_t boundary = 0;
    for (auto v : cut.witness) {
        vol += G.degree(v);
        for (const auto& [u, w] : G.neighbors(v))
            if (std::find(cut.witness.begin(), cut.witness.end(), u) == cut.witness.end())
                boundary += w;
    }
    CHECK(2 * vol <= G.volume());
    CHECK(cut.value == Rational(boundary, vol));

    CertifyOptions everything_sampled;
    everything_sampled.search.caps.conductance_vertices = 5;
    everything_sampled.search.caps.epsilon_faces = 5;
    everything_sampled.search.sampled = true;
    everything_sampled.search.trials = 100;
    auto cert = certify(complete_complex(5, 2), everything_sampled);
    CHECK(cert.conductance[0].provenance == Provenance::Exact);
    CHECK(cert.conductance[1].provenance == Provenance::Sampled);
    CHECK(to_json(complete_complex(5, 2), cert)["flags"]["conductance"] == "sampled");

    SearchOptions small_links;
    small_links.caps.alpha_vertices = 3;
    CHECK(kind_of([&] { skeleton_alpha(complete_complex(5, 2), small_links); }) == ErrorKind::TooLargeForExact);
    small_links.sampled = true;
    auto estimate = skeleton_alpha(complete_complex(5, 2), small_links);
    CHECK(estimate.provenance == Provenance::Sampled);
    CHECK(estimate.value <= skeleton_alpha(complete_complex(5, 2)).value);
}

TEST_CASE("closed-form bounds")
{
    CHECK(theorem_epsilon(2, 0.0) == Catch::Approx(0.001118729136489153).epsilon(1e-12));
    CHECK(std::abs(theorem_epsilon(2, 0.0) - 0.00111873) < 1e-8);
    CHECK(alpha_threshold(2) == Catch::Approx(0.13378963).epsilon(1e-7));
    CHECK(kind_of([] { theorem_epsilon(2, 0.133790); }) == ErrorKind::AlphaTooLarge);
    double last = theorem_epsilon(2, 0.0);
    for (double a = 0.01; a < 0.13; a += 0.01) {
        const double e = theorem_epsilon(2, a);
        CHECK(e < last);
        last = e;
    }

    auto clamped = theorem_mu(2, 2.0);
    CHECK(clamped.clamped);
    CHECK(clamped.value == Catch::Approx(17.0 / 18.0).epsilon(1e-15));
    CHECK_FALSE(theorem_mu(2, 0.5).clamped);
    CHECK(kind_of([] { theorem_mu(1, 0.5); }) == ErrorKind::DimensionTooSmall);
    CHECK(kind_of([] { theorem_mu_from_alpha(1, 0.0); }) == ErrorKind::DimensionTooSmall);

    CHECK(theorem_mu_from_alpha(2, 0.0) == Catch::Approx(0.9999999304691732).epsilon(1e-15));
    CHECK(1.0 - theorem_mu_from_alpha(2, 0.0) == Catch::Approx(std::pow(0.033447408516791746, 4) / 18.0).epsilon(1e-6));
    for (int d = 2; d <= 4; ++d)
        for (double a = 0.0; a < alpha_threshold(d); a += alpha_threshold(d) / 7)
            CHECK(theorem_mu_from_alpha(d, a) == theorem_mu(d, theorem_epsilon(d, a)).value);

    // The per-level bound at the top level coincides with the theorem for d = i + 1.
    CHECK(stronger_mu(1, 0.0) == Catch::Approx(theorem_mu_from_alpha(2, 0.0)).epsilon(1e-15));
    CHECK(kind_of([] { stronger_mu(0, 1.0); }) == ErrorKind::AlphaTooLarge);
}

TEST_CASE("conductance and bipartiteness lemmas")
{
    auto X = triangle();
    auto report = verify_conductance_lemma(X, Rational(2));
    REQUIRE(report.checks.size() == 2);
    CHECK(report.checks[0].lhs == "1/1");
    CHECK(report.checks[0].rhs == "1/1");
    CHECK(report.checks[1].rhs == "2/3");
    CHECK(verify_conductance_lemma(X, Rational(0)).ok());
    CHECK_THROWS_AS(verify_conductance_lemma(X, Rational(3)), BoundViolation);

    for (const auto& Y : corpus()) {
        auto eps = colorful_epsilon(Y);
        CHECK(verify_conductance_lemma(Y, *eps.value, {}, OnViolation::Collect).ok());
        CHECK(verify_bipartiteness_lemma(Y, {}, OnViolation::Collect).ok());
    }
}

TEST_CASE("proof trace examples")
{
    auto X = two_triangles();
    auto W = Cochain::of(X, 1, {X.face_from_labels({"a", "b"})});
    const Rational alpha = skeleton_alpha(X).value;
    auto trace = verify_proof_trace(X, W, Rational(7, 10), Rational(1, 2), alpha);
    CHECK(trace.report.ok());
    CHECK(trace.good_dimension_applies);
    CHECK(trace.good_dimensions == std::vector<int>{1});

    bool saw_container = false;
    for (const auto& c : trace.report.checks) {
        if (c.name == "container-bound" && c.level == 1) {
            CHECK(c.lhs == "1/2");
            CHECK(c.rhs == "1/6");
            saw_container = true;
        }
    }
    CHECK(saw_container);

    auto empty = verify_proof_trace(X, Cochain::empty(X, 1), Rational(1, 2), Rational(1, 2), alpha);
    CHECK(empty.report.ok());
    for (const auto& c : empty.report.checks)
        if (c.name != "fat-faces-upper-bound" && c.name != "cochain-upper-bound" && c.name != "good-dimension")
            CHECK(c.lhs == "0/1");

    CHECK(kind_of([&] { verify_proof_trace(X, W, Rational(1, 2), Rational(3, 5), alpha); }) == ErrorKind::BadParameter);
    CHECK(kind_of([&] { verify_proof_trace(X, W, Rational(1), Rational(1, 2), alpha); }) == ErrorKind::BadFatness);
    CHECK(kind_of([&] { verify_proof_trace(X, Cochain::full(X, 2), Rational(1, 2), Rational(1, 2), alpha); }) ==
          ErrorKind::TopDimension);
}

TEST_CASE("proof trace on random instances")
{
    WalkRng rng(77);
    for (const auto& X : corpus()) {
        const Rational alpha = skeleton_alpha(X).value;
        for (int trial = 0; trial < 40; ++trial) {
            auto inst = draw_trace_instance(X, rng);
            auto trace = verify_proof_trace(X, inst.cochain, inst.eta, inst.c, alpha, OnViolation::Collect);
            if (const auto* f = trace.report.first_failure())
                FAIL(f->name << " at " << f->level << ": " << f->lhs << " vs " << f->rhs);
        }
    }
}

TEST_CASE("spectral consequence of colorful expansion")
{
    auto X = triangle();
    auto report = mu_vs_spectrum(X, Rational(2), 1e-8);
    CHECK(report.ok());
    CHECK_FALSE(report.notes.empty());
    for (const auto& c : report.checks) {
        if (c.name == "lazy-lambda2")
            CHECK(std::stod(c.lhs) == Catch::Approx(0.25).margin(1e-10));
        if (c.name == "spectral-mu" && c.level == 1)
            CHECK(std::stod(c.lhs) == Catch::Approx(0.5).margin(1e-10));
    }
    auto O = complete_multipartite_complex({2, 2, 2});
    CHECK(mu_vs_spectrum(O, *colorful_epsilon(O).value, 1e-8).ok());
}

TEST_CASE("colorful criterion end to end")
{
    for (const auto& X : corpus()) {
        if (X.dimension() < 1)
            continue;
        auto alpha = skeleton_alpha(X).value;
        auto eps = colorful_epsilon(X).value;
        CHECK(verify_colorful_criterion(X.dimension(), alpha, *eps, OnViolation::Collect).ok());
    }
}

TEST_CASE("certificates are invariant under relabeling")
{
    auto X = build_complex({{"a", "b", "c"}, {"a", "c", "d"}, {"c", "d", "e"}});
    auto Y = build_complex({{"z", "y", "x"}, {"x", "z", "w"}, {"w", "x", "v"}});
    auto cx = certify(X);
    auto cy = certify(Y);
    auto jx = to_json(X, cx);
    auto jy = to_json(Y, cy);
    for (const char* field : {"alpha", "epsilon", "conductance", "bipartiteness", "mu", "flags"})
        CHECK(jx[field] == jy[field]);
}

TEST_CASE("certificate json layout")
{
    auto X = triangle();
    auto j = to_json(X, certify(X));
    CHECK(j["alpha"] == "0/1");
    CHECK(j["epsilon"] == "2/1");
    CHECK(j["conductance"] == nlohmann::json::array({"1/1", "1/1"}));
    CHECK(j["bipartiteness"][0].is_null());
    CHECK(j["bipartiteness"][1] == "1/3");
    CHECK(j["mu"]["thm2"].get<double>() == Catch::Approx(17.0 / 18.0).epsilon(1e-11));
    CHECK(j["mu"]["thm2_epsilon_clamped"] == true);
    CHECK(j["flags"]["epsilon"] == "exact");
    CHECK(j["witnesses"]["epsilon"]["cochain"] == nlohmann::json::array({"{a}"}));
}
