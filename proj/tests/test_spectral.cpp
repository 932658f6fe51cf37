#include "charpoly_oracle.hpp"

#include "hdx/certifier.hpp"
#include "hdx/generators.hpp"
#include "hdx/spectral.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace hdx;

namespace {

std::vector<SimplicialComplex> corpus()
{
    return {build_complex({{"a", "b", "c"}}),
            build_complex({{"a", "b", "c"}, {"a", "c", "d"}}),
            complete_complex(5, 2),
            complete_complex(5, 3),
            complete_multipartite_complex({2, 2, 2}),
            complete_multipartite_complex({1, 2, 3}),
            random_lm_complex(6, 2, 0.5, 3),
            build_complex({{"a", "b", "c", "d"}, {"a", "b", "c", "e"}, {"a", "c", "d", "e"}, {"b", "c", "d", "f"}})};
}

} // namespace

TEST_CASE("triangle spectrum")
{
    auto T = build_complex({{"a", "b", "c"}});
    auto M = normalized_adjacency(build_igraph(T, 1));
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c)
            CHECK(M(r, c) == (r == c ? 0.0 : 0.5));
    auto spec = spectrum(M);
    REQUIRE(spec.size() == 3);
    CHECK(std::abs(spec.eigenvalues[0] - 1.0) < 1e-10);
    CHECK(std::abs(spec.eigenvalues[1] + 0.5) < 1e-10);
    CHECK(std::abs(spec.eigenvalues[2] + 0.5) < 1e-10);
}

TEST_CASE("identity spectrum")
{
    auto spec = spectrum(SymMatrix::identity(6));
    for (double v : spec.eigenvalues)
        CHECK(v == 1.0);
    CHECK(spec.residual == 0.0);
}

TEST_CASE("non-finite input is rejected")
{
    SymMatrix m(2);
    m.set(0, 1, std::nan(""));
    CHECK_THROWS_AS(spectrum(m), Error);
}

TEST_CASE("isolated vertices are rejected")
{
    IGraph G(0, 3);
    G.add_edge(0, 1, 1);
    CHECK_THROWS_AS(normalized_adjacency(G), Error);
}

TEST_CASE("spectra agree with the characteristic polynomial oracle")
{
    for (const auto& X : corpus()) {
        for (int i = 0; i < X.dimension(); ++i) {
            auto G = build_igraph(X, i);
            if (G.order() > 12)
                continue;
            for (const auto& H : {G, with_self_loops(G)}) {
                auto spec = spectrum(normalized_adjacency(H));
                auto expected = oracle::walk_eigenvalues(H);
                REQUIRE(expected.size() == spec.size());
                for (std::size_t k = 0; k < spec.size(); ++k)
                    CHECK(std::abs(spec.eigenvalues[k] - expected[k]) < 1e-10);
            }
        }
    }
}

TEST_CASE("two triangles against the oracle")
{
    auto X = build_complex({{"a", "b", "c"}, {"a", "c", "d"}});
    auto G = build_igraph(X, 1);
    auto spec = spectrum(normalized_adjacency(G));
    CHECK(std::abs(spec.largest() - 1.0) < 1e-12);
    auto expected = oracle::walk_eigenvalues(G);
    REQUIRE(expected.size() == 5);
    for (std::size_t k = 0; k < 5; ++k)
        CHECK(std::abs(spec.eigenvalues[k] - expected[k]) < 1e-10);
}

TEST_CASE("Jacobi invariants")
{
    for (const auto& X : corpus()) {
        for (int i = 0; i < X.dimension(); ++i) {
            auto G = build_igraph(X, i);
            auto M = normalized_adjacency(G);
            auto dec = eigen_decompose(M);
            const auto& spec = dec.spectrum;
            const std::size_t n = spec.size();
            CHECK(spec.sweeps <= kJacobiSweepCap);
            CHECK(spec.residual < 1e-12 * static_cast<double>(n));
            CHECK(spec.largest() <= 1.0 + spec.residual + 1e-12);
            CHECK(spec.smallest() >= -1.0 - spec.residual - 1e-12);
            double sum = 0.0;
            for (double v : spec.eigenvalues)
                sum += v;
            CHECK(std::abs(sum - M.trace()) <= n * spec.residual + 1e-12);

            double worst = 0.0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    double dot = 0.0;
                    for (std::size_t r = 0; r < n; ++r)
                        dot += dec.vector(r, a) * dec.vector(r, b);
                    worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
                }
            CHECK(worst < 1e-8);

            if (G.connected()) {
                CHECK(std::abs(spec.largest() - 1.0) < 1e-10);
                double norm2 = 0.0;
                for (std::size_t v = 0; v < n; ++v)
                    norm2 += static_cast<double>(G.degree(v));
                const double sign = dec.vector(0, 0) < 0 ? -1.0 : 1.0;
                for (std::size_t v = 0; v < n; ++v)
                    CHECK(std::abs(sign * dec.vector(v, 0) - std::sqrt(G.degree(v) / norm2)) < 1e-8);
            }
        }
    }
}

TEST_CASE("self-loops halve the spectrum toward 1")
{
    for (const auto& X : corpus()) {
        for (int i = 0; i < X.dimension(); ++i) {
            auto G = build_igraph(X, i);
            auto A = normalized_adjacency(G);
            auto L = normalized_adjacency(with_self_loops(G));
            for (std::size_t r = 0; r < A.order(); ++r)
                for (std::size_t c = 0; c < A.order(); ++c)
                    CHECK(std::abs(L(r, c) - ((r == c ? 1.0 : 0.0) + A(r, c)) / 2.0) < 1e-15);
            auto plain = spectrum(A);
            auto lazy = spectrum(L);
            for (std::size_t k = 0; k < plain.size(); ++k)
                CHECK(std::abs(lazy.eigenvalues[k] - (1.0 + plain.eigenvalues[k]) / 2.0) <=
                      2 * (plain.residual + lazy.residual) + 1e-12);
            CHECK(lazy.smallest() >= -lazy.residual - 1e-12);
        }
    }
}

TEST_CASE("Cheeger and Trevisan on the triangle")
{
    auto T = build_complex({{"a", "b", "c"}});
    auto G = build_igraph(T, 1);
    auto spec = spectrum(normalized_adjacency(G));
    auto cheeger = cheeger_check(conductance(G).value, spec);
    CHECK(cheeger.ok());
    CHECK(cheeger.checks[0].margin == Catch::Approx(1.0).margin(1e-9));
    auto trevisan = trevisan_check(bipartiteness_ratio(G).value, spec);
    CHECK(trevisan.ok());
    CHECK(trevisan.checks[0].margin == Catch::Approx(-0.5 + 17.0 / 18.0).margin(1e-9));

    CHECK_THROWS_AS(cheeger_check(Rational(1), Spectrum{{1.0, 0.9, 0.0}, 0.0, 0}), BoundViolation);
    CHECK_FALSE(trevisan_check(Rational(1), Spectrum{{1.0, 0.0, -0.9}, 0.0, 0}, 0.0, 1, OnViolation::Collect).ok());
}

TEST_CASE("Cheeger and Trevisan equality cases")
{
    auto X = build_complex({{"a", "b", "c"}, {"d", "e", "f"}});
    auto G = build_igraph(X, 0);
    auto spec = spectrum(normalized_adjacency(G));
    CHECK(conductance(G).value == 0);
    CHECK(std::abs(spec.second() - 1.0) < 1e-10);
    CHECK(cheeger_check(Rational(0), spec).ok());

    IGraph square(0, 4);
    square.add_edge(0, 1, 1);
    square.add_edge(1, 2, 1);
    square.add_edge(2, 3, 1);
    square.add_edge(3, 0, 1);
    auto sq = spectrum(normalized_adjacency(square));
    CHECK(bipartiteness_ratio(square).value == 0);
    CHECK(std::abs(sq.smallest() + 1.0) < 1e-10);
    CHECK(trevisan_check(Rational(0), sq).ok());
}

TEST_CASE("Cheeger and Trevisan across the corpus")
{
    for (const auto& X : corpus()) {
        for (int i = 0; i < X.dimension(); ++i) {
            auto G = build_igraph(X, i);
            auto spec = spectrum(normalized_adjacency(G));
            CHECK(cheeger_check(conductance(G).value, spec, 0.0, i, OnViolation::Collect).ok());
            if (G.order() <= 12)
                CHECK(trevisan_check(bipartiteness_ratio(G).value, spec, 0.0, i, OnViolation::Collect).ok());
            auto lazy = lazy_igraph(build_igraph(X, 0));
            auto lspec = spectrum(normalized_adjacency(lazy));
            if (lazy.order() <= 12)
                CHECK(trevisan_check(bipartiteness_ratio(lazy).value, lspec, 0.0, 0, OnViolation::Collect).ok());
        }
    }
}

TEST_CASE("spectrum reports")
{
    Spectrum spec{{1.0, -0.5, -0.5}, 1e-17, 1};
    std::ostringstream out;
    write_spectrum_text(out, spec);
    CHECK(out.str() == "λ[1] = 1\nλ[2] = -0.5\nλ[3] = -0.5\nresidual = 1e-17\n");
    auto j = spectrum_json(spec);
    CHECK(j["eigenvalues"].size() == 3);
    CHECK(j["eigenvalues"][1].get<double>() == -0.5);
    CHECK(j["residual"].get<double>() == 1e-17);
}
