#pragma once

// Exact expansion constants (alpha, epsilon, conductance, bipartiteness), the
// closed-form bounds they feed, and instance-level replay of the inequalities
// behind them.

#include "hdx/cochain.hpp"
#include "hdx/complex.hpp"
#include "hdx/report.hpp"
#include "hdx/spectral.hpp"
#include "hdx/walk.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hdx {

/// Size limits for the exhaustive searches. These are configuration; the
/// defaults keep the worst case around a minute.
struct ExactCaps {
    std::size_t alpha_vertices = 22;    ///< link vertices, 2^n subsets
    std::size_t epsilon_faces = 20;     ///< faces per level, 2^n cochains
    std::size_t conductance_vertices = 22;
    std::size_t bipartite_vertices = 15; ///< 3^n assignments
    std::size_t bipartite_frontier = 12; ///< above the 3^n cap: 3^w states per elimination step
};

enum class Provenance { Exact, Sampled, Heuristic };

inline const char* name(Provenance p)
{
    switch (p) {
    case Provenance::Exact: return "exact";
    case Provenance::Sampled: return "sampled";
    case Provenance::Heuristic: return "heuristic";
    }
    return "exact";
}

/// Lexicographic order on the sorted member lists of two subsets given as
/// bit masks (bit k = element k).
inline bool lex_less(std::uint64_t a, std::uint64_t b)
{
    if (a == b)
        return false;
    const std::uint64_t diff = a ^ b;
    const std::uint64_t low = diff & (~diff + 1);
    const bool a_has = (a & low) != 0;
    const std::uint64_t above = ~((low << 1U) - 1);
    const std::uint64_t other = a_has ? b : a;
    if ((other & above) == 0)
        return !a_has; // the other list ends here, so it is a prefix
    return a_has;
}

inline std::vector<std::size_t> mask_members(std::uint64_t mask)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; mask; ++k, mask >>= 1U)
        if (mask & 1U)
            out.push_back(k);
    return out;
}

// -- skeleton expansion ------------------------------------------------------

/// The 1-skeleton of a link X_sigma in local coordinates: vertex k stands for
/// the (l+1)-face `vertex_face[k]` containing sigma.
struct LinkSkeleton {
    int level = -1;
    std::size_t center = 0;
    std::vector<std::size_t> vertex_face;
    std::vector<std::int64_t> vertex_degree;
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> adjacency;
    std::int64_t vertex_total = 0;
    std::int64_t edge_total = 0;
};

inline LinkSkeleton link_skeleton(const SimplicialComplex& X, int level, std::size_t center)
{
    LinkSkeleton L;
    L.level = level;
    L.center = center;
    std::map<std::size_t, std::size_t> local;
    for (auto t : X.cofaces(level, center)) {
        local.emplace(t, L.vertex_face.size());
        L.vertex_face.push_back(t);
        L.vertex_degree.push_back(X.degree(level + 1, t));
        L.vertex_total += X.degree(level + 1, t);
    }
    L.adjacency.resize(L.vertex_face.size());
    if (level + 2 > X.dimension())
        return L;
    std::vector<std::size_t> seen;
    for (auto t : L.vertex_face)
        for (auto r : X.cofaces(level + 1, t))
            seen.push_back(r);
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (auto r : seen) {
        std::vector<std::size_t> ends;
        for (auto f : X.facets(level + 2, r)) {
            auto it = local.find(f);
            if (it != local.end())
                ends.push_back(it->second);
        }
        const auto w = X.degree(level + 2, r);
        L.adjacency[ends[0]].push_back({ends[1], w});
        L.adjacency[ends[1]].push_back({ends[0], w});
        L.edge_total += w;
    }
    return L;
}

struct AlphaResult {
    Rational value = 0;
    Provenance provenance = Provenance::Exact;
    std::optional<Face> center;       ///< link where the maximum is attained
    std::vector<Vertex> witness;      ///< S, as vertices of X (outside the center)
};

struct SearchOptions {
    ExactCaps caps;
    bool sampled = false;         ///< fall back to random sampling above the caps
    std::size_t trials = 10000;   ///< samples per oversized search
    std::uint64_t seed = 1;
};

namespace detail {

/// Best value of ||E(S)||/||S|| - ||S|| over nonempty S in one link, as the
/// pair (N, S) with value N / (edge_total * S * vertex_total).
struct AlphaCandidate {
    __int128 numerator = 0;
    std::int64_t weight = 1;
    std::uint64_t mask = 0;
    bool set = false;
};

inline bool alpha_better(const AlphaCandidate& cand, const AlphaCandidate& best)
{
    if (!best.set)
        return true;
    const __int128 lhs = cand.numerator * best.weight;
    const __int128 rhs = best.numerator * cand.weight;
    if (lhs != rhs)
        return lhs > rhs;
    return lex_less(cand.mask, best.mask);
}

inline AlphaCandidate alpha_in_link(const LinkSkeleton& L, const SearchOptions& opt, bool& sampled)
{
    const std::size_t m = L.vertex_face.size();
    const __int128 st = L.vertex_total;
    const __int128 es = L.edge_total;
    AlphaCandidate best;
    auto consider = [&](std::uint64_t mask, std::int64_t s_weight, std::int64_t e_weight) {
        AlphaCandidate c;
        c.numerator = static_cast<__int128>(e_weight) * st * st - es * s_weight * s_weight;
        c.weight = s_weight;
        c.mask = mask;
        c.set = true;
        if (alpha_better(c, best))
            best = c;
    };
    if (m <= opt.caps.alpha_vertices) {
        std::uint64_t mask = 0;
        std::int64_t s_weight = 0;
        std::int64_t e_weight = 0;
        const std::uint64_t limit = std::uint64_t{1} << m;
        for (std::uint64_t k = 1; k < limit; ++k) {
            const auto v = static_cast<std::size_t>(__builtin_ctzll(k));
            std::int64_t link_to_set = 0;
            for (const auto& [u, w] : L.adjacency[v])
                if (mask >> u & 1U)
                    link_to_set += w;
            if (mask >> v & 1U) {
                mask &= ~(std::uint64_t{1} << v);
                s_weight -= L.vertex_degree[v];
                e_weight -= link_to_set;
            } else {
                mask |= std::uint64_t{1} << v;
                s_weight += L.vertex_degree[v];
                e_weight += link_to_set;
            }
            consider(mask, s_weight, e_weight);
        }
        return best;
    }
    if (!opt.sampled)
        throw Error(ErrorKind::TooLargeForExact, "link has " + std::to_string(m) + " vertices, exact cap is " +
                                                     std::to_string(opt.caps.alpha_vertices) +
                                                     " (use sampled mode)");
    if (m > 64)
        throw Error(ErrorKind::TooLargeForExact, "link has more than 64 vertices");
    sampled = true;
    WalkRng rng(opt.seed, L.center * 131 + static_cast<std::uint64_t>(L.level + 1));
    for (std::size_t trial = 0; trial < opt.trials; ++trial) {
        std::uint64_t mask = 0;
        for (std::size_t v = 0; v < m; ++v)
            if (rng.below(2))
                mask |= std::uint64_t{1} << v;
        if (!mask)
            continue;
        std::int64_t s_weight = 0;
        std::int64_t e_weight = 0;
        for (std::size_t v = 0; v < m; ++v) {
            if (!(mask >> v & 1U))
                continue;
            s_weight += L.vertex_degree[v];
            for (const auto& [u, w] : L.adjacency[v])
                if (u > v && (mask >> u & 1U))
                    e_weight += w;
        }
        consider(mask, s_weight, e_weight);
    }
    return best;
}

inline Rational to_rational(__int128 value)
{
    const bool negative = value < 0;
    unsigned __int128 magnitude = negative ? static_cast<unsigned __int128>(-value) : static_cast<unsigned __int128>(value);
    BigInt out = 0;
    BigInt place = 1;
    while (magnitude > 0) {
        out += place * static_cast<unsigned>(magnitude % 1000000000U);
        magnitude /= 1000000000U;
        place *= 1000000000U;
    }
    return Rational(negative ? BigInt(-out) : out);
}

} // namespace detail

/// Smallest alpha for which X is an alpha-skeleton expander: the maximum over
/// all faces sigma (including the empty face) and nonempty S of
/// ||E(S)||_sigma / ||S||_sigma - ||S||_sigma, floored at 0. Links without
/// edges impose no constraint.
inline AlphaResult skeleton_alpha(const SimplicialComplex& X, const SearchOptions& opt = {})
{
    AlphaResult result;
    bool sampled = false;
    bool have = false;
    Rational best = 0;
    for (int level = -1; level + 2 <= X.dimension(); ++level) {
        for (std::size_t s = 0; s < X.count(level); ++s) {
            LinkSkeleton L = link_skeleton(X, level, s);
            if (L.edge_total == 0)
                continue;
            auto cand = detail::alpha_in_link(L, opt, sampled);
            if (!cand.set)
                continue;
            Rational value = detail::to_rational(cand.numerator) /
                             (Rational(L.edge_total) * cand.weight * L.vertex_total);
            if (!have || value > best) {
                have = true;
                best = value;
                result.center = X.face(level, s);
                result.witness.clear();
                for (auto k : mask_members(cand.mask)) {
                    const Face& up = X.face(level + 1, L.vertex_face[k]);
                    result.witness.push_back(up.minus(X.face(level, s))[0]);
                }
            }
        }
    }
    result.value = best > 0 ? best : Rational(0);
    result.provenance = sampled ? Provenance::Sampled : Provenance::Exact;
    return result;
}

// -- colorful expansion --------------------------------------------------------

struct EpsilonResult {
    std::optional<Rational> value; ///< empty when no cochain is admissible
    Provenance provenance = Provenance::Exact;
    int level = -1;
    std::vector<std::size_t> witness; ///< face indices at `level`
};

/// min over 0 <= i < d and cochains W with 0 < ||W|| <= 1/2 of ||psi(W)||/||W||.
/// Exact mode walks all 2^|X(i)| cochains in Gray-code order, updating the
/// member counts of each (i+1)-face incrementally.
inline EpsilonResult colorful_epsilon(const SimplicialComplex& X, const SearchOptions& opt = {})
{
    EpsilonResult result;
    bool sampled = false;
    for (int i = 0; i < X.dimension(); ++i) {
        const std::size_t n = X.count(i);
        const std::int64_t total_i = X.degree_sum(i);
        const Rational level_scale(X.degree_sum(i), X.degree_sum(i + 1));
        const std::int64_t per_face = i + 2;

        bool have = false;
        std::int64_t best_psi = 0;
        std::int64_t best_w = 1;
        std::uint64_t best_mask = 0;
        auto consider = [&](std::uint64_t mask, std::int64_t w_deg, std::int64_t psi_deg) {
            if (w_deg == 0 || 2 * w_deg > total_i)
                return;
            if (have) {
                const __int128 lhs = static_cast<__int128>(psi_deg) * best_w;
                const __int128 rhs = static_cast<__int128>(best_psi) * w_deg;
                if (lhs > rhs || (lhs == rhs && !lex_less(mask, best_mask)))
                    return;
            }
            have = true;
            best_psi = psi_deg;
            best_w = w_deg;
            best_mask = mask;
        };

        if (n <= opt.caps.epsilon_faces) {
            std::vector<std::int64_t> inside(X.count(i + 1), 0);
            std::uint64_t mask = 0;
            std::int64_t w_deg = 0;
            std::int64_t psi_deg = 0;
            const std::uint64_t limit = std::uint64_t{1} << n;
            for (std::uint64_t k = 1; k < limit; ++k) {
                const auto f = static_cast<std::size_t>(__builtin_ctzll(k));
                const bool adding = !(mask >> f & 1U);
                mask ^= std::uint64_t{1} << f;
                w_deg += (adding ? 1 : -1) * X.degree(i, f);
                for (auto t : X.cofaces(i, f)) {
                    const bool was = inside[t] > 0 && inside[t] < per_face;
                    inside[t] += adding ? 1 : -1;
                    const bool now = inside[t] > 0 && inside[t] < per_face;
                    if (was != now)
                        psi_deg += (now ? 1 : -1) * X.degree(i + 1, t);
                }
                consider(mask, w_deg, psi_deg);
            }
        } else {
            if (!opt.sampled)
                throw Error(ErrorKind::TooLargeForExact, "level " + std::to_string(i) + " has " + std::to_string(n) +
                                                             " faces, exact cap is " +
                                                             std::to_string(opt.caps.epsilon_faces) +
                                                             " (use sampled mode)");
            if (n > 64)
                throw Error(ErrorKind::TooLargeForExact, "level " + std::to_string(i) + " has more than 64 faces");
            sampled = true;
            WalkRng rng(opt.seed, static_cast<std::uint64_t>(i));
            for (std::size_t trial = 0; trial < opt.trials; ++trial) {
                const auto size = 1 + rng.below(n);
                std::vector<std::size_t> pool(n);
                std::iota(pool.begin(), pool.end(), std::size_t{0});
                std::uint64_t mask = 0;
                for (std::size_t k = 0; k < size; ++k) {
                    const auto pick = k + rng.below(n - k);
                    std::swap(pool[k], pool[pick]);
                    mask |= std::uint64_t{1} << pool[k];
                }
                Cochain W = Cochain::from_indices(X, i, mask_members(mask));
                std::int64_t w_deg = 0;
                for (auto s : W.indices())
                    w_deg += X.degree(i, s);
                std::int64_t psi_deg = 0;
                for (auto t : expanding_faces(X, W).indices())
                    psi_deg += X.degree(i + 1, t);
                consider(mask, w_deg, psi_deg);
            }
        }
        if (!have)
            continue;
        Rational value = Rational(best_psi, best_w) * level_scale;
        if (!result.value || value < *result.value) {
            result.value = value;
            result.level = i;
            result.witness = mask_members(best_mask);
        }
    }
    result.provenance = sampled ? Provenance::Sampled : Provenance::Exact;
    return result;
}

// -- graph constants -------------------------------------------------------------

struct CutResult {
    Rational value = 0;
    std::vector<std::size_t> witness;
    Provenance provenance = Provenance::Exact;
};

/// Conductance: min over nonempty S with vol(S) <= vol(V)/2 of the cut weight
/// over vol(S). Self-loops count toward volume, never toward the cut.
inline CutResult conductance(const IGraph& G, const ExactCaps& caps = {})
{
    const std::size_t n = G.order();
    if (n > caps.conductance_vertices || n > 63)
        throw Error(ErrorKind::TooLargeForExact, "graph has " + std::to_string(n) + " vertices, exact cap is " +
                                                     std::to_string(caps.conductance_vertices));
    for (std::size_t v = 0; v < n; ++v)
        if (G.degree(v) == 0)
            throw Error(ErrorKind::IsolatedVertex, "vertex " + std::to_string(v) + " has no edges");
    const std::int64_t volume = G.volume();
    bool have = false;
    std::int64_t best_cut = 0;
    std::int64_t best_vol = 1;
    std::uint64_t best_mask = 0;
    std::uint64_t mask = 0;
    std::int64_t vol = 0;
    std::int64_t cut = 0;
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < limit; ++k) {
        const auto v = static_cast<std::size_t>(__builtin_ctzll(k));
        mask ^= std::uint64_t{1} << v;
        std::int64_t to_set = 0;
        for (const auto& [u, w] : G.neighbors(v))
            if (mask >> u & 1U)
                to_set += w;
        const std::int64_t delta = G.weighted_degree(v) - 2 * to_set;
        if (mask >> v & 1U) {
            vol += G.degree(v);
            cut += delta;
        } else {
            vol -= G.degree(v);
            cut -= delta;
        }
        if (2 * vol > volume)
            continue;
        if (have) {
            const __int128 lhs = static_cast<__int128>(cut) * best_vol;
            const __int128 rhs = static_cast<__int128>(best_cut) * vol;
            if (lhs > rhs || (lhs == rhs && !lex_less(mask, best_mask)))
                continue;
        }
        have = true;
        best_cut = cut;
        best_vol = vol;
        best_mask = mask;
    }
    if (!have)
        throw Error(ErrorKind::BadParameter, "no subset satisfies the volume constraint");
    return CutResult{Rational(best_cut, best_vol), mask_members(best_mask), Provenance::Exact};
}

/// Upper estimate of the conductance from random subsets: a uniform size,
/// then a uniform subset of that size, replaced by its complement when it
/// holds more than half the volume. Flagged sampled.
inline CutResult conductance_sampled(const IGraph& G, std::size_t trials, std::uint64_t seed)
{
    const std::size_t n = G.order();
    if (n < 2)
        throw Error(ErrorKind::BadParameter, "conductance needs at least two vertices");
    for (std::size_t v = 0; v < n; ++v)
        if (G.degree(v) == 0)
            throw Error(ErrorKind::IsolatedVertex, "vertex " + std::to_string(v) + " has no edges");
    const std::int64_t volume = G.volume();
    WalkRng rng(seed, 11);
    std::vector<std::size_t> pool(n);
    bool have = false;
    CutResult best;
    best.provenance = Provenance::Sampled;
    std::int64_t best_cut = 0;
    std::int64_t best_vol = 1;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        for (std::size_t v = 0; v < n; ++v)
            pool[v] = v;
        const std::size_t size = 1 + static_cast<std::size_t>(rng.below(n - 1));
        std::vector<bool> in(n, false);
        for (std::size_t k = 0; k < size; ++k) {
            const std::size_t j = k + static_cast<std::size_t>(rng.below(n - k));
            std::swap(pool[k], pool[j]);
            in[pool[k]] = true;
        }
        std::int64_t vol = 0;
        std::int64_t cut = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (!in[v])
                continue;
            vol += G.degree(v);
            for (const auto& [u, w] : G.neighbors(v))
                if (!in[u])
                    cut += w;
        }
        if (2 * vol > volume) {
            in.flip();
            vol = volume - vol;
        }
        if (have && static_cast<__int128>(cut) * best_vol >= static_cast<__int128>(best_cut) * vol)
            continue;
        have = true;
        best_cut = cut;
        best_vol = vol;
        best.witness.clear();
        for (std::size_t v = 0; v < n; ++v)
            if (in[v])
                best.witness.push_back(v);
    }
    if (!have)
        throw Error(ErrorKind::BadParameter, "no samples drawn");
    best.value = Rational(best_cut, best_vol);
    return best;
}

struct BipartiteResult {
    Rational value = 0;
    std::vector<int> assignment; ///< 0 = outside S, 1 = S1, 2 = S2
    Provenance provenance = Provenance::Exact;
};

namespace detail {

/// Numerator of the bipartiteness ratio: cut + 2(E(S1) + E(S2)), plus each
/// self-loop inside S once.
inline std::pair<std::int64_t, std::int64_t> bipartite_terms(const IGraph& G, const std::vector<int>& state)
{
    std::int64_t numerator = 0;
    std::int64_t vol = 0;
    for (std::size_t v = 0; v < G.order(); ++v) {
        if (state[v] != 0) {
            vol += G.degree(v);
            numerator += G.self_loop_weight(v);
        }
        for (const auto& [u, w] : G.neighbors(v)) {
            if (u <= v)
                continue;
            const int a = state[v];
            const int b = state[u];
            if ((a == 0) != (b == 0))
                numerator += w;
            else if (a != 0 && a == b)
                numerator += 2 * w;
        }
    }
    return {numerator, vol};
}


/// Greedy elimination order for the frontier dynamic program, and the width
/// it reaches (the largest number of processed vertices with an unprocessed
/// neighbor).
struct EliminationPlan {
    std::vector<std::size_t> order;
    std::size_t width = 0;
};

inline EliminationPlan elimination_plan(const IGraph& G)
{
    const std::size_t n = G.order();
    std::vector<std::size_t> pending(n, 0); // unprocessed neighbors
    for (std::size_t v = 0; v < n; ++v)
        for (const auto& [u, w] : G.neighbors(v))
            if (u != v)
                ++pending[v];
    std::vector<bool> done(n, false);
    std::vector<bool> active(n, false);
    std::size_t frontier = 0;
    EliminationPlan plan;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        std::size_t pick_size = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v])
                continue;
            std::size_t size = frontier + (pending[v] > 0 ? 1 : 0);
            for (const auto& [u, w] : G.neighbors(v))
                if (u != v && active[u] && pending[u] == 1)
                    --size;
            if (pick == n || size < pick_size) {
                pick = v;
                pick_size = size;
            }
        }
        done[pick] = true;
        plan.order.push_back(pick);
        for (const auto& [u, w] : G.neighbors(pick)) {
            if (u == pick)
                continue;
            --pending[u];
            if (active[u] && pending[u] == 0) {
                active[u] = false;
                --frontier;
            }
        }
        if (pending[pick] > 0) {
            active[pick] = true;
            ++frontier;
        }
        plan.width = std::max(plan.width, frontier);
    }
    return plan;
}

struct BipartiteMinimum {
    bool found = false;
    __int128 objective = 0; ///< q * numerator - p * volume
    std::int64_t numerator = 0;
    std::int64_t volume = 0;
};

/// min over assignments with nonempty support of q * N - p * vol, where N and
/// vol are the bipartiteness numerator and volume; `allowed[v]` masks the
/// states vertex v may take.
inline BipartiteMinimum bipartite_objective_min(const IGraph& G, const EliminationPlan& plan, std::int64_t p,
                                                std::int64_t q, const std::vector<unsigned>& allowed)
{
    const std::size_t n = G.order();
    struct Cell {
        __int128 objective;
        std::int64_t numerator;
        std::int64_t volume;
        bool set;
    };
    std::vector<std::size_t> pending(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (const auto& [u, w] : G.neighbors(v))
            if (u != v)
                ++pending[v];

    std::vector<std::size_t> frontier; // digit k of a state is frontier[k]
    std::vector<std::size_t> pow3{1};
    std::vector<Cell> layer(2, Cell{0, 0, 0, false});
    layer[0] = Cell{0, 0, 0, true}; // empty assignment, support empty
    std::vector<int> digits;
    std::vector<std::size_t> position(n, 0);

    for (std::size_t v : plan.order) {
        std::vector<std::pair<std::size_t, std::int64_t>> back; // (frontier digit, weight)
        for (const auto& [u, w] : G.neighbors(v))
            if (u != v && std::find(frontier.begin(), frontier.end(), u) != frontier.end())
                back.push_back({position[u], w});
        for (const auto& [u, w] : G.neighbors(v))
            if (u != v)
                --pending[u];
        std::vector<std::size_t> next;
        std::vector<std::size_t> keep; // old digit index for each surviving frontier vertex
        for (std::size_t k = 0; k < frontier.size(); ++k)
            if (pending[frontier[k]] > 0) {
                next.push_back(frontier[k]);
                keep.push_back(k);
            }
        const bool stays = pending[v] > 0;
        if (stays)
            next.push_back(v);
        std::size_t states = 1;
        for (std::size_t k = 0; k < next.size(); ++k)
            states *= 3;
        std::vector<Cell> out(states * 2, Cell{0, 0, 0, false});

        const std::int64_t loop = G.self_loop_weight(v);
        const std::int64_t deg = G.degree(v);
        digits.assign(frontier.size(), 0);
        for (std::size_t index = 0; index < layer.size(); ++index) {
            const Cell& cell = layer[index];
            if (!cell.set)
                continue;
            const bool nonzero = index & 1U;
            std::size_t rest = index >> 1;
            for (std::size_t k = 0; k < frontier.size(); ++k) {
                digits[k] = static_cast<int>(rest % 3);
                rest /= 3;
            }
            std::size_t base = 0;
            for (std::size_t k = keep.size(); k-- > 0;)
                base = base * 3 + static_cast<std::size_t>(digits[keep[k]]);
            for (int c = 0; c < 3; ++c) {
                if (!(allowed[v] >> c & 1U))
                    continue;
                std::int64_t num = 0;
                for (const auto& [k, w] : back) {
                    const int t = digits[k];
                    if ((c == 0) != (t == 0))
                        num += w;
                    else if (c != 0 && c == t)
                        num += 2 * w;
                }
                std::int64_t vol = 0;
                if (c != 0) {
                    num += loop;
                    vol = deg;
                }
                std::size_t target = base;
                if (stays)
                    target += static_cast<std::size_t>(c) * (states / 3);
                target = target * 2 + ((nonzero || c != 0) ? 1U : 0U);
                const __int128 objective =
                    cell.objective + static_cast<__int128>(q) * num - static_cast<__int128>(p) * vol;
                Cell& slot = out[target];
                if (!slot.set || objective < slot.objective)
                    slot = Cell{objective, cell.numerator + num, cell.volume + vol, true};
            }
        }
        frontier = std::move(next);
        for (std::size_t k = 0; k < frontier.size(); ++k)
            position[frontier[k]] = k;
        layer = std::move(out);
    }
    BipartiteMinimum best;
    for (std::size_t index = 1; index < layer.size(); index += 2) {
        const Cell& cell = layer[index];
        if (cell.set && (!best.found || cell.objective < best.objective))
            best = BipartiteMinimum{true, cell.objective, cell.numerator, cell.volume};
    }
    return best;
}

/// Exact bipartiteness ratio by Dinkelbach iteration over the frontier
/// program, then the lex-first optimal assignment by fixing vertices in
/// index order.
inline BipartiteResult bipartiteness_by_elimination(const IGraph& G, const EliminationPlan& plan)
{
    const std::size_t n = G.order();
    std::vector<unsigned> allowed(n, 0b111);
    std::int64_t p = G.degree(0) + G.self_loop_weight(0);
    std::int64_t q = G.degree(0);
    while (true) {
        const auto m = bipartite_objective_min(G, plan, p, q, allowed);
        if (!m.found || m.objective >= 0)
            break;
        p = m.numerator;
        q = m.volume;
    }
    std::vector<int> state(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        for (int c = 0; c < 3; ++c) {
            allowed[v] = 1U << c;
            if (c == 2)
                break;
            const auto m = bipartite_objective_min(G, plan, p, q, allowed);
            if (m.found && m.objective <= 0)
                break;
        }
        state[v] = std::countr_zero(allowed[v]);
    }
    return BipartiteResult{Rational(p, q), state, Provenance::Exact};
}

} // namespace detail

/// Local search upper bound on the bipartiteness ratio for graphs above the
/// exact cap: random restarts, then single-vertex moves while they improve.
inline BipartiteResult bipartiteness_heuristic(const IGraph& G, std::size_t restarts, std::uint64_t seed)
{
    const std::size_t n = G.order();
    WalkRng rng(seed, 7);
    bool have = false;
    BipartiteResult best;
    best.provenance = Provenance::Heuristic;
    auto ratio_of = [&](const std::vector<int>& s) -> std::optional<Rational> {
        auto [num, vol] = detail::bipartite_terms(G, s);
        if (vol == 0)
            return std::nullopt;
        return Rational(num, vol);
    };
    for (std::size_t r = 0; r < restarts; ++r) {
        std::vector<int> state(n);
        for (auto& s : state)
            s = static_cast<int>(rng.below(3));
        state[rng.below(n)] = 1;
        auto current = ratio_of(state);
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t v = 0; v < n && !improved; ++v) {
                for (int to = 0; to < 3 && !improved; ++to) {
                    if (to == state[v])
                        continue;
                    const int was = state[v];
                    state[v] = to;
                    auto candidate = ratio_of(state);
                    if (candidate && (!current || *candidate < *current)) {
                        current = candidate;
                        improved = true;
                    } else {
                        state[v] = was;
                    }
                }
            }
        }
        if (current && (!have || *current < best.value)) {
            have = true;
            best.value = *current;
            best.assignment = state;
        }
    }
    return best;
}

/// min over S and splits S = S1 ⊔ S2 of (|E(S,S̄)| + 2(|E(S1)| + |E(S2)|)) / vol(S),
/// by enumerating all 3^n assignments. Larger graphs go through the frontier
/// program when their elimination width fits; otherwise this throws or, with
/// `heuristic_fallback`, returns a flagged local-search upper bound. Both
/// exact paths return the lex-first optimal assignment.
inline BipartiteResult bipartiteness_ratio(const IGraph& G, const ExactCaps& caps = {}, bool heuristic_fallback = false,
                                           std::uint64_t seed = 1)
{
    const std::size_t n = G.order();
    if (n > caps.bipartite_vertices) {
        for (std::size_t v = 0; v < n; ++v)
            if (G.degree(v) == 0)
                throw Error(ErrorKind::IsolatedVertex, "vertex " + std::to_string(v) + " has degree 0");
        const auto plan = detail::elimination_plan(G);
        if (plan.width <= caps.bipartite_frontier)
            return detail::bipartiteness_by_elimination(G, plan);
        if (heuristic_fallback)
            return bipartiteness_heuristic(G, 200, seed);
        throw Error(ErrorKind::TooLargeForExact,
                    "graph has " + std::to_string(n) + " vertices and elimination width " + std::to_string(plan.width) +
                        ", exact caps are " + std::to_string(caps.bipartite_vertices) + " (3^n search) and width " +
                        std::to_string(caps.bipartite_frontier));
    }
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> earlier(n);
    for (std::size_t v = 0; v < n; ++v)
        for (const auto& [u, w] : G.neighbors(v))
            if (u < v)
                earlier[v].push_back({u, w});

    std::vector<int> state(n, 0);
    std::vector<std::int64_t> numerator(n + 1, 0);
    std::vector<std::int64_t> volume(n + 1, 0);
    bool have = false;
    std::int64_t best_num = 0;
    std::int64_t best_vol = 1;
    std::vector<int> best_state;

    // Iterative depth-first enumeration; state[v] = -1 means "not yet tried".
    std::size_t depth = 0;
    if (n == 0)
        throw Error(ErrorKind::BadParameter, "empty graph");
    state.assign(n, -1);
    while (true) {
        if (depth == n) {
            if (volume[n] > 0) {
                bool better = !have;
                if (have) {
                    const __int128 lhs = static_cast<__int128>(numerator[n]) * best_vol;
                    const __int128 rhs = static_cast<__int128>(best_num) * volume[n];
                    better = lhs < rhs;
                }
                if (better) {
                    have = true;
                    best_num = numerator[n];
                    best_vol = volume[n];
                    best_state = state;
                }
            }
            --depth;
            continue;
        }
        const std::size_t v = depth;
        if (state[v] == 2) {
            state[v] = -1;
            if (depth == 0)
                break;
            --depth;
            continue;
        }
        const int s = ++state[v];
        std::int64_t add = 0;
        for (const auto& [u, w] : earlier[v]) {
            const int t = state[u];
            if ((s == 0) != (t == 0))
                add += w;
            else if (s != 0 && s == t)
                add += 2 * w;
        }
        if (s != 0)
            add += G.self_loop_weight(v);
        numerator[depth + 1] = numerator[depth] + add;
        volume[depth + 1] = volume[depth] + (s != 0 ? G.degree(v) : 0);
        ++depth;
    }
    if (!have)
        throw Error(ErrorKind::IsolatedVertex, "graph has no volume");
    return BipartiteResult{Rational(best_num, best_vol), best_state, Provenance::Exact};
}

// -- closed-form bounds ------------------------------------------------------------

/// (2^(1/2^d) - 1) / sqrt(2): alpha must stay below this for the colorful bound.
inline double alpha_threshold(int d)
{
    return (std::pow(2.0, 1.0 / std::pow(2.0, d)) - 1.0) / std::sqrt(2.0);
}

/// epsilon(d, alpha) = ((2^(1/2^d) - 1 - sqrt(2) alpha) / (2 sqrt(2) d))^d.
inline double theorem_epsilon(int d, double alpha)
{
    if (d < 1)
        throw Error(ErrorKind::DimensionTooSmall, "dimension must be at least 1");
    if (!(alpha < alpha_threshold(d)))
        throw Error(ErrorKind::AlphaTooLarge, "alpha " + format_double(alpha) + " is not below " +
                                                  format_double(alpha_threshold(d)));
    const double base = (std::pow(2.0, 1.0 / std::pow(2.0, d)) - 1.0 - std::sqrt(2.0) * alpha) /
                        (2.0 * std::sqrt(2.0) * d);
    return std::pow(base, d);
}

struct MuValue {
    double value = 1.0;
    double epsilon_used = 0.0;
    bool clamped = false; ///< epsilon > 1 was replaced by 1
};

/// mu = 1 - min(epsilon, 1)^2 / (2 (d+1)^2).
inline MuValue theorem_mu(int d, double epsilon)
{
    if (d <= 1)
        throw Error(ErrorKind::DimensionTooSmall, "rapid mixing bound needs d > 1");
    MuValue mu;
    mu.clamped = epsilon > 1.0;
    mu.epsilon_used = std::min(epsilon, 1.0);
    mu.value = 1.0 - mu.epsilon_used * mu.epsilon_used / (2.0 * (d + 1) * (d + 1));
    return mu;
}

/// mu = 1 - epsilon(d, alpha)^2 / (2 (d+1)^2).
inline double theorem_mu_from_alpha(int d, double alpha)
{
    if (d <= 1)
        throw Error(ErrorKind::DimensionTooSmall, "rapid mixing bound needs d > 1");
    return theorem_mu(d, theorem_epsilon(d, alpha)).value;
}

/// Per-level bound for the walk on dimension i:
/// mu = 1 - ((2^(1/2^(i+1)) - 1 - sqrt(2) alpha) / (2 sqrt(2) (i+1)))^(2(i+1)) / (2 (i+2)^2).
inline double stronger_mu(int level, double alpha)
{
    if (level < 0)
        throw Error(ErrorKind::LevelOutOfRange, "level must be non-negative");
    const double top = std::pow(2.0, 1.0 / std::pow(2.0, level + 1)) - 1.0;
    if (!(alpha < top / std::sqrt(2.0)))
        throw Error(ErrorKind::AlphaTooLarge, "alpha " + format_double(alpha) + " is not below " +
                                                  format_double(top / std::sqrt(2.0)));
    const double base = (top - std::sqrt(2.0) * alpha) / (2.0 * std::sqrt(2.0) * (level + 1));
    return 1.0 - std::pow(base, 2.0 * (level + 1)) / (2.0 * (level + 2) * (level + 2));
}

// -- lemma and theorem checks -----------------------------------------------------

/// Phi(G_i) >= epsilon / (i+2) for every 0 <= i < d, exactly.
inline Report verify_conductance_lemma(const SimplicialComplex& X, const Rational& epsilon, const ExactCaps& caps = {},
                                       OnViolation policy = OnViolation::Throw)
{
    Report report;
    for (int i = 0; i < X.dimension(); ++i) {
        const Rational phi = conductance(build_igraph(X, i), caps).value;
        const Rational rhs = epsilon / (i + 2);
        report.add({"bound-conductance", i, to_string(phi), to_string(rhs), to_double(phi - rhs), phi >= rhs});
    }
    report.finish(policy);
    return report;
}

/// beta(G_i) >= 1/(i+2) for every 1 <= i < d, exactly.
inline Report verify_bipartiteness_lemma(const SimplicialComplex& X, const ExactCaps& caps = {},
                                         OnViolation policy = OnViolation::Throw)
{
    Report report;
    for (int i = 1; i < X.dimension(); ++i) {
        const Rational beta = bipartiteness_ratio(build_igraph(X, i), caps).value;
        const Rational rhs(1, i + 2);
        report.add({"bound-bipartiteness", i, to_string(beta), to_string(rhs), to_double(beta - rhs), beta >= rhs});
    }
    report.finish(policy);
    return report;
}

/// Exact epsilon >= epsilon(d, alpha) whenever alpha is below the threshold.
/// Above the threshold the check is recorded as not applicable.
inline Report verify_colorful_criterion(int d, const Rational& alpha, const Rational& epsilon,
                                        OnViolation policy = OnViolation::Throw)
{
    Report report;
    const double a = to_double(alpha);
    if (!(a < alpha_threshold(d))) {
        report.notes.push_back("alpha " + to_string(alpha) + " is not below the colorful threshold " +
                               format_double(alpha_threshold(d)) + "; criterion not applicable");
        return report;
    }
    const double bound = theorem_epsilon(d, a);
    const double eps = to_double(epsilon);
    report.add({"colorful-criterion", d, to_string(epsilon), format_double(bound), eps - bound, eps >= bound});
    report.finish(policy);
    return report;
}

struct ProofTrace {
    Report report;
    bool good_dimension_applies = false;
    std::vector<int> good_dimensions; ///< j satisfying the good-dimension inequality
};

/// Evaluates both sides of the eight inequalities behind the colorful
/// expansion bound on one instance (X, W, eta, c), exactly. `alpha` must be
/// a valid skeleton-expansion constant of X (e.g. skeleton_alpha(X).value).
inline ProofTrace verify_proof_trace(const SimplicialComplex& X, const Cochain& W, const Rational& eta,
                                     const Rational& c, const Rational& alpha,
                                     OnViolation policy = OnViolation::Throw)
{
    check_fatness(eta);
    if (!(c > 0 && c <= Rational(1, 2)))
        throw Error(ErrorKind::BadParameter, "c = " + to_string(c) + " is not in (0, 1/2]");
    check_cochain(X, W);
    const int i = W.dimension();
    if (i < 0 || i >= X.dimension())
        throw Error(ErrorKind::TopDimension, "proof trace needs 0 <= dim W < d");

    const FatCascade S = fat_cascade(X, W, eta);
    const FullLevels F = full_levels(X, S);
    const Cochain gamma = container(X, W);
    const Rational w_norm = norm(X, W);

    ProofTrace trace;
    Report& report = trace.report;
    auto record = [&](const char* name, long level, const Rational& lhs, const Rational& rhs, bool greater_equal) {
        const bool ok = greater_equal ? lhs >= rhs : lhs <= rhs;
        const Rational slack = greater_equal ? lhs - rhs : rhs - lhs;
        report.add({name, level, to_string(lhs), to_string(rhs), to_double(slack), ok});
    };
    auto eta_pow = [&](std::int64_t e) { return pow(eta, static_cast<std::uint64_t>(e)); };
    auto two_pow = [](int e) { return std::int64_t{1} << e; };

    // Pr[S^k and not S^(k-1)] for k = 0..i.
    std::vector<Rational> fat_on_thin(static_cast<std::size_t>(i + 1));
    for (int k = 0; k <= i; ++k)
        fat_on_thin[static_cast<std::size_t>(k)] = chain_joint_prob(X, in(S.level(k)), not_in(S.level(k - 1)));
    auto fot = [&](int k) -> const Rational& { return fat_on_thin[static_cast<std::size_t>(k)]; };

    // Lemma: ||W|| >= eta^(2^(i-j) - 1) ||S^j||, for -1 <= j <= i.
    for (int j = -1; j <= i; ++j)
        record("fat-faces-upper-bound", j, w_norm, eta_pow(two_pow(i - j) - 1) * norm(X, S.level(j)), true);

    // Lemma: ||W|| <= ||S^j|| + sum_{k=j+1}^{i} Pr[S^k and not S^(k-1)].
    for (int j = -1; j <= i; ++j) {
        Rational rhs = norm(X, S.level(j));
        for (int k = j + 1; k <= i; ++k)
            rhs += fot(k);
        record("cochain-upper-bound", j, w_norm, rhs, false);
    }

    // Proposition: exists j with Pr[S^j and not S^(j-1)] >= c^j/(i+1) ||W||,
    // whenever ||W|| < eta^(2^(i+1) - 1).
    trace.good_dimension_applies = w_norm < eta_pow(two_pow(i + 1) - 1);
    Rational best_slack = 0;
    bool have_slack = false;
    for (int j = 0; j <= i; ++j) {
        const Rational rhs = pow(c, static_cast<std::uint64_t>(j)) / (i + 1) * w_norm;
        const Rational slack = fot(j) - rhs;
        if (slack >= 0)
            trace.good_dimensions.push_back(j);
        if (!have_slack || slack > best_slack) {
            best_slack = slack;
            have_slack = true;
        }
    }
    if (trace.good_dimension_applies) {
        std::string found;
        for (int j : trace.good_dimensions)
            found += (found.empty() ? "" : ",") + std::to_string(j);
        report.add({"good-dimension", i, "{" + found + "}", "nonempty", to_double(best_slack),
                    !trace.good_dimensions.empty()});
    }

    for (int j = 0; j <= i; ++j) {
        const Cochain& thin = S.level(j - 1);
        // Proposition: Pr[Gamma and not S^(j-1)] >= eta^(2^(i-j) - 1) Pr[S^j and not S^(j-1)].
        record("container-bound", j, chain_joint_prob(X, in(gamma), not_in(thin)),
               eta_pow(two_pow(i - j) - 1) * fot(j), true);

        // Proposition: full (i+1)-faces over non-fat (j-1)-faces.
        const Rational full_top = chain_joint_prob(X, in(F.level(i + 1)), not_in(thin));
        Rational rhs = (eta_pow(two_pow(i - j)) + alpha) * fot(j);
        for (int k = j + 1; k <= i; ++k)
            rhs += Rational(k + 1) * (eta_pow(two_pow(i - k)) + alpha) * fot(k);
        record("full-faces-upper-bound", j, full_top, rhs, false);

        // Lemma: Pr[F^(i+1) and not S^(j-1)] <= Pr[F^(j+1) and not S^(j-1)]
        //        + sum_{k=j+2}^{i+1} Pr[F^k and not F^(k-1)].
        Rational chain = chain_joint_prob(X, in(F.level(j + 1)), not_in(thin));
        for (int k = j + 2; k <= i + 1; ++k)
            chain += chain_joint_prob(X, in(F.level(k)), not_in(F.level(k - 1)));
        record("full-on-non-fat-bound", j, full_top, chain, false);
    }

    for (int k = 1; k <= i + 1; ++k) {
        const Rational full_thin = chain_joint_prob(X, in(F.level(k)), not_in(S.level(k - 2)));
        // Lemma: Pr[F^k and not F^(k-1)] <= k Pr[F^k and not S^(k-2)].
        record("full-contain-not-full-bound", k, chain_joint_prob(X, in(F.level(k)), not_in(F.level(k - 1))),
               Rational(k) * full_thin, false);
        // Lemma: Pr[F^k and not S^(k-2)] <= (eta^(2^(i-k+1)) + alpha) Pr[S^(k-1) and not S^(k-2)].
        record("k-full-and-k-2-not-fat", k, full_thin, (eta_pow(two_pow(i - k + 1)) + alpha) * fot(k - 1), false);
    }

    report.finish(policy);
    return trace;
}

/// A random proof-trace instance: a level below the top, a random cochain
/// there, eta = a/20 and c = 1/b.
struct TraceInstance {
    Cochain cochain;
    Rational eta;
    Rational c;
};

inline TraceInstance draw_trace_instance(const SimplicialComplex& X, WalkRng& rng)
{
    TraceInstance inst;
    const int level = static_cast<int>(rng.below(static_cast<std::uint64_t>(X.dimension())));
    inst.cochain = Cochain::empty(X, level);
    const auto n = X.count(level);
    // Mix sparse and dense cochains so both fat and thin cascades appear.
    const auto density = 1 + rng.below(4);
    for (std::size_t s = 0; s < n; ++s)
        if (rng.below(4) < density - (density == 4 ? 1 : 0))
            inst.cochain.insert(s);
    inst.eta = Rational(static_cast<long>(1 + rng.below(19)), 20);
    inst.c = Rational(1, static_cast<long>(2 + rng.below(9)));
    return inst;
}

/// For every 0 <= i < d: max(|lambda_2|, |lambda_min|) of the normalized
/// adjacency of G_i (lazy G_0 at i = 0) is at most mu = 1 - eps^2/(2(d+1)^2)
/// with eps clamped to 1; at i = 0 also the lazy transform
/// lambda'_2 = (1 + lambda_2)/2 and lambda'_min >= 0, each within `tolerance`.
inline Report mu_vs_spectrum(const SimplicialComplex& X, const Rational& epsilon, double tolerance,
                             OnViolation policy = OnViolation::Throw)
{
    const int d = X.dimension();
    const MuValue mu = theorem_mu(d, to_double(epsilon));
    Report report;
    if (mu.clamped)
        report.notes.push_back("epsilon " + to_string(epsilon) + " clamped to 1");
    for (int i = 0; i < d; ++i) {
        const IGraph G = build_igraph(X, i);
        if (i == 0) {
            const Spectrum plain = spectrum(normalized_adjacency(G));
            const Spectrum lazy = spectrum(normalized_adjacency(lazy_igraph(G)));
            const double expected = (1.0 + plain.second()) / 2.0;
            const double gap = std::abs(lazy.second() - expected);
            const double allowance = 2 * tolerance + plain.residual + lazy.residual;
            report.add({"lazy-lambda2", 0, format_double(lazy.second()), format_double(expected), allowance - gap,
                        gap <= allowance});
            const double floor_margin = lazy.smallest() + tolerance + lazy.residual;
            report.add({"lazy-lambda-min", 0, format_double(lazy.smallest()), "0", floor_margin, floor_margin >= 0});
            const double m = lazy.second_magnitude();
            const double margin = mu.value + tolerance + lazy.residual - m;
            report.add({"spectral-mu", 0, format_double(m), format_double(mu.value), margin, margin >= 0});
        } else {
            const Spectrum spec = spectrum(normalized_adjacency(G));
            const double m = spec.second_magnitude();
            const double margin = mu.value + tolerance + spec.residual - m;
            report.add({"spectral-mu", i, format_double(m), format_double(mu.value), margin, margin >= 0});
        }
    }
    report.finish(policy);
    return report;
}

// -- certificate -------------------------------------------------------------------------

struct ExpansionCertificate {
    int dimension = 0;
    AlphaResult alpha;
    EpsilonResult epsilon;
    std::vector<CutResult> conductance;                      ///< level i = 0..d-1
    std::vector<std::optional<BipartiteResult>> bipartiteness; ///< level 0 left empty
    std::optional<MuValue> mu_thm2;
    std::optional<double> mu_thm3;
    std::vector<std::optional<double>> mu_stronger;
};

struct CertifyOptions {
    SearchOptions search;
    bool heuristic_bipartiteness = false; ///< local search above the 3^n cap
};

inline ExpansionCertificate certify(const SimplicialComplex& X, const CertifyOptions& opt = {})
{
    ExpansionCertificate cert;
    const int d = X.dimension();
    cert.dimension = d;
    cert.alpha = skeleton_alpha(X, opt.search);
    cert.epsilon = colorful_epsilon(X, opt.search);
    cert.bipartiteness.resize(static_cast<std::size_t>(std::max(d, 0)));
    for (int i = 0; i < d; ++i) {
        const IGraph G = build_igraph(X, i);
        if (opt.search.sampled && G.order() > opt.search.caps.conductance_vertices)
            cert.conductance.push_back(conductance_sampled(G, opt.search.trials, opt.search.seed));
        else
            cert.conductance.push_back(conductance(G, opt.search.caps));
        if (i >= 1)
            cert.bipartiteness[static_cast<std::size_t>(i)] =
                bipartiteness_ratio(G, opt.search.caps, opt.heuristic_bipartiteness, opt.search.seed);
    }
    const double a = to_double(cert.alpha.value);
    if (d > 1) {
        if (cert.epsilon.value)
            cert.mu_thm2 = theorem_mu(d, to_double(*cert.epsilon.value));
        if (a < alpha_threshold(d))
            cert.mu_thm3 = theorem_mu_from_alpha(d, a);
        for (int i = 0; i < d; ++i) {
            const double top = (std::pow(2.0, 1.0 / std::pow(2.0, i + 1)) - 1.0) / std::sqrt(2.0);
            cert.mu_stronger.push_back(a < top ? std::optional<double>(stronger_mu(i, a)) : std::nullopt);
        }
    }
    return cert;
}

inline nlohmann::json to_json(const SimplicialComplex& X, const ExpansionCertificate& cert)
{
    using nlohmann::json;
    json out;
    out["alpha"] = to_string(cert.alpha.value);
    out["epsilon"] = cert.epsilon.value ? json(to_string(*cert.epsilon.value)) : json(nullptr);
    json conductance = json::array();
    for (const auto& c : cert.conductance)
        conductance.push_back(to_string(c.value));
    out["conductance"] = conductance;
    json bipartite = json::array();
    for (const auto& b : cert.bipartiteness)
        bipartite.push_back(b ? json(to_string(b->value)) : json(nullptr));
    out["bipartiteness"] = bipartite;

    json mu;
    mu["thm2"] = cert.mu_thm2 ? json(round12(cert.mu_thm2->value)) : json(nullptr);
    mu["thm2_epsilon_clamped"] = cert.mu_thm2 ? json(cert.mu_thm2->clamped) : json(nullptr);
    mu["thm3"] = cert.mu_thm3 ? json(round12(*cert.mu_thm3)) : json(nullptr);
    json stronger = json::array();
    for (const auto& s : cert.mu_stronger)
        stronger.push_back(s ? json(round12(*s)) : json(nullptr));
    mu["stronger"] = stronger;
    out["mu"] = mu;

    json flags;
    flags["alpha"] = name(cert.alpha.provenance);
    flags["epsilon"] = name(cert.epsilon.provenance);
    std::string cflag = "exact";
    for (const auto& c : cert.conductance)
        if (c.provenance != Provenance::Exact)
            cflag = name(c.provenance);
    flags["conductance"] = cflag;
    std::string bflag = "exact";
    for (const auto& b : cert.bipartiteness)
        if (b && b->provenance != Provenance::Exact)
            bflag = name(b->provenance);
    flags["bipartiteness"] = bflag;
    out["flags"] = flags;

    auto face_text = [&](const Face& f) { return "{" + X.format(f) + "}"; };
    json witnesses;
    json alpha_w;
    alpha_w["center"] = cert.alpha.center ? json(face_text(*cert.alpha.center)) : json(nullptr);
    json alpha_set = json::array();
    for (auto v : cert.alpha.witness)
        alpha_set.push_back(X.label(v));
    alpha_w["subset"] = alpha_set;
    witnesses["alpha"] = alpha_w;

    json eps_w;
    eps_w["level"] = cert.epsilon.value ? json(cert.epsilon.level) : json(nullptr);
    json eps_faces = json::array();
    for (auto s : cert.epsilon.witness)
        eps_faces.push_back(face_text(X.face(cert.epsilon.level, s)));
    eps_w["cochain"] = eps_faces;
    witnesses["epsilon"] = eps_w;

    json cond_w = json::array();
    for (std::size_t i = 0; i < cert.conductance.size(); ++i) {
        json set = json::array();
        for (auto s : cert.conductance[i].witness)
            set.push_back(face_text(X.face(static_cast<int>(i), s)));
        cond_w.push_back(set);
    }
    witnesses["conductance"] = cond_w;

    json bip_w = json::array();
    for (std::size_t i = 0; i < cert.bipartiteness.size(); ++i) {
        if (!cert.bipartiteness[i]) {
            bip_w.push_back(nullptr);
            continue;
        }
        json s1 = json::array();
        json s2 = json::array();
        const auto& a = cert.bipartiteness[i]->assignment;
        for (std::size_t v = 0; v < a.size(); ++v) {
            if (a[v] == 1)
                s1.push_back(face_text(X.face(static_cast<int>(i), v)));
            if (a[v] == 2)
                s2.push_back(face_text(X.face(static_cast<int>(i), v)));
        }
        bip_w.push_back({{"S1", s1}, {"S2", s2}});
    }
    witnesses["bipartiteness"] = bip_w;
    out["witnesses"] = witnesses;
    return out;
}

} // namespace hdx
