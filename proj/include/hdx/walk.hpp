#pragma once

// Weighted i-graphs, exact transition structure and the two-step high-order
// walk sampler.

#include "hdx/complex.hpp"
#include "hdx/report.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <thread>
#include <vector>

namespace hdx {

/// Undirected multigraph with integer edge weights and optional self-loop
/// weights. For an i-graph the vertices are the i-faces of the complex.
class IGraph {
public:
    IGraph() = default;
    IGraph(int level, std::size_t order) : level_(level), adjacency_(order), loops_(order, 0) {}

    /// Adds `weight` parallel edges between distinct vertices u and v.
    void add_edge(std::size_t u, std::size_t v, std::int64_t weight)
    {
        if (u == v)
            throw Error(ErrorKind::BadParameter, "use set_self_loop for loops");
        if (weight <= 0)
            throw Error(ErrorKind::BadParameter, "edge weights must be positive");
        adjacency_.at(u)[v] += weight;
        adjacency_.at(v)[u] += weight;
    }

    void set_self_loop(std::size_t v, std::int64_t weight) { loops_.at(v) = weight; }

    int level() const { return level_; }
    std::size_t order() const { return adjacency_.size(); }

    std::int64_t edge_weight(std::size_t u, std::size_t v) const
    {
        if (u == v)
            return 0;
        const auto& row = adjacency_.at(u);
        auto it = row.find(v);
        return it == row.end() ? 0 : it->second;
    }

    const std::map<std::size_t, std::int64_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }

    /// Sum of edge weights at v, not counting the self-loop.
    std::int64_t weighted_degree(std::size_t v) const
    {
        std::int64_t total = 0;
        for (const auto& [u, w] : adjacency_.at(v))
            total += w;
        return total;
    }

    std::int64_t self_loop_weight(std::size_t v) const { return loops_.at(v); }
    std::int64_t degree(std::size_t v) const { return weighted_degree(v) + self_loop_weight(v); }

    std::int64_t volume() const
    {
        std::int64_t total = 0;
        for (std::size_t v = 0; v < order(); ++v)
            total += degree(v);
        return total;
    }

    bool connected() const
    {
        if (order() == 0)
            return true;
        std::vector<bool> seen(order(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t reached = 1;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (const auto& [u, w] : adjacency_[v])
                if (!seen[u]) {
                    seen[u] = true;
                    ++reached;
                    stack.push_back(u);
                }
        }
        return reached == order();
    }

private:
    int level_ = -1;
    std::vector<std::map<std::size_t, std::int64_t>> adjacency_;
    std::vector<std::int64_t> loops_;
};

/// G_i: vertices X(i); faces sharing an (i+1)-face tau are joined by deg(tau)
/// parallel edges.
inline IGraph build_igraph(const SimplicialComplex& X, int level)
{
    if (level < 0 || level >= X.dimension())
        throw Error(ErrorKind::LevelOutOfRange,
                    "i-graph level " + std::to_string(level) + " outside [0, " + std::to_string(X.dimension()) + ")");
    IGraph G(level, X.count(level));
    for (std::size_t t = 0; t < X.count(level + 1); ++t) {
        const auto& sub = X.facets(level + 1, t);
        const auto deg = X.degree(level + 1, t);
        for (std::size_t a = 0; a < sub.size(); ++a)
            for (std::size_t b = a + 1; b < sub.size(); ++b)
                G.add_edge(sub[a], sub[b], deg);
    }
    return G;
}

/// Copy of G with a self-loop of weight deg(v) at every vertex.
inline IGraph with_self_loops(const IGraph& G)
{
    IGraph lazy = G;
    for (std::size_t v = 0; v < G.order(); ++v)
        lazy.set_self_loop(v, G.weighted_degree(v));
    return lazy;
}

/// The lazy version of the level-0 graph: the walk stays put with probability 1/2.
inline IGraph lazy_igraph(const IGraph& G0)
{
    if (G0.level() != 0)
        throw Error(ErrorKind::LevelOutOfRange, "lazy walk is defined on the level-0 graph");
    return with_self_loops(G0);
}

using Distribution = std::vector<Rational>;

inline void check_distribution(const IGraph& G, const Distribution& pi)
{
    if (pi.size() != G.order())
        throw Error(ErrorKind::SupportMismatch, "distribution has " + std::to_string(pi.size()) +
                                                    " entries for a graph on " + std::to_string(G.order()) +
                                                    " vertices");
    Rational total = 0;
    for (const auto& p : pi) {
        if (p < 0)
            throw Error(ErrorKind::InvalidDistribution, "negative probability");
        total += p;
    }
    if (total != 1)
        throw Error(ErrorKind::InvalidDistribution, "probabilities sum to " + to_string(total));
}

inline Distribution indicator(const IGraph& G, std::size_t v)
{
    Distribution pi(G.order(), Rational(0));
    pi.at(v) = 1;
    return pi;
}

/// pi(v) = deg(v) / vol(V).
inline Distribution stationary(const IGraph& G)
{
    const auto vol = G.volume();
    if (vol == 0)
        throw Error(ErrorKind::IsolatedVertex, "graph has no edges");
    Distribution pi;
    pi.reserve(G.order());
    for (std::size_t v = 0; v < G.order(); ++v)
        pi.emplace_back(G.degree(v), vol);
    return pi;
}

/// One exact step pi_{t+1} = pi_t (D A).
inline Distribution transition_step(const IGraph& G, const Distribution& pi)
{
    check_distribution(G, pi);
    Distribution next(G.order(), Rational(0));
    for (std::size_t u = 0; u < G.order(); ++u) {
        if (pi[u] == 0)
            continue;
        const auto deg = G.degree(u);
        if (deg == 0)
            throw Error(ErrorKind::IsolatedVertex, "walk reached an isolated vertex");
        const Rational share = pi[u] / deg;
        for (const auto& [v, w] : G.neighbors(u))
            next[v] += share * w;
        if (G.self_loop_weight(u) > 0)
            next[u] += share * G.self_loop_weight(u);
    }
    return next;
}

/// Exact one-step distribution of the two-step sampler started at face
/// `index`, obtained by enumerating its branches: pick tau ⊃ sigma with
/// probability deg(tau)/sum, then one of the i+1 other i-faces of tau.
inline Distribution sampler_branch_distribution(const SimplicialComplex& X, int level, std::size_t index)
{
    if (level < 0 || level >= X.dimension())
        throw Error(ErrorKind::LevelOutOfRange, "walk level " + std::to_string(level));
    Distribution out(X.count(level), Rational(0));
    std::int64_t total = 0;
    for (auto t : X.cofaces(level, index))
        total += X.degree(level + 1, t);
    for (auto t : X.cofaces(level, index)) {
        const Rational pick_tau(X.degree(level + 1, t), total);
        for (auto s : X.facets(level + 1, t))
            if (s != index)
                out[s] += pick_tau / (level + 1);
    }
    return out;
}

/// Seedable generator for walk simulation.
///
/// Algorithm: std::mt19937_64 (its output sequence is fixed by the C++
/// standard), seeded with SplitMix64 applied to seed + stream *
/// 0x9E3779B97F4A7C15. Bounded integers use rejection sampling on the raw
/// 64-bit output, so results are bit-identical across platforms.
class WalkRng {
public:
    explicit WalkRng(std::uint64_t seed, std::uint64_t stream = 0) : engine_(mix(seed + stream * 0x9E3779B97F4A7C15ULL)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound)
    {
        if (bound == 0)
            throw Error(ErrorKind::BadParameter, "empty range");
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

    static std::uint64_t mix(std::uint64_t z)
    {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31U);
    }

private:
    std::mt19937_64 engine_;
};

/// The two-step walk on level i of X.
class WalkSampler {
public:
    WalkSampler(const SimplicialComplex& X, int level) : X_(&X), level_(level)
    {
        if (level < 0 || level >= X.dimension())
            throw Error(ErrorKind::LevelOutOfRange,
                        "walk level " + std::to_string(level) + " outside [0, " + std::to_string(X.dimension()) + ")");
    }

    int level() const { return level_; }

    std::size_t step(std::size_t index, WalkRng& rng) const
    {
        const auto& up = X_->cofaces(level_, index);
        std::int64_t total = 0;
        for (auto t : up)
            total += X_->degree(level_ + 1, t);
        auto r = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total)));
        std::size_t tau = up.back();
        for (auto t : up) {
            r -= X_->degree(level_ + 1, t);
            if (r < 0) {
                tau = t;
                break;
            }
        }
        const auto& down = X_->facets(level_ + 1, tau);
        auto pick = rng.below(static_cast<std::uint64_t>(level_ + 1));
        for (auto s : down) {
            if (s == index)
                continue;
            if (pick == 0)
                return s;
            --pick;
        }
        return down.back();
    }

    std::vector<std::size_t> trajectory(std::size_t start, std::size_t steps, WalkRng& rng) const
    {
        std::vector<std::size_t> path{start};
        path.reserve(steps + 1);
        for (std::size_t t = 0; t < steps; ++t)
            path.push_back(step(path.back(), rng));
        return path;
    }

private:
    const SimplicialComplex* X_;
    int level_;
};

/// Trajectory of `steps` walk steps from sigma0, deterministic given seed.
inline std::vector<Face> simulate_walk(const SimplicialComplex& X, int level, const Face& start, std::size_t steps,
                                       std::uint64_t seed)
{
    WalkSampler sampler(X, level);
    if (start.dimension() != level)
        throw Error(ErrorKind::FaceNotInComplex, "start face {" + X.format(start) + "} is not a " +
                                                     std::to_string(level) + "-face");
    WalkRng rng(seed);
    std::vector<Face> out;
    for (auto idx : sampler.trajectory(X.require_index(start), steps, rng))
        out.push_back(X.face(level, idx));
    return out;
}

/// Endpoint histogram of `trials` independent trajectories. Trajectory k uses
/// stream k of the seed, so counts do not depend on the thread count.
inline std::vector<std::int64_t> simulate_endpoints(const SimplicialComplex& X, int level, std::size_t start,
                                                    std::size_t steps, std::size_t trials, std::uint64_t seed,
                                                    unsigned threads = 1)
{
    WalkSampler sampler(X, level);
    threads = std::max(1U, threads);
    std::vector<std::vector<std::int64_t>> partial(threads, std::vector<std::int64_t>(X.count(level), 0));
    auto work = [&](unsigned worker) {
        for (std::size_t k = worker; k < trials; k += threads) {
            WalkRng rng(seed, k);
            std::size_t at = start;
            for (std::size_t t = 0; t < steps; ++t)
                at = sampler.step(at, rng);
            ++partial[worker][at];
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back(work, w);
        for (auto& th : pool)
            th.join();
    }
    std::vector<std::int64_t> counts(X.count(level), 0);
    for (const auto& p : partial)
        for (std::size_t v = 0; v < counts.size(); ++v)
            counts[v] += p[v];
    return counts;
}

/// Writes `# level=<i> seed=<s> steps=<t>` followed by one face per line.
inline void write_trajectory(std::ostream& out, const SimplicialComplex& X, int level, std::uint64_t seed,
                             const std::vector<Face>& path)
{
    out << "# level=" << level << " seed=" << seed << " steps=" << (path.empty() ? 0 : path.size() - 1) << '\n';
    for (const auto& f : path)
        out << X.format(f, ",") << '\n';
}

inline double l2_distance(const Distribution& a, const Distribution& b)
{
    Rational sq = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        Rational diff = a[k] - b[k];
        sq += diff * diff;
    }
    return std::sqrt(to_double(sq));
}

struct MixingRow {
    std::size_t t = 0;
    double distance = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};

struct MixingReport {
    double degree_ratio = 1.0; ///< d_max / d_min
    double lambda = 0.0;
    std::vector<MixingRow> rows;
    Report checks;
};

/// Checks ||pi_t - pi||_2 <= sqrt(d_max/d_min) lambda^t + tolerance for all
/// t <= T with pi_t computed exactly. `lambda` is max(|lambda_2|, |lambda_n|)
/// of the normalized adjacency matrix.
inline MixingReport verify_mixing_bound(const IGraph& G, const Distribution& initial, std::size_t T, double lambda,
                                        double tolerance, OnViolation policy = OnViolation::Throw)
{
    check_distribution(G, initial);
    if (!G.connected())
        throw Error(ErrorKind::DisconnectedGraph, "mixing bound requested on a disconnected graph");
    std::int64_t dmax = 0;
    std::int64_t dmin = G.degree(0);
    for (std::size_t v = 0; v < G.order(); ++v) {
        dmax = std::max(dmax, G.degree(v));
        dmin = std::min(dmin, G.degree(v));
    }
    MixingReport report;
    report.degree_ratio = static_cast<double>(dmax) / static_cast<double>(dmin);
    report.lambda = lambda;
    const Distribution pi = stationary(G);
    const double scale = std::sqrt(report.degree_ratio);
    Distribution current = initial;
    for (std::size_t t = 0; t <= T; ++t) {
        if (t > 0)
            current = transition_step(G, current);
        MixingRow row;
        row.t = t;
        row.distance = l2_distance(current, pi);
        row.bound = scale * std::pow(lambda, static_cast<double>(t));
        row.margin = row.bound + tolerance - row.distance;
        report.rows.push_back(row);
        report.checks.add({"mixing-bound", static_cast<long>(t), format_double(row.distance),
                           format_double(row.bound), row.margin, row.margin >= 0});
    }
    report.checks.finish(policy);
    return report;
}

} // namespace hdx
