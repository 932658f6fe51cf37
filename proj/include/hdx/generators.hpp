#pragma once

// Complex families (complete, complete multipartite, random) and the
// partite-regular structure with its skeleton mixing check.

#include "hdx/complex.hpp"
#include "hdx/report.hpp"
#include "hdx/spectral.hpp"
#include "hdx/walk.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hdx {

namespace detail {

inline std::vector<std::string> numbered_labels(std::size_t n)
{
    std::vector<std::string> labels;
    for (std::size_t v = 0; v < n; ++v)
        labels.push_back(std::to_string(v));
    return labels;
}

inline std::vector<Face> all_subsets(std::size_t n, std::size_t size)
{
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});
    std::vector<Face> out;
    for_each_subface(Face::from_vertices(all), size, [&](const Face& f) { out.push_back(f); });
    return out;
}

} // namespace detail

/// All (d+1)-subsets of n vertices labelled "0".."n-1".
inline SimplicialComplex complete_complex(int n, int d)
{
    if (d < 0 || n < d + 1)
        throw Error(ErrorKind::TooFewVertices, "complete complex needs n >= d+1 (n=" + std::to_string(n) +
                                                   ", d=" + std::to_string(d) + ")");
    const auto count = static_cast<std::size_t>(n);
    return SimplicialComplex::from_maximal_faces(detail::numbered_labels(count),
                                                 detail::all_subsets(count, static_cast<std::size_t>(d + 1)));
}

/// Part k has vertices labelled by the k-th letter and a 1-based index
/// ("a1", "a2", "b1", ...); the maximal faces are all transversals.
inline SimplicialComplex complete_multipartite_complex(const std::vector<int>& part_sizes)
{
    if (part_sizes.empty())
        throw Error(ErrorKind::BadParameter, "need at least one part");
    if (part_sizes.size() > 26)
        throw Error(ErrorKind::BadParameter, "at most 26 parts");
    std::vector<std::string> labels;
    std::vector<std::vector<Vertex>> parts;
    for (std::size_t k = 0; k < part_sizes.size(); ++k) {
        if (part_sizes[k] < 1)
            throw Error(ErrorKind::BadParameter, "part sizes must be at least 1");
        parts.emplace_back();
        for (int m = 1; m <= part_sizes[k]; ++m) {
            parts.back().push_back(static_cast<Vertex>(labels.size()));
            labels.push_back(std::string(1, static_cast<char>('a' + k)) + std::to_string(m));
        }
    }
    std::vector<Face> maximal;
    std::vector<std::size_t> pick(parts.size(), 0);
    while (true) {
        std::vector<Vertex> vs;
        for (std::size_t k = 0; k < parts.size(); ++k)
            vs.push_back(parts[k][pick[k]]);
        maximal.push_back(Face::from_vertices(vs));
        std::size_t k = parts.size();
        while (k > 0) {
            --k;
            if (++pick[k] < parts[k].size())
                break;
            pick[k] = 0;
            if (k == 0) {
                return SimplicialComplex::from_maximal_faces(std::move(labels), std::move(maximal));
            }
        }
    }
}

/// Each d-subset of n vertices is kept independently with probability p; the
/// complex is the closure of the kept faces, so lower faces that no kept
/// face covers are pruned.
inline SimplicialComplex random_lm_complex(int n, int d, double p, std::uint64_t seed)
{
    if (!(p > 0.0 && p <= 1.0))
        throw Error(ErrorKind::BadParameter, "probability must be in (0, 1]");
    if (d < 0 || n < d + 1)
        throw Error(ErrorKind::TooFewVertices, "random complex needs n >= d+1");
    const auto count = static_cast<std::size_t>(n);
    WalkRng rng(seed);
    std::vector<Face> kept;
    for (const auto& f : detail::all_subsets(count, static_cast<std::size_t>(d + 1)))
        if (rng.uniform() < p)
            kept.push_back(f);
    if (kept.empty())
        throw Error(ErrorKind::EmptyAfterPruning, "no " + std::to_string(d) + "-face was selected");
    return SimplicialComplex::from_maximal_faces(detail::numbered_labels(count), std::move(kept));
}

// -- partite regular structure -----------------------------------------------------

/// Parts V_0..V_d and the containment constants k_I^J, keyed by bit masks
/// of part indices (I a proper subset of J).
struct PartiteStructure {
    std::vector<std::vector<Vertex>> parts;
    std::vector<int> color; ///< part index per vertex label; -1 for unused labels
    std::map<std::pair<unsigned, unsigned>, std::int64_t> constants;

    std::int64_t k(unsigned I, unsigned J) const { return constants.at({I, J}); }
};

enum class PartiteFailureKind { NotColorable, NotRegular };

struct PartiteFailure {
    PartiteFailureKind kind;
    std::string witness;
};

inline const char* name(PartiteFailureKind kind)
{
    return kind == PartiteFailureKind::NotColorable ? "NotColorable" : "NotRegular";
}

using PartiteCheck = std::variant<PartiteStructure, PartiteFailure>;

namespace detail {

inline std::string mask_text(unsigned mask)
{
    std::string out = "{";
    for (unsigned k = 0; mask >> k; ++k)
        if (mask >> k & 1U)
            out += (out.size() > 1 ? "," : "") + std::to_string(k);
    return out + "}";
}

} // namespace detail

/// Colors X(0) with d+1 colors so that every d-face is a transversal (the
/// first d-face gets colors 0..d in vertex order, the rest by backtracking),
/// then counts k_I^J for every I strictly inside J.
inline PartiteCheck check_partite_regular(const SimplicialComplex& X)
{
    const int d = X.dimension();
    if (d < 0 || d > 8)
        throw Error(ErrorKind::BadParameter, "partite check supports 0 <= d <= 8");
    const auto colors = static_cast<unsigned>(d + 1);
    const std::size_t nv = X.count(0);

    std::vector<std::vector<std::size_t>> adjacent(nv);
    if (d >= 1)
        for (std::size_t e = 0; e < X.count(1); ++e) {
            const auto& ends = X.facets(1, e);
            adjacent[ends[0]].push_back(ends[1]);
            adjacent[ends[1]].push_back(ends[0]);
        }

    std::vector<int> color(nv, -1);
    const Face& first = X.face(d, 0);
    for (std::size_t k = 0; k < first.size(); ++k)
        color[X.require_index(Face{first[k]})] = static_cast<int>(k);
    std::vector<std::size_t> order;
    for (std::size_t v = 0; v < nv; ++v)
        if (color[v] < 0)
            order.push_back(v);
    std::size_t pos = 0;
    while (pos < order.size()) {
        const std::size_t v = order[pos];
        bool placed = false;
        for (int c = color[v] + 1; c < static_cast<int>(colors) && !placed; ++c) {
            bool clash = false;
            for (auto u : adjacent[v])
                clash = clash || color[u] == c;
            if (!clash) {
                color[v] = c;
                placed = true;
            }
        }
        if (placed) {
            ++pos;
            continue;
        }
        color[v] = -1;
        if (pos == 0)
            return PartiteFailure{PartiteFailureKind::NotColorable,
                                  "no " + std::to_string(colors) + "-coloring makes every " + std::to_string(d) +
                                      "-face a transversal"};
        --pos;
    }

    PartiteStructure out;
    out.parts.resize(colors);
    out.color.assign(X.num_labels(), -1);
    for (std::size_t v = 0; v < nv; ++v) {
        const Vertex label = X.face(0, v)[0];
        out.parts[static_cast<std::size_t>(color[v])].push_back(label);
        out.color[label] = color[v];
    }

    auto type_of = [&](const Face& f) {
        unsigned mask = 0;
        for (Vertex v : f)
            mask |= 1U << static_cast<unsigned>(out.color[v]);
        return mask;
    };

    // counts[level][face] = number of containing faces per type J.
    const unsigned full = (1U << colors) - 1;
    for (unsigned J = 1; J <= full; ++J) {
        const int top = __builtin_popcount(J) - 1;
        for (unsigned I = 0; I < J; ++I) {
            if ((I & J) != I || I == J)
                continue;
            const int low = __builtin_popcount(I) - 1;
            std::optional<std::int64_t> constant;
            for (std::size_t s = 0; s < X.count(low); ++s) {
                const Face& f = X.face(low, s);
                if (type_of(f) != I)
                    continue;
                std::int64_t n = 0;
                for (const auto& g : X.faces(top))
                    if (type_of(g) == J && f.is_subset_of(g))
                        ++n;
                if (!constant) {
                    constant = n;
                } else if (*constant != n) {
                    return PartiteFailure{PartiteFailureKind::NotRegular,
                                          "face {" + X.format(f) + "} lies in " + std::to_string(n) +
                                              " faces of type " + detail::mask_text(J) + ", others of type " +
                                              detail::mask_text(I) + " in " + std::to_string(*constant)};
                }
            }
            out.constants[{I, J}] = constant.value_or(0);
        }
    }
    return out;
}

inline const PartiteStructure& require_partite(const PartiteCheck& check)
{
    if (const auto* failure = std::get_if<PartiteFailure>(&check))
        throw Error(ErrorKind::NotPartiteRegular, std::string(name(failure->kind)) + ": " + failure->witness);
    return std::get<PartiteStructure>(check);
}

inline PartiteStructure require_partite(PartiteCheck&& check)
{
    return require_partite(static_cast<const PartiteCheck&>(check));
}

// -- skeleton mixing -----------------------------------------------------------------

struct PairSpectrum {
    int first = 0;
    int second = 0;
    double lambda = 0.0;   ///< normalized second eigenvalue, clamped at 0
    double residual = 0.0; ///< eigensolver residual on the same scale
};

struct SkeletonMixing {
    double lambda = 0.0; ///< max over part pairs
    double residual = 0.0;
    std::vector<PairSpectrum> pairs;
    Report report;
};

/// lambda~2(X) from the bipartite graphs between parts, then the bipartite
/// mixing bound for all S, T inside each pair and ||E(S)|| <= ||S||(||S|| + lambda~2)
/// for every S in X(0). The skeleton inequality is decided exactly, with
/// lambda~2 + residual as an exact rational on the permissive side.
/// Bipartite-mixing checks carry the part pair (i, j) as level i(d+1) + j.
inline SkeletonMixing skeleton_mixing_check(const SimplicialComplex& X, const PartiteStructure& P,
                                            std::size_t max_vertices = 24, OnViolation policy = OnViolation::Throw)
{
    const int d = X.dimension();
    if (d < 1)
        throw Error(ErrorKind::DimensionTooSmall, "skeleton mixing needs d >= 1");
    const std::size_t nv = X.count(0);
    if (nv > max_vertices || nv > 63)
        throw Error(ErrorKind::TooLargeForExact, "skeleton mixing enumerates 2^" + std::to_string(nv) + " subsets");

    SkeletonMixing out;
    std::vector<std::size_t> local(X.num_labels(), 0);
    for (std::size_t v = 0; v < nv; ++v)
        local[X.face(0, v)[0]] = v;

    for (int i = 0; i <= d; ++i) {
        for (int j = i + 1; j <= d; ++j) {
            const auto& Vi = P.parts[static_cast<std::size_t>(i)];
            const auto& Vj = P.parts[static_cast<std::size_t>(j)];
            const std::size_t a = Vi.size();
            const std::size_t b = Vj.size();
            std::map<Vertex, std::size_t> slot;
            for (std::size_t k = 0; k < a; ++k)
                slot[Vi[k]] = k;
            for (std::size_t k = 0; k < b; ++k)
                slot[Vj[k]] = a + k;
            SymMatrix adjacency(a + b);
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            for (const auto& e : X.faces(1)) {
                const int ce = P.color[e[0]];
                const int cf = P.color[e[1]];
                if (!((ce == i && cf == j) || (ce == j && cf == i)))
                    continue;
                const std::size_t u = slot.at(ce == i ? e[0] : e[1]);
                const std::size_t w = slot.at(ce == i ? e[1] : e[0]);
                adjacency.set(u, w, 1.0);
                edges.push_back({u, w - a});
            }
            const double ki = static_cast<double>(P.k(1U << i, (1U << i) | (1U << j)));
            const double kj = static_cast<double>(P.k(1U << j, (1U << i) | (1U << j)));
            const double scale = std::sqrt(ki * kj);
            const Spectrum spec = spectrum(adjacency);
            PairSpectrum pair{i, j, std::max(spec.second() / scale, 0.0), spec.residual / scale};
            out.pairs.push_back(pair);
            out.lambda = std::max(out.lambda, pair.lambda);
            out.residual = std::max(out.residual, pair.residual);

            if (a > 20 || b > 20 || a + b > 24) {
                out.report.notes.push_back("pair " + std::to_string(i) + "," + std::to_string(j) +
                                           " too large for the S,T enumeration");
                continue;
            }
            // Worst S,T by smallest slack; S,T range over nonempty subsets.
            double worst = 0.0;
            bool have = false;
            std::string worst_lhs;
            std::string worst_rhs;
            const double total = static_cast<double>(edges.size());
            for (std::uint64_t s = 1; s < (std::uint64_t{1} << a); ++s) {
                for (std::uint64_t t = 1; t < (std::uint64_t{1} << b); ++t) {
                    std::size_t between = 0;
                    for (const auto& [u, w] : edges)
                        between += (s >> u & 1U) && (t >> w & 1U) ? 1 : 0;
                    const double r = std::sqrt(static_cast<double>(__builtin_popcountll(s)) *
                                               __builtin_popcountll(t) / (static_cast<double>(a) * b));
                    const double lhs = static_cast<double>(between) / total;
                    const double rhs = r * (r + pair.lambda + pair.residual) + 1e-12;
                    if (!have || rhs - lhs < worst) {
                        have = true;
                        worst = rhs - lhs;
                        worst_lhs = format_double(lhs);
                        worst_rhs = format_double(rhs);
                    }
                }
            }
            out.report.add({"bipartite-mixing", static_cast<long>(i * (d + 1) + j), worst_lhs, worst_rhs, worst,
                            worst >= 0});
        }
    }

    const Rational lambda_up = Rational(out.lambda) + Rational(out.residual);
    const std::int64_t vtotal = X.degree_sum(0);
    const std::int64_t etotal = X.degree_sum(1);
    std::vector<std::int64_t> vdeg(nv);
    for (std::size_t v = 0; v < nv; ++v)
        vdeg[v] = X.degree(0, v);
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> adjacent(nv);
    for (std::size_t e = 0; e < X.count(1); ++e) {
        const auto& ends = X.facets(1, e);
        adjacent[ends[0]].push_back({ends[1], X.degree(1, e)});
        adjacent[ends[1]].push_back({ends[0], X.degree(1, e)});
    }
    std::uint64_t mask = 0;
    std::int64_t s_deg = 0;
    std::int64_t e_deg = 0;
    bool have = false;
    Rational worst = 0;
    std::string worst_lhs;
    std::string worst_rhs;
    for (std::uint64_t k = 1; k < (std::uint64_t{1} << nv); ++k) {
        const auto v = static_cast<std::size_t>(__builtin_ctzll(k));
        std::int64_t to_set = 0;
        for (const auto& [u, w] : adjacent[v])
            if (mask >> u & 1U)
                to_set += w;
        mask ^= std::uint64_t{1} << v;
        const int sign = (mask >> v & 1U) ? 1 : -1;
        s_deg += sign * vdeg[v];
        e_deg += sign * to_set;
        const Rational s_norm(s_deg, vtotal);
        const Rational e_norm(e_deg, etotal);
        const Rational rhs = s_norm * (s_norm + lambda_up);
        const Rational slack = rhs - e_norm;
        if (!have || slack < worst) {
            have = true;
            worst = slack;
            worst_lhs = to_string(e_norm);
            worst_rhs = format_double(to_double(rhs));
        }
    }
    out.report.add({"skeleton-mixing", 0, worst_lhs, worst_rhs, to_double(worst), worst >= 0});
    out.report.finish(policy);
    return out;
}

/// q0 = (sqrt(2) C / (2^(1/2^d) - 1))^2.
inline double ramanujan_q0(int d, double C)
{
    if (!(C > 0))
        throw Error(ErrorKind::NonPositiveC, "C must be positive");
    if (d < 1)
        throw Error(ErrorKind::DimensionTooSmall, "d must be at least 1");
    const double r = std::sqrt(2.0) * C / (std::pow(2.0, 1.0 / std::pow(2.0, d)) - 1.0);
    return r * r;
}

} // namespace hdx
