#pragma once

// Pure simplicial complexes: faces, degrees, links, cochains, degree-weighted
// norms and exact probabilities over the descending face chain.

#include "hdx/error.hpp"
#include "hdx/rational.hpp"
#include "hdx/report.hpp"

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hdx {

using Vertex = std::uint32_t;

/// A face: a strictly increasing sequence of vertex indices. The empty face
/// has dimension -1.
class Face {
public:
    Face() = default;

    /// Takes vertices in any order; throws DuplicateVertexInFace on repeats.
    static Face from_vertices(std::vector<Vertex> vertices)
    {
        std::sort(vertices.begin(), vertices.end());
        if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
            throw Error(ErrorKind::DuplicateVertexInFace, "face repeats a vertex");
        Face f;
        f.vertices_ = std::move(vertices);
        return f;
    }

    Face(std::initializer_list<Vertex> vertices) : Face(from_vertices(vertices)) {}

    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }
    Vertex operator[](std::size_t k) const { return vertices_[k]; }
    auto begin() const { return vertices_.begin(); }
    auto end() const { return vertices_.end(); }
    const std::vector<Vertex>& vertices() const { return vertices_; }

    bool contains(Vertex v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

    bool is_subset_of(const Face& other) const
    {
        return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end());
    }

    Face united(const Face& other) const
    {
        Face f;
        std::set_union(vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end(),
                       std::back_inserter(f.vertices_));
        return f;
    }

    Face minus(const Face& other) const
    {
        Face f;
        std::set_difference(vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end(),
                            std::back_inserter(f.vertices_));
        return f;
    }

    Face without_position(std::size_t k) const
    {
        Face f = *this;
        f.vertices_.erase(f.vertices_.begin() + static_cast<std::ptrdiff_t>(k));
        return f;
    }

    auto operator<=>(const Face&) const = default;
    bool operator==(const Face&) const = default;

private:
    std::vector<Vertex> vertices_;
};

/// Calls `fn(sub)` for every sub-face of `face` with exactly `size` vertices,
/// in lexicographic order.
template <typename Fn>
void for_each_subface(const Face& face, std::size_t size, Fn&& fn)
{
    const std::size_t n = face.size();
    if (size > n)
        return;
    std::vector<std::size_t> pick(size);
    for (std::size_t k = 0; k < size; ++k)
        pick[k] = k;
    std::vector<Vertex> buffer(size);
    while (true) {
        for (std::size_t k = 0; k < size; ++k)
            buffer[k] = face[pick[k]];
        fn(Face::from_vertices(buffer));
        std::size_t k = size;
        while (k > 0 && pick[k - 1] == n - size + k - 1)
            --k;
        if (k == 0)
            return;
        ++pick[k - 1];
        for (std::size_t m = k; m < size; ++m)
            pick[m] = pick[m - 1] + 1;
    }
}

class SimplicialComplex;

namespace testing {
void set_degree(SimplicialComplex& complex, int level, std::size_t index, std::int64_t value);
}

/// Immutable pure d-dimensional complex. Levels run from -1 (the empty face)
/// to d; within a level faces are sorted lexicographically.
class SimplicialComplex {
public:
    /// Builds the downward closure of `maximal` over vertex indices
    /// 0..labels.size()-1. All maximal faces must have the same size.
    static SimplicialComplex from_maximal_faces(std::vector<std::string> labels, std::vector<Face> maximal)
    {
        if (maximal.empty())
            throw Error(ErrorKind::EmptyInput, "no maximal faces");
        const std::size_t top = maximal.front().size();
        for (const auto& f : maximal) {
            if (f.size() != top)
                throw Error(ErrorKind::MixedDimension, "maximal faces have sizes " + std::to_string(top) +
                                                           " and " + std::to_string(f.size()));
            for (Vertex v : f)
                if (v >= labels.size())
                    throw Error(ErrorKind::BadParameter, "vertex index out of label range");
        }
        std::sort(maximal.begin(), maximal.end());
        maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());

        SimplicialComplex X;
        X.dim_ = static_cast<int>(top) - 1;
        X.labels_ = std::move(labels);
        std::vector<std::map<Face, std::int64_t>> counts(top + 1);
        for (const auto& f : maximal)
            for (std::size_t s = 0; s <= top; ++s)
                for_each_subface(f, s, [&](const Face& sub) { ++counts[s][sub]; });

        X.faces_.resize(top + 1);
        X.degree_.resize(top + 1);
        X.index_.resize(top + 1);
        for (std::size_t s = 0; s <= top; ++s) {
            for (const auto& [face, deg] : counts[s]) {
                X.index_[s].emplace(face, X.faces_[s].size());
                X.faces_[s].push_back(face);
                X.degree_[s].push_back(deg);
            }
        }
        X.build_incidence();
        return X;
    }

    int dimension() const { return dim_; }
    std::size_t num_labels() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(Vertex v) const { return labels_.at(v); }

    bool has_level(int level) const { return level >= -1 && level <= dim_; }

    const std::vector<Face>& faces(int level) const { return faces_.at(slot(level)); }
    std::size_t count(int level) const { return faces(level).size(); }
    const Face& face(int level, std::size_t index) const { return faces(level).at(index); }

    std::int64_t degree(int level, std::size_t index) const { return degree_.at(slot(level)).at(index); }
    std::int64_t degree(const Face& f) const { return degree(f.dimension(), require_index(f)); }

    std::int64_t degree_sum(int level) const
    {
        std::int64_t total = 0;
        for (auto d : degree_.at(slot(level)))
            total += d;
        return total;
    }

    std::optional<std::size_t> index_of(const Face& f) const
    {
        if (!has_level(f.dimension()))
            return std::nullopt;
        const auto& idx = index_[slot(f.dimension())];
        auto it = idx.find(f);
        if (it == idx.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t require_index(const Face& f) const
    {
        auto idx = index_of(f);
        if (!idx)
            throw Error(ErrorKind::FaceNotInComplex, "face {" + format(f) + "} is not in the complex");
        return *idx;
    }

    bool contains(const Face& f) const { return index_of(f).has_value(); }

    /// Indices of the (level+1)-faces containing face `index` of `level`.
    const std::vector<std::size_t>& cofaces(int level, std::size_t index) const
    {
        return cofaces_.at(slot(level)).at(index);
    }

    /// Indices of the (level-1)-faces of face `index` of `level`, in the order
    /// obtained by dropping vertex position 0, 1, ...
    const std::vector<std::size_t>& facets(int level, std::size_t index) const
    {
        return facets_.at(slot(level)).at(index);
    }

    std::string format(const Face& f, const std::string& separator = ",") const
    {
        std::string out;
        for (std::size_t k = 0; k < f.size(); ++k) {
            if (k)
                out += separator;
            out += f[k] < labels_.size() ? labels_[f[k]] : "#" + std::to_string(f[k]);
        }
        return out;
    }

    /// Looks up vertex indices by label; throws FaceNotInComplex on unknown
    /// labels or when the resulting face is not in the complex.
    Face face_from_labels(const std::vector<std::string>& names) const
    {
        std::vector<Vertex> vs;
        for (const auto& n : names) {
            auto it = std::find(labels_.begin(), labels_.end(), n);
            if (it == labels_.end())
                throw Error(ErrorKind::FaceNotInComplex, "unknown vertex label '" + n + "'");
            vs.push_back(static_cast<Vertex>(it - labels_.begin()));
        }
        Face f = Face::from_vertices(std::move(vs));
        require_index(f);
        return f;
    }

    bool operator==(const SimplicialComplex& other) const
    {
        return dim_ == other.dim_ && labels_ == other.labels_ && faces_ == other.faces_ && degree_ == other.degree_;
    }

private:
    friend void testing::set_degree(SimplicialComplex&, int, std::size_t, std::int64_t);

    std::size_t slot(int level) const
    {
        if (!has_level(level))
            throw Error(ErrorKind::LevelOutOfRange,
                        "level " + std::to_string(level) + " outside [-1, " + std::to_string(dim_) + "]");
        return static_cast<std::size_t>(level + 1);
    }

    void build_incidence()
    {
        cofaces_.assign(faces_.size(), {});
        facets_.assign(faces_.size(), {});
        for (std::size_t s = 0; s < faces_.size(); ++s) {
            cofaces_[s].resize(faces_[s].size());
            facets_[s].resize(faces_[s].size());
        }
        for (std::size_t s = 1; s < faces_.size(); ++s) {
            for (std::size_t j = 0; j < faces_[s].size(); ++j) {
                const Face& f = faces_[s][j];
                for (std::size_t k = 0; k < f.size(); ++k) {
                    std::size_t sub = index_[s - 1].at(f.without_position(k));
                    facets_[s][j].push_back(sub);
                    cofaces_[s - 1][sub].push_back(j);
                }
            }
        }
        for (auto& level : cofaces_)
            for (auto& list : level)
                std::sort(list.begin(), list.end());
    }

    int dim_ = -1;
    std::vector<std::string> labels_;
    std::vector<std::vector<Face>> faces_;
    std::vector<std::vector<std::int64_t>> degree_;
    std::vector<std::map<Face, std::size_t>> index_;
    std::vector<std::vector<std::vector<std::size_t>>> cofaces_;
    std::vector<std::vector<std::vector<std::size_t>>> facets_;
};

namespace testing {
/// Overwrites a stored degree. Only for exercising the invariant validator.
inline void set_degree(SimplicialComplex& complex, int level, std::size_t index, std::int64_t value)
{
    complex.degree_.at(complex.slot(level)).at(index) = value;
}
} // namespace testing

/// Builds a complex from maximal faces given as label lists. Labels get dense
/// indices in order of first appearance.
inline SimplicialComplex build_complex(const std::vector<std::vector<std::string>>& maximal_faces)
{
    if (maximal_faces.empty())
        throw Error(ErrorKind::EmptyInput, "no maximal faces");
    std::vector<std::string> labels;
    std::unordered_map<std::string, Vertex> lookup;
    std::vector<Face> faces;
    for (const auto& names : maximal_faces) {
        if (names.empty())
            throw Error(ErrorKind::MixedDimension, "maximal faces must have at least one vertex");
        std::vector<Vertex> vs;
        for (const auto& n : names) {
            auto [it, inserted] = lookup.emplace(n, static_cast<Vertex>(labels.size()));
            if (inserted)
                labels.push_back(n);
            vs.push_back(it->second);
        }
        try {
            faces.push_back(Face::from_vertices(std::move(vs)));
        } catch (const Error&) {
            std::string joined;
            for (const auto& n : names)
                joined += (joined.empty() ? "" : " ") + n;
            throw Error(ErrorKind::DuplicateVertexInFace, "face '" + joined + "' repeats a label");
        }
    }
    return SimplicialComplex::from_maximal_faces(std::move(labels), std::move(faces));
}

/// The link X_sigma. Its vertices keep their labels from X and their relative
/// order, so lexicographic face order is preserved.
struct Link {
    SimplicialComplex complex;
    std::vector<Vertex> host_vertex; ///< link vertex index -> vertex index in X
    Face center;

    /// Maps a face of the link back to tau ∪ sigma in X.
    Face lift(const Face& tau) const
    {
        std::vector<Vertex> vs(center.begin(), center.end());
        for (Vertex v : tau)
            vs.push_back(host_vertex.at(v));
        return Face::from_vertices(std::move(vs));
    }
};

inline Link link(const SimplicialComplex& X, const Face& sigma)
{
    X.require_index(sigma);
    const int d = X.dimension();
    std::vector<Face> remainders;
    for (const auto& top : X.faces(d))
        if (sigma.is_subset_of(top))
            remainders.push_back(top.minus(sigma));

    std::vector<Vertex> used;
    for (const auto& r : remainders)
        used.insert(used.end(), r.begin(), r.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());

    std::vector<std::string> labels;
    std::unordered_map<Vertex, Vertex> to_link;
    for (Vertex v : used) {
        to_link.emplace(v, static_cast<Vertex>(labels.size()));
        labels.push_back(X.label(v));
    }
    std::vector<Face> maximal;
    for (const auto& r : remainders) {
        std::vector<Vertex> vs;
        for (Vertex v : r)
            vs.push_back(to_link.at(v));
        maximal.push_back(Face::from_vertices(std::move(vs)));
    }
    return Link{SimplicialComplex::from_maximal_faces(std::move(labels), std::move(maximal)), std::move(used), sigma};
}

/// An i-cochain: a subset of X(i), stored as a membership mask over the
/// level's face indices.
class Cochain {
public:
    Cochain() = default;
    Cochain(int dimension, std::size_t universe) : dim_(dimension), members_(universe, false) {}

    static Cochain empty(const SimplicialComplex& X, int dimension) { return Cochain(dimension, X.count(dimension)); }

    static Cochain full(const SimplicialComplex& X, int dimension)
    {
        Cochain c(dimension, X.count(dimension));
        c.members_.assign(c.members_.size(), true);
        return c;
    }

    static Cochain of(const SimplicialComplex& X, int dimension, const std::vector<Face>& faces)
    {
        Cochain c = empty(X, dimension);
        for (const auto& f : faces) {
            if (f.dimension() != dimension)
                throw Error(ErrorKind::DimensionMismatch, "face {" + X.format(f) + "} has dimension " +
                                                              std::to_string(f.dimension()) + ", expected " +
                                                              std::to_string(dimension));
            c.insert(X.require_index(f));
        }
        return c;
    }

    static Cochain from_indices(const SimplicialComplex& X, int dimension, const std::vector<std::size_t>& indices)
    {
        Cochain c = empty(X, dimension);
        for (auto i : indices)
            c.insert(i);
        return c;
    }

    int dimension() const { return dim_; }
    std::size_t universe() const { return members_.size(); }
    bool contains(std::size_t index) const { return members_.at(index); }
    void insert(std::size_t index) { members_.at(index) = true; }
    void erase(std::size_t index) { members_.at(index) = false; }

    std::size_t size() const { return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true)); }
    bool empty() const { return size() == 0; }

    std::vector<std::size_t> indices() const
    {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < members_.size(); ++k)
            if (members_[k])
                out.push_back(k);
        return out;
    }

    Cochain complement() const
    {
        Cochain c = *this;
        c.members_.flip();
        return c;
    }

    bool is_subset_of(const Cochain& other) const
    {
        for (std::size_t k = 0; k < members_.size(); ++k)
            if (members_[k] && !other.members_.at(k))
                return false;
        return true;
    }

    bool operator==(const Cochain&) const = default;

private:
    int dim_ = 0;
    std::vector<bool> members_;
};

inline void check_cochain(const SimplicialComplex& X, const Cochain& W)
{
    if (!X.has_level(W.dimension()) || W.universe() != X.count(W.dimension()))
        throw Error(ErrorKind::DimensionMismatch, "cochain does not match level " + std::to_string(W.dimension()));
}

inline std::string format(const SimplicialComplex& X, const Cochain& W)
{
    std::string out = "{";
    bool first = true;
    for (auto k : W.indices()) {
        out += (first ? "" : " ") + X.format(X.face(W.dimension(), k), "");
        first = false;
    }
    return out + "}";
}

/// Degree-weighted norm: sum of member degrees over the level's degree sum.
inline Rational norm(const SimplicialComplex& X, const Cochain& W)
{
    check_cochain(X, W);
    std::int64_t inside = 0;
    for (auto k : W.indices())
        inside += X.degree(W.dimension(), k);
    return Rational(inside, X.degree_sum(W.dimension()));
}

/// The localization W_sigma together with the link it lives in.
struct LocalView {
    Link link;
    Cochain cochain;
};

inline LocalView localize(const SimplicialComplex& X, const Cochain& W, const Face& sigma)
{
    check_cochain(X, W);
    if (sigma.dimension() >= W.dimension())
        throw Error(ErrorKind::DimensionMismatch, "localizing a " + std::to_string(W.dimension()) +
                                                      "-cochain at a face of dimension " +
                                                      std::to_string(sigma.dimension()));
    Link L = link(X, sigma);
    const int level = W.dimension() - static_cast<int>(sigma.size());
    Cochain local = Cochain::empty(L.complex, level);
    const auto& candidates = L.complex.faces(level);
    for (std::size_t k = 0; k < candidates.size(); ++k)
        if (W.contains(X.require_index(L.lift(candidates[k]))))
            local.insert(k);
    return LocalView{std::move(L), std::move(local)};
}

/// An event on one variable of the face chain: "P_level satisfies holds".
struct LevelEvent {
    int level = 0;
    std::function<bool(std::size_t)> holds;
};

inline LevelEvent in(const Cochain& W)
{
    return LevelEvent{W.dimension(), [W](std::size_t k) { return W.contains(k); }};
}

inline LevelEvent not_in(const Cochain& W)
{
    return LevelEvent{W.dimension(), [W](std::size_t k) { return !W.contains(k); }};
}

inline LevelEvent always(int level)
{
    return LevelEvent{level, [](std::size_t) { return true; }};
}

inline LevelEvent never(int level)
{
    return LevelEvent{level, [](std::size_t) { return false; }};
}

/// Exact Pr[upper(P_k) and lower(P_m)] for m < k under the face chain:
/// P_k = sigma with probability deg(sigma) / (C(d+1, k+1)|X(d)|), and given
/// that, P_m is uniform over the C(k+1, m+1) m-faces of sigma.
inline Rational chain_joint_prob(const SimplicialComplex& X, const LevelEvent& upper, const LevelEvent& lower)
{
    const int d = X.dimension();
    const int k = upper.level;
    const int m = lower.level;
    if (!(m >= -1 && m < k && k <= d))
        throw Error(ErrorKind::LevelOutOfRange, "need -1 <= m < k <= d, got m=" + std::to_string(m) +
                                                    ", k=" + std::to_string(k));
    const std::int64_t per_face = binomial(k + 1, m + 1);
    BigInt weighted = 0;
    const auto& uppers = X.faces(k);
    for (std::size_t s = 0; s < uppers.size(); ++s) {
        if (!upper.holds(s))
            continue;
        std::int64_t hits = 0;
        for_each_subface(uppers[s], static_cast<std::size_t>(m + 1), [&](const Face& sub) {
            if (lower.holds(*X.index_of(sub)))
                ++hits;
        });
        weighted += BigInt(X.degree(k, s)) * hits;
    }
    BigInt total = BigInt(binomial(d + 1, k + 1)) * static_cast<std::int64_t>(X.count(d)) * per_face;
    return Rational(weighted, total);
}

/// Pr[event(P_level)] under the face chain.
inline Rational chain_prob(const SimplicialComplex& X, const LevelEvent& event)
{
    BigInt weighted = 0;
    for (std::size_t s = 0; s < X.count(event.level); ++s)
        if (event.holds(s))
            weighted += X.degree(event.level, s);
    BigInt total = BigInt(binomial(X.dimension() + 1, event.level + 1)) * static_cast<std::int64_t>(X.count(X.dimension()));
    return Rational(weighted, total);
}

/// Re-checks the structural invariants against a fresh recount: closure,
/// purity, degree recount, and the degree-sum identity.
inline Report validate(const SimplicialComplex& X)
{
    Report report;
    const int d = X.dimension();
    SimplicialComplex fresh = SimplicialComplex::from_maximal_faces(X.labels(), X.faces(d));
    for (int level = -1; level <= d; ++level) {
        bool same_faces = fresh.faces(level) == X.faces(level);
        report.add({"closure", level, std::to_string(X.count(level)), std::to_string(fresh.count(level)), 0.0,
                    same_faces});
        if (!same_faces)
            continue;
        for (std::size_t k = 0; k < X.count(level); ++k) {
            const auto stored = X.degree(level, k);
            const auto recount = fresh.degree(level, k);
            if (stored != recount || stored < 1)
                report.add({"degree{" + X.format(X.face(level, k)) + "}", level, std::to_string(stored),
                            std::to_string(recount), static_cast<double>(recount - stored), false});
        }
        const std::int64_t expected = binomial(d + 1, level + 1) * static_cast<std::int64_t>(X.count(d));
        const std::int64_t sum = X.degree_sum(level);
        report.add({"degree-sum", level, std::to_string(sum), std::to_string(expected),
                    static_cast<double>(expected - sum), sum == expected});
    }
    return report;
}

/// Parses the `.cplx` text format: one maximal face per line as
/// whitespace-separated labels; lines starting with '#' and blank lines are
/// skipped.
inline std::vector<std::vector<std::string>> parse_cplx_faces(std::istream& in)
{
    std::vector<std::vector<std::string>> faces;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#')
            continue;
        std::vector<std::string> tokens;
        std::string current;
        for (char ch : line) {
            if (std::isspace(static_cast<unsigned char>(ch))) {
                if (!current.empty())
                    tokens.push_back(std::move(current));
                current.clear();
            } else {
                current += ch;
            }
        }
        if (!current.empty())
            tokens.push_back(std::move(current));
        if (!tokens.empty())
            faces.push_back(std::move(tokens));
    }
    return faces;
}

inline SimplicialComplex read_cplx(std::istream& in)
{
    return build_complex(parse_cplx_faces(in));
}

inline SimplicialComplex read_cplx(const std::string& text)
{
    std::istringstream in(text);
    return read_cplx(in);
}

inline void write_cplx(std::ostream& out, const SimplicialComplex& X)
{
    for (const auto& f : X.faces(X.dimension()))
        out << X.format(f, " ") << '\n';
}

} // namespace hdx
