#pragma once

// Fat faces, full faces, container and expanding faces of a cochain.

#include "hdx/complex.hpp"

#include <stdexcept>
#include <vector>

namespace hdx {

/// Threshold a (level)-face must reach to be fat for a base cochain of
/// dimension `base_level`: eta^(2^(base_level - level - 1)).
inline Rational fat_threshold(const Rational& eta, int base_level, int level)
{
    return pow(eta, std::uint64_t{1} << static_cast<unsigned>(base_level - level - 1));
}

/// S^j(W) for j = -1 .. i, where i = dim W and S^i = W.
class FatCascade {
public:
    FatCascade(Cochain base, Rational eta, std::vector<Cochain> levels)
        : base_(std::move(base)), eta_(std::move(eta)), levels_(std::move(levels))
    {
    }

    const Cochain& base() const { return base_; }
    const Rational& eta() const { return eta_; }
    int top() const { return base_.dimension(); }

    const Cochain& level(int j) const
    {
        if (j < -1 || j > top())
            throw Error(ErrorKind::LevelOutOfRange, "fat level " + std::to_string(j));
        return levels_[static_cast<std::size_t>(j + 1)];
    }

private:
    Cochain base_;
    Rational eta_;
    std::vector<Cochain> levels_;
};

inline void check_fatness(const Rational& eta)
{
    if (!(eta > 0 && eta < 1))
        throw Error(ErrorKind::BadFatness, "fatness " + to_string(eta) + " is not in (0,1)");
}

/// Sum of deg(tau) over (level+1)-faces tau containing face `index` that lie in
/// `upper`, and the sum over all of them. Their ratio is the localized norm
/// of `upper` in the link of the face.
inline std::pair<std::int64_t, std::int64_t> link_weight(const SimplicialComplex& X, int level, std::size_t index,
                                                         const Cochain& upper)
{
    std::int64_t hit = 0;
    std::int64_t all = 0;
    for (auto t : X.cofaces(level, index)) {
        const auto deg = X.degree(level + 1, t);
        all += deg;
        if (upper.contains(t))
            hit += deg;
    }
    return {hit, all};
}

inline FatCascade fat_cascade(const SimplicialComplex& X, const Cochain& W, const Rational& eta)
{
    check_fatness(eta);
    check_cochain(X, W);
    const int i = W.dimension();
    if (i < 0)
        throw Error(ErrorKind::DimensionMismatch, "fat cascade needs a cochain of dimension >= 0");
    std::vector<Cochain> levels(static_cast<std::size_t>(i + 2));
    levels[static_cast<std::size_t>(i + 1)] = W;
    for (int j = i - 1; j >= -1; --j) {
        const Cochain& upper = levels[static_cast<std::size_t>(j + 2)];
        const Rational threshold = fat_threshold(eta, i, j);
        Cochain fat = Cochain::empty(X, j);
        for (std::size_t s = 0; s < X.count(j); ++s) {
            auto [hit, all] = link_weight(X, j, s, upper);
            if (Rational(hit, all) >= threshold)
                fat.insert(s);
        }
        levels[static_cast<std::size_t>(j + 1)] = std::move(fat);
    }
    return FatCascade(W, eta, std::move(levels));
}

/// Gamma(W): (i+1)-faces containing at least one face of W.
inline Cochain container(const SimplicialComplex& X, const Cochain& W)
{
    check_cochain(X, W);
    const int i = W.dimension();
    if (i >= X.dimension())
        throw Error(ErrorKind::TopDimension, "container of a top-dimensional cochain");
    Cochain gamma = Cochain::empty(X, i + 1);
    for (auto s : W.indices())
        for (auto t : X.cofaces(i, s))
            gamma.insert(t);
    return gamma;
}

/// F^j for j = 0 .. i+1: faces all of whose (j-1)-faces are fat.
class FullLevels {
public:
    FullLevels(Cochain base, std::vector<Cochain> levels) : base_(std::move(base)), levels_(std::move(levels)) {}

    const Cochain& base() const { return base_; }
    int top() const { return base_.dimension() + 1; }

    const Cochain& level(int j) const
    {
        if (j < 0 || j > top())
            throw Error(ErrorKind::LevelOutOfRange, "full level " + std::to_string(j));
        return levels_[static_cast<std::size_t>(j)];
    }

private:
    Cochain base_;
    std::vector<Cochain> levels_;
};

inline FullLevels full_levels(const SimplicialComplex& X, const FatCascade& cascade)
{
    const int i = cascade.top();
    if (i >= X.dimension())
        throw Error(ErrorKind::TopDimension, "full faces need a cochain below the top dimension");
    std::vector<Cochain> levels;
    for (int j = 0; j <= i + 1; ++j) {
        const Cochain& below = cascade.level(j - 1);
        Cochain full = Cochain::empty(X, j);
        for (std::size_t s = 0; s < X.count(j); ++s) {
            bool all_fat = true;
            for (auto f : X.facets(j, s))
                all_fat = all_fat && below.contains(f);
            if (all_fat)
                full.insert(s);
        }
        levels.push_back(std::move(full));
    }
    return FullLevels(cascade.base(), std::move(levels));
}

inline FullLevels full_levels(const SimplicialComplex& X, const Cochain& W, const Rational& eta)
{
    check_cochain(X, W);
    if (W.dimension() >= X.dimension())
        throw Error(ErrorKind::TopDimension, "full faces need a cochain below the top dimension");
    return full_levels(X, fat_cascade(X, W, eta));
}

/// psi(W) computed as Gamma(W) minus the full (i+1)-faces. F^(i+1) only
/// depends on S^i = W, so no fatness constant is involved.
inline Cochain expanding_faces_via_container(const SimplicialComplex& X, const Cochain& W)
{
    Cochain gamma = container(X, W);
    const int i = W.dimension();
    Cochain out = Cochain::empty(X, i + 1);
    for (auto t : gamma.indices()) {
        bool full = true;
        for (auto f : X.facets(i + 1, t))
            full = full && W.contains(f);
        if (!full)
            out.insert(t);
    }
    return out;
}

/// psi(W): (i+1)-faces containing a face in W and a face outside W.
inline Cochain expanding_faces(const SimplicialComplex& X, const Cochain& W)
{
    check_cochain(X, W);
    const int i = W.dimension();
    if (i >= X.dimension())
        throw Error(ErrorKind::TopDimension, "expanding faces of a top-dimensional cochain");
    Cochain psi = Cochain::empty(X, i + 1);
    for (std::size_t t = 0; t < X.count(i + 1); ++t) {
        bool inside = false;
        bool outside = false;
        for (auto f : X.facets(i + 1, t))
            (W.contains(f) ? inside : outside) = true;
        if (inside && outside)
            psi.insert(t);
    }
    if (!(psi == expanding_faces_via_container(X, W)))
        throw std::logic_error("expanding faces disagree with container minus full faces");
    return psi;
}

} // namespace hdx
