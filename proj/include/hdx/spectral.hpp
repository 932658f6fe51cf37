#pragma once

// Dense symmetric eigensolver (cyclic Jacobi) and the spectral checks on
// normalized adjacency matrices.

#include "hdx/rational.hpp"
#include "hdx/report.hpp"
#include "hdx/walk.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <vector>

namespace hdx {

/// Dense symmetric matrix. set() writes both (r,c) and (c,r), so symmetry is
/// exact by construction.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t order) : n_(order), data_(order * order, 0.0) {}

    static SymMatrix identity(std::size_t order)
    {
        SymMatrix m(order);
        for (std::size_t k = 0; k < order; ++k)
            m.set(k, k, 1.0);
        return m;
    }

    std::size_t order() const { return n_; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

    void set(std::size_t r, std::size_t c, double value)
    {
        data_.at(r * n_ + c) = value;
        data_.at(c * n_ + r) = value;
    }

    double trace() const
    {
        double t = 0.0;
        for (std::size_t k = 0; k < n_; ++k)
            t += (*this)(k, k);
        return t;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Eigenvalues in descending order plus the off-diagonal Frobenius mass left at
/// convergence, which bounds the eigenvalue error (Weyl).
struct Spectrum {
    std::vector<double> eigenvalues;
    double residual = 0.0;
    std::size_t sweeps = 0;

    std::size_t size() const { return eigenvalues.size(); }
    double largest() const { return eigenvalues.front(); }
    double second() const { return eigenvalues.size() > 1 ? eigenvalues[1] : eigenvalues.front(); }
    double smallest() const { return eigenvalues.back(); }

    /// max(|lambda_2|, |lambda_n|); 0 for a single vertex.
    double second_magnitude() const
    {
        if (eigenvalues.size() < 2)
            return 0.0;
        return std::max(std::abs(eigenvalues[1]), std::abs(eigenvalues.back()));
    }
};

/// Eigenvalues with the matching orthonormal eigenvectors; column k of
/// `vectors` (stored row-major, n x n) belongs to eigenvalues[k].
struct EigenDecomposition {
    Spectrum spectrum;
    std::vector<double> vectors;

    double vector(std::size_t row, std::size_t column) const
    {
        return vectors[row * spectrum.size() + column];
    }
};

constexpr std::size_t kJacobiSweepCap = 100;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// 1e-12 * n. Throws NoConvergence after kJacobiSweepCap sweeps.
inline EigenDecomposition eigen_decompose(const SymMatrix& input)
{
    const std::size_t n = input.order();
    std::vector<double> a(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const double v = input(r, c);
            if (!std::isfinite(v))
                throw Error(ErrorKind::BadParameter, "matrix has a non-finite entry");
            a[r * n + c] = v;
        }
    std::vector<double> q(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        q[k * n + k] = 1.0;
    auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };

    auto off_diagonal = [&] {
        double sum = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (r != c)
                    sum += a[r * n + c] * a[r * n + c];
        return std::sqrt(sum);
    };

    const double target = 1e-12 * static_cast<double>(std::max<std::size_t>(n, 1));
    std::size_t sweep = 0;
    double off = off_diagonal();
    while (off >= target) {
        if (sweep == kJacobiSweepCap)
            throw Error(ErrorKind::NoConvergence, "Jacobi did not converge in " + std::to_string(kJacobiSweepCap) +
                                                      " sweeps (off-diagonal " + format_double(off) + ")");
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t r = p + 1; r < n; ++r) {
                const double apr = at(p, r);
                if (apr == 0.0)
                    continue;
                const double theta = (at(r, r) - at(p, p)) / (2.0 * apr);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                at(p, p) -= t * apr;
                at(r, r) += t * apr;
                at(p, r) = 0.0;
                at(r, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == r)
                        continue;
                    const double akp = at(k, p);
                    const double akr = at(k, r);
                    at(k, p) = at(p, k) = c * akp - s * akr;
                    at(k, r) = at(r, k) = s * akp + c * akr;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = q[k * n + p];
                    const double vkr = q[k * n + r];
                    q[k * n + p] = c * vkp - s * vkr;
                    q[k * n + r] = s * vkp + c * vkr;
                }
            }
        }
        off = off_diagonal();
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return at(x, x) > at(y, y); });

    EigenDecomposition out;
    out.spectrum.residual = off;
    out.spectrum.sweeps = sweep;
    out.vectors.assign(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        out.spectrum.eigenvalues.push_back(at(order[k], order[k]));
        for (std::size_t r = 0; r < n; ++r)
            out.vectors[r * n + k] = q[r * n + order[k]];
    }
    return out;
}

inline Spectrum spectrum(const SymMatrix& m)
{
    return eigen_decompose(m).spectrum;
}

/// Entry (u,v) = (A(u,v) + [u=v] loop(u)) / sqrt(deg(u) deg(v)), degrees
/// including self-loops. One square root per entry, of the exact product.
inline SymMatrix normalized_adjacency(const IGraph& G)
{
    const std::size_t n = G.order();
    for (std::size_t v = 0; v < n; ++v)
        if (G.degree(v) <= 0)
            throw Error(ErrorKind::IsolatedVertex, "vertex " + std::to_string(v) + " has no edges");
    SymMatrix m(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (const auto& [v, w] : G.neighbors(u))
            if (v > u)
                m.set(u, v, static_cast<double>(w) / std::sqrt(static_cast<double>(G.degree(u)) * static_cast<double>(G.degree(v))));
        if (G.self_loop_weight(u) > 0)
            m.set(u, u, static_cast<double>(G.self_loop_weight(u)) / static_cast<double>(G.degree(u)));
    }
    return m;
}

/// lambda_2 <= 1 - Phi^2/2, with the solver residual plus `tolerance` added
/// to the right-hand side.
inline Report cheeger_check(const Rational& conductance, const Spectrum& spec, double tolerance = 0.0,
                            long level = 0, OnViolation policy = OnViolation::Throw)
{
    const double phi = to_double(conductance);
    const double rhs = 1.0 - phi * phi / 2.0;
    const double margin = rhs + spec.residual + tolerance - spec.second();
    Report report;
    report.add({"cheeger", level, format_double(spec.second()), format_double(rhs), margin, margin >= 0});
    report.finish(policy);
    return report;
}

/// lambda_n >= -1 + beta^2/2, with the solver residual plus `tolerance`
/// subtracted from the right-hand side.
inline Report trevisan_check(const Rational& bipartiteness, const Spectrum& spec, double tolerance = 0.0,
                             long level = 0, OnViolation policy = OnViolation::Throw)
{
    const double beta = to_double(bipartiteness);
    const double rhs = -1.0 + beta * beta / 2.0;
    const double margin = spec.smallest() - (rhs - spec.residual - tolerance);
    Report report;
    report.add({"trevisan", level, format_double(spec.smallest()), format_double(rhs), margin, margin >= 0});
    report.finish(policy);
    return report;
}

/// Plain-text report: one `λ[k] = value` line per eigenvalue, then the residual.
inline void write_spectrum_text(std::ostream& out, const Spectrum& spec)
{
    for (std::size_t k = 0; k < spec.size(); ++k)
        out << "λ[" << (k + 1) << "] = " << format_double(spec.eigenvalues[k]) << '\n';
    out << "residual = " << format_double(spec.residual) << '\n';
}

inline nlohmann::json spectrum_json(const Spectrum& spec)
{
    nlohmann::json values = nlohmann::json::array();
    for (double v : spec.eigenvalues)
        values.push_back(round12(v));
    return {{"eigenvalues", values}, {"residual", round12(spec.residual)}};
}

} // namespace hdx
