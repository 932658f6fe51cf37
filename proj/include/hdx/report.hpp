#pragma once

#include "hdx/error.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

namespace hdx {

/// Decimal text with 12 significant digits.
inline std::string format_double(double value)
{
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

/// `value` rounded to 12 significant digits, for machine-readable output.
inline double round12(double value)
{
    return std::strtod(format_double(value).c_str(), nullptr);
}

/// What a verifier does when an inequality fails.
enum class OnViolation { Throw, Collect };

/// One evaluated inequality. `lhs`/`rhs` are printable (exact "p/q" where the
/// check is exact); `margin` is the slack in the direction that makes the
/// check pass, as a double for display.
struct CheckResult {
    std::string name;
    long level = 0;
    std::string lhs;
    std::string rhs;
    double margin = 0.0;
    bool passed = true;
};

struct Report {
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;

    bool ok() const
    {
        for (const auto& c : checks)
            if (!c.passed)
                return false;
        return true;
    }

    const CheckResult* first_failure() const
    {
        for (const auto& c : checks)
            if (!c.passed)
                return &c;
        return nullptr;
    }

    std::size_t failures() const
    {
        std::size_t n = 0;
        for (const auto& c : checks)
            n += c.passed ? 0 : 1;
        return n;
    }

    void add(CheckResult result) { checks.push_back(std::move(result)); }

    void append(const Report& other)
    {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
        notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    }

    /// Throws BoundViolation for the first failed check, if any.
    void require() const
    {
        if (const auto* f = first_failure())
            throw BoundViolation(f->name, f->level, f->lhs, f->rhs);
    }

    void finish(OnViolation policy) const
    {
        if (policy == OnViolation::Throw)
            require();
    }
};

} // namespace hdx
