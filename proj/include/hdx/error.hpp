#pragma once

#include <stdexcept>
#include <string>

namespace hdx {

enum class ErrorKind {
    EmptyInput,
    MixedDimension,
    DuplicateVertexInFace,
    ParseError,
    FaceNotInComplex,
    DimensionMismatch,
    LevelOutOfRange,
    BadFatness,
    BadParameter,
    TopDimension,
    SupportMismatch,
    InvalidDistribution,
    IsolatedVertex,
    NoConvergence,
    DisconnectedGraph,
    BoundViolated,
    TooLargeForExact,
    AlphaTooLarge,
    DimensionTooSmall,
    TooFewVertices,
    EmptyAfterPruning,
    NotPartiteRegular,
    NonPositiveC,
};

inline const char* name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::MixedDimension: return "MixedDimension";
    case ErrorKind::DuplicateVertexInFace: return "DuplicateVertexInFace";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::FaceNotInComplex: return "FaceNotInComplex";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorKind::BadFatness: return "BadFatness";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::TopDimension: return "TopDimension";
    case ErrorKind::SupportMismatch: return "SupportMismatch";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::IsolatedVertex: return "IsolatedVertex";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::TooLargeForExact: return "TooLargeForExact";
    case ErrorKind::AlphaTooLarge: return "AlphaTooLarge";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::TooFewVertices: return "TooFewVertices";
    case ErrorKind::EmptyAfterPruning: return "EmptyAfterPruning";
    case ErrorKind::NotPartiteRegular: return "NotPartiteRegular";
    case ErrorKind::NonPositiveC: return "NonPositiveC";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(name(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// A failed inequality check. Carries the check name, the level (or step) it
/// failed at, and both sides as printable text.
class BoundViolation : public Error {
public:
    BoundViolation(std::string check, long level, std::string lhs, std::string rhs)
        : Error(ErrorKind::BoundViolated,
                check + " at " + std::to_string(level) + ": " + lhs + " vs " + rhs),
          check_(std::move(check)), level_(level), lhs_(std::move(lhs)), rhs_(std::move(rhs))
    {
    }

    const std::string& check() const noexcept { return check_; }
    long level() const noexcept { return level_; }
    const std::string& lhs() const noexcept { return lhs_; }
    const std::string& rhs() const noexcept { return rhs_; }

private:
    std::string check_;
    long level_;
    std::string lhs_;
    std::string rhs_;
};

} // namespace hdx
