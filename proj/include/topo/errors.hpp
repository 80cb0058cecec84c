#pragma once

#include <stdexcept>
#include <string>

namespace topo {

/// Failure categories reported by the library. Every thrown error names the
/// violated condition and the offending element in its message.
enum class ErrorCode {
    point_out_of_range,
    universe_mismatch,
    missing_empty_or_full,
    not_closed_under_union,
    not_closed_under_intersection,
    empty_subspace,
    size_guard_exceeded,
    not_a_hull_top,
    condition_failed,
    no_witness,
    not_regular,
    no_continuous_extension,
    density_failed,
    continuity_failed,
    syntax_error,
    missing_field,
    invariant_violation,
    unsupported_kind,
};

constexpr const char* name(ErrorCode code) {
    switch (code) {
        case ErrorCode::point_out_of_range: return "PointOutOfRange";
        case ErrorCode::universe_mismatch: return "UniverseMismatch";
        case ErrorCode::missing_empty_or_full: return "MissingEmptyOrFull";
        case ErrorCode::not_closed_under_union: return "NotClosedUnderUnion";
        case ErrorCode::not_closed_under_intersection: return "NotClosedUnderIntersection";
        case ErrorCode::empty_subspace: return "EmptySubspace";
        case ErrorCode::size_guard_exceeded: return "SizeGuardExceeded";
        case ErrorCode::not_a_hull_top: return "NotAHullTop";
        case ErrorCode::condition_failed: return "ConditionFailed";
        case ErrorCode::no_witness: return "NoWitness";
        case ErrorCode::not_regular: return "NotRegular";
        case ErrorCode::no_continuous_extension: return "NoContinuousExtension";
        case ErrorCode::density_failed: return "DensityFailed";
        case ErrorCode::continuity_failed: return "ContinuityFailed";
        case ErrorCode::syntax_error: return "Syntax";
        case ErrorCode::missing_field: return "MissingField";
        case ErrorCode::invariant_violation: return "InvariantViolation";
        case ErrorCode::unsupported_kind: return "UnsupportedKind";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace topo
