#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace minsurf {

enum class ErrorKind {
    domain,
    non_finite,
    pole,
    singular_point,
    uncertifiable,
    cap_exceeded,
    path_blocked,
    tolerance_not_met,
    degenerate,
    unsupported_surface,
    ambiguous,
    unresolved,
    config_invalid,
    empty_mesh,
    io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::non_finite: return "non-finite";
    case ErrorKind::pole: return "pole";
    case ErrorKind::singular_point: return "singular-point";
    case ErrorKind::uncertifiable: return "uncertifiable";
    case ErrorKind::cap_exceeded: return "cap-exceeded";
    case ErrorKind::path_blocked: return "path-blocked";
    case ErrorKind::tolerance_not_met: return "tolerance-not-met";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::unsupported_surface: return "unsupported-surface";
    case ErrorKind::ambiguous: return "ambiguous";
    case ErrorKind::unresolved: return "unresolved";
    case ErrorKind::config_invalid: return "config-invalid";
    case ErrorKind::empty_mesh: return "empty-mesh";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

/// Every failure in the library is reported as an Error carrying a kind, so
/// callers can branch on the category without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace minsurf
