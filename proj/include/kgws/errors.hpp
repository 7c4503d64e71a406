#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kgws {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Parameters violate a SystemParams / RunConfig invariant.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested (n, l, branch) has no bound state under the method asked.
class NoBoundState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root scan found more than one candidate for a single (n, l, branch).
class AmbiguousRoot : public std::runtime_error {
public:
    AmbiguousRoot(const std::string& what, std::vector<double> candidates)
        : std::runtime_error(what), candidates_(std::move(candidates)) {}

    const std::vector<double>& candidates() const noexcept { return candidates_; }

private:
    std::vector<double> candidates_;
};

class QuadratureFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shooting converged on a root whose node count differs from the request.
class NodeCountMismatch : public std::runtime_error {
public:
    NodeCountMismatch(const std::string& what, int found)
        : std::runtime_error(what), found_(found) {}

    int found() const noexcept { return found_; }

private:
    int found_;
};

} // namespace kgws
