#pragma once

#include <stdexcept>
#include <string>

namespace bee {

// Argument outside the region where a quantity is defined (e.g. k <= k0 for
// the critical multiplier, T* below (1/2)^k).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A bracketing or iterative procedure failed to isolate its target.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds what can be computed at desk scale (e.g. enumeration n > 6).
class ResourceError : public std::length_error {
public:
    explicit ResourceError(const std::string& what) : std::length_error(what) {}
};

// Malformed input: bad subgraph, unparsable graph file or config.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace bee
