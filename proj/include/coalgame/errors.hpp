#ifndef COALGAME_ERRORS_HPP
#define COALGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coalgame {

// Syntactic or semantic problems in user-supplied text (partitions,
// game-spec documents, candidate profiles).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A structurally well-formed input that violates a model invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the operation's domain (bad k, wrong arity, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Configured resource cap exceeded (profile sweeps, exact core check).
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// An analysis precondition does not hold (e.g. candidate is not an
// equilibrium where one is required).
class PreconditionError : public std::runtime_error {
public:
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coalgame

#endif
