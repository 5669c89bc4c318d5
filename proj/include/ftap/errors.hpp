#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ftap {

/// Inputs whose shapes do not fit together (wrong lengths, malformed tree).
class StructuralError : public std::invalid_argument {
public:
    explicit StructuralError(const std::string& what) : std::invalid_argument(what) {}
    StructuralError(const std::string& what, std::vector<std::string> violations)
        : std::invalid_argument(what), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Argument outside the domain of an operation (index out of range, eps <= 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A mathematical precondition of an operation does not hold for this market.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A result that contradicts a guarantee the library relies on. Always a bug.
class SoundnessError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace ftap
