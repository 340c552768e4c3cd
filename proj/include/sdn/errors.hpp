#pragma once

#include <stdexcept>
#include <string>

namespace sdn {

// Malformed input: mismatched fields/lengths, bad flags, unparsable files.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Arguments outside the mathematical domain of an operation (e.g. n not ≡ 0 mod 4).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An operation's precondition on its inputs does not hold (e.g. v already in C).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A configured budget would be exceeded. `progress` carries whatever partial
// work was completed before giving up.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what, std::string progress = {})
        : std::runtime_error(what), progress_(std::move(progress)) {}

    const std::string& progress() const noexcept { return progress_; }

private:
    std::string progress_;
};

}  // namespace sdn
