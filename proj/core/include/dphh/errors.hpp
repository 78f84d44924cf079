#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dphh {

/// Bad argument to a public operation (zero capacity, non-positive scale, ...).
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// No finite expanded capacity satisfies the recall condition.
class InfeasibleCapacity : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operation not permitted in the object's current state (e.g. noising twice).
class InvalidState : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Operation requested on the wrong kind of sketch.
class InvalidKind : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Error envelope that is not non-decreasing or has gamma1 < gamma2.
class InvalidEnvelope : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Neighbor pair whose summaries cannot be compared (capacity mismatch).
class InvalidPair : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input stream. Carries the byte offset of the offending record.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::uint64_t offset)
        : std::runtime_error(what + " at byte offset " + std::to_string(offset)),
          offset_(offset) {}

    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::uint64_t offset_;
};

/// A neighbor-run classification or transition outside the allowed relation.
/// what() holds the full witness dump.
class StateMachineViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dphh
