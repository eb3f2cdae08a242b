#pragma once

#include <stdexcept>
#include <string>

namespace dickson {

/// Result of an exact integer operation does not fit in 64 bits.
class OverflowError : public std::overflow_error {
public:
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

/// Requested degree exceeds the exact-coefficient cap.
class DegreeTooLarge : public std::out_of_range {
public:
    explicit DegreeTooLarge(const std::string& what) : std::out_of_range(what) {}
};

/// A brute-force routine was asked for a modulus above its cap.
class CapExceeded : public std::out_of_range {
public:
    explicit CapExceeded(const std::string& what) : std::out_of_range(what) {}
};

/// A residue tuple whose congruence system has no solution.
class NotInA : public std::domain_error {
public:
    explicit NotInA(const std::string& what) : std::domain_error(what) {}
};

/// An invariant that the mathematics guarantees was violated.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dickson
