#pragma once

#include <stdexcept>
#include <string>

namespace octet {

// Rejected input: malformed octuple, non-tangent spheres, bad flags.
class invalid_input : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured memory or search budget would be exceeded.
class budget_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed (parity tripwire, bad certificate, ...).
class invariant_violation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace octet
