#pragma once

#include <stdexcept>
#include <string>

namespace qmoore {

// Exit-code mapping used by the CLI: InputError -> 2, InvariantViolation -> 1,
// CapsExhausted -> 3.

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mixing ring elements over different groups or scalar kinds.
struct TypeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A truncated solve ran out of configured bracket/support caps.
struct CapsExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal exact identity failed; never expected on valid inputs.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace qmoore
