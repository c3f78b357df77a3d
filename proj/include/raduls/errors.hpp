#pragma once

#include <stdexcept>
#include <string>

namespace raduls {

// Allocation failures, unreadable paths and malformed record files surface
// as distinct exception types so callers (the CLI in particular) can map
// them to distinct exit codes.

struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace raduls
