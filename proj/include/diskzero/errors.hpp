#pragma once

#include <stdexcept>
#include <string>

namespace diskzero {

/// A computation that could not produce a trustworthy number, e.g. a winding
/// count on a circle sampled too coarsely.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace diskzero
