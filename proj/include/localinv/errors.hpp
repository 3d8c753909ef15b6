#pragma once

#include <stdexcept>
#include <string>

namespace localinv {

/// An instance exceeds a size guard. The message says which limit and how
/// far over it the request was.
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace localinv
