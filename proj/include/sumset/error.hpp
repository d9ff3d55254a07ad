#pragma once

#include <stdexcept>
#include <string>

namespace sumset {

// Raised on violated preconditions and malformed inputs. Every public
// operation of the library reports failure this way.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sumset
