#pragma once

#include <stdexcept>
#include <string>

namespace stylo {

// Malformed input or violated precondition. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stylo
