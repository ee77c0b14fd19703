#pragma once

#include <stdexcept>
#include <string>

namespace infnc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration was asked for a size beyond its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A moment or cumulant needed by a formula is not present.
class MissingValue : public Error {
 public:
  using Error::Error;
};

}  // namespace infnc
