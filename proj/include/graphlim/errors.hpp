#ifndef GRAPHLIM_ERRORS_HPP
#define GRAPHLIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace graphlim {

// Invalid argument values, malformed inputs, contract violations.
struct param_error : std::invalid_argument {
  explicit param_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A hard size cap was exceeded (counting/enumeration budgets).
struct size_error : std::length_error {
  explicit size_error(const std::string& msg) : std::length_error(msg) {}
};

// File could not be read or written.
struct io_error : std::runtime_error {
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace graphlim

#endif
