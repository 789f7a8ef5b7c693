#pragma once

#include <gtest/gtest.h>

#include "midpoint/error.hpp"

namespace midpoint::testing {

/// Runs fn and returns the code of the midpoint::Error it throws.
template <class Fn>
ErrorCode error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected midpoint::Error";
  return ErrorCode::invalid_input;
}

}  // namespace midpoint::testing
