#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace kpaths {

/// Arbitrary-precision integer used for cardinalities and value totals.
using BigInt = boost::multiprecision::cpp_int;

}  // namespace kpaths
