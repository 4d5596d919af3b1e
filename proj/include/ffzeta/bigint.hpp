#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ffzeta {

/// Arbitrary-precision signed integer used throughout the library for
/// exponents, valuations and combinatorial values. All arithmetic is exact.
using bigint = boost::multiprecision::cpp_int;

} // namespace ffzeta
