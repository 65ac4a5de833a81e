#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace linerecon {

// Exact signed integer position on the line. All equality and sign tests are
// decided without tolerance; callers with rational data must pre-scale.
using Coordinate = boost::multiprecision::cpp_int;

inline Coordinate abs_coord(const Coordinate& x) {
  return x < 0 ? Coordinate(-x) : x;
}

inline std::string coord_str(const Coordinate& x) { return x.str(); }

inline Coordinate coord_from_string(const std::string& s) {
  return Coordinate(s);
}

}  // namespace linerecon
