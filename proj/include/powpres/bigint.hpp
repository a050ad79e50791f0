#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace powpres {

// Group orders reach 120^1024; Smith normal form intermediates grow without
// bound. Everything order-sized goes through this type.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt bigint_pow(BigInt base, unsigned exp) {
  BigInt r = 1;
  while (exp) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

}  // namespace powpres
