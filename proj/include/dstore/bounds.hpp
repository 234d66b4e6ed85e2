#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dstore/algorithm.hpp"

namespace dstore {

using BigInt = boost::multiprecision::cpp_int;

struct BoundParams {
    int tau = 2;
    int d_bits = 2;
    int l_cap = 1;
    int readers = 1;
    Visibility visibility = Visibility::Invisible;
    Flavor flavor = Flavor::General;
};

/// Lower bound on the number of blocks in shared storage.
/// Throws InvalidParams unless tau > 1, D >= 1, L >= 1, R >= 1.
BigInt block_bound(const BoundParams& p);

/// Lower bound in bits for symmetric coding (common-write flavor only).
BigInt bit_bound_symmetric(const BoundParams& p);

/// "2.66e37"-style rendering with `digits` significant digits.
std::string scientific(const BigInt& x, int digits = 3);

/// Bits expressed in terabytes (2^40 bytes), scientific notation.
std::string bits_as_terabytes(const BigInt& bits, int digits = 3);

/// Human-readable grid of the four block bounds for one parameter point.
std::string bounds_table(int tau, int d_bits, int l_cap, int readers);

/// CSV rows "tau,d_bits,l_cap,readers,flavor,visibility,blocks,bits" over the
/// cartesian product of the given ranges (bits empty for the general flavor).
std::string bounds_csv(const std::vector<int>& taus, const std::vector<int>& ds, const std::vector<int>& ls,
                       const std::vector<int>& rs);

}  // namespace dstore
