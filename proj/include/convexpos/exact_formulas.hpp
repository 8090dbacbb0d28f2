#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace convexpos {

// Closed-form convex-position probabilities used as oracles:
//   square:    P(n) = C(2n-2, n-1)^2 / (n!)^2,            n >= 3
//   triangle:  P(n) = 2^n (3n-3)! / ((2n)! ((n-1)!)^3),   n >= 3
//   bipointed: P(n) = 2^n / (n! (n+1)!),                  n >= 1
//              (n points in an area-1 triangle, in convex position together
//               with two fixed triangle vertices)
enum class ReferenceShape { square, triangle, bipointed };

struct ExactReference {
    double log_value = 0.0;               // natural log, via lgamma
    std::optional<std::string> rational;  // reduced "p/q", present for n <= 30
};

ExactReference exact_reference(ReferenceShape shape, int n);
double log_exact_probability(ReferenceShape shape, int n);

// Signed prime factorization of the probability (pairs prime -> exponent).
// Exact for any n; also serves as a big-integer log oracle via sum e*log(p).
std::vector<std::pair<std::int64_t, std::int64_t>> reference_prime_exponents(ReferenceShape shape,
                                                                             int n);

// Minimal unsigned big integer (base 1e9 limbs); only what the reduced
// rational output needs: small multiplication and decimal printing.
class BigNat {
public:
    BigNat() : limbs_{0} {}
    explicit BigNat(std::uint32_t value) : limbs_{value} {}

    void multiply(std::uint32_t factor);
    std::string to_string() const;

private:
    std::vector<std::uint32_t> limbs_;  // little-endian, base 1e9
};

}  // namespace convexpos
