#include "convexpos/exact_formulas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "convexpos/error.hpp"

namespace convexpos {

namespace {

constexpr std::uint32_t k_limb_base = 1000000000u;

// exponent of prime p in m! (Legendre)
std::int64_t factorial_exponent(std::int64_t m, std::int64_t p) {
    std::int64_t e = 0;
    for (std::int64_t q = p; q <= m; q *= p) {
        e += m / q;
        if (q > m / p) break;  // avoid overflow of q *= p
    }
    return e;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<bool> sieve(std::max<std::int64_t>(n + 1, 2), true);
    std::vector<std::int64_t> primes;
    for (std::int64_t i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        primes.push_back(i);
        for (std::int64_t j = i * i; j <= n; j += i) sieve[j] = false;
    }
    return primes;
}

void check_n(ReferenceShape shape, int n) {
    int min_n = shape == ReferenceShape::bipointed ? 1 : 3;
    if (n < min_n)
        fail(ErrorKind::invalid_input, "InvalidArgument",
             "reference formula needs n >= " + std::to_string(min_n));
}

// factorial terms (m, coefficient) of the probability, plus the power of 2
struct FormulaTerms {
    std::vector<std::pair<std::int64_t, std::int64_t>> factorials;
    std::int64_t pow2 = 0;
};

FormulaTerms formula_terms(ReferenceShape shape, int n) {
    switch (shape) {
        case ReferenceShape::square:
            // (2n-2)!^2 / ((n-1)!^4 (n!)^2)
            return {{{2 * n - 2, 2}, {n - 1, -4}, {n, -2}}, 0};
        case ReferenceShape::triangle:
            // 2^n (3n-3)! / ((2n)! ((n-1)!)^3)
            return {{{3 * n - 3, 1}, {2 * n, -1}, {n - 1, -3}}, n};
        case ReferenceShape::bipointed:
            // 2^n / (n! (n+1)!)
            return {{{n, -1}, {n + 1, -1}}, n};
    }
    fail(ErrorKind::invalid_input, "InvalidArgument", "unknown reference shape");
}

}  // namespace

void BigNat::multiply(std::uint32_t factor) {
    std::uint64_t carry = 0;
    for (std::uint32_t& limb : limbs_) {
        std::uint64_t v = static_cast<std::uint64_t>(limb) * factor + carry;
        limb = static_cast<std::uint32_t>(v % k_limb_base);
        carry = v / k_limb_base;
    }
    while (carry) {
        limbs_.push_back(static_cast<std::uint32_t>(carry % k_limb_base));
        carry /= k_limb_base;
    }
}

std::string BigNat::to_string() const {
    std::string out = std::to_string(limbs_.back());
    char buf[10];
    for (int i = static_cast<int>(limbs_.size()) - 2; i >= 0; --i) {
        std::snprintf(buf, sizeof buf, "%09u", limbs_[i]);
        out += buf;
    }
    return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> reference_prime_exponents(ReferenceShape shape,
                                                                             int n) {
    check_n(shape, n);
    FormulaTerms terms = formula_terms(shape, n);
    std::int64_t largest = 2;
    for (auto [m, coef] : terms.factorials) largest = std::max(largest, m);

    std::map<std::int64_t, std::int64_t> exps;
    for (std::int64_t p : primes_up_to(largest))
        for (auto [m, coef] : terms.factorials) exps[p] += coef * factorial_exponent(m, p);
    exps[2] += terms.pow2;

    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (auto [p, e] : exps)
        if (e != 0) out.emplace_back(p, e);
    return out;
}

double log_exact_probability(ReferenceShape shape, int n) {
    check_n(shape, n);
    FormulaTerms terms = formula_terms(shape, n);
    double log_p = terms.pow2 * std::log(2.0);
    for (auto [m, coef] : terms.factorials) log_p += coef * std::lgamma(static_cast<double>(m) + 1.0);
    return log_p;
}

ExactReference exact_reference(ReferenceShape shape, int n) {
    ExactReference ref;
    ref.log_value = log_exact_probability(shape, n);
    if (n <= 30) {
        // reduced fraction straight from the prime factorization
        BigNat num(1), den(1);
        for (auto [p, e] : reference_prime_exponents(shape, n)) {
            BigNat& target = e > 0 ? num : den;
            for (std::int64_t i = 0; i < std::abs(e); ++i)
                target.multiply(static_cast<std::uint32_t>(p));
        }
        std::string den_str = den.to_string();
        ref.rational = den_str == "1" ? num.to_string() : num.to_string() + "/" + den_str;
    }
    return ref;
}

}  // namespace convexpos
