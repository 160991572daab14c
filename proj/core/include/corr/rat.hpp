#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace corr {

// All exceptions thrown by the library derive from this.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

inline void require(bool cond, const char* msg) {
    if (!cond) throw Error(msg);
}

using Int = mpz_class;

// Exact rational number. mpq_class keeps the canonical form (den > 0,
// gcd(num,den) = 1) after every operation, which is exactly the invariant
// we need; this wrapper adds parsing/printing helpers used across the
// library and by the JSON serializers.
using Rat = mpq_class;

inline Rat rat(long n, long d = 1) {
    Rat q(n, d);
    q.canonicalize();
    return q;
}

// Accepts "123", "-4/7", "0".
Rat rat_parse(const std::string& s);

std::string rat_str(const Rat& q);

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_one(const Rat& q) { return q == 1; }

Rat rat_pow(const Rat& base, long e);

// Binomial coefficient as an exact rational (n choose k), n >= 0.
Rat binomial(unsigned long n, unsigned long k);

Rat factorial(unsigned long n);

// True if q is the square of a rational; if so *root is set to the
// nonnegative square root.
bool rat_is_square(const Rat& q, Rat* root);

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v);
std::uint64_t rat_hash(const Rat& q);

}  // namespace corr
