#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "tdht/error.hpp"

namespace tdht {

/// Unsigned 128-bit result type for norms and spectral energy sums.
/// Values can reach 3^{3n} (n up to 19), which exceeds 64 bits.
using Norm = unsigned __int128;

inline std::int64_t checked_add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw OverflowError("integer add overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_sub_overflow(x, y, &r)) throw OverflowError("integer sub overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw OverflowError("integer mul overflow");
    return r;
}

/// Exact element a + b*w of Z[w], where w = e^{2*pi*i/3} is a primitive
/// cube root of unity (so w^2 = -1 - w). Every character sum and spectrum
/// in the library lives in this ring; no floating point on exact paths.
struct Eisenstein {
    std::int64_t a = 0;
    std::int64_t b = 0;

    constexpr bool operator==(const Eisenstein&) const = default;
};

/// w^k for k reduced mod 3: (1,0), (0,1), (-1,-1).
inline Eisenstein omega_pow(int k) {
    k %= 3;
    if (k < 0) k += 3;
    switch (k) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        default: return {-1, -1};
    }
}

inline Eisenstein operator+(Eisenstein x, Eisenstein y) {
    return {checked_add(x.a, y.a), checked_add(x.b, y.b)};
}

inline Eisenstein operator-(Eisenstein x, Eisenstein y) {
    return {checked_sub(x.a, y.a), checked_sub(x.b, y.b)};
}

inline Eisenstein operator-(Eisenstein x) { return {checked_sub(0, x.a), checked_sub(0, x.b)}; }

// (a1 + b1 w)(a2 + b2 w) = a1 a2 - b1 b2 + (a1 b2 + a2 b1 - b1 b2) w
inline Eisenstein operator*(Eisenstein x, Eisenstein y) {
    std::int64_t aa = checked_mul(x.a, y.a);
    std::int64_t bb = checked_mul(x.b, y.b);
    std::int64_t ab = checked_mul(x.a, y.b);
    std::int64_t ba = checked_mul(x.b, y.a);
    return {checked_sub(aa, bb), checked_sub(checked_add(ab, ba), bb)};
}

inline Eisenstein& operator+=(Eisenstein& x, Eisenstein y) { return x = x + y; }
inline Eisenstein& operator-=(Eisenstein& x, Eisenstein y) { return x = x - y; }

/// Complex conjugate, i.e. the ring automorphism w -> w^2: (a - b, -b).
inline Eisenstein conj(Eisenstein x) {
    return {checked_sub(x.a, x.b), checked_sub(0, x.b)};
}

/// Multiply by w without forming a product: w(a + bw) = -b + (a - b)w.
inline Eisenstein mul_omega(Eisenstein x) {
    return {checked_sub(0, x.b), checked_sub(x.a, x.b)};
}

/// Multiply by w^2: b - a + (-a)w.
inline Eisenstein mul_omega_sq(Eisenstein x) {
    return {checked_sub(x.b, x.a), checked_sub(0, x.a)};
}

/// |x|^2 = a^2 - a b + b^2 = x * conj(x), an ordinary nonnegative integer.
/// Exact for any int64 coordinates (the true value fits in 128 bits).
inline Norm norm_sq(Eisenstein x) {
    Norm aa = Norm(__int128(x.a) * x.a);
    Norm ab = Norm(__int128(x.a) * x.b);
    Norm bb = Norm(__int128(x.b) * x.b);
    return aa - ab + bb;  // wraps exactly: result is in [0, 2^128)
}

/// If x == q * w^k for some k in {0,1,2}, return k; otherwise nullopt.
inline std::optional<int> as_q_omega_power(Eisenstein x, std::int64_t q) {
    for (int k = 0; k < 3; ++k) {
        Eisenstein w = omega_pow(k);
        if (x.a == checked_mul(q, w.a) && x.b == checked_mul(q, w.b)) return k;
    }
    return std::nullopt;
}

/// Embedding into C via w -> -1/2 + i*sqrt(3)/2.
inline std::complex<double> to_complex(Eisenstein x) {
    static const double half_sqrt3 = std::sqrt(3.0) / 2.0;
    return {double(x.a) - 0.5 * double(x.b), half_sqrt3 * double(x.b)};
}

}  // namespace tdht
