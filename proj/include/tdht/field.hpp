#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tdht/error.hpp"

namespace tdht {

/// Element of GF(3^n) in the polynomial basis, packed as an integer in
/// [0, 3^n): bit-for-digit value sum c_i * 3^i of the coefficient vector.
/// The zero element is packed 0; the context interprets the digits.
struct FieldElement {
    std::uint32_t packed = 0;

    constexpr bool operator==(const FieldElement&) const = default;
    constexpr bool is_zero() const { return packed == 0; }
};

/// Orbit of a residue under multiplication by 3 modulo q-1.
struct CyclotomicCoset {
    std::uint64_t modulus = 0;
    std::uint64_t representative = 0;
    std::vector<std::uint64_t> members;  // sorted ascending
};

/// Coset of j under k -> 3k (mod modulus). Representative is the minimum.
inline CyclotomicCoset coset_of(std::uint64_t modulus, std::uint64_t j) {
    CyclotomicCoset c;
    c.modulus = modulus;
    j %= modulus;
    std::uint64_t k = j;
    do {
        c.members.push_back(k);
        k = (k * 3) % modulus;
    } while (k != j);
    std::sort(c.members.begin(), c.members.end());
    c.representative = c.members.front();
    return c;
}

/// Partition of [0, modulus) into cyclotomic cosets, ordered by representative.
inline std::vector<CyclotomicCoset> all_cosets(std::uint64_t modulus) {
    std::vector<bool> seen(modulus, false);
    std::vector<CyclotomicCoset> out;
    for (std::uint64_t j = 0; j < modulus; ++j) {
        if (seen[j]) continue;
        CyclotomicCoset c = coset_of(modulus, j);
        for (std::uint64_t m : c.members) seen[m] = true;
        out.push_back(std::move(c));
    }
    return out;
}

/// A concrete GF(3^n): primitive modulus polynomial, exp/log tables for
/// the cyclic group generated by alpha = x, and a full trace table.
///
/// Immutable once built; safe for unrestricted concurrent reads.
/// Multiplication runs on the log/exp tables, addition digit-wise on the
/// packed coefficient vectors, trace by table lookup.
class FieldContext {
public:
    static constexpr int kMaxDegree = 19;

    /// Build GF(3^n) over the lexicographically smallest monic primitive
    /// polynomial of degree n (coefficient vectors compared low-degree-first).
    static FieldContext build(int n) { return FieldContext(n, {}); }

    /// Build over a caller-supplied monic modulus of degree n.
    /// Throws NotPrimitiveError if x fails the order-(3^n - 1) test.
    static FieldContext build(int n, std::span<const std::uint8_t> modulus) {
        return FieldContext(n, std::vector<std::uint8_t>(modulus.begin(), modulus.end()));
    }

    int degree() const { return n_; }
    std::uint32_t order() const { return q_; }            // q = 3^n
    std::uint32_t group_order() const { return q_ - 1; }  // |F_q^*|
    const std::vector<std::uint8_t>& modulus() const { return modulus_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    FieldElement alpha() const { return {exp_[1 % (q_ - 1)]}; }

    FieldElement from_packed(std::uint32_t packed) const {
        if (packed >= q_) throw Error("packed value out of range");
        return {packed};
    }

    /// alpha^i with i reduced mod q-1.
    FieldElement element_from_log(std::uint64_t i) const { return {exp_[i % (q_ - 1)]}; }

    /// Discrete log of a nonzero element.
    std::uint32_t log(FieldElement x) const {
        if (x.is_zero()) throw Error("log of zero");
        return log_[x.packed];
    }

    FieldElement add(FieldElement x, FieldElement y) const {
        std::uint32_t px = x.packed, py = y.packed, out = 0, p3 = 1;
        while (px != 0 || py != 0) {
            std::uint32_t d = px % 3 + py % 3;
            if (d >= 3) d -= 3;
            out += d * p3;
            px /= 3;
            py /= 3;
            p3 *= 3;
        }
        return {out};
    }

    FieldElement neg(FieldElement x) const {
        std::uint32_t px = x.packed, out = 0, p3 = 1;
        while (px != 0) {
            std::uint32_t d = px % 3;
            out += (d == 0 ? 0 : 3 - d) * p3;
            px /= 3;
            p3 *= 3;
        }
        return {out};
    }

    FieldElement sub(FieldElement x, FieldElement y) const { return add(x, neg(y)); }

    FieldElement mul(FieldElement x, FieldElement y) const {
        if (x.is_zero() || y.is_zero()) return {0};
        std::uint64_t l = std::uint64_t(log_[x.packed]) + log_[y.packed];
        if (l >= q_ - 1) l -= q_ - 1;
        return {exp_[l]};
    }

    /// x^e via the log table; exponents of nonzero elements reduce mod q-1,
    /// so e may be negative. 0^e = 0 for e > 0; 0^e with e <= 0 throws.
    FieldElement pow(FieldElement x, std::int64_t e) const {
        if (x.is_zero()) {
            if (e <= 0) throw ZeroToNonpositiveError("0^e with e <= 0");
            return {0};
        }
        std::int64_t m = q_ - 1;
        std::int64_t r = e % m;
        if (r < 0) r += m;
        return {exp_[(std::uint64_t(log_[x.packed]) * std::uint64_t(r)) % std::uint64_t(m)]};
    }

    /// Trace to the prime field: x + x^3 + ... + x^{3^{n-1}}, in {0,1,2}.
    std::uint8_t trace(FieldElement x) const { return trace_[x.packed]; }

private:
    FieldContext(int n, std::vector<std::uint8_t> override_poly) {
        if (n < 1 || n > kMaxDegree)
            throw SizeLimitError("extension degree must be in [1, " +
                                 std::to_string(kMaxDegree) + "]");
        n_ = n;
        q_ = 1;
        for (int i = 0; i < n; ++i) q_ *= 3;
        exp_.assign(q_ - 1, 0);

        if (!override_poly.empty()) {
            if (override_poly.size() != std::size_t(n) + 1 || override_poly.back() != 1)
                throw NotPrimitiveError("modulus must be monic of degree n");
            for (std::uint8_t c : override_poly)
                if (c > 2) throw NotPrimitiveError("modulus coefficients must be in {0,1,2}");
            if (order_walk(override_poly) != q_ - 1)
                throw NotPrimitiveError("x does not have order 3^n - 1 modulo the given polynomial");
            modulus_ = std::move(override_poly);
        } else {
            modulus_ = scan_for_primitive();
        }
        build_log_and_trace();
    }

    // Order of x in F_3[x]/(poly), walking powers up to q-1 steps and
    // filling exp_ along the way. Returns 0 if 1 is never reached.
    std::uint32_t order_walk(const std::vector<std::uint8_t>& poly) {
        if (poly[0] == 0) return 0;  // x divides poly, x is not a unit
        std::vector<std::uint8_t> cur(n_, 0);
        cur[0] = 1;  // the element 1
        exp_[0] = 1;
        for (std::uint32_t i = 1; i < q_; ++i) {
            // cur *= x, reducing x^n = -sum poly[k] x^k
            std::uint8_t carry = cur[n_ - 1];
            for (int k = n_ - 1; k > 0; --k) cur[k] = cur[k - 1];
            cur[0] = 0;
            if (carry != 0) {
                for (int k = 0; k < n_; ++k) {
                    std::uint8_t d = cur[k] + carry * ((3 - poly[k]) % 3);
                    cur[k] = d % 3;
                }
            }
            std::uint32_t packed = 0, p3 = 1;
            for (int k = 0; k < n_; ++k) {
                packed += cur[k] * p3;
                p3 *= 3;
            }
            if (packed == 1) return i;
            if (i < q_ - 1) exp_[i] = packed;
        }
        return 0;
    }

    // Lexicographic scan, low-degree coefficient most significant.
    std::vector<std::uint8_t> scan_for_primitive() {
        std::vector<std::uint8_t> cand(n_ + 1, 0);
        cand[n_] = 1;
        while (true) {
            if (cand[0] != 0 && order_walk(cand) == q_ - 1) return cand;
            int k = n_ - 1;  // increment the odometer, c_0 slowest
            while (k >= 0 && cand[k] == 2) cand[k--] = 0;
            if (k < 0) throw NotPrimitiveError("no primitive polynomial found");  // unreachable
            ++cand[k];
        }
    }

    void build_log_and_trace() {
        log_.assign(q_, 0);
        for (std::uint32_t i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;

        // trace of each basis monomial alpha^j, then extend linearly over
        // the packed digits with an odometer walk
        std::vector<std::uint8_t> basis(n_, 0);
        for (int j = 0; j < n_; ++j) {
            FieldElement s{0};
            std::uint64_t e = j;
            for (int i = 0; i < n_; ++i) {
                s = add(s, {exp_[e % (q_ - 1)]});
                e = (e * 3) % (q_ - 1);
            }
            if (s.packed > 2) throw Error("trace of basis element not in prime field");
            basis[j] = std::uint8_t(s.packed);
        }
        trace_.assign(q_, 0);
        std::vector<std::uint8_t> odo(n_, 0);
        std::uint8_t tr = 0;
        for (std::uint32_t p = 1; p < q_; ++p) {
            int k = 0;
            while (odo[k] == 2) {  // rolling a 2 over to 0 adds basis[k] mod 3
                odo[k] = 0;
                tr = std::uint8_t((tr + basis[k]) % 3);
                ++k;
            }
            ++odo[k];
            tr = std::uint8_t((tr + basis[k]) % 3);
            trace_[p] = tr;
        }
    }

    int n_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint8_t> modulus_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint8_t> trace_;
};

}  // namespace tdht
