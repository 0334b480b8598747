#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tdht/error.hpp"

namespace tdht {

inline std::uint64_t pow3(int n) {
    std::uint64_t p = 1;
    while (n-- > 0) p *= 3;
    return p;
}

/// Residue of j modulo 3^n - 1, in [0, 3^n - 1). Negative inputs allowed.
inline std::uint64_t reduce_residue(std::int64_t j, int n) {
    std::int64_t m = std::int64_t(pow3(n)) - 1;
    std::int64_t r = j % m;
    if (r < 0) r += m;
    return std::uint64_t(r);
}

/// Base-3 digit sum of a plain (unreduced) nonnegative integer.
inline int digit_sum(std::uint64_t x) {
    int s = 0;
    while (x != 0) {
        s += int(x % 3);
        x /= 3;
    }
    return s;
}

/// wt(j): digit sum of the residue of j mod 3^n - 1.
inline int wt(std::int64_t j, int n) { return digit_sum(reduce_residue(j, n)); }

/// sigma(j): product of the factorials of the base-3 digits of the reduced
/// residue. Digits are at most 2, so this is 2^(number of 2-digits).
inline std::int64_t sigma(std::int64_t j, int n) {
    std::uint64_t x = reduce_residue(j, n);
    std::int64_t p = 1;
    while (x != 0) {
        if (x % 3 == 2) p *= 2;
        x /= 3;
    }
    return p;
}

/// Little-endian base-3 digits of a residue, zero-padded to length n.
inline std::vector<std::uint8_t> ternary_digits(std::uint64_t residue, int n) {
    std::vector<std::uint8_t> d(n, 0);
    for (int i = 0; i < n; ++i) {
        d[i] = std::uint8_t(residue % 3);
        residue /= 3;
    }
    return d;
}

/// H(j) = wt(j) + wt((3^{m+1}-1) j) - wt(2 (3^{m+1}-1) j) for n = 2m+1.
/// Invariant under j -> 3j.
inline int weight_h(std::int64_t j, int n) {
    if (n % 2 == 0) throw BadDegreeError("H(j) requires odd n");
    int m = (n - 1) / 2;
    std::uint64_t M = pow3(n) - 1;
    std::uint64_t jr = reduce_residue(j, n);
    std::uint64_t f = (pow3(m + 1) - 1) % M;
    std::uint64_t fj = (f * jr) % M;
    std::uint64_t fj2 = (2 * fj) % M;
    return digit_sum(jr) + digit_sum(fj) - digit_sum(fj2);
}

/// wt(jvt) + wt(-jv) + wt(j), every product reduced mod 3^n - 1.
inline int triple_weight_sum(std::int64_t j, std::int64_t v, std::int64_t t, int n) {
    std::uint64_t M = pow3(n) - 1;
    std::uint64_t jr = reduce_residue(j, n);
    std::uint64_t vr = reduce_residue(v, n);
    std::uint64_t tr = reduce_residue(t, n);
    std::uint64_t jv = (jr * vr) % M;
    std::uint64_t jvt = (jv * tr) % M;
    std::uint64_t mjv = jv == 0 ? 0 : M - jv;
    return digit_sum(jvt) + digit_sum(mjv) + digit_sum(jr);
}

struct WeightCriterionReport {
    bool realizable = false;
    std::vector<std::uint64_t> equality_set;  // j with sum exactly 2n+1, ascending
};

/// Realizability screen: (v, t) passes iff wt(jvt) + wt(-jv) + wt(j) > 2n
/// for every 0 < j < 3^n - 1 with jd != 0 mod 3^n - 1, d = gcd(v, 3^n - 1).
/// Requires gcd(t, 3^n - 1) = 1 and d > 1.
inline WeightCriterionReport weight_criterion(std::uint64_t v, std::uint64_t t, int n) {
    std::uint64_t M = pow3(n) - 1;
    if (std::gcd(t % M, M) != 1) throw BadTError("gcd(t, 3^n - 1) must be 1");
    std::uint64_t vr = v % M;
    std::uint64_t d = std::gcd(vr, M);
    if (vr == 0 || d == 1)
        throw BadVError("gcd(v, 3^n - 1) must exceed 1 on the multiplexing path");
    std::uint64_t excluded_step = M / d;  // jd = 0 mod M iff (M/d) | j
    WeightCriterionReport rep;
    rep.realizable = true;
    for (std::uint64_t j = 1; j < M; ++j) {
        if (j % excluded_step == 0) continue;
        int s = triple_weight_sum(std::int64_t(j), std::int64_t(vr), std::int64_t(t % M), n);
        if (s <= 2 * n) rep.realizable = false;
        if (s == 2 * n + 1) rep.equality_set.push_back(j);
    }
    return rep;
}

struct HammingReport {
    bool pass = false;
    std::vector<std::uint64_t> equality_set;  // {j : H(j) = 1}, ascending
    std::optional<std::uint64_t> first_violation;
};

/// Full scan of the weight theorem for the Lin parameters
/// v = 2(3^{m+1} - 1), t = (3^n + 1)/4: H(j) >= 1 everywhere, H(j) = 1
/// exactly on the cosets of 1 and 2*3^m + 1, and the triple-sum phrasing
/// agrees with the H phrasing on the equality set.
inline HammingReport verify_lin_weight_theorem(int n) {
    if (n % 2 == 0) throw BadDegreeError("requires odd n");
    if (n < 3 || n > 15) throw SizeLimitError("supported degrees are odd n in [3, 15]");
    int m = (n - 1) / 2;
    std::uint64_t M = pow3(n) - 1;
    std::uint64_t v = 2 * (pow3(m + 1) - 1);
    std::uint64_t t = (pow3(n) + 1) / 4;

    // expected equality set: orbit of 1 and of 2*3^m + 1 under digit shifts
    std::vector<std::uint64_t> target;
    for (std::uint64_t j : {std::uint64_t(1), 2 * pow3(m) + 1}) {
        std::uint64_t k = j;
        do {
            target.push_back(k);
            k = (k * 3) % M;
        } while (k != j);
    }
    std::sort(target.begin(), target.end());

    HammingReport rep;
    rep.pass = true;
    for (std::uint64_t j = 1; j < M; ++j) {
        int h = weight_h(std::int64_t(j), n);
        bool in_target = std::binary_search(target.begin(), target.end(), j);
        bool ok = h >= 1 && (h == 1) == in_target;
        if (j % (M / 2) != 0) {  // d = 2: j = (3^n-1)/2 is outside the criterion domain
            int s = triple_weight_sum(std::int64_t(j), std::int64_t(v), std::int64_t(t), n);
            ok = ok && s > 2 * n && (s == 2 * n + 1) == (h == 1);
        }
        if (!ok) {
            rep.pass = false;
            if (!rep.first_violation) rep.first_violation = j;
        }
        if (h == 1) rep.equality_set.push_back(j);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Run decomposition of cyclic ternary words and the per-identity oracles
// used as property-test predicates.
// ---------------------------------------------------------------------------

enum class RunKind : std::uint8_t {
    ZeroTerminated,  // 1...1 0
    TwoTerminated,   // 1...1 2
};

/// A run of `ones` consecutive 1-digits terminated (at the low end) by a
/// single 0 or 2 digit; total block length ones + 1.
struct RunBlock {
    RunKind kind = RunKind::ZeroTerminated;
    int ones = 0;

    bool operator==(const RunBlock&) const = default;
};

/// The block as a standalone base-3 integer (terminal digit least significant).
inline std::uint64_t run_block_value(const RunBlock& b) {
    std::uint64_t v = b.kind == RunKind::TwoTerminated ? 2 : 0;
    std::uint64_t p = 3;
    for (int i = 0; i < b.ones; ++i, p *= 3) v += p;
    return v;
}

/// Cyclic ternary word segmented into terminated 1-runs. `blocks` is listed
/// most-significant block first; `rotation` is the left cyclic shift applied
/// to the source digits so the word ends on a non-1 digit.
struct RunDecomposition {
    std::vector<RunBlock> blocks;
    int rotation = 0;
};

inline RunDecomposition run_decompose(std::int64_t a, int n) {
    std::uint64_t ar = reduce_residue(a, n);
    std::vector<std::uint8_t> digits = ternary_digits(ar, n);
    int rot = -1;
    for (int i = 0; i < n; ++i) {
        if (digits[i] != 1) {
            rot = i;
            break;
        }
    }
    if (rot < 0) throw AllOnesError("the all-ones word has no run decomposition");

    RunDecomposition out;
    out.rotation = rot;
    int i = 0;
    while (i < n) {
        std::uint8_t c = digits[(i + rot) % n];
        if (c == 1) throw Error("internal: block does not start on a terminal digit");
        RunBlock b;
        b.kind = c == 0 ? RunKind::ZeroTerminated : RunKind::TwoTerminated;
        int r = 0;
        while (i + 1 + r < n && digits[(i + 1 + r + rot) % n] == 1) ++r;
        b.ones = r;
        out.blocks.push_back(b);
        i += r + 1;
    }
    std::reverse(out.blocks.begin(), out.blocks.end());
    return out;
}

/// Value of the rotated word a rotation puts on the decomposition.
inline std::uint64_t rotated_value(std::int64_t a, int n, int rotation) {
    std::vector<std::uint8_t> digits = ternary_digits(reduce_residue(a, n), n);
    std::uint64_t v = 0, p = 1;
    for (int i = 0; i < n; ++i, p *= 3) v += std::uint64_t(digits[(i + rotation) % n]) * p;
    return v;
}

/// Doubling additivity: wt(2a mod 3^n-1) equals the sum of wt(2 b_i) over
/// the standalone blocks of a's run decomposition.
inline bool check_run_sum(std::int64_t a, int n) {
    RunDecomposition d = run_decompose(a, n);
    std::uint64_t M = pow3(n) - 1;
    std::uint64_t a2 = (2 * reduce_residue(a, n)) % M;
    int rhs = 0;
    for (const RunBlock& b : d.blocks) rhs += digit_sum(2 * run_block_value(b));
    return digit_sum(a2) == rhs;
}

/// Doubling delta of one block: wt(B) - wt(2B) is -r for a 0-terminated run
/// and +r for a 2-terminated run.
inline bool check_block_delta(const RunBlock& b) {
    std::uint64_t v = run_block_value(b);
    int delta = digit_sum(v) - digit_sum(2 * v);
    return delta == (b.kind == RunKind::ZeroTerminated ? -b.ones : b.ones);
}

/// Adding 2*3^i lowers wt(a) - wt(2a) by at most 2.
inline bool check_add_two_delta(std::int64_t a, int i, int n) {
    if (i < 0 || i >= n) throw std::invalid_argument("digit position out of range");
    std::uint64_t M = pow3(n) - 1;
    std::uint64_t ar = reduce_residue(a, n);
    std::uint64_t a1 = (ar + 2 * pow3(i)) % M;
    int lhs = digit_sum(a1) - digit_sum(2 * a1 % M);
    int rhs = digit_sum(ar) - digit_sum(2 * ar % M) - 2;
    return lhs >= rhs;
}

/// (3^{m+1}-1)(j +- (3^{m+1}+1) 3^i) = (3^{m+1}-1) j +- 2*3^i (mod 3^n - 1),
/// for n = 2m+1; both signs checked.
inline bool check_shift_congruence(std::int64_t j, int i, int n) {
    if (n % 2 == 0) throw BadDegreeError("requires odd n");
    if (i < 0 || i >= n) throw std::invalid_argument("digit position out of range");
    int m = (n - 1) / 2;
    std::uint64_t M = pow3(n) - 1;
    std::uint64_t f = (pow3(m + 1) - 1) % M;
    std::uint64_t jr = reduce_residue(j, n);
    std::uint64_t shift = (pow3(m + 1) + 1) % M * pow3(i) % M;
    std::uint64_t two3i = 2 * pow3(i) % M;
    std::uint64_t lhs_plus = f * ((jr + shift) % M) % M;
    std::uint64_t rhs_plus = (f * jr + two3i) % M;
    std::uint64_t lhs_minus = f * ((jr + M - shift) % M) % M;
    std::uint64_t rhs_minus = (f * jr % M + M - two3i) % M;
    return lhs_plus == rhs_plus && lhs_minus == rhs_minus;
}

enum class DigitEditKind : std::uint8_t {
    RaiseMsdOfZeroRun,  // 1...10 -> 21...10, expected doubling delta 0
    DropOneInTwoRun,    // 1...12 -> 1..0..12 (split 1s), expected delta 2*r1
    RaiseMsdOfTwoRun,   // 1...12 -> 21...12, expected delta 2
    MergeTwoRunDown,    // terminal 2 -> 1, lower block 0-terminated, delta 2*ones
};

/// One-digit edit addressed by block. `block` counts from the least
/// significant block b_0 upward; `split` is the number of 1-digits kept
/// above the inserted 0 for DropOneInTwoRun.
struct DigitEdit {
    int block = 0;
    DigitEditKind kind = DigitEditKind::RaiseMsdOfZeroRun;
    int split = 0;
};

/// Apply a single-digit edit to a's rotated word and test that
/// wt(2a') - wt(2a) matches the case table for that edit.
inline bool check_one_digit_delta(std::int64_t a, const DigitEdit& e, int n) {
    RunDecomposition d = run_decompose(a, n);
    int t = int(d.blocks.size());
    if (e.block < 0 || e.block >= t) throw std::invalid_argument("block index out of range");
    // blocks are stored most-significant first; b_0 is the back
    const RunBlock& b = d.blocks[t - 1 - e.block];
    int start = 0;  // least significant digit position of the addressed block
    for (int k = 0; k < e.block; ++k) start += d.blocks[t - 1 - k].ones + 1;

    int pos;
    std::uint8_t new_digit;
    int expected;
    switch (e.kind) {
        case DigitEditKind::RaiseMsdOfZeroRun:
            if (b.kind != RunKind::ZeroTerminated || b.ones < 1)
                throw std::invalid_argument("edit requires a 0-terminated run with ones >= 1");
            pos = start + b.ones;
            new_digit = 2;
            expected = 0;
            break;
        case DigitEditKind::DropOneInTwoRun:
            if (b.kind != RunKind::TwoTerminated || b.ones < 1 || e.split < 0 ||
                e.split > b.ones - 1)
                throw std::invalid_argument("edit requires a 2-terminated run with a valid split");
            pos = start + b.ones - e.split;
            new_digit = 0;
            expected = 2 * e.split;
            break;
        case DigitEditKind::RaiseMsdOfTwoRun:
            if (b.kind != RunKind::TwoTerminated || b.ones < 1)
                throw std::invalid_argument("edit requires a 2-terminated run with ones >= 1");
            pos = start + b.ones;
            new_digit = 2;
            expected = 2;
            break;
        case DigitEditKind::MergeTwoRunDown: {
            const RunBlock& below = d.blocks[t - 1 - ((e.block + t - 1) % t)];
            if (b.kind != RunKind::TwoTerminated || below.kind != RunKind::ZeroTerminated)
                throw std::invalid_argument(
                    "edit requires a 2-terminated run above a 0-terminated run");
            pos = start;
            new_digit = 1;
            expected = 2 * b.ones;
            break;
        }
        default:
            throw std::invalid_argument("unknown edit kind");
    }

    std::uint64_t M = pow3(n) - 1;
    std::uint64_t base = rotated_value(a, n, d.rotation);
    std::uint64_t cur = base / pow3(pos) % 3;
    std::uint64_t edited = base - cur * pow3(pos) + std::uint64_t(new_digit) * pow3(pos);
    if (edited % M == 0)  // the all-2s word is the zero residue, outside the domain
        throw std::invalid_argument("edit degenerates to the zero residue");
    int delta = digit_sum(2 * (edited % M) % M) - digit_sum(2 * (base % M) % M);
    return delta == expected;
}

/// Every edit of `d` that stays inside check_one_digit_delta's domain.
inline std::vector<DigitEdit> applicable_digit_edits(const RunDecomposition& d) {
    int t = int(d.blocks.size());
    int total_ones = 0;
    bool all_two_terminated = true;
    for (const RunBlock& b : d.blocks) {
        total_ones += b.ones;
        all_two_terminated = all_two_terminated && b.kind == RunKind::TwoTerminated;
    }
    std::vector<DigitEdit> edits;
    for (int bi = 0; bi < t; ++bi) {
        const RunBlock& b = d.blocks[t - 1 - bi];  // b_0 is least significant
        const RunBlock& below = d.blocks[t - 1 - ((bi + t - 1) % t)];
        if (b.kind == RunKind::ZeroTerminated) {
            if (b.ones >= 1) edits.push_back({bi, DigitEditKind::RaiseMsdOfZeroRun, 0});
        } else {
            if (b.ones >= 1) {
                // raising the only 1 of an otherwise all-2s word hits the zero residue
                if (!(all_two_terminated && total_ones == 1))
                    edits.push_back({bi, DigitEditKind::RaiseMsdOfTwoRun, 0});
                for (int r1 = 0; r1 < b.ones; ++r1)
                    edits.push_back({bi, DigitEditKind::DropOneInTwoRun, r1});
            }
            if (below.kind == RunKind::ZeroTerminated)
                edits.push_back({bi, DigitEditKind::MergeTwoRunDown, 0});
        }
    }
    return edits;
}

}  // namespace tdht
