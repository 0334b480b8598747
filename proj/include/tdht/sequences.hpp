#pragma once

#include <atomic>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdht/dht.hpp"
#include "tdht/eisenstein.hpp"
#include "tdht/error.hpp"
#include "tdht/field.hpp"
#include "tdht/parallel.hpp"

namespace tdht {

enum class SequenceFamily : std::uint8_t { MSequence, Lin, DhtRealized, Custom };

inline const char* family_name(SequenceFamily f) {
    switch (f) {
        case SequenceFamily::MSequence: return "m";
        case SequenceFamily::Lin: return "lin";
        case SequenceFamily::DhtRealized: return "dht";
        default: return "custom";
    }
}

/// Period-(3^n - 1) sequence over {0,1,2} with enough provenance to
/// reproduce it: the field modulus and, for realized sequences, (v, t).
struct TernarySequence {
    int n = 0;
    std::uint32_t period = 0;
    std::vector<std::uint8_t> digits;
    SequenceFamily family = SequenceFamily::Custom;
    std::vector<std::uint8_t> modulus;
    std::uint32_t v = 0;
    std::uint32_t t = 0;
};

/// s_i = Tr(alpha^i).
inline TernarySequence m_sequence(const FieldContext& ctx) {
    TernarySequence s;
    s.n = ctx.degree();
    s.period = ctx.group_order();
    s.family = SequenceFamily::MSequence;
    s.modulus = ctx.modulus();
    s.digits.resize(s.period);
    for (std::uint32_t i = 0; i < s.period; ++i) s.digits[i] = ctx.trace(ctx.element_from_log(i));
    return s;
}

/// s_i = Tr(alpha^i + alpha^{(2*3^m + 1) i}) for n = 2m + 1.
inline TernarySequence lin_sequence(const FieldContext& ctx) {
    if (ctx.degree() % 2 == 0) throw BadDegreeError("the Lin family requires odd n");
    int m = (ctx.degree() - 1) / 2;
    std::uint64_t e = 2 * pow3(m) + 1;
    TernarySequence s;
    s.n = ctx.degree();
    s.period = ctx.group_order();
    s.family = SequenceFamily::Lin;
    s.modulus = ctx.modulus();
    s.digits.resize(s.period);
    for (std::uint32_t i = 0; i < s.period; ++i) {
        FieldElement x = ctx.add(ctx.element_from_log(i), ctx.element_from_log(e * i));
        s.digits[i] = ctx.trace(x);
    }
    return s;
}

/// Exact autocorrelation sum over one period: sum_i w^{s_{i+tau} - s_i}.
inline Eisenstein autocorrelation(const TernarySequence& s, std::uint32_t tau) {
    const std::uint32_t N = s.period;
    if (N == 0) throw Error("empty sequence");
    tau %= N;
    std::int64_t count[3] = {0, 0, 0};
    for (std::uint32_t i = 0; i < N; ++i) {
        std::uint32_t j = i + tau;
        if (j >= N) j -= N;
        ++count[(s.digits[j] + 3 - s.digits[i]) % 3];
    }
    return {count[0] - count[2], count[1] - count[2]};
}

/// True iff the autocorrelation is exactly -1 at every nonzero shift.
inline bool is_ideal_two_level(const TernarySequence& s, int jobs = 1) {
    const std::uint32_t N = s.period;
    if (N == 0) return false;
    // doubled digits avoid the wrap branch in the inner loop
    std::vector<std::uint8_t> d2(s.digits);
    d2.insert(d2.end(), s.digits.begin(), s.digits.end());
    std::atomic<bool> ok{true};
    parallel_for(N - 1, jobs, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t k = begin; k < end && ok.load(std::memory_order_relaxed); ++k) {
            std::uint32_t tau = std::uint32_t(k) + 1;
            std::int64_t count[3] = {0, 0, 0};
            const std::uint8_t* hi = d2.data() + tau;
            const std::uint8_t* lo = d2.data();
            for (std::uint32_t i = 0; i < N; ++i) ++count[(hi[i] + 3 - lo[i]) % 3];
            Eisenstein c{count[0] - count[2], count[1] - count[2]};
            if (!(c == Eisenstein{-1, 0})) ok.store(false, std::memory_order_relaxed);
        }
    });
    return ok.load();
}

namespace detail {

// least nonnegative k with a*k = c (mod m); gcd(a, m) must divide c
inline std::optional<std::uint64_t> solve_congruence(std::uint64_t a, std::uint64_t c,
                                                     std::uint64_t m) {
    std::uint64_t g = std::gcd(a, m);
    if (c % g != 0) return std::nullopt;
    std::uint64_t mr = m / g, ar = (a / g) % mr, cr = (c / g) % mr;
    // extended Euclid for ar^{-1} mod mr
    std::int64_t r0 = std::int64_t(mr), r1 = std::int64_t(ar), s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t qq = r0 / r1;
        r0 -= qq * r1;
        std::swap(r0, r1);
        s0 -= qq * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) return std::nullopt;
    std::int64_t inv = s0 % std::int64_t(mr);
    if (inv < 0) inv += std::int64_t(mr);
    return std::uint64_t((__int128(cr) * inv) % mr);
}

}  // namespace detail

/// Materialize the realized sequence t_i = g(lambda, gamma) where
/// alpha^i = gamma lambda^{vt}, gamma = alpha^{i mod d}, and lambda is the
/// least-exponent solution of the index congruence.
inline TernarySequence build_realized_sequence(const RealizablePairReport& rep,
                                               const FieldContext& ctx) {
    if (!rep.realizable) throw NotRealizableError("report does not describe a realizable pair");
    const std::uint64_t M = ctx.group_order();
    const std::uint64_t vt = std::uint64_t(rep.v) * rep.t % M;
    TernarySequence s;
    s.n = ctx.degree();
    s.period = std::uint32_t(M);
    s.family = SequenceFamily::DhtRealized;
    s.modulus = ctx.modulus();
    s.v = rep.v;
    s.t = rep.t;
    s.digits.resize(M);
    for (std::uint64_t i = 0; i < M; ++i) {
        std::uint64_t r = i % rep.d;
        std::optional<std::uint64_t> k = detail::solve_congruence(vt, (i - r) % M, M);
        if (!k) throw NoSolutionError("index congruence vt*k = i - r has no solution");
        FieldElement lambda = ctx.element_from_log(*k);
        std::int8_t g = rep.g_table[r][lambda.packed];
        if (g < 0) throw NoSolutionError("g table is not total");
        s.digits[i] = std::uint8_t(g);
    }
    return s;
}

/// Search for (shift, decimation) with gcd(decimation, N) = 1 such that
/// s1[i] = s2[(decimation * i + shift) mod N] for all i. Scans decimations
/// ascending, then shifts ascending; first match wins.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> all_shift_decimation_equivalences(
    const TernarySequence& s1, const TernarySequence& s2, bool first_only = false) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> hits;
    if (s1.period != s2.period || s1.period == 0) return hits;
    const std::uint32_t N = s1.period;
    for (std::uint32_t e = 1; e < N; ++e) {
        if (std::gcd(e, N) != 1) continue;
        for (std::uint32_t tau = 0; tau < N; ++tau) {
            if (s2.digits[tau] != s1.digits[0]) continue;
            std::uint32_t pos = tau;
            bool match = true;
            for (std::uint32_t i = 1; i < N; ++i) {
                pos += e;
                if (pos >= N) pos -= N;
                if (s1.digits[i] != s2.digits[pos]) {
                    match = false;
                    break;
                }
            }
            if (match) {
                hits.emplace_back(tau, e);
                if (first_only) return hits;
            }
        }
    }
    return hits;
}

inline std::optional<std::pair<std::uint32_t, std::uint32_t>> equivalent_up_to_shift_decimation(
    const TernarySequence& s1, const TernarySequence& s2) {
    auto hits = all_shift_decimation_equivalences(s1, s2, /*first_only=*/true);
    if (hits.empty()) return std::nullopt;
    return hits.front();
}

}  // namespace tdht
