#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "tdht/eisenstein.hpp"
#include "tdht/error.hpp"
#include "tdht/field.hpp"

namespace tdht {

/// Floating-point verification rails for the Gauss-sum layer at small q.
/// chi^k is the multiplicative character chi^k(alpha^j) = e^{2 pi i jk/(q-1)}
/// extended by chi(0) = 0; psi(x) = w^{Tr(x)} is the additive character.

namespace detail {

// e^{2 pi i r / m} for r in [0, m)
inline std::vector<std::complex<double>> unit_roots(std::uint32_t m) {
    std::vector<std::complex<double>> roots(m);
    for (std::uint32_t r = 0; r < m; ++r) {
        double arg = 2.0 * std::numbers::pi * double(r) / double(m);
        roots[r] = {std::cos(arg), std::sin(arg)};
    }
    return roots;
}

}  // namespace detail

/// G(chi^k) = sum_x psi(x) chi^k(x), by direct summation over F_q^*.
inline std::complex<double> gauss_sum(const FieldContext& ctx, std::uint32_t k) {
    const std::uint32_t M = ctx.group_order();
    if (k >= M) throw Error("character index must be in [0, q-1)");
    std::vector<std::complex<double>> w3 = detail::unit_roots(3);
    std::vector<std::complex<double>> wm = detail::unit_roots(M);
    std::complex<double> s = 0.0;
    for (std::uint32_t j = 0; j < M; ++j)
        s += w3[ctx.trace(ctx.element_from_log(j))] * wm[std::uint64_t(j) * k % M];
    return s;
}

/// All q-1 Gauss sums at once (shares the root tables).
inline std::vector<std::complex<double>> all_gauss_sums(const FieldContext& ctx) {
    const std::uint32_t M = ctx.group_order();
    std::vector<std::complex<double>> w3 = detail::unit_roots(3);
    std::vector<std::complex<double>> wm = detail::unit_roots(M);
    std::vector<std::uint8_t> tr(M);
    for (std::uint32_t j = 0; j < M; ++j) tr[j] = ctx.trace(ctx.element_from_log(j));
    std::vector<std::complex<double>> g(M, 0.0);
    for (std::uint32_t k = 0; k < M; ++k) {
        std::complex<double> s = 0.0;
        for (std::uint32_t j = 0; j < M; ++j) s += w3[tr[j]] * wm[std::uint64_t(j) * k % M];
        g[k] = s;
    }
    return g;
}

/// w^{Tr(y)} = (1/(q-1)) sum_chi G(chi) conj(chi)(y), for y != 0, within tol.
inline bool check_trace_expansion(const FieldContext& ctx,
                                  const std::vector<std::complex<double>>& gsums, FieldElement y,
                                  double tol) {
    if (y.is_zero()) throw Error("trace expansion requires y != 0");
    const std::uint32_t M = ctx.group_order();
    std::vector<std::complex<double>> w3 = detail::unit_roots(3);
    std::vector<std::complex<double>> wm = detail::unit_roots(M);
    const std::uint64_t jy = ctx.log(y);
    std::complex<double> rhs = 0.0;
    for (std::uint32_t k = 0; k < M; ++k)
        rhs += gsums[k] * std::conj(wm[jy * k % M]);
    rhs /= double(M);
    return std::abs(rhs - w3[ctx.trace(y)]) <= tol;
}

inline bool check_trace_expansion(const FieldContext& ctx, FieldElement y, double tol) {
    return check_trace_expansion(ctx, all_gauss_sums(ctx), y, tol);
}

/// sum_{x != 0} w^{Tr(gamma x^v)} = sum_{chi^d = 1} G(chi) conj(chi)(gamma)
/// for d = gcd(v, q-1) > 1. The left side is summed exactly in Z[w] before
/// the embedding; the right side runs over the d characters of order
/// dividing d. Compared within tol.
inline bool check_power_sum(const FieldContext& ctx,
                            const std::vector<std::complex<double>>& gsums, std::uint32_t v,
                            FieldElement gamma, double tol) {
    const std::uint32_t M = ctx.group_order();
    std::uint32_t d = std::uint32_t(std::gcd(std::uint64_t(v) % M, std::uint64_t(M)));
    if (v % M == 0 || d == 1) throw BadVError("gcd(v, q-1) must exceed 1");
    if (gamma.is_zero()) throw Error("gamma must be nonzero");

    Eisenstein lhs_exact{};
    const std::uint64_t lg = ctx.log(gamma);
    for (std::uint32_t j = 0; j < M; ++j)
        lhs_exact += omega_pow(ctx.trace(ctx.element_from_log(lg + std::uint64_t(v) * j)));
    std::complex<double> lhs = to_complex(lhs_exact);

    std::vector<std::complex<double>> wm = detail::unit_roots(M);
    std::complex<double> rhs = 0.0;
    for (std::uint32_t r = 0; r < d; ++r) {
        std::uint64_t k = std::uint64_t(M / d) * r;
        rhs += gsums[k] * std::conj(wm[lg * k % M]);
    }
    return std::abs(lhs - rhs) <= tol;
}

inline bool check_power_sum(const FieldContext& ctx, std::uint32_t v, FieldElement gamma,
                            double tol) {
    return check_power_sum(ctx, all_gauss_sums(ctx), v, gamma, tol);
}

}  // namespace tdht
