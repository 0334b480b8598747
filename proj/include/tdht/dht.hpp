#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "tdht/eisenstein.hpp"
#include "tdht/error.hpp"
#include "tdht/field.hpp"
#include "tdht/weights.hpp"

namespace tdht {

/// Table of a function F_q -> {0,1,2}, indexed by packed element.
using FunctionTable = std::vector<std::uint8_t>;

/// f(x) = Tr(x) as a function table.
inline FunctionTable trace_function(const FieldContext& ctx) {
    FunctionTable f(ctx.order());
    for (std::uint32_t p = 0; p < ctx.order(); ++p) f[p] = ctx.trace({p});
    return f;
}

/// Exact spectrum: one Eisenstein value per field element lambda
/// (zero included), indexed by packed representation.
struct Spectrum {
    std::vector<Eisenstein> values;

    const Eisenstein& at(FieldElement lambda) const { return values[lambda.packed]; }
};

/// S[lambda] = sum_x w^{Tr(lambda x)} h[x], computed with radix-3
/// butterflies over the additive group (q log q work) followed by an index
/// permutation translating coordinate characters into the trace pairing.
inline Spectrum additive_transform(const FieldContext& ctx, std::vector<Eisenstein> h) {
    const std::uint32_t q = ctx.order();
    const int n = ctx.degree();
    if (h.size() != q) throw Error("function table must have q entries");

    std::uint32_t stride = 1;
    for (int s = 0; s < n; ++s) {
        std::uint32_t step = stride * 3;
        for (std::uint32_t block = 0; block < q; block += step) {
            for (std::uint32_t i = block; i < block + stride; ++i) {
                Eisenstein y0 = h[i], y1 = h[i + stride], y2 = h[i + 2 * stride];
                h[i] = y0 + y1 + y2;
                h[i + stride] = y0 + mul_omega(y1) + mul_omega_sq(y2);
                h[i + 2 * stride] = y0 + mul_omega_sq(y1) + mul_omega(y2);
            }
        }
        stride = step;
    }

    // The butterflies produce A[u] = sum_v w^{u.v} h[v] over digit vectors.
    // Tr(lambda x) = u(lambda) . digits(x) with u(lambda)_j = Tr(lambda a^j),
    // so the spectrum at lambda is A at that permuted index.
    Spectrum out;
    out.values.assign(q, Eisenstein{});
    out.values[0] = h[0];
    const std::uint32_t M = q - 1;
    for (std::uint32_t l = 0; l < M; ++l) {
        std::uint32_t u = 0, p3 = 1;
        std::uint64_t e = l;
        for (int j = 0; j < n; ++j) {
            u += ctx.trace(ctx.element_from_log(e)) * p3;
            p3 *= 3;
            ++e;
        }
        out.values[ctx.element_from_log(l).packed] = h[u];
    }
    return out;
}

/// Hadamard transform of f: sum_x w^{Tr(lambda x) - f(x)}.
inline Spectrum hadamard(const FieldContext& ctx, const FunctionTable& f) {
    if (f.size() != ctx.order()) throw Error("function table must have q entries");
    std::vector<Eisenstein> h(ctx.order());
    for (std::uint32_t x = 0; x < ctx.order(); ++x) h[x] = omega_pow(3 - f[x]);
    return additive_transform(ctx, std::move(h));
}

namespace detail {

// packed values of gamma * x^v for all x; v acts through its residue mod q-1
inline std::vector<std::uint32_t> decimated_arguments(const FieldContext& ctx, std::uint32_t v,
                                                      FieldElement gamma) {
    const std::uint32_t q = ctx.order(), M = q - 1;
    if (v == 0) throw Error("decimation v must be positive");
    if (gamma.is_zero()) throw Error("multiplexer gamma must be nonzero");
    std::vector<std::uint32_t> g(q, 0);
    const std::uint64_t lg = ctx.log(gamma);
    const std::uint64_t vr = v % M;
    for (std::uint32_t l = 0; l < M; ++l) {
        std::uint32_t x = ctx.element_from_log(l).packed;
        g[x] = ctx.element_from_log(lg + vr * l).packed;
    }
    g[0] = 0;  // 0^v = 0 for v > 0
    return g;
}

}  // namespace detail

/// First-order multiplexing DHT, naive double loop:
/// sum_x w^{Tr(lambda x) - f(gamma x^v)}. Reference implementation.
inline Spectrum first_order_mdht(const FieldContext& ctx, const FunctionTable& f, std::uint32_t v,
                                 FieldElement gamma) {
    const std::uint32_t q = ctx.order();
    if (f.size() != q) throw Error("function table must have q entries");
    std::vector<std::uint32_t> arg = detail::decimated_arguments(ctx, v, gamma);
    Spectrum out;
    out.values.assign(q, Eisenstein{});
    for (std::uint32_t lam = 0; lam < q; ++lam) {
        std::int64_t count[3] = {0, 0, 0};
        for (std::uint32_t x = 0; x < q; ++x) {
            std::uint8_t e = ctx.trace(ctx.mul({lam}, {x}));
            ++count[(e + 3 - f[arg[x]]) % 3];
        }
        out.values[lam] = {count[0] - count[2], count[1] - count[2]};
    }
    return out;
}

/// Same contract as first_order_mdht, via the fast additive transform.
inline Spectrum fast_first_order_mdht(const FieldContext& ctx, const FunctionTable& f,
                                      std::uint32_t v, FieldElement gamma) {
    const std::uint32_t q = ctx.order();
    if (f.size() != q) throw Error("function table must have q entries");
    std::vector<std::uint32_t> arg = detail::decimated_arguments(ctx, v, gamma);
    std::vector<Eisenstein> h(q);
    for (std::uint32_t x = 0; x < q; ++x) h[x] = omega_pow(3 - f[arg[x]]);
    return additive_transform(ctx, std::move(h));
}

/// Second-order multiplexing DHT:
/// sum_y w^{Tr(lambda y)} conj(first_order(y^t, gamma)).
/// Computed from one cached first-order table per gamma.
inline Spectrum second_order_mdht(const FieldContext& ctx, const FunctionTable& f, std::uint32_t v,
                                  std::uint32_t t, FieldElement gamma) {
    const std::uint32_t q = ctx.order(), M = q - 1;
    if (t == 0) throw Error("decimation t must be positive");
    Spectrum first = fast_first_order_mdht(ctx, f, v, gamma);
    std::vector<Eisenstein> h(q);
    h[0] = conj(first.values[0]);
    const std::uint64_t tr = t % M;
    for (std::uint32_t l = 0; l < M; ++l) {
        std::uint32_t y = ctx.element_from_log(l).packed;
        std::uint32_t yt = ctx.element_from_log(tr * l).packed;
        h[y] = conj(first.values[yt]);
    }
    return additive_transform(ctx, std::move(h));
}

/// Outcome of testing a pair (v, t): every second-order value must equal
/// q w^k over all lambda and a transversal of the d-th power classes.
struct RealizablePairReport {
    std::uint32_t v = 0;
    std::uint32_t t = 0;
    std::uint32_t d = 0;                    // gcd(v, q-1)
    std::vector<FieldElement> gamma_reps;   // alpha^r, r in [0, d)
    bool realizable = false;

    /// g_table[r][lambda.packed] in {0,1,2}, or -1 where not filled.
    std::vector<std::vector<std::int8_t>> g_table;

    struct Witness {
        FieldElement lambda;
        FieldElement gamma;
        Eisenstein value;
    };
    std::optional<Witness> witness;  // first offending point when not realizable
};

inline RealizablePairReport check_realizable(const FieldContext& ctx, const FunctionTable& f,
                                             std::uint32_t v, std::uint32_t t) {
    const std::uint32_t q = ctx.order(), M = q - 1;
    RealizablePairReport rep;
    rep.v = v;
    rep.t = t;
    rep.d = std::uint32_t(std::gcd(std::uint64_t(v), std::uint64_t(M)));
    rep.realizable = true;
    for (std::uint32_t r = 0; r < rep.d && rep.realizable; ++r) {
        FieldElement gamma = ctx.element_from_log(r);
        rep.gamma_reps.push_back(gamma);
        rep.g_table.emplace_back(q, std::int8_t(-1));
        Spectrum s = second_order_mdht(ctx, f, v, t, gamma);
        for (std::uint32_t lam = 0; lam < q; ++lam) {
            std::optional<int> k = as_q_omega_power(s.values[lam], q);
            if (!k) {
                rep.realizable = false;
                rep.witness = {{lam}, gamma, s.values[lam]};
                break;
            }
            rep.g_table.back()[lam] = std::int8_t(*k);
        }
    }
    return rep;
}

/// One cyclotomic coset of the weight-criterion equality set together with
/// its constant coefficient (+-1) sigma(jvt) sigma(-jv) sigma(j) mod 3.
struct RealizationCoset {
    std::uint64_t rep = 0;
    int size = 0;
    int coeff = 1;  // in {1, 2}
};

inline std::vector<RealizationCoset> realization_cosets(const WeightCriterionReport& crit,
                                                        std::uint64_t v, std::uint64_t t, int n) {
    std::uint64_t M = pow3(n) - 1;
    std::vector<RealizationCoset> out;
    for (std::uint64_t j : crit.equality_set) {
        CyclotomicCoset c = coset_of(M, j);
        if (c.representative != j) continue;  // equality set is ascending, reps come first
        RealizationCoset rc;
        rc.rep = j;
        rc.size = int(c.members.size());
        std::uint64_t vr = v % M, tr = t % M;
        std::uint64_t jv = j * vr % M;
        int sign = (j % 2) * (vr % 2) != 0 ? 2 : 1;  // (-1)^{jv} mod 3
        std::int64_t s1 = sigma(std::int64_t(jv * tr % M), n) % 3;
        std::int64_t s2 = sigma(std::int64_t(jv == 0 ? 0 : M - jv), n) % 3;
        std::int64_t s3 = sigma(std::int64_t(j), n) % 3;
        rc.coeff = int(sign * s1 % 3 * s2 % 3 * s3 % 3);
        out.push_back(rc);
    }
    return out;
}

/// Closed-form realization exponent at (lambda, gamma), coset-grouped:
/// unit * sum over equality-set cosets of coeff * orbit_sum((gamma lambda^{vt})^{j0}),
/// where the orbit sum ranges over the Frobenius orbit and lands in F_3.
inline std::uint8_t realization_formula(const FieldContext& ctx,
                                        std::span<const RealizationCoset> cosets, std::uint32_t v,
                                        std::uint32_t t, FieldElement lambda, FieldElement gamma,
                                        int unit) {
    if (lambda.is_zero()) return 0;
    const std::uint64_t M = ctx.group_order();
    FieldElement base = ctx.mul(gamma, ctx.pow(lambda, std::int64_t(std::uint64_t(v) * t % M)));
    int total = 0;
    for (const RealizationCoset& c : cosets) {
        FieldElement y = ctx.pow(base, std::int64_t(c.rep));
        FieldElement orbit = ctx.zero();
        FieldElement cur = y;
        for (int i = 0; i < c.size; ++i) {
            orbit = ctx.add(orbit, cur);
            cur = ctx.pow(cur, 3);
        }
        if (orbit.packed > 2) throw Error("internal: orbit sum not in the prime field");
        total = (total + c.coeff * int(orbit.packed)) % 3;
    }
    return std::uint8_t(unit * total % 3);
}

/// Search both candidate units against the exact spectrum of a realizable
/// pair; returns the unit that reproduces g_table everywhere, if any.
inline std::optional<int> calibrate_realization_unit(const FieldContext& ctx, std::uint32_t v,
                                                     std::uint32_t t) {
    RealizablePairReport rep = check_realizable(ctx, trace_function(ctx), v, t);
    if (!rep.realizable) throw NotRealizableError("calibration requires a realizable pair");
    WeightCriterionReport crit = weight_criterion(v, t, ctx.degree());
    std::vector<RealizationCoset> cosets = realization_cosets(crit, v, t, ctx.degree());
    for (int u : {1, 2}) {
        bool all = true;
        for (std::uint32_t r = 0; r < rep.d && all; ++r) {
            for (std::uint32_t lam = 0; lam < ctx.order() && all; ++lam) {
                std::uint8_t g = realization_formula(ctx, cosets, v, t, {lam}, rep.gamma_reps[r], u);
                all = g == std::uint8_t(rep.g_table[r][lam]);
            }
        }
        if (all) return u;
    }
    return std::nullopt;
}

/// The global unit, calibrated once per process against the exact spectrum
/// of the degree-3 pair (16, 7).
inline int realization_unit() {
    static const int unit = [] {
        FieldContext ctx = FieldContext::build(3);
        std::optional<int> u = calibrate_realization_unit(ctx, 16, 7);
        if (!u)
            throw CalibrationMismatchError("no unit in {1,2} matches the exact realization");
        return *u;
    }();
    return unit;
}

/// Convenience wrapper: screens (v, t) with the weight criterion and
/// evaluates the closed form with the globally calibrated unit.
inline std::uint8_t realization_formula(const FieldContext& ctx, std::uint32_t v, std::uint32_t t,
                                        FieldElement lambda, FieldElement gamma) {
    WeightCriterionReport crit = weight_criterion(v, t, ctx.degree());
    if (!crit.realizable) throw NotRealizableError("(v, t) fails the weight criterion");
    std::vector<RealizationCoset> cosets = realization_cosets(crit, v, t, ctx.degree());
    return realization_formula(ctx, cosets, v, t, lambda, gamma, realization_unit());
}

}  // namespace tdht
