#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "tdht/dht.hpp"
#include "tdht/field.hpp"

using tdht::Eisenstein;
using tdht::FieldContext;
using tdht::FieldElement;
using tdht::FunctionTable;
using tdht::Norm;
using tdht::Spectrum;

namespace {

Norm pow3_norm(int e) {
    Norm p = 1;
    while (e-- > 0) p *= 3;
    return p;
}

Norm spectrum_energy(const Spectrum& s) {
    Norm total = 0;
    for (const Eisenstein& v : s.values) total += tdht::norm_sq(v);
    return total;
}

// test-only reference: the literal double loop over (lambda, y) on top of a
// naively computed first-order table
Spectrum naive_second_order(const FieldContext& ctx, const FunctionTable& f, std::uint32_t v,
                            std::uint32_t t, FieldElement gamma) {
    const std::uint32_t q = ctx.order(), M = q - 1;
    Spectrum first = tdht::first_order_mdht(ctx, f, v, gamma);
    Spectrum out;
    out.values.assign(q, Eisenstein{});
    for (std::uint32_t lam = 0; lam < q; ++lam) {
        Eisenstein sum{};
        for (std::uint32_t y = 0; y < q; ++y) {
            std::uint32_t yt =
                y == 0 ? 0 : ctx.element_from_log(std::uint64_t(t) % M * ctx.log({y})).packed;
            sum += tdht::omega_pow(ctx.trace(ctx.mul({lam}, {y}))) * tdht::conj(first.values[yt]);
        }
        out.values[lam] = sum;
    }
    return out;
}

FunctionTable lin_function(const FieldContext& ctx) {
    int m = (ctx.degree() - 1) / 2;
    std::uint64_t e = 2 * tdht::pow3(m) + 1;
    FunctionTable f(ctx.order());
    f[0] = 0;
    for (std::uint32_t l = 0; l < ctx.group_order(); ++l) {
        FieldElement x = ctx.element_from_log(l);
        f[x.packed] = ctx.trace(ctx.add(x, ctx.pow(x, std::int64_t(e))));
    }
    return f;
}

}  // namespace

TEST(Hadamard, TraceSpectrumIsPointMass) {
    FieldContext ctx = FieldContext::build(3);
    Spectrum s = tdht::hadamard(ctx, tdht::trace_function(ctx));
    for (std::uint32_t lam = 0; lam < ctx.order(); ++lam) {
        if (lam == 1)
            EXPECT_EQ(s.values[lam], (Eisenstein{27, 0}));
        else
            ASSERT_EQ(s.values[lam], (Eisenstein{0, 0})) << lam;
    }
}

TEST(Hadamard, ZeroFunctionConcentratesAtZero) {
    for (int n : {2, 3}) {
        FieldContext ctx = FieldContext::build(n);
        Spectrum s = tdht::hadamard(ctx, FunctionTable(ctx.order(), 0));
        EXPECT_EQ(s.values[0], (Eisenstein{std::int64_t(ctx.order()), 0}));
        for (std::uint32_t lam = 1; lam < ctx.order(); ++lam)
            ASSERT_EQ(s.values[lam], (Eisenstein{0, 0}));
    }
}

TEST(Hadamard, ParsevalForLinFunction) {
    FieldContext ctx = FieldContext::build(3);
    Spectrum s = tdht::hadamard(ctx, lin_function(ctx));
    EXPECT_EQ(spectrum_energy(s), Norm(729));  // q^2 with q = 27
}

TEST(Hadamard, ParsevalForRandomFunctions) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> digit(0, 2);
    for (int n : {2, 3, 4}) {
        FieldContext ctx = FieldContext::build(n);
        Norm q2 = Norm(ctx.order()) * ctx.order();
        for (int trial = 0; trial < 10; ++trial) {
            FunctionTable f(ctx.order());
            for (auto& d : f) d = std::uint8_t(digit(rng));
            ASSERT_EQ(spectrum_energy(tdht::hadamard(ctx, f)), q2) << "n=" << n;
        }
    }
}

TEST(AdditiveTransform, Linearity) {
    FieldContext ctx = FieldContext::build(3);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> dist(-4, 4);
    std::vector<Eisenstein> h1(ctx.order()), h2(ctx.order()), sum(ctx.order());
    for (std::uint32_t i = 0; i < ctx.order(); ++i) {
        h1[i] = {dist(rng), dist(rng)};
        h2[i] = {dist(rng), dist(rng)};
        sum[i] = h1[i] + h2[i];
    }
    Spectrum a = tdht::additive_transform(ctx, h1);
    Spectrum b = tdht::additive_transform(ctx, h2);
    Spectrum c = tdht::additive_transform(ctx, sum);
    for (std::uint32_t i = 0; i < ctx.order(); ++i)
        ASSERT_EQ(c.values[i], a.values[i] + b.values[i]);
}

TEST(FirstOrder, ReducesToHadamardAtVOne) {
    FieldContext ctx = FieldContext::build(3);
    FunctionTable f = tdht::trace_function(ctx);
    Spectrum direct = tdht::hadamard(ctx, f);
    Spectrum mdht = tdht::first_order_mdht(ctx, f, 1, ctx.one());
    Spectrum fast = tdht::fast_first_order_mdht(ctx, f, 1, ctx.one());
    for (std::uint32_t lam = 0; lam < ctx.order(); ++lam) {
        ASSERT_EQ(mdht.values[lam], direct.values[lam]);
        ASSERT_EQ(fast.values[lam], direct.values[lam]);
    }
    EXPECT_EQ(mdht.values[1], (Eisenstein{27, 0}));
}

TEST(FirstOrder, LambdaZeroRowIsPlainSum) {
    FieldContext ctx = FieldContext::build(3);
    FunctionTable f = tdht::trace_function(ctx);
    std::uint32_t v = 16;
    FieldElement gamma = ctx.alpha();
    Spectrum s = tdht::first_order_mdht(ctx, f, v, gamma);
    Eisenstein expect{};
    for (std::uint32_t x = 0; x < ctx.order(); ++x) {
        FieldElement gx = x == 0 ? ctx.zero() : ctx.mul(gamma, ctx.pow({x}, v));
        expect += tdht::omega_pow(3 - f[gx.packed]);
    }
    EXPECT_EQ(s.values[0], expect);
    EXPECT_EQ(s.values[0], (Eisenstein{-3, -6}));  // frozen from the reference path
    EXPECT_EQ(s.values[ctx.alpha().packed], (Eisenstein{0, 0}));
}

TEST(FirstOrder, FastAgreesWithNaiveOnRandomFunctions) {
    std::mt19937_64 rng(77);
    for (int n : {2, 3}) {
        FieldContext ctx = FieldContext::build(n);
        std::uniform_int_distribution<int> digit(0, 2);
        std::uniform_int_distribution<std::uint32_t> vdist(1, ctx.group_order() - 1);
        std::uniform_int_distribution<std::uint32_t> gdist(0, ctx.group_order() - 1);
        for (int trial = 0; trial < 8; ++trial) {
            FunctionTable f(ctx.order());
            for (auto& d : f) d = std::uint8_t(digit(rng));
            std::uint32_t v = vdist(rng);
            FieldElement gamma = ctx.element_from_log(gdist(rng));
            Spectrum naive = tdht::first_order_mdht(ctx, f, v, gamma);
            Spectrum fast = tdht::fast_first_order_mdht(ctx, f, v, gamma);
            for (std::uint32_t lam = 0; lam < ctx.order(); ++lam)
                ASSERT_EQ(naive.values[lam], fast.values[lam])
                    << "n=" << n << " v=" << v << " lam=" << lam;
        }
    }
    // one full pass at n = 5 with the trace function
    FieldContext ctx5 = FieldContext::build(5);
    FunctionTable f5 = tdht::trace_function(ctx5);
    Spectrum naive5 = tdht::first_order_mdht(ctx5, f5, 52, ctx5.alpha());
    Spectrum fast5 = tdht::fast_first_order_mdht(ctx5, f5, 52, ctx5.alpha());
    for (std::uint32_t lam = 0; lam < ctx5.order(); ++lam)
        ASSERT_EQ(naive5.values[lam], fast5.values[lam]);
}

TEST(SecondOrder, LambdaZeroValueForTrace) {
    FieldContext ctx = FieldContext::build(3);
    Spectrum s = tdht::second_order_mdht(ctx, tdht::trace_function(ctx), 16, 7, ctx.one());
    EXPECT_EQ(s.values[0], (Eisenstein{27, 0}));
}

TEST(SecondOrder, MatchesNaiveDoubleLoop) {
    FieldContext ctx = FieldContext::build(3);
    FunctionTable f = tdht::trace_function(ctx);
    for (auto [v, t, gl] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{
             {16, 7, 0}, {13, 1, 3}, {4, 5, 1}}) {
        FieldElement gamma = ctx.element_from_log(gl);
        Spectrum fast = tdht::second_order_mdht(ctx, f, v, t, gamma);
        Spectrum slow = naive_second_order(ctx, f, v, t, gamma);
        for (std::uint32_t lam = 0; lam < ctx.order(); ++lam)
            ASSERT_EQ(fast.values[lam], slow.values[lam]) << "v=" << v << " t=" << t;
    }
    // frozen sample from the reference path: (13, 1, gamma = a^3) at lambda = a^5
    Spectrum s = tdht::second_order_mdht(ctx, f, 13, 1, ctx.element_from_log(3));
    EXPECT_EQ(s.values[ctx.element_from_log(5).packed], (Eisenstein{-27, -27}));
    EXPECT_EQ(s.values[0], (Eisenstein{27, 0}));
}

TEST(SecondOrder, DecimationExponentsReduceModGroupOrder) {
    FieldContext ctx = FieldContext::build(3);
    FunctionTable f = tdht::trace_function(ctx);
    Spectrum a = tdht::second_order_mdht(ctx, f, 16, 7, ctx.one());
    Spectrum b = tdht::second_order_mdht(ctx, f, 16, 7 + 26, ctx.one());
    for (std::uint32_t lam = 0; lam < ctx.order(); ++lam)
        ASSERT_EQ(a.values[lam], b.values[lam]);
}

TEST(SecondOrder, EnergyIdentityWhenTIsCoprime) {
    std::mt19937_64 rng(123);
    FieldContext ctx = FieldContext::build(3);
    FunctionTable f = tdht::trace_function(ctx);
    const std::uint32_t M = ctx.group_order();
    std::uniform_int_distribution<std::uint32_t> dist(1, M - 1);
    int done = 0;
    while (done < 20) {
        std::uint32_t v = dist(rng), t = dist(rng);
        if (std::gcd(t, M) != 1) continue;
        FieldElement gamma = ctx.element_from_log(dist(rng));
        Spectrum s = tdht::second_order_mdht(ctx, f, v, t, gamma);
        ASSERT_EQ(spectrum_energy(s), pow3_norm(9)) << "v=" << v << " t=" << t;
        ++done;
    }
}

TEST(CheckRealizable, LinPairDegreeThree) {
    FieldContext ctx = FieldContext::build(3);
    tdht::RealizablePairReport rep = tdht::check_realizable(ctx, tdht::trace_function(ctx), 16, 7);
    EXPECT_TRUE(rep.realizable);
    EXPECT_EQ(rep.d, 2u);
    ASSERT_EQ(rep.g_table.size(), 2u);
    for (const auto& row : rep.g_table)
        for (std::int8_t g : row) ASSERT_GE(g, 0);
    EXPECT_FALSE(rep.witness.has_value());
    // spectral gap: every value has norm exactly q^2
    for (std::uint32_t r = 0; r < rep.d; ++r) {
        Spectrum s = tdht::second_order_mdht(ctx, tdht::trace_function(ctx), 16, 7,
                                             rep.gamma_reps[r]);
        for (const Eisenstein& val : s.values) ASSERT_EQ(tdht::norm_sq(val), Norm(729));
    }
}

TEST(CheckRealizable, InverseTransformRecoversTrace) {
    FieldContext ctx = FieldContext::build(3);
    tdht::RealizablePairReport rep = tdht::check_realizable(ctx, tdht::trace_function(ctx), 1, 1);
    ASSERT_TRUE(rep.realizable);
    EXPECT_EQ(rep.d, 1u);
    for (std::uint32_t lam = 0; lam < ctx.order(); ++lam)
        ASSERT_EQ(rep.g_table[0][lam], std::int8_t(ctx.trace({lam})));
}

TEST(CheckRealizable, FullDecimationClassPair) {
    FieldContext ctx = FieldContext::build(3);
    tdht::RealizablePairReport rep = tdht::check_realizable(ctx, tdht::trace_function(ctx), 13, 1);
    EXPECT_TRUE(rep.realizable);
    EXPECT_EQ(rep.d, 13u);
    EXPECT_EQ(rep.gamma_reps.size(), 13u);
}

TEST(CheckRealizable, FailingPairCarriesWitness) {
    FieldContext ctx = FieldContext::build(3);
    tdht::RealizablePairReport rep = tdht::check_realizable(ctx, tdht::trace_function(ctx), 4, 5);
    EXPECT_FALSE(rep.realizable);
    ASSERT_TRUE(rep.witness.has_value());
    EXPECT_EQ(tdht::as_q_omega_power(rep.witness->value, ctx.order()), std::nullopt);
}

TEST(Realization, GlobalUnitIsTwoAndStable) {
    EXPECT_EQ(tdht::realization_unit(), 2);
    FieldContext ctx5 = FieldContext::build(5);
    EXPECT_EQ(tdht::calibrate_realization_unit(ctx5, 52, 61), std::optional<int>(2));
}

// the weight screen and the exact spectrum agree on sampled pairs at n = 5
TEST(CheckRealizable, ScreenAgreesWithSpectrumSampledDegreeFive) {
    FieldContext ctx = FieldContext::build(5);
    FunctionTable f = tdht::trace_function(ctx);
    const std::uint32_t M = ctx.group_order();
    std::mt19937_64 rng(314);
    std::uniform_int_distribution<std::uint32_t> dist(1, M - 1);
    int done = 0;
    while (done < 12) {
        std::uint32_t v = dist(rng), t = dist(rng);
        if (std::gcd(v, M) == 1 || std::gcd(t, M) != 1) continue;
        ASSERT_EQ(tdht::weight_criterion(v, t, 5).realizable,
                  tdht::check_realizable(ctx, f, v, t).realizable)
            << "v=" << v << " t=" << t;
        ++done;
    }
    // the Lin pair is among the positives
    EXPECT_TRUE(tdht::weight_criterion(52, 61, 5).realizable);
    EXPECT_TRUE(tdht::check_realizable(ctx, f, 52, 61).realizable);
}

TEST(Realization, FormulaMatchesExactSpectrum) {
    FieldContext ctx = FieldContext::build(3);
    tdht::RealizablePairReport rep = tdht::check_realizable(ctx, tdht::trace_function(ctx), 16, 7);
    ASSERT_TRUE(rep.realizable);
    for (std::uint32_t r = 0; r < rep.d; ++r)
        for (std::uint32_t lam = 0; lam < ctx.order(); ++lam)
            ASSERT_EQ(tdht::realization_formula(ctx, 16, 7, {lam}, rep.gamma_reps[r]),
                      std::uint8_t(rep.g_table[r][lam]))
                << "r=" << r << " lam=" << lam;
}

TEST(Realization, KnownValuesAndErrors) {
    FieldContext ctx = FieldContext::build(3);
    EXPECT_EQ(tdht::realization_formula(ctx, 16, 7, ctx.one(), ctx.one()), 0);  // 2Tr(1)+2Tr(1)
    EXPECT_EQ(tdht::realization_formula(ctx, 16, 7, ctx.zero(), ctx.one()), 0);
    EXPECT_THROW(tdht::realization_formula(ctx, 4, 5, ctx.one(), ctx.one()),
                 tdht::NotRealizableError);
}

TEST(Realization, DependsOnlyOnGammaLambdaProduct) {
    FieldContext ctx = FieldContext::build(3);
    tdht::RealizablePairReport rep = tdht::check_realizable(ctx, tdht::trace_function(ctx), 16, 7);
    ASSERT_TRUE(rep.realizable);
    const std::uint64_t M = ctx.group_order();
    const std::uint64_t vt = 16ull * 7 % M;
    // group g values by gamma * lambda^{vt}; each class must be constant
    std::vector<int> value_for_base(ctx.order(), -1);
    for (std::uint32_t r = 0; r < rep.d; ++r) {
        for (std::uint32_t lam = 1; lam < ctx.order(); ++lam) {
            FieldElement base =
                ctx.mul(rep.gamma_reps[r], ctx.pow({lam}, std::int64_t(vt)));
            int& slot = value_for_base[base.packed];
            if (slot < 0)
                slot = rep.g_table[r][lam];
            else
                ASSERT_EQ(slot, int(rep.g_table[r][lam]));
        }
    }
}
