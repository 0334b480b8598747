#include <gtest/gtest.h>

#include <complex>
#include <cstdint>

#include "tdht/charsums.hpp"
#include "tdht/field.hpp"

using tdht::FieldContext;

TEST(GaussSum, TrivialCharacterIsMinusOne) {
    for (int n : {3, 5}) {
        FieldContext ctx = FieldContext::build(n);
        EXPECT_NEAR(std::abs(tdht::gauss_sum(ctx, 0) - std::complex<double>(-1.0, 0.0)), 0.0, 1e-9);
    }
}

TEST(GaussSum, NontrivialModulusSquaredIsQ) {
    for (int n : {3, 5}) {
        FieldContext ctx = FieldContext::build(n);
        auto g = tdht::all_gauss_sums(ctx);
        for (std::uint32_t k = 1; k < ctx.group_order(); ++k)
            ASSERT_NEAR(std::norm(g[k]), double(ctx.order()), 1e-6) << "n=" << n << " k=" << k;
    }
}

TEST(GaussSum, StableUnderCubingTheCharacter) {
    for (int n : {3, 5}) {
        FieldContext ctx = FieldContext::build(n);
        auto g = tdht::all_gauss_sums(ctx);
        const std::uint32_t M = ctx.group_order();
        for (std::uint32_t k = 0; k < M; ++k)
            ASSERT_NEAR(std::abs(g[(3ull * k) % M] - g[k]), 0.0, 1e-9);
    }
}

TEST(GaussSum, ConjugateSymmetry) {
    for (int n : {3, 5}) {
        FieldContext ctx = FieldContext::build(n);
        auto g = tdht::all_gauss_sums(ctx);
        const std::uint32_t M = ctx.group_order();
        for (std::uint32_t k = 0; k < M; ++k) {
            double chi_minus_one = k % 2 == 0 ? 1.0 : -1.0;
            ASSERT_NEAR(std::abs(g[(M - k) % M] - chi_minus_one * std::conj(g[k])), 0.0, 1e-6)
                << "n=" << n << " k=" << k;
        }
    }
}

TEST(TraceExpansion, HoldsForAllNonzeroY) {
    FieldContext ctx = FieldContext::build(3);
    auto g = tdht::all_gauss_sums(ctx);
    EXPECT_TRUE(tdht::check_trace_expansion(ctx, g, ctx.one(), 1e-6));
    for (std::uint32_t l = 0; l < ctx.group_order(); ++l)
        ASSERT_TRUE(tdht::check_trace_expansion(ctx, g, ctx.element_from_log(l), 1e-6));
    // exact equality cannot survive floating point
    EXPECT_FALSE(tdht::check_trace_expansion(ctx, g, ctx.one(), 0.0));
    EXPECT_THROW(tdht::check_trace_expansion(ctx, g, ctx.zero(), 1e-6), tdht::Error);
}

TEST(PowerSum, MatchesCharacterSideForBothDivisorClasses) {
    FieldContext ctx = FieldContext::build(3);
    auto g = tdht::all_gauss_sums(ctx);
    EXPECT_TRUE(tdht::check_power_sum(ctx, g, 16, ctx.one(), 1e-6));        // d = 2
    EXPECT_TRUE(tdht::check_power_sum(ctx, g, 13, ctx.alpha(), 1e-6));      // d = 13
    for (std::uint32_t l = 0; l < ctx.group_order(); ++l) {
        ASSERT_TRUE(tdht::check_power_sum(ctx, g, 2, ctx.element_from_log(l), 1e-6));
        ASSERT_TRUE(tdht::check_power_sum(ctx, g, 13, ctx.element_from_log(l), 1e-6));
    }
    EXPECT_THROW(tdht::check_power_sum(ctx, g, 3, ctx.one(), 1e-6), tdht::BadVError);  // d = 1
    EXPECT_THROW(tdht::check_power_sum(ctx, g, 16, ctx.zero(), 1e-6), tdht::Error);
}

// the exact Eisenstein power sum embeds onto the double-precision evaluation
TEST(PowerSum, ExactAndNumericPathsAgree) {
    FieldContext ctx = FieldContext::build(3);
    const std::uint32_t M = ctx.group_order();
    for (std::uint32_t v : {2u, 13u, 16u}) {
        for (std::uint32_t gl = 0; gl < 3; ++gl) {
            tdht::FieldElement gamma = ctx.element_from_log(gl);
            tdht::Eisenstein exact{};
            std::complex<double> numeric = 0.0;
            const std::complex<double> w3 = tdht::to_complex(tdht::omega_pow(1));
            for (std::uint32_t l = 0; l < M; ++l) {
                std::uint8_t e = ctx.trace(ctx.mul(gamma, ctx.pow(ctx.element_from_log(l), v)));
                exact += tdht::omega_pow(e);
                numeric += std::pow(w3, double(e));
            }
            ASSERT_NEAR(std::abs(tdht::to_complex(exact) - numeric), 0.0, 1e-6);
        }
    }
}
