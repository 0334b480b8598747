#pragma once

#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tdht/charsums.hpp"
#include "tdht/dht.hpp"
#include "tdht/error.hpp"
#include "tdht/field.hpp"
#include "tdht/parallel.hpp"
#include "tdht/sequences.hpp"
#include "tdht/weights.hpp"

namespace tdht {

inline constexpr const char* kReportSchema = "ternary-dht/1";

struct CheckDetail {
    std::string name;
    bool pass = false;
    std::int64_t count = 0;
    std::string note;
};

/// Outcome of one verification command; pass is the conjunction of the
/// detail statuses. Deterministic given (params, seed) apart from the
/// wall-clock elapsed_ms.
struct VerificationReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    bool pass = false;
    std::vector<CheckDetail> details;
    std::int64_t elapsed_ms = 0;
    std::optional<std::uint64_t> seed;
};

inline nlohmann::ordered_json report_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["command"] = r.command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    j["pass"] = r.pass;
    nlohmann::ordered_json details = nlohmann::ordered_json::array();
    for (const CheckDetail& d : r.details) {
        nlohmann::ordered_json jd;
        jd["name"] = d.name;
        jd["pass"] = d.pass;
        jd["count"] = d.count;
        if (!d.note.empty()) jd["note"] = d.note;
        details.push_back(jd);
    }
    j["details"] = details;
    j["elapsedMs"] = r.elapsed_ms;
    if (r.seed) j["seed"] = *r.seed;
    return j;
}

/// Render a report as "json", "csv", or "text".
inline std::string emit_report(const VerificationReport& r, const std::string& format) {
    if (format == "json") return report_json(r).dump(2) + "\n";
    if (format == "csv") {
        std::ostringstream os;
        os << "name,pass,count,note\n";
        for (const CheckDetail& d : r.details)
            os << d.name << ',' << (d.pass ? "true" : "false") << ',' << d.count << ',' << d.note
               << '\n';
        return os.str();
    }
    if (format == "text") {
        std::ostringstream os;
        os << r.command;
        for (const auto& [k, v] : r.params) os << ' ' << k << '=' << v;
        os << '\n';
        for (const CheckDetail& d : r.details) {
            os << "  [" << (d.pass ? "PASS" : "FAIL") << "] " << d.name;
            if (d.count != 0) os << " (" << d.count << ")";
            if (!d.note.empty()) os << ": " << d.note;
            os << '\n';
        }
        os << (r.pass ? "PASS" : "FAIL") << " in " << r.elapsed_ms << " ms\n";
        return os.str();
    }
    throw UnknownFormatError("unknown report format: " + format);
}

// ---------------------------------------------------------------------------
// Parallel (v, t) search cross-validating the weight screen against the
// exact spectrum.
// ---------------------------------------------------------------------------

enum class ScreenMode : std::uint8_t { Weights, Exact, Both };

inline ScreenMode parse_screen_mode(const std::string& s) {
    if (s == "weights") return ScreenMode::Weights;
    if (s == "exact") return ScreenMode::Exact;
    if (s == "both") return ScreenMode::Both;
    throw UnknownFormatError("unknown screen mode: " + s);
}

struct ConfirmedPair {
    std::uint32_t v = 0;
    std::uint32_t t = 0;
    std::uint32_t d = 0;
    std::vector<std::uint64_t> equality_coset_reps;
};

struct SearchResult {
    int n = 0;
    ScreenMode mode = ScreenMode::Both;
    std::uint32_t v_from = 0, v_to = 0, t_from = 0, t_to = 0;
    std::uint64_t screened = 0;
    std::uint64_t skipped = 0;
    std::vector<ConfirmedPair> confirmed;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> disagreements;
};

/// Scan [v_from, v_to] x [t_from, t_to]. Pairs with gcd(t, q-1) != 1 or
/// gcd(v, q-1) = 1 are skipped and counted. Work is partitioned by pair
/// index, each worker owns a disjoint slot range, and the merge preserves
/// index order, so the result is identical for any jobs count.
inline SearchResult run_search(const FieldContext& ctx, std::uint32_t v_from, std::uint32_t v_to,
                               std::uint32_t t_from, std::uint32_t t_to, ScreenMode mode,
                               int jobs = 1) {
    const std::uint32_t M = ctx.group_order();
    if (v_from < 1 || v_to >= M || v_from > v_to || t_from < 1 || t_to >= M || t_from > t_to)
        throw Error("search ranges must lie within (0, q-1)");

    struct Slot {
        std::uint8_t state = 0;  // 0 skipped, 1 screened-negative, 2 confirmed
        bool disagreement = false;
        ConfirmedPair pair;
    };
    const std::uint64_t t_count = t_to - t_from + 1;
    const std::uint64_t total = (std::uint64_t(v_to) - v_from + 1) * t_count;
    std::vector<Slot> slots(total);

    const int n = ctx.degree();
    const FunctionTable f = trace_function(ctx);
    parallel_for(total, jobs, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t p = begin; p < end; ++p) {
            std::uint32_t v = v_from + std::uint32_t(p / t_count);
            std::uint32_t t = t_from + std::uint32_t(p % t_count);
            std::uint32_t d = std::uint32_t(std::gcd(std::uint64_t(v), std::uint64_t(M)));
            if (d == 1 || std::gcd(std::uint64_t(t), std::uint64_t(M)) != 1) continue;

            Slot& slot = slots[p];
            slot.pair.v = v;
            slot.pair.t = t;
            slot.pair.d = d;
            WeightCriterionReport crit = weight_criterion(v, t, n);
            bool verdict = crit.realizable;
            if (mode != ScreenMode::Weights) {
                bool exact = check_realizable(ctx, f, v, t).realizable;
                slot.disagreement = mode == ScreenMode::Both && exact != crit.realizable;
                verdict = exact;
            }
            slot.state = verdict ? 2 : 1;
            if (verdict) {
                for (std::uint64_t j : crit.equality_set)
                    if (coset_of(M, j).representative == j)
                        slot.pair.equality_coset_reps.push_back(j);
            }
        }
    });

    SearchResult res;
    res.n = n;
    res.mode = mode;
    res.v_from = v_from;
    res.v_to = v_to;
    res.t_from = t_from;
    res.t_to = t_to;
    for (std::uint64_t p = 0; p < total; ++p) {
        Slot& slot = slots[p];
        if (slot.state == 0) {
            ++res.skipped;
            continue;
        }
        ++res.screened;
        if (slot.disagreement) res.disagreements.emplace_back(slot.pair.v, slot.pair.t);
        if (slot.state == 2) res.confirmed.push_back(std::move(slot.pair));
    }
    return res;
}

inline nlohmann::ordered_json search_result_json(const SearchResult& r) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["n"] = r.n;
    j["mode"] = r.mode == ScreenMode::Weights ? "weights"
                : r.mode == ScreenMode::Exact ? "exact"
                                              : "both";
    j["vFrom"] = r.v_from;
    j["vTo"] = r.v_to;
    j["tFrom"] = r.t_from;
    j["tTo"] = r.t_to;
    j["screened"] = r.screened;
    j["skipped"] = r.skipped;
    nlohmann::ordered_json confirmed = nlohmann::ordered_json::array();
    for (const ConfirmedPair& c : r.confirmed) {
        nlohmann::ordered_json jc;
        jc["v"] = c.v;
        jc["t"] = c.t;
        jc["d"] = c.d;
        jc["equalityCosetReps"] = c.equality_coset_reps;
        confirmed.push_back(jc);
    }
    j["confirmed"] = confirmed;
    nlohmann::ordered_json disagreements = nlohmann::ordered_json::array();
    for (const auto& [v, t] : r.disagreements) disagreements.push_back({{"v", v}, {"t", t}});
    j["disagreements"] = disagreements;
    return j;
}

// ---------------------------------------------------------------------------
// Digit-combinatorics identity suite: exhaustive at small n, sampled beyond.
// ---------------------------------------------------------------------------

/// Run every digit-combinatorics predicate: exhaustively over its stated
/// small-n domain, then on `samples` seeded random instances. Each detail
/// carries the number of instances checked.
inline VerificationReport verify_lemmas(int n, std::uint64_t samples, std::uint64_t seed) {
    VerificationReport rep;
    rep.command = "verify lemmas";
    rep.params.emplace_back("n", std::to_string(n));
    rep.params.emplace_back("samples", std::to_string(samples));
    rep.seed = seed;
    auto started = std::chrono::steady_clock::now();

    if (n < 2 || n > 15) throw SizeLimitError("lemma suite supports n in [2, 15]");
    const std::uint64_t M = pow3(n) - 1;
    const std::uint64_t all_ones = M / 2;
    std::mt19937_64 rng(seed);
    auto rand_below = [&rng](std::uint64_t bound) {
        return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
    };

    struct Tally {
        std::int64_t checked = 0;
        std::int64_t passed = 0;
        void add(bool ok) {
            ++checked;
            if (ok) ++passed;
        }
    };
    Tally run_sum, block_delta, add_two, shift_cong, one_digit, shift_inv;

    // doubling additivity over run blocks
    if (n <= 8) {
        for (std::uint64_t a = 0; a < M; ++a)
            if (a != all_ones) run_sum.add(check_run_sum(std::int64_t(a), n));
    }
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::uint64_t a = rand_below(M);
        if (a == all_ones) continue;
        run_sum.add(check_run_sum(std::int64_t(a), n));
    }

    // per-block doubling delta
    for (int r = 0; r <= 18; ++r) {
        block_delta.add(check_block_delta({RunKind::ZeroTerminated, r}));
        block_delta.add(check_block_delta({RunKind::TwoTerminated, r}));
    }

    // adding 2*3^i lowers wt(a) - wt(2a) by at most 2
    if (n <= 7) {
        for (std::uint64_t a = 0; a < M; ++a)
            for (int i = 0; i < n; ++i) add_two.add(check_add_two_delta(std::int64_t(a), i, n));
    }
    for (std::uint64_t s = 0; s < samples; ++s)
        add_two.add(check_add_two_delta(std::int64_t(rand_below(M)), int(rand_below(n)), n));

    if (n % 2 == 1) {
        // multiplier congruence under index shifts
        if (n <= 7) {
            for (std::uint64_t j = 1; j < M; ++j)
                for (int i = 0; i < n; ++i)
                    shift_cong.add(check_shift_congruence(std::int64_t(j), i, n));
        }
        for (std::uint64_t s = 0; s < samples; ++s)
            shift_cong.add(
                check_shift_congruence(std::int64_t(1 + rand_below(M - 1)), int(rand_below(n)), n));

        // H is invariant under digit rotation
        if (n <= 11) {
            for (std::uint64_t j = 1; j < M; ++j)
                shift_inv.add(weight_h(std::int64_t(3 * j), n) == weight_h(std::int64_t(j), n));
        } else {
            for (std::uint64_t s = 0; s < samples; ++s) {
                std::uint64_t j = 1 + rand_below(M - 1);
                shift_inv.add(weight_h(std::int64_t(3 * j), n) == weight_h(std::int64_t(j), n));
            }
        }
    }

    // one-digit edits and their doubling deltas
    if (n <= 7) {
        for (std::uint64_t a = 0; a < M; ++a) {
            if (a == all_ones) continue;
            RunDecomposition d = run_decompose(std::int64_t(a), n);
            for (const DigitEdit& e : applicable_digit_edits(d))
                one_digit.add(check_one_digit_delta(std::int64_t(a), e, n));
        }
    }
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::uint64_t a = rand_below(M);
        if (a == all_ones) continue;
        RunDecomposition d = run_decompose(std::int64_t(a), n);
        std::vector<DigitEdit> edits = applicable_digit_edits(d);
        if (edits.empty()) continue;
        one_digit.add(check_one_digit_delta(std::int64_t(a), edits[rand_below(edits.size())], n));
    }

    auto push = [&rep](const char* name, const Tally& t) {
        rep.details.push_back({name, t.passed == t.checked, t.checked,
                               t.passed == t.checked
                                   ? ""
                                   : std::to_string(t.checked - t.passed) + " failures"});
    };
    push("runSum: wt(2a) additive over run blocks", run_sum);
    push("blockDelta: wt(B) - wt(2B) = -/+ run length", block_delta);
    push("addTwoDelta: adding 2*3^i costs at most 2", add_two);
    if (n % 2 == 1) {
        push("shiftCongruence: (3^{m+1}-1)(j +- (3^{m+1}+1)3^i) = (3^{m+1}-1)j +- 2*3^i",
             shift_cong);
        push("shiftInvariance: H(3j) = H(j)", shift_inv);
    }
    push("oneDigitDelta: doubling delta of one-digit edits", one_digit);

    rep.pass = true;
    for (const CheckDetail& d : rep.details) rep.pass = rep.pass && d.pass;
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - started)
                         .count();
    return rep;
}

// ---------------------------------------------------------------------------
// Gauss-sum identity rails (floating point, tolerance-tagged).
// ---------------------------------------------------------------------------

/// Check the Gauss-sum identities over GF(3^n): trivial character value,
/// squared modulus q, stability under k -> 3k, conjugate symmetry, the
/// trace expansion at every nonzero y, and the d-th-power sums for one v
/// per prime divisor of q-1 with gamma in {1, alpha, alpha^2}.
inline VerificationReport verify_gauss(int n, double tol) {
    VerificationReport rep;
    rep.command = "gauss check";
    rep.params.emplace_back("n", std::to_string(n));
    rep.params.emplace_back("tol", std::to_string(tol));
    auto started = std::chrono::steady_clock::now();

    FieldContext ctx = FieldContext::build(n);
    const std::uint32_t M = ctx.group_order();
    std::vector<std::complex<double>> g = all_gauss_sums(ctx);

    rep.details.push_back(
        {"trivial character: G = -1", std::abs(g[0] - std::complex<double>(-1.0, 0.0)) <= 1e-9, 1,
         ""});

    std::int64_t mod_bad = 0;
    for (std::uint32_t k = 1; k < M; ++k)
        if (std::abs(std::norm(g[k]) - double(ctx.order())) > tol) ++mod_bad;
    rep.details.push_back({"nontrivial characters: |G|^2 = q", mod_bad == 0, M - 1,
                           mod_bad ? std::to_string(mod_bad) + " failures" : ""});

    std::int64_t cube_bad = 0;
    for (std::uint32_t k = 0; k < M; ++k)
        if (std::abs(g[std::uint64_t(3) * k % M] - g[k]) > 1e-9) ++cube_bad;
    rep.details.push_back({"cube stability: G(chi^{3k}) = G(chi^k)", cube_bad == 0, M,
                           cube_bad ? std::to_string(cube_bad) + " failures" : ""});

    std::int64_t conj_bad = 0;
    for (std::uint32_t k = 0; k < M; ++k) {
        double chi_minus_one = k % 2 == 0 ? 1.0 : -1.0;  // chi^k(-1), -1 = alpha^{(q-1)/2}
        if (std::abs(g[(M - k) % M] - chi_minus_one * std::conj(g[k])) > tol) ++conj_bad;
    }
    rep.details.push_back({"conjugate symmetry: G(conj chi) = chi(-1) conj(G)", conj_bad == 0, M,
                           conj_bad ? std::to_string(conj_bad) + " failures" : ""});

    std::int64_t trace_bad = 0;
    for (std::uint32_t l = 0; l < M; ++l)
        if (!check_trace_expansion(ctx, g, ctx.element_from_log(l), tol)) ++trace_bad;
    rep.details.push_back({"trace expansion over all y != 0", trace_bad == 0, M,
                           trace_bad ? std::to_string(trace_bad) + " failures" : ""});

    std::int64_t power_checked = 0, power_bad = 0;
    std::vector<std::uint64_t> primes;
    std::uint64_t rem = M;
    for (std::uint64_t p = 2; p * p <= rem; ++p) {
        if (rem % p != 0) continue;
        primes.push_back(p);
        while (rem % p == 0) rem /= p;
    }
    if (rem > 1) primes.push_back(rem);
    for (std::uint64_t p : primes) {
        std::uint32_t v = std::uint32_t(M / p);  // d = gcd(v, M) = M/p
        if (v <= 1) continue;
        for (std::uint64_t r = 0; r < 3; ++r) {
            ++power_checked;
            if (!check_power_sum(ctx, g, v, ctx.element_from_log(r), tol)) ++power_bad;
        }
    }
    rep.details.push_back({"d-th power sums per prime divisor of q-1", power_bad == 0,
                           power_checked, power_bad ? std::to_string(power_bad) + " failures" : ""});

    rep.pass = true;
    for (const CheckDetail& d : rep.details) rep.pass = rep.pass && d.pass;
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - started)
                         .count();
    return rep;
}

// ---------------------------------------------------------------------------
// End-to-end Lin verification.
// ---------------------------------------------------------------------------

/// Build GF(3^n), generate the Lin sequence, check ideal two-level
/// autocorrelation exactly, check that the Lin pair
/// v = 2(3^{m+1} - 1), t = (3^n + 1)/4 is realizable, and match the g table
/// pointwise against 2Tr(y) + 2Tr(y^{2*3^m+1}) with y = gamma lambda^{vt}.
inline VerificationReport verify_lin(int n, int jobs = 1) {
    VerificationReport rep;
    rep.command = "verify lin";
    rep.params.emplace_back("n", std::to_string(n));
    auto started = std::chrono::steady_clock::now();

    if (n < 3 || n > 9 || n % 2 == 0) {
        rep.pass = false;
        rep.details.push_back({"degree accepted (odd n in [3, 9])", false, 0, "rejected"});
        return rep;
    }
    int m = (n - 1) / 2;
    FieldContext ctx = FieldContext::build(n);
    const std::uint64_t M = ctx.group_order();

    TernarySequence lin = lin_sequence(ctx);
    bool two_level = is_ideal_two_level(lin, jobs);
    rep.details.push_back(
        {"lin sequence has exact two-level autocorrelation", two_level, std::int64_t(M) - 1, ""});

    std::uint32_t v = std::uint32_t(2 * (pow3(m + 1) - 1));
    std::uint32_t t = std::uint32_t((pow3(n) + 1) / 4);
    RealizablePairReport pair = check_realizable(ctx, trace_function(ctx), v, t);
    rep.details.push_back({"pair (2(3^{m+1}-1), (3^n+1)/4) is realizable", pair.realizable,
                           std::int64_t(pair.d) * ctx.order(), ""});

    bool form_ok = pair.realizable;
    std::int64_t points = 0;
    if (pair.realizable) {
        const std::uint64_t vt = std::uint64_t(v) * t % M;
        const std::uint64_t e = 2 * pow3(m) + 1;
        for (std::uint32_t r = 0; r < pair.d && form_ok; ++r) {
            FieldElement gamma = pair.gamma_reps[r];
            for (std::uint32_t lam = 0; lam < ctx.order(); ++lam) {
                FieldElement y = lam == 0 ? ctx.zero()
                                          : ctx.mul(gamma, ctx.pow({lam}, std::int64_t(vt)));
                std::uint8_t expected =
                    y.is_zero()
                        ? 0
                        : std::uint8_t((2 * ctx.trace(y) +
                                        2 * ctx.trace(ctx.pow(y, std::int64_t(e)))) % 3);
                if (expected != std::uint8_t(pair.g_table[r][lam])) {
                    form_ok = false;
                    break;
                }
                ++points;
            }
        }
    }
    rep.details.push_back(
        {"realization matches 2Tr(y) + 2Tr(y^{2*3^m+1}) pointwise", form_ok, points, ""});

    rep.pass = true;
    for (const CheckDetail& d : rep.details) rep.pass = rep.pass && d.pass;
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - started)
                         .count();
    return rep;
}

}  // namespace tdht
