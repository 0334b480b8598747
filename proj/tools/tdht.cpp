// Command-line front end: field inspection, sequence generation and
// autocorrelation, exact DHT spectra, realizable-pair checks and searches,
// and the verification suites. Exit code 0 iff the requested check passed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tdht/tdht.hpp"

namespace {

using nlohmann::ordered_json;

std::vector<std::uint8_t> parse_poly(const std::string& csv) {
    std::vector<std::uint8_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::uint8_t(std::stoi(item)));
    return out;
}

ordered_json sequence_json(const tdht::TernarySequence& s) {
    ordered_json j;
    j["schema"] = tdht::kReportSchema;
    j["n"] = s.n;
    j["modulus"] = s.modulus;
    j["family"] = tdht::family_name(s.family);
    ordered_json params = ordered_json::object();
    if (s.family == tdht::SequenceFamily::DhtRealized) {
        params["v"] = s.v;
        params["t"] = s.t;
    }
    j["params"] = params;
    std::string digits;
    digits.reserve(s.digits.size());
    for (std::uint8_t d : s.digits) digits.push_back(char('0' + d));
    j["digits"] = digits;
    return j;
}

tdht::TernarySequence sequence_from_json(const ordered_json& j) {
    tdht::TernarySequence s;
    s.n = j.at("n").get<int>();
    s.modulus = j.at("modulus").get<std::vector<std::uint8_t>>();
    std::string fam = j.at("family").get<std::string>();
    s.family = fam == "m"     ? tdht::SequenceFamily::MSequence
               : fam == "lin" ? tdht::SequenceFamily::Lin
               : fam == "dht" ? tdht::SequenceFamily::DhtRealized
                              : tdht::SequenceFamily::Custom;
    if (j.at("params").contains("v")) s.v = j["params"]["v"].get<std::uint32_t>();
    if (j.at("params").contains("t")) s.t = j["params"]["t"].get<std::uint32_t>();
    for (char c : j.at("digits").get<std::string>()) {
        if (c < '0' || c > '2') throw tdht::Error("sequence digits must be over {0,1,2}");
        s.digits.push_back(std::uint8_t(c - '0'));
    }
    s.period = std::uint32_t(s.digits.size());
    return s;
}

int emit_verification(const tdht::VerificationReport& rep, bool json) {
    std::cout << tdht::emit_report(rep, json ? "json" : "text");
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for ternary two-level autocorrelation sequences"};
    app.require_subcommand(1);

    int exit_code = 0;

    // ----- field info -----
    auto* field = app.add_subcommand("field", "field table inspection");
    field->require_subcommand(1);
    {
        auto* info = field->add_subcommand("info", "print modulus and table facts as JSON");
        auto n = std::make_shared<int>(3);
        auto poly = std::make_shared<std::string>();
        info->add_option("--n", *n, "extension degree")->required();
        info->add_option("--poly", *poly, "override modulus c0,c1,...,cn");
        info->callback([n, poly] {
            tdht::FieldContext ctx =
                poly->empty() ? tdht::FieldContext::build(*n)
                              : tdht::FieldContext::build(*n, parse_poly(*poly));
            ordered_json j;
            j["schema"] = tdht::kReportSchema;
            j["n"] = ctx.degree();
            j["q"] = ctx.order();
            j["modulus"] = ctx.modulus();
            j["alphaOrder"] = ctx.group_order();
            std::cout << j.dump(2) << '\n';
        });
    }

    // ----- seq gen / autocorr -----
    auto* seq = app.add_subcommand("seq", "sequence generation and autocorrelation");
    seq->require_subcommand(1);
    {
        auto* gen = seq->add_subcommand("gen", "generate a sequence and write it as JSON");
        auto family = std::make_shared<std::string>();
        auto n = std::make_shared<int>(3);
        auto v = std::make_shared<std::uint32_t>(0);
        auto t = std::make_shared<std::uint32_t>(0);
        auto out = std::make_shared<std::string>();
        gen->add_option("--family", *family, "m | lin | dht")
            ->required()
            ->check(CLI::IsMember({"m", "lin", "dht"}));
        gen->add_option("--n", *n, "extension degree")->required();
        gen->add_option("--v", *v, "first decimation (dht family)");
        gen->add_option("--t", *t, "second decimation (dht family)");
        gen->add_option("--out", *out, "output file")->required();
        gen->callback([family, n, v, t, out] {
            tdht::FieldContext ctx = tdht::FieldContext::build(*n);
            tdht::TernarySequence s;
            if (*family == "m") {
                s = tdht::m_sequence(ctx);
            } else if (*family == "lin") {
                s = tdht::lin_sequence(ctx);
            } else {
                if (*v == 0 || *t == 0) throw CLI::ValidationError("--v and --t are required for the dht family");
                tdht::RealizablePairReport rep =
                    tdht::check_realizable(ctx, tdht::trace_function(ctx), *v, *t);
                if (!rep.realizable) throw tdht::NotRealizableError("(v, t) is not realizable");
                s = tdht::build_realized_sequence(rep, ctx);
            }
            std::ofstream f(*out);
            if (!f) throw tdht::Error("cannot open output file " + *out);
            f << sequence_json(s).dump(2) << '\n';
            std::cout << "wrote " << *out << " (period " << s.period << ")\n";
        });

        auto* ac = seq->add_subcommand("autocorr", "exact autocorrelation of a sequence file");
        auto file = std::make_shared<std::string>();
        auto json_out = std::make_shared<bool>(false);
        auto csv_out = std::make_shared<bool>(false);
        auto jobs = std::make_shared<int>(1);
        ac->add_option("file", *file, "sequence JSON file")->required();
        ac->add_flag("--json", *json_out, "emit JSON");
        ac->add_flag("--csv", *csv_out, "emit CSV rows tau,re,omegaCoeff");
        ac->add_option("--jobs", *jobs, "worker threads");
        ac->callback([file, json_out, csv_out, jobs, &exit_code] {
            std::ifstream f(*file);
            if (!f) throw tdht::Error("cannot open " + *file);
            ordered_json j = ordered_json::parse(f);
            tdht::TernarySequence s = sequence_from_json(j);
            bool two_level = tdht::is_ideal_two_level(s, *jobs);
            if (*csv_out) {
                std::cout << "tau,re,omegaCoeff\n";
                for (std::uint32_t tau = 0; tau < s.period; ++tau) {
                    tdht::Eisenstein c = tdht::autocorrelation(s, tau);
                    std::cout << tau << ',' << c.a << ',' << c.b << '\n';
                }
            } else if (*json_out) {
                ordered_json out;
                out["schema"] = tdht::kReportSchema;
                out["n"] = s.n;
                out["period"] = s.period;
                out["twoLevel"] = two_level;
                ordered_json values = ordered_json::array();
                for (std::uint32_t tau = 0; tau < s.period; ++tau) {
                    tdht::Eisenstein c = tdht::autocorrelation(s, tau);
                    values.push_back({{"tau", tau}, {"re", c.a}, {"omegaCoeff", c.b}});
                }
                out["values"] = values;
                std::cout << out.dump(2) << '\n';
            } else {
                std::cout << "period " << s.period << ", two-level: "
                          << (two_level ? "yes" : "no") << '\n';
            }
            exit_code = two_level ? 0 : 1;
        });
    }

    // ----- dht spectrum / check-pair / search -----
    auto* dht = app.add_subcommand("dht", "exact decimation-Hadamard transforms");
    dht->require_subcommand(1);
    {
        auto* spec = dht->add_subcommand("spectrum", "second-order multiplexing DHT spectrum");
        auto n = std::make_shared<int>(3);
        auto v = std::make_shared<std::uint32_t>(0);
        auto t = std::make_shared<std::uint32_t>(0);
        auto gamma_log = std::make_shared<std::uint32_t>(0);
        auto json_out = std::make_shared<bool>(false);
        auto csv_out = std::make_shared<bool>(false);
        spec->add_option("--n", *n)->required();
        spec->add_option("--v", *v)->required();
        spec->add_option("--t", *t)->required();
        spec->add_option("--gamma", *gamma_log, "gamma = alpha^R")->required();
        spec->add_flag("--json", *json_out);
        spec->add_flag("--csv", *csv_out);
        spec->callback([n, v, t, gamma_log, json_out, csv_out] {
            tdht::FieldContext ctx = tdht::FieldContext::build(*n);
            tdht::Spectrum s = tdht::second_order_mdht(ctx, tdht::trace_function(ctx), *v, *t,
                                                       ctx.element_from_log(*gamma_log));
            if (*csv_out) {
                std::cout << "lambda,re,omegaCoeff\n";
                for (std::uint32_t lam = 0; lam < ctx.order(); ++lam)
                    std::cout << lam << ',' << s.values[lam].a << ',' << s.values[lam].b << '\n';
            } else if (*json_out) {
                ordered_json out;
                out["schema"] = tdht::kReportSchema;
                out["n"] = *n;
                out["v"] = *v;
                out["t"] = *t;
                out["gammaLog"] = *gamma_log;
                ordered_json values = ordered_json::array();
                for (std::uint32_t lam = 0; lam < ctx.order(); ++lam)
                    values.push_back(
                        {{"lambda", lam}, {"re", s.values[lam].a}, {"omegaCoeff", s.values[lam].b}});
                out["values"] = values;
                std::cout << out.dump(2) << '\n';
            } else {
                for (std::uint32_t lam = 0; lam < ctx.order(); ++lam)
                    std::cout << lam << " -> (" << s.values[lam].a << ", " << s.values[lam].b
                              << ")\n";
            }
        });

        auto* check = dht->add_subcommand("check-pair", "test whether (v, t) is realizable");
        auto cn = std::make_shared<int>(3);
        auto cv = std::make_shared<std::uint32_t>(0);
        auto ct = std::make_shared<std::uint32_t>(0);
        auto cjson = std::make_shared<bool>(false);
        check->add_option("--n", *cn)->required();
        check->add_option("--v", *cv)->required();
        check->add_option("--t", *ct)->required();
        check->add_flag("--json", *cjson);
        check->callback([cn, cv, ct, cjson, &exit_code] {
            tdht::FieldContext ctx = tdht::FieldContext::build(*cn);
            tdht::RealizablePairReport rep =
                tdht::check_realizable(ctx, tdht::trace_function(ctx), *cv, *ct);
            if (*cjson) {
                ordered_json j;
                j["schema"] = tdht::kReportSchema;
                j["n"] = *cn;
                j["v"] = rep.v;
                j["t"] = rep.t;
                j["d"] = rep.d;
                j["realizable"] = rep.realizable;
                if (rep.witness) {
                    j["witness"] = {{"lambda", rep.witness->lambda.packed},
                                    {"gammaLog", ctx.log(rep.witness->gamma)},
                                    {"re", rep.witness->value.a},
                                    {"omegaCoeff", rep.witness->value.b}};
                }
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << "(v=" << rep.v << ", t=" << rep.t << ") d=" << rep.d << ": "
                          << (rep.realizable ? "realizable" : "not realizable") << '\n';
            }
            exit_code = rep.realizable ? 0 : 1;
        });

        auto* search = dht->add_subcommand("search", "scan (v, t) ranges for realizable pairs");
        auto sn = std::make_shared<int>(3);
        auto vf = std::make_shared<std::uint32_t>(1);
        auto vt_ = std::make_shared<std::uint32_t>(0);
        auto tf = std::make_shared<std::uint32_t>(1);
        auto tt = std::make_shared<std::uint32_t>(0);
        auto screen = std::make_shared<std::string>("both");
        auto sjobs = std::make_shared<int>(1);
        auto sjson = std::make_shared<bool>(false);
        search->add_option("--n", *sn)->required();
        search->add_option("--v-from", *vf);
        search->add_option("--v-to", *vt_);
        search->add_option("--t-from", *tf);
        search->add_option("--t-to", *tt);
        search->add_option("--screen", *screen)->check(CLI::IsMember({"weights", "exact", "both"}));
        search->add_option("--jobs", *sjobs);
        search->add_flag("--json", *sjson);
        search->callback([sn, vf, vt_, tf, tt, screen, sjobs, sjson, &exit_code] {
            tdht::FieldContext ctx = tdht::FieldContext::build(*sn);
            std::uint32_t hi = ctx.group_order() - 1;
            std::uint32_t v_to = *vt_ == 0 ? hi : *vt_;
            std::uint32_t t_to = *tt == 0 ? hi : *tt;
            tdht::SearchResult res = tdht::run_search(ctx, *vf, v_to, *tf, t_to,
                                                      tdht::parse_screen_mode(*screen), *sjobs);
            if (*sjson) {
                std::cout << tdht::search_result_json(res).dump(2) << '\n';
            } else {
                std::cout << "screened " << res.screened << " pairs (skipped " << res.skipped
                          << "), confirmed " << res.confirmed.size() << ", disagreements "
                          << res.disagreements.size() << '\n';
                for (const tdht::ConfirmedPair& c : res.confirmed)
                    std::cout << "  (v=" << c.v << ", t=" << c.t << ") d=" << c.d << '\n';
            }
            exit_code = res.disagreements.empty() ? 0 : 1;
        });
    }

    // ----- verify lin / hamming / lemmas -----
    auto* verify = app.add_subcommand("verify", "verification suites");
    verify->require_subcommand(1);
    {
        auto* lin = verify->add_subcommand("lin", "two-level autocorrelation of the Lin family");
        auto n = std::make_shared<int>(3);
        auto jobs = std::make_shared<int>(1);
        auto json_out = std::make_shared<bool>(false);
        lin->add_option("--n", *n)->required();
        lin->add_option("--jobs", *jobs);
        lin->add_flag("--json", *json_out);
        lin->callback([n, jobs, json_out, &exit_code] {
            exit_code = emit_verification(tdht::verify_lin(*n, *jobs), *json_out);
        });

        auto* ham = verify->add_subcommand("hamming", "weight-theorem scan over all residues");
        auto hn = std::make_shared<int>(3);
        auto hjson = std::make_shared<bool>(false);
        ham->add_option("--n", *hn)->required();
        ham->add_flag("--json", *hjson);
        ham->callback([hn, hjson, &exit_code] {
            auto started = std::chrono::steady_clock::now();
            tdht::HammingReport rep = tdht::verify_lin_weight_theorem(*hn);
            std::int64_t ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::steady_clock::now() - started)
                                  .count();
            if (*hjson) {
                ordered_json j;
                j["schema"] = tdht::kReportSchema;
                j["n"] = *hn;
                j["pass"] = rep.pass;
                j["equalitySetSize"] = rep.equality_set.size();
                j["elapsedMs"] = ms;
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << "n=" << *hn << ": " << (rep.pass ? "PASS" : "FAIL")
                          << ", equality set size " << rep.equality_set.size() << ", " << ms
                          << " ms\n";
            }
            exit_code = rep.pass ? 0 : 1;
        });

        auto* lem = verify->add_subcommand("lemmas", "digit-combinatorics identity suite");
        auto ln = std::make_shared<int>(3);
        auto samples = std::make_shared<std::uint64_t>(10000);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto ljson = std::make_shared<bool>(false);
        lem->add_option("--n", *ln)->required();
        lem->add_option("--samples", *samples);
        lem->add_option("--seed", *seed);
        lem->add_flag("--json", *ljson);
        lem->callback([ln, samples, seed, ljson, &exit_code] {
            exit_code = emit_verification(tdht::verify_lemmas(*ln, *samples, *seed), *ljson);
        });
    }

    // ----- gauss check -----
    auto* gauss = app.add_subcommand("gauss", "floating-point Gauss-sum rails");
    gauss->require_subcommand(1);
    {
        auto* check = gauss->add_subcommand("check", "verify the Gauss-sum identities");
        auto n = std::make_shared<int>(3);
        auto tol = std::make_shared<double>(1e-6);
        auto json_out = std::make_shared<bool>(false);
        check->add_option("--n", *n)->required();
        check->add_option("--tol", *tol);
        check->add_flag("--json", *json_out);
        check->callback([n, tol, json_out, &exit_code] {
            exit_code = emit_verification(tdht::verify_gauss(*n, *tol), *json_out);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}
