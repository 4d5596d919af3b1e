// Command-line front end. Subcommands mirror the library operations; output
// goes to stdout in json, csv or human form, logs to stderr. Exit codes:
// 0 success (including verdict NONZERO), 2 verdict FALSIFIED, 3 budget or
// precision exhaustion, 64 malformed input.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "ffzeta/io.hpp"

namespace {

using namespace ffzeta;

struct Common {
    std::string format = "human";
    std::uint64_t seed = 0;
    int threads = 0; // 0 = hardware concurrency
    std::string budget_cap;
    std::int64_t window = 0;
    int max_doublings = 6;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "human"}))
        ->capture_default_str();
    cmd->add_option("--seed", c.seed, "seed recorded in the output and used for sampling")
        ->capture_default_str();
    cmd->add_option("--threads", c.threads, "worker threads for power sums (0 = all cores)")
        ->capture_default_str();
    cmd->add_option("--budget-cap", c.budget_cap,
                    "max elements per power sum (overrides FFZETA_BUDGET_CAP)");
    cmd->add_option("--window", c.window, "initial series window (0 = derive from i and s)");
    cmd->add_option("--max-doublings", c.max_doublings, "escalation cap on window doublings")
        ->capture_default_str();
}

PrecisionPolicy make_policy(const Common& c) {
    PrecisionPolicy policy;
    policy.initial_window = c.window;
    policy.max_doublings = c.max_doublings;
    if (!c.budget_cap.empty()) {
        policy.budget_cap = parse_int_literal(c.budget_cap);
    } else if (const char* env = std::getenv("FFZETA_BUDGET_CAP")) {
        policy.budget_cap = parse_int_literal(env);
    }
    if (policy.budget_cap < 1) throw ParseError("budget cap must be positive");
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    policy.threads = c.threads > 0 ? c.threads : static_cast<int>(hw);
    return policy;
}

ordered_json envelope(const std::string& command, const Common& c, const ordered_json& payload) {
    ordered_json doc;
    doc["command"] = command;
    doc["seed"] = c.seed;
    for (const auto& item : payload.items()) doc[item.key()] = item.value();
    return doc;
}

int emit(const Common& c, const ordered_json& doc, const std::string& csv,
         const std::string& human) {
    if (c.format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else if (c.format == "csv") {
        std::cout << csv << "# seed=" << c.seed << "\n";
    } else {
        std::cout << human << "(seed " << c.seed << ")\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact zeta values over function fields of curves"};
    app.require_subcommand(1);

    Common c_gseq, c_nongap, c_power, c_predict, c_mzv, c_certify, c_sheats;
    std::string opt_s, opt_tuple, opt_curve, opt_strategy = "exhaustive";
    std::uint64_t opt_q = 0, opt_samples = 1000, opt_cap = 50'000'000;
    std::int64_t opt_bound = 0;
    int opt_count = 0, opt_i = 0, opt_cutoff = 0;

    CLI::App* gseq = app.add_subcommand("gseq", "greedy carry-free sequence G_0, G_1, ...");
    gseq->add_option("--q", opt_q, "field size")->required();
    gseq->add_option("--s", opt_s, "exponent, plain or <digits>@<base>")->required();
    gseq->add_option("--count", opt_count, "number of terms")
        ->required()
        ->check(CLI::NonNegativeNumber);
    add_common(gseq, c_gseq);

    CLI::App* nongap = app.add_subcommand("nongap", "pole-order sequence of the coordinate ring");
    nongap->add_option("--curve", opt_curve, "curve description file")->required();
    nongap->add_option("--count", opt_count, "number of terms")
        ->required()
        ->check(CLI::PositiveNumber);
    add_common(nongap, c_nongap);

    CLI::App* power = app.add_subcommand("powersum", "brute-force power sum S_{d_i}(s)");
    power->add_option("--curve", opt_curve, "curve description file")->required();
    power->add_option("--i", opt_i, "degree index")->required()->check(CLI::NonNegativeNumber);
    power->add_option("--s", opt_s, "exponent, plain or <digits>@<base>")->required();
    add_common(power, c_power);

    CLI::App* predict = app.add_subcommand("predict", "predicted valuation of S_{d_i}(s)");
    predict->add_option("--curve", opt_curve, "curve description file")->required();
    predict->add_option("--i", opt_i, "degree index")->required()->check(CLI::NonNegativeNumber);
    predict->add_option("--s", opt_s, "exponent, plain or <digits>@<base>")->required();
    add_common(predict, c_predict);

    CLI::App* mzvc = app.add_subcommand("mzv", "truncated multiple zeta value");
    mzvc->add_option("--curve", opt_curve, "curve description file")->required();
    mzvc->add_option("--tuple", opt_tuple, "exponents s_1,...,s_r")->required();
    mzvc->add_option("--cutoff", opt_cutoff, "largest degree index in the chains")
        ->required()
        ->check(CLI::NonNegativeNumber);
    add_common(mzvc, c_mzv);

    CLI::App* certify = app.add_subcommand("certify", "non-vanishing certificate");
    certify->add_option("--curve", opt_curve, "curve description file")->required();
    certify->add_option("--tuple", opt_tuple, "exponents s_1,...,s_r")->required();
    certify->add_option("--cutoff", opt_cutoff, "largest degree index in the chains")
        ->required()
        ->check(CLI::NonNegativeNumber);
    add_common(certify, c_certify);

    CLI::App* sheats = app.add_subcommand("sheats", "minimality audit of the greedy sequence");
    sheats->add_option("--q", opt_q, "field size")->required();
    sheats->add_option("--s", opt_s, "exponent, plain or <digits>@<base>")->required();
    sheats->add_option("--i", opt_i, "tuple length")->required()->check(CLI::NonNegativeNumber);
    sheats->add_option("--strategy", opt_strategy, "exhaustive or sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}))
        ->capture_default_str();
    sheats->add_option("--bound", opt_bound, "per-coordinate bound (exhaustive; 0 = derive)");
    sheats->add_option("--samples", opt_samples, "sample count (sampled)")
        ->capture_default_str();
    sheats->add_option("--tuple-cap", opt_cap, "tuple cap (exhaustive)")->capture_default_str();
    add_common(sheats, c_sheats);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gseq) {
            const bigint s = parse_int_literal(opt_s);
            const GSequence g = g_sequence(s, opt_q, opt_count);
            return emit(c_gseq, envelope("gseq", c_gseq, gsequence_to_json(g)),
                        gsequence_to_csv(g), gsequence_to_text(g));
        }
        if (*nongap) {
            const CurveModel curve = load_curve_file(opt_curve);
            const NonGapSequence seq =
                nongap_sequence(curve, std::max(opt_count, 2 * curve.genus + 2));
            const ConditionClass cls = condition_class(seq);
            NonGapSequence shown = seq;
            shown.terms.resize(static_cast<std::size_t>(opt_count));
            return emit(c_nongap, envelope("nongap", c_nongap, nongaps_to_json(curve, shown, cls)),
                        nongaps_to_csv(shown, cls), nongaps_to_text(curve, shown, cls));
        }
        if (*power) {
            const CurveModel curve = load_curve_file(opt_curve);
            ZetaEngine engine(curve, make_policy(c_power));
            const PowerSumResult r = engine.power_sum(opt_i, parse_int_literal(opt_s));
            return emit(c_power, envelope("powersum", c_power, power_sum_to_json(r)),
                        power_sum_to_csv(r), power_sum_to_text(r));
        }
        if (*predict) {
            const CurveModel curve = load_curve_file(opt_curve);
            ZetaEngine engine(curve, make_policy(c_predict));
            const bigint s = parse_int_literal(opt_s);
            const bigint value = engine.predicted_valuation(opt_i, s);
            const GSequence g = g_sequence(s, curve.field.q, opt_i);
            ordered_json payload;
            payload["curve"] = describe_curve(curve);
            payload["i"] = opt_i;
            payload["d_i"] = nth_nongap(curve, opt_i);
            payload["s"] = s.str();
            payload["g_terms"] = bigints_to_json(g.terms);
            payload["predicted_valuation"] = value.str();
            if (opt_i >= 1) payload["gap"] = engine.valuation_gap(opt_i, s).str();
            std::string csv;
            csv += "i,d_i,s,predicted\n";
            csv += std::to_string(opt_i) + "," + std::to_string(nth_nongap(curve, opt_i)) + "," +
                   s.str() + "," + value.str() + "\n";
            std::string human = describe_curve(curve) + "\n  predicted valuation of S_{d_" +
                                std::to_string(opt_i) + "}(" + s.str() + ") = " + value.str() +
                                "\n";
            return emit(c_predict, envelope("predict", c_predict, payload), csv, human);
        }
        if (*mzvc) {
            const CurveModel curve = load_curve_file(opt_curve);
            ZetaEngine engine(curve, make_policy(c_mzv));
            const MZVResult r = engine.mzv(parse_tuple(opt_tuple), opt_cutoff);
            return emit(c_mzv, envelope("mzv", c_mzv, mzv_to_json(curve, r)), mzv_to_csv(r),
                        mzv_to_text(curve, r));
        }
        if (*certify) {
            const CurveModel curve = load_curve_file(opt_curve);
            ZetaEngine engine(curve, make_policy(c_certify));
            const NonvanishingCertificate cert =
                engine.certify(parse_tuple(opt_tuple), opt_cutoff);
            emit(c_certify, envelope("certify", c_certify, certificate_to_json(cert)),
                 certificate_to_csv(cert), certificate_to_text(cert));
            return verdict_exit_code(cert.verdict);
        }
        if (*sheats) {
            const bigint s = parse_int_literal(opt_s);
            SheatsStrategy strategy;
            if (opt_strategy == "sampled") {
                strategy = SampledStrategy{opt_samples, c_sheats.seed};
            } else {
                strategy = ExhaustiveStrategy{bigint(opt_bound), opt_cap};
            }
            const SheatsReport r = sheats_minimality_check(s, opt_q, opt_i, strategy);
            return emit(c_sheats, envelope("sheats", c_sheats, sheats_to_json(r)),
                        sheats_to_csv(r), sheats_to_text(r));
        }
    } catch (const ParseError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitParseError;
    } catch (const BudgetExceededError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitResourceError;
    } catch (const PrecisionEscalationError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitResourceError;
    } catch (const Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
