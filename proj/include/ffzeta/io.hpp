#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffzeta/curve.hpp"
#include "ffzeta/digits.hpp"
#include "ffzeta/errors.hpp"
#include "ffzeta/fq.hpp"
#include "ffzeta/gsequence.hpp"
#include "ffzeta/laurent.hpp"
#include "ffzeta/zeta.hpp"

namespace ffzeta {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Field elements and fields

/// Canonical element encoding: a plain integer for prime fields, the
/// coefficient vector [c_0, ..., c_{e-1}] otherwise. Input also accepts an
/// integer k < q for extension fields, read as base-p digits.
inline ordered_json fq_to_json(const FieldSpec& F, const FqElement& a) {
    if (F.e == 1) return ordered_json(a.c[0]);
    ordered_json arr = ordered_json::array();
    for (int k = 0; k < F.e; ++k) arr.push_back(a.c[static_cast<std::size_t>(k)]);
    return arr;
}

inline FqElement fq_from_json(const FieldSpec& F, const json& j) {
    if (j.is_number_integer()) {
        const std::int64_t v = j.get<std::int64_t>();
        if (v < 0) {
            if (F.e != 1) throw ParseError("negative element literals need a prime field");
            return fq_from_int(F, bigint(v));
        }
        if (static_cast<std::uint64_t>(v) >= F.q) {
            throw ParseError("element literal " + std::to_string(v) + " is not below q");
        }
        return index_to_element(F, static_cast<std::uint64_t>(v));
    }
    if (j.is_array()) {
        std::vector<std::int64_t> coeffs;
        for (const auto& c : j) {
            if (!c.is_number_integer()) throw ParseError("element coefficients must be integers");
            coeffs.push_back(c.get<std::int64_t>());
        }
        return fq_make(F, coeffs);
    }
    throw ParseError("field element must be an integer or a coefficient array");
}

inline ordered_json field_to_json(const FieldSpec& F) {
    ordered_json j;
    j["p"] = F.p;
    j["e"] = F.e;
    j["modulus"] = F.modulus;
    return j;
}

inline FieldSpec field_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p")) throw ParseError("field needs at least a prime p");
    const std::int64_t p = j.at("p").get<std::int64_t>();
    const int e = j.contains("e") ? j.at("e").get<int>() : 1;
    std::vector<std::int32_t> modulus;
    if (j.contains("modulus") && !j.at("modulus").is_null()) {
        for (const auto& c : j.at("modulus")) modulus.push_back(c.get<std::int32_t>());
    }
    return make_field(p, e, std::move(modulus));
}

// ---------------------------------------------------------------------------
// Curve description files
//
// {"field": {"p", "e", "modulus"},
//  "shape": "p1"
//         | {"elliptic": [a1, a2, a3, a4, a6]}
//         | {"hyperelliptic": {"g": 2, "f": [...], "h": [...]}}}

inline ordered_json curve_to_json(const CurveModel& c) {
    ordered_json j;
    j["field"] = field_to_json(c.field);
    switch (c.shape) {
        case CurveShape::ProjectiveLine:
            j["shape"] = "p1";
            break;
        case CurveShape::Elliptic: {
            ordered_json arr = ordered_json::array();
            arr.push_back(fq_to_json(c.field, c.ell.a1));
            arr.push_back(fq_to_json(c.field, c.ell.a2));
            arr.push_back(fq_to_json(c.field, c.ell.a3));
            arr.push_back(fq_to_json(c.field, c.ell.a4));
            arr.push_back(fq_to_json(c.field, c.ell.a6));
            j["shape"] = ordered_json{{"elliptic", arr}};
            break;
        }
        case CurveShape::Hyperelliptic: {
            ordered_json f = ordered_json::array();
            for (const auto& cf : c.hyp.f) f.push_back(fq_to_json(c.field, cf));
            ordered_json h = ordered_json::array();
            for (const auto& ch : c.hyp.h) h.push_back(fq_to_json(c.field, ch));
            j["shape"] = ordered_json{{"hyperelliptic",
                                       ordered_json{{"g", c.hyp.genus}, {"f", f}, {"h", h}}}};
            break;
        }
    }
    return j;
}

inline CurveModel curve_from_json(const json& j) {
    if (!j.is_object() || !j.contains("field") || !j.contains("shape")) {
        throw ParseError("curve description needs \"field\" and \"shape\"");
    }
    const FieldSpec F = field_from_json(j.at("field"));
    const json& shape = j.at("shape");
    if (shape.is_string()) {
        const std::string name = shape.get<std::string>();
        if (name == "p1") return make_projective_line(F);
        throw ParseError("unknown shape \"" + name + "\"");
    }
    if (shape.is_object() && shape.contains("elliptic")) {
        const json& a = shape.at("elliptic");
        if (!a.is_array() || a.size() != 5) {
            throw ParseError("elliptic shape needs [a1, a2, a3, a4, a6]");
        }
        return make_elliptic(F, fq_from_json(F, a[0]), fq_from_json(F, a[1]),
                             fq_from_json(F, a[2]), fq_from_json(F, a[3]), fq_from_json(F, a[4]));
    }
    if (shape.is_object() && shape.contains("hyperelliptic")) {
        const json& hj = shape.at("hyperelliptic");
        if (!hj.is_object() || !hj.contains("g") || !hj.contains("f")) {
            throw ParseError("hyperelliptic shape needs {g, f, h}");
        }
        const int g = hj.at("g").get<int>();
        std::vector<FqElement> f;
        for (const auto& c : hj.at("f")) f.push_back(fq_from_json(F, c));
        std::vector<FqElement> h;
        if (hj.contains("h")) {
            for (const auto& c : hj.at("h")) h.push_back(fq_from_json(F, c));
        }
        return make_hyperelliptic(F, g, std::move(f), std::move(h));
    }
    throw ParseError("shape must be \"p1\", {\"elliptic\": ...} or {\"hyperelliptic\": ...}");
}

inline CurveModel parse_curve_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        throw ParseError(std::string("curve description is not valid json: ") + ex.what());
    }
    return curve_from_json(j);
}

inline CurveModel load_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open curve file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_curve_text(buf.str());
    } catch (const ParseError&) {
        throw;
    } catch (const Error& ex) {
        throw ParseError("curve file " + path + ": " + ex.what());
    }
}

// ---------------------------------------------------------------------------
// Result serialization. Big integers are emitted as decimal strings so the
// json stays lossless; every renderer is deterministic.

inline ordered_json series_to_json(const LaurentSeries& a) {
    ordered_json j;
    j["lead"] = a.lead;
    j["exact"] = a.known_exact;
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : a.coeffs) coeffs.push_back(fq_to_json(a.field, c));
    j["coefficients"] = coeffs;
    return j;
}

inline LaurentSeries series_from_json(const FieldSpec& F, const json& j) {
    const std::int64_t lead = j.at("lead").get<std::int64_t>();
    const bool exact = j.at("exact").get<bool>();
    std::vector<FqElement> coeffs;
    for (const auto& c : j.at("coefficients")) coeffs.push_back(fq_from_json(F, c));
    if (exact) {
        return coeffs.empty() ? ls_zero(F) : ls_exact(F, lead, std::move(coeffs));
    }
    if (coeffs.empty()) return ls_zero_to_precision(F, lead);
    return ls_from_window(F, lead, std::move(coeffs));
}

inline ordered_json valuation_to_json(const Valuation& v) {
    ordered_json j;
    switch (v.kind) {
        case Valuation::Kind::Finite:
            j["kind"] = "finite";
            j["value"] = v.value;
            break;
        case Valuation::Kind::IndeterminateBeyond:
            j["kind"] = "indeterminate_beyond";
            j["value"] = v.value;
            break;
        case Valuation::Kind::ExactZero:
            j["kind"] = "exact_zero";
            break;
    }
    return j;
}

inline ordered_json bigints_to_json(const std::vector<bigint>& v) {
    ordered_json arr = ordered_json::array();
    for (const bigint& x : v) arr.push_back(x.str());
    return arr;
}

inline ordered_json gsequence_to_json(const GSequence& g) {
    ordered_json j;
    j["q"] = g.q;
    j["s"] = g.s.str();
    j["terms"] = bigints_to_json(g.terms);
    return j;
}

inline ordered_json nongaps_to_json(const CurveModel& c, const NonGapSequence& seq,
                                    ConditionClass cls) {
    ordered_json j;
    j["curve"] = describe_curve(c);
    j["genus"] = c.genus;
    j["nongaps"] = seq.terms;
    j["condition_class"] = condition_class_name(cls);
    return j;
}

inline ordered_json power_sum_to_json(const PowerSumResult& r) {
    ordered_json j;
    j["curve"] = r.curve;
    j["i"] = r.i;
    j["d_i"] = r.d_i;
    j["s"] = r.s.str();
    j["observed_valuation"] = r.observed_valuation.str();
    j["predicted_valuation"] = r.predicted_valuation.str();
    j["precision_used"] = r.precision_used;
    j["budget"] = r.budget.str();
    j["series"] = series_to_json(r.series);
    return j;
}

inline ordered_json mzv_to_json(const CurveModel& c, const MZVResult& r) {
    ordered_json j;
    j["curve"] = describe_curve(c);
    j["tuple"] = bigints_to_json(r.tuple);
    j["depth"] = r.depth;
    j["weight"] = r.weight.str();
    j["cutoff"] = r.cutoff;
    j["valuation"] = valuation_to_json(r.valuation);
    j["chain_count"] = r.chain_count;
    j["precision_used"] = r.precision_used;
    j["budget"] = r.budget.str();
    j["series"] = series_to_json(r.series);
    return j;
}

inline ordered_json certificate_to_json(const NonvanishingCertificate& cert) {
    ordered_json j;
    j["curve"] = cert.curve_description;
    j["curve_model"] = curve_to_json(cert.curve);
    j["tuple"] = bigints_to_json(cert.tuple);
    j["cutoff"] = cert.cutoff;
    j["condition_class"] = condition_class_name(cert.condition);
    ordered_json table = ordered_json::array();
    for (const auto& row : cert.table) {
        ordered_json rj;
        rj["i"] = row.i;
        rj["d_i"] = row.d_i;
        rj["slot"] = row.slot;
        rj["s"] = row.s.str();
        rj["predicted"] = row.predicted.str();
        rj["observed"] = row.observed.str();
        table.push_back(rj);
    }
    j["table"] = table;
    ordered_json gaps = ordered_json::array();
    for (const auto& g : cert.gaps) {
        ordered_json gj;
        gj["slot"] = g.slot;
        gj["s"] = g.s.str();
        gj["i"] = g.i;
        gj["gap"] = g.value.str();
        gaps.push_back(gj);
    }
    j["gaps"] = gaps;
    j["dominant_degrees"] = cert.dominant_degrees;
    j["dominant_valuation"] = cert.dominant_valuation.str();
    j["mzv_valuation"] = valuation_to_json(cert.mzv_valuation);
    j["verdict"] = verdict_name(cert.verdict);
    j["detail"] = cert.detail;
    j["precision_used"] = cert.precision_used;
    j["budget"] = cert.budget.str();
    return j;
}

inline ordered_json sheats_to_json(const SheatsReport& r) {
    ordered_json j;
    j["s"] = r.s.str();
    j["q"] = r.q;
    j["i"] = r.i;
    j["strategy"] = r.strategy;
    j["g_terms"] = bigints_to_json(r.g_terms);
    j["ws_g"] = r.ws_g.str();
    j["tuples_checked"] = r.tuples_checked;
    ordered_json viols = ordered_json::array();
    for (const auto& v : r.violations) {
        ordered_json vj;
        vj["parts"] = bigints_to_json(v.parts);
        vj["ws"] = v.ws.str();
        viols.push_back(vj);
    }
    j["violations"] = viols;
    j["min_gap"] = r.min_gap ? ordered_json(r.min_gap->str()) : ordered_json(nullptr);
    j["median_gap"] = r.median_gap ? ordered_json(r.median_gap->str()) : ordered_json(nullptr);
    return j;
}

// ---------------------------------------------------------------------------
// csv renderers: one flat table per command, "#"-prefixed summary lines.

namespace detail {

inline void csv_row(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out += ',';
        out += cells[k];
    }
    out += '\n';
}

} // namespace detail

inline std::string gsequence_to_csv(const GSequence& g) {
    std::string out;
    detail::csv_row(out, {"index", "g"});
    for (std::size_t k = 0; k < g.terms.size(); ++k) {
        detail::csv_row(out, {std::to_string(k), g.terms[k].str()});
    }
    return out;
}

inline std::string nongaps_to_csv(const NonGapSequence& seq, ConditionClass cls) {
    std::string out;
    detail::csv_row(out, {"i", "d_i"});
    for (std::size_t k = 0; k < seq.terms.size(); ++k) {
        detail::csv_row(out, {std::to_string(k), std::to_string(seq.terms[k])});
    }
    out += "# condition_class=" + condition_class_name(cls) + "\n";
    return out;
}

inline std::string power_sum_to_csv(const PowerSumResult& r) {
    std::string out;
    detail::csv_row(out, {"i", "d_i", "s", "observed", "predicted", "precision_used", "budget"});
    detail::csv_row(out, {std::to_string(r.i), std::to_string(r.d_i), r.s.str(),
                          r.observed_valuation.str(), r.predicted_valuation.str(),
                          std::to_string(r.precision_used), r.budget.str()});
    return out;
}

inline std::string mzv_to_csv(const MZVResult& r) {
    std::string tuple;
    for (std::size_t k = 0; k < r.tuple.size(); ++k) {
        if (k) tuple += ' ';
        tuple += r.tuple[k].str();
    }
    std::string out;
    detail::csv_row(out, {"tuple", "depth", "weight", "cutoff", "valuation", "chain_count",
                          "precision_used", "budget"});
    const Valuation& v = r.valuation;
    const std::string val = v.kind == Valuation::Kind::Finite ? std::to_string(v.value)
                            : v.kind == Valuation::Kind::ExactZero
                                ? "exact_zero"
                                : ">=" + std::to_string(v.value);
    detail::csv_row(out, {tuple, std::to_string(r.depth), r.weight.str(),
                          std::to_string(r.cutoff), val, std::to_string(r.chain_count),
                          std::to_string(r.precision_used), r.budget.str()});
    return out;
}

inline std::string certificate_to_csv(const NonvanishingCertificate& cert) {
    std::string out;
    detail::csv_row(out, {"slot", "s", "i", "d_i", "predicted", "observed"});
    for (const auto& row : cert.table) {
        detail::csv_row(out, {std::to_string(row.slot), row.s.str(), std::to_string(row.i),
                              std::to_string(row.d_i), row.predicted.str(), row.observed.str()});
    }
    out += "# verdict=" + verdict_name(cert.verdict) +
           " dominant_valuation=" + cert.dominant_valuation.str() + "\n";
    return out;
}

inline std::string sheats_to_csv(const SheatsReport& r) {
    std::string out;
    detail::csv_row(out, {"s", "q", "i", "strategy", "ws_g", "tuples_checked", "violations",
                          "min_gap", "median_gap"});
    detail::csv_row(out, {r.s.str(), std::to_string(r.q), std::to_string(r.i), r.strategy,
                          r.ws_g.str(), std::to_string(r.tuples_checked),
                          std::to_string(r.violations.size()),
                          r.min_gap ? r.min_gap->str() : "", r.median_gap ? r.median_gap->str() : ""});
    return out;
}

// ---------------------------------------------------------------------------
// human renderers: base-annotated literals where the base-q digit pattern is
// the interesting part.

/// "24_(7) = 18" for readable bases, plain decimal otherwise.
inline std::string annotate(const bigint& n, std::uint64_t q) {
    if (q < 2 || q > 36 || q == 10) return n.str();
    return format_base(n, static_cast<int>(q)) + " = " + n.str();
}

inline std::string gsequence_to_text(const GSequence& g) {
    std::string out = "G-sequence for s = " + annotate(g.s, g.q) + ", q = " + std::to_string(g.q) +
                      ":\n";
    for (std::size_t k = 0; k < g.terms.size(); ++k) {
        out += "  G_" + std::to_string(k) + " = " + annotate(g.terms[k], g.q) + "\n";
    }
    return out;
}

inline std::string nongaps_to_text(const CurveModel& c, const NonGapSequence& seq,
                                   ConditionClass cls) {
    std::string out = describe_curve(c) + "\n  non-gaps:";
    for (const auto d : seq.terms) out += " " + std::to_string(d);
    out += "\n  condition class: " + condition_class_name(cls) + "\n";
    return out;
}

inline std::string power_sum_to_text(const PowerSumResult& r) {
    std::string out = r.curve + "\n";
    out += "  power sum at i = " + std::to_string(r.i) + " (degree " + std::to_string(r.d_i) +
           "), s = " + r.s.str() + "\n";
    out += "  series: " + ls_to_string(r.series) + "\n";
    out += "  observed valuation:  " + r.observed_valuation.str() + "\n";
    out += "  predicted valuation: " + r.predicted_valuation.str() + "\n";
    out += "  window " + std::to_string(r.precision_used) + ", elements " + r.budget.str() + "\n";
    return out;
}

inline std::string valuation_to_text(const Valuation& v) {
    switch (v.kind) {
        case Valuation::Kind::Finite: return std::to_string(v.value);
        case Valuation::Kind::ExactZero: return "+infinity (exact zero)";
        default: return ">= " + std::to_string(v.value) + " (indeterminate)";
    }
}

inline std::string mzv_to_text(const CurveModel& c, const MZVResult& r) {
    std::string tuple;
    for (std::size_t k = 0; k < r.tuple.size(); ++k) {
        if (k) tuple += ", ";
        tuple += r.tuple[k].str();
    }
    std::string out = describe_curve(c) + "\n";
    out += "  zeta(" + tuple + ") truncated at cutoff " + std::to_string(r.cutoff) + " (" +
           std::to_string(r.chain_count) + " chains)\n";
    out += "  series: " + ls_to_string(r.series) + "\n";
    out += "  valuation: " + valuation_to_text(r.valuation) + "\n";
    return out;
}

inline std::string certificate_to_text(const NonvanishingCertificate& cert) {
    std::string tuple;
    for (std::size_t k = 0; k < cert.tuple.size(); ++k) {
        if (k) tuple += ", ";
        tuple += cert.tuple[k].str();
    }
    std::string out = cert.curve_description + "\n";
    out += "  tuple (" + tuple + "), cutoff " + std::to_string(cert.cutoff) +
           ", condition class " + condition_class_name(cert.condition) + "\n";
    out += "  slot    s    i  d_i   predicted    observed\n";
    for (const auto& row : cert.table) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "  %4d %4s %4d %4lld %11s %11s\n", row.slot,
                      row.s.str().c_str(), row.i, static_cast<long long>(row.d_i),
                      row.predicted.str().c_str(), row.observed.str().c_str());
        out += buf;
    }
    out += "  dominant valuation: " + cert.dominant_valuation.str() + "\n";
    out += "  truncated sum valuation: " + valuation_to_text(cert.mzv_valuation) + "\n";
    out += "  verdict: " + verdict_name(cert.verdict);
    if (!cert.detail.empty()) out += " (" + cert.detail + ")";
    out += "\n";
    return out;
}

inline std::string sheats_to_text(const SheatsReport& r) {
    std::string out = "minimality audit for s = " + annotate(r.s, r.q) + ", q = " +
                      std::to_string(r.q) + ", i = " + std::to_string(r.i) + " (" + r.strategy +
                      ")\n";
    out += "  greedy tuple:";
    for (const auto& t : r.g_terms) out += " " + t.str();
    out += "\n  greedy weighted sum: " + r.ws_g.str() + "\n";
    out += "  tuples checked: " + std::to_string(r.tuples_checked) + "\n";
    out += "  violations: " + std::to_string(r.violations.size()) + "\n";
    if (r.min_gap) out += "  smallest margin: " + r.min_gap->str() + "\n";
    if (r.median_gap) out += "  median margin: " + r.median_gap->str() + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// CLI plumbing shared with tests.

inline int verdict_exit_code(Verdict v) { return v == Verdict::Falsified ? 2 : 0; }

constexpr int kExitResourceError = 3;
constexpr int kExitParseError = 64;

/// Comma-separated positive integers, each accepting the "<digits>@<base>"
/// literal form.
inline std::vector<bigint> parse_tuple(const std::string& text) {
    std::vector<bigint> out;
    std::string cell;
    std::istringstream in(text);
    while (std::getline(in, cell, ',')) {
        const auto first = cell.find_first_not_of(" \t");
        if (first == std::string::npos) throw ParseError("empty entry in tuple \"" + text + "\"");
        const auto last = cell.find_last_not_of(" \t");
        out.push_back(parse_int_literal(cell.substr(first, last - first + 1)));
    }
    if (out.empty()) throw ParseError("tuple must contain at least one entry");
    return out;
}

} // namespace ffzeta
