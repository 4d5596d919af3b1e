#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ffzeta/bigint.hpp"
#include "ffzeta/curve.hpp"
#include "ffzeta/errors.hpp"
#include "ffzeta/gsequence.hpp"
#include "ffzeta/laurent.hpp"

namespace ffzeta {

/// Window escalation policy for brute-force power sums. The starting window
/// is derived from (i, s) unless pinned; on an indeterminate valuation the
/// window doubles, up to max_doublings times. The escalation is driven purely
/// by the observed series, never by the predicted valuation.
struct PrecisionPolicy {
    std::int64_t initial_window = 0; // 0 = derive d_i*s + 2(q-1)*d_i*i + 16
    int max_doublings = 6;
    bigint budget_cap = bigint(1) << 20; // max elements enumerated per sum
    int threads = 1;
    std::int64_t window_cap = std::int64_t{1} << 22;
};

/// Brute-force power sum over the q^i monic elements of degree-index i:
/// sum of a^{-s} as a Laurent series in the local parameter at infinity.
struct PowerSumResult {
    std::string curve;
    int i = 0;
    std::int64_t d_i = 0;
    bigint s = 1;
    LaurentSeries series;
    bigint observed_valuation = 0;
    bigint predicted_valuation = 0;
    std::int64_t precision_used = 0; // window of the accepted attempt
    bigint budget = 1;               // elements enumerated
};

struct MZVResult {
    std::vector<bigint> tuple;
    int depth = 0;
    bigint weight = 0;
    int cutoff = 0;
    LaurentSeries series;
    Valuation valuation;
    std::uint64_t chain_count = 0;
    std::int64_t precision_used = 0;
    bigint budget = 0;
};

struct CertificateRow {
    int i = 0;
    std::int64_t d_i = 0;
    int slot = 0; // 0-based position in the tuple
    bigint s;
    bigint predicted;
    bigint observed;
};

struct CertificateGap {
    int slot = 0;
    bigint s;
    int i = 0;     // gap between rows i-1 and i
    bigint value;  // observed(i-1) - observed(i), expected < 0
};

enum class Verdict { Nonzero, Falsified, Experimental };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Nonzero: return "NONZERO";
        case Verdict::Falsified: return "FALSIFIED";
        default: return "EXPERIMENTAL";
    }
}

struct NonvanishingCertificate {
    CurveModel curve;
    std::string curve_description;
    std::vector<bigint> tuple;
    int cutoff = 0;
    ConditionClass condition = ConditionClass::Neither;
    std::vector<CertificateRow> table;
    std::vector<CertificateGap> gaps;
    std::vector<std::int64_t> dominant_degrees; // d_{r-1}, ..., d_0
    bigint dominant_valuation = 0;
    Valuation mzv_valuation;
    Verdict verdict = Verdict::Experimental;
    std::string detail;
    std::int64_t precision_used = 0;
    bigint budget = 0;
};

/// Pure verdict assembly over collected data; separated so the decision
/// logic is testable with synthetic tables.
inline Verdict assemble_verdict(ConditionClass condition, const std::vector<CertificateRow>& table,
                                const std::vector<CertificateGap>& gaps,
                                const bigint& dominant_valuation, const Valuation& mzv_valuation,
                                std::string* detail) {
    const auto fail = [&](const std::string& why) {
        if (detail && detail->empty()) *detail = why;
    };
    bool ok = true;
    if (mzv_valuation.kind != Valuation::Kind::Finite) {
        ok = false;
        fail("truncated sum valuation is not finite");
    } else if (bigint(mzv_valuation.value) != dominant_valuation) {
        ok = false;
        fail("truncated sum valuation " + bigint(mzv_valuation.value).str() +
             " differs from the dominant-term valuation " + dominant_valuation.str());
    }
    for (const auto& g : gaps) {
        if (g.value >= 0) {
            ok = false;
            fail("non-negative valuation gap " + g.value.str() + " at slot " +
                 std::to_string(g.slot) + ", i=" + std::to_string(g.i));
            break;
        }
    }
    if (condition == ConditionClass::Neither) {
        if (detail && detail->empty()) *detail = "non-gap sequence matches neither supported shape";
        return Verdict::Experimental;
    }
    for (const auto& row : table) {
        if (row.observed != row.predicted) {
            ok = false;
            fail("observed valuation " + row.observed.str() + " differs from predicted " +
                 row.predicted.str() + " at i=" + std::to_string(row.i) +
                 ", s=" + row.s.str());
            break;
        }
    }
    return ok ? Verdict::Nonzero : Verdict::Falsified;
}

class ZetaEngine {
public:
    explicit ZetaEngine(CurveModel curve, PrecisionPolicy policy = {})
        : curve_(std::move(curve)), policy_(policy) {}

    const CurveModel& curve() const { return curve_; }
    const PrecisionPolicy& policy() const { return policy_; }

    /// Valuation predicted by the carry-free construction:
    /// d_i * s + sum_j (d_i - d_j) G_j.
    bigint predicted_valuation(int i, const bigint& s) {
        if (i < 0) throw Error("degree index must be >= 0");
        if (s < 1) throw Error("exponent must be >= 1");
        const GSequence g = g_sequence(s, curve_.field.q, i);
        std::vector<std::int64_t> nongaps(static_cast<std::size_t>(i) + 1);
        for (int j = 0; j <= i; ++j) {
            nongaps[static_cast<std::size_t>(j)] = nth_nongap(curve_, j);
        }
        return bigint(nth_nongap(curve_, i)) * s + weighted_sum(nongaps, g.terms);
    }

    /// predicted(i-1) - predicted(i), strictly negative for every supported
    /// model.
    bigint valuation_gap(int i, const bigint& s) {
        if (i < 1) throw Error("valuation_gap requires i >= 1");
        return predicted_valuation(i - 1, s) - predicted_valuation(i, s);
    }

    /// Same difference in closed form: (d_{i-1} - d_i) * (s + G_0 + ... +
    /// G_{i-1}).
    bigint valuation_gap_closed_form(int i, const bigint& s) {
        if (i < 1) throw Error("valuation_gap requires i >= 1");
        const GSequence g = g_sequence(s, curve_.field.q, i);
        bigint total = s;
        for (const bigint& t : g.terms) total += t;
        return (bigint(nth_nongap(curve_, i - 1)) - nth_nongap(curve_, i)) * total;
    }

    PowerSumResult power_sum(int i, const bigint& s) { return power_sum_with_floor(i, s, 0); }

    MZVResult mzv(const std::vector<bigint>& tuple, int cutoff) {
        validate_tuple(tuple, cutoff);
        const int r = static_cast<int>(tuple.size());
        MZVResult res;
        res.tuple = tuple;
        res.depth = r;
        for (const bigint& s : tuple) res.weight += s;
        res.cutoff = cutoff;

        std::int64_t floor_window = 0;
        for (int attempt = 0;; ++attempt) {
            LaurentSeries acc = ls_zero(curve_.field);
            res.chain_count = 0;
            std::int64_t max_precision = 0;
            // Descending index chains cutoff >= i_1 > ... > i_r >= 0.
            std::vector<int> chain(static_cast<std::size_t>(r));
            const auto recurse = [&](auto&& self, int pos, int high) -> void {
                if (pos == r) {
                    ++res.chain_count;
                    LaurentSeries prod =
                        power_sum_with_floor(chain[0], tuple[0], floor_window).series;
                    for (int j = 1; j < r; ++j) {
                        prod = ls_mul(prod, power_sum_with_floor(chain[static_cast<std::size_t>(j)],
                                                                 tuple[static_cast<std::size_t>(j)],
                                                                 floor_window)
                                                .series);
                    }
                    acc = ls_add(acc, prod);
                    return;
                }
                for (int v = high; v >= r - 1 - pos; --v) {
                    chain[static_cast<std::size_t>(pos)] = v;
                    self(self, pos + 1, v - 1);
                }
            };
            recurse(recurse, 0, cutoff);
            res.series = acc;
            res.valuation = ls_valuation(acc);

            std::set<std::pair<int, bigint>> involved;
            for (int j = 0; j < r; ++j) {
                for (int iv = r - 1 - j; iv <= cutoff - j; ++iv) {
                    involved.insert({iv, tuple[static_cast<std::size_t>(j)]});
                }
            }
            res.budget = 0;
            for (const auto& key : involved) {
                res.budget += monic_count(curve_, key.first);
                const auto it = memo_.find(key);
                if (it != memo_.end()) {
                    max_precision = std::max(max_precision, it->second.precision_used);
                }
            }
            res.precision_used = max_precision;
            if (res.valuation.kind != Valuation::Kind::IndeterminateBeyond) return res;
            if (attempt >= policy_.max_doublings) {
                throw PrecisionEscalationError(
                    "truncated sum valuation still indeterminate beyond t^" +
                    std::to_string(res.valuation.value) + " after " +
                    std::to_string(attempt) + " joint escalations");
            }
            floor_window = std::max<std::int64_t>(2 * max_precision, 32);
        }
    }

    NonvanishingCertificate certify(const std::vector<bigint>& tuple, int cutoff) {
        validate_tuple(tuple, cutoff);
        const int r = static_cast<int>(tuple.size());
        NonvanishingCertificate cert;
        cert.curve = curve_;
        cert.curve_description = describe_curve(curve_);
        cert.tuple = tuple;
        cert.cutoff = cutoff;
        cert.condition =
            condition_class(nongap_sequence(curve_, std::max(2 * curve_.genus + 2, cutoff + 1)));

        for (int j = 0; j < r; ++j) {
            const bigint& s = tuple[static_cast<std::size_t>(j)];
            for (int i = 0; i <= cutoff; ++i) {
                const PowerSumResult ps = power_sum(i, s);
                CertificateRow row;
                row.i = i;
                row.d_i = ps.d_i;
                row.slot = j;
                row.s = s;
                row.predicted = ps.predicted_valuation;
                row.observed = ps.observed_valuation;
                cert.table.push_back(row);
                if (i >= 1) {
                    const auto& prev = cert.table[cert.table.size() - 2];
                    CertificateGap gap;
                    gap.slot = j;
                    gap.s = s;
                    gap.i = i;
                    gap.value = prev.observed - row.observed;
                    cert.gaps.push_back(gap);
                }
                cert.precision_used = std::max(cert.precision_used, ps.precision_used);
            }
        }
        // Dominant chain: the r lowest indices, largest index paired with
        // the first tuple slot.
        cert.dominant_valuation = 0;
        for (int j = 0; j < r; ++j) {
            const int i = r - 1 - j;
            cert.dominant_degrees.push_back(nth_nongap(curve_, i));
            cert.dominant_valuation +=
                power_sum(i, tuple[static_cast<std::size_t>(j)]).observed_valuation;
        }
        const MZVResult z = mzv(tuple, cutoff);
        cert.mzv_valuation = z.valuation;
        cert.budget = z.budget;
        cert.precision_used = std::max(cert.precision_used, z.precision_used);
        cert.verdict = assemble_verdict(cert.condition, cert.table, cert.gaps,
                                        cert.dominant_valuation, cert.mzv_valuation, &cert.detail);
        return cert;
    }

private:
    void validate_tuple(const std::vector<bigint>& tuple, int cutoff) const {
        if (tuple.empty()) throw Error("tuple must be non-empty");
        for (const bigint& s : tuple) {
            if (s < 1) throw Error("tuple entries must be >= 1");
        }
        const int r = static_cast<int>(tuple.size());
        if (cutoff < r - 1) {
            throw CutoffTooSmallError("cutoff " + std::to_string(cutoff) +
                                      " admits no degree chain of length " + std::to_string(r));
        }
    }

    PowerSumResult power_sum_with_floor(int i, const bigint& s, std::int64_t floor_window) {
        if (i < 0) throw Error("degree index must be >= 0");
        if (s < 1) throw Error("exponent must be >= 1");
        const auto key = std::make_pair(i, s);
        const auto it = memo_.find(key);
        if (it != memo_.end() &&
            (i == 0 || it->second.precision_used >= floor_window)) {
            return it->second;
        }
        PowerSumResult res = compute_power_sum(i, s, floor_window);
        memo_[key] = res;
        return res;
    }

    PowerSumResult compute_power_sum(int i, const bigint& s, std::int64_t floor_window) {
        const bigint budget = monic_count(curve_, i);
        if (budget > policy_.budget_cap) {
            throw BudgetExceededError("power sum over " + budget.str() +
                                      " elements exceeds the budget cap " +
                                      policy_.budget_cap.str());
        }
        PowerSumResult res;
        res.curve = describe_curve(curve_);
        res.i = i;
        res.d_i = nth_nongap(curve_, i);
        res.s = s;
        res.budget = budget;
        res.predicted_valuation = predicted_valuation(i, s);
        if (i == 0) {
            res.series = ls_one(curve_.field);
            res.observed_valuation = 0;
            res.precision_used = 0;
            return res;
        }
        bigint w0 = policy_.initial_window > 0
                        ? bigint(policy_.initial_window)
                        : bigint(res.d_i) * s + 2 * (bigint(curve_.field.q) - 1) * res.d_i * i + 16;
        w0 = std::max(w0, bigint(floor_window));
        if (w0 > policy_.window_cap) {
            throw BudgetExceededError("initial window " + w0.str() + " exceeds the window cap");
        }
        std::int64_t window = static_cast<std::int64_t>(w0);
        for (int attempt = 0;; ++attempt) {
            const LaurentSeries sum = sum_at_window(i, s, window);
            const Valuation v = ls_valuation(sum);
            if (v.kind == Valuation::Kind::Finite) {
                res.series = sum;
                res.observed_valuation = v.value;
                res.precision_used = window;
                return res;
            }
            if (attempt >= policy_.max_doublings) {
                throw PrecisionEscalationError(
                    "power sum valuation indeterminate beyond t^" + std::to_string(v.value) +
                    " after " + std::to_string(attempt) + " doublings (window " +
                    std::to_string(window) + ")");
            }
            if (window > policy_.window_cap / 2) {
                throw BudgetExceededError("escalated window exceeds the window cap");
            }
            window *= 2;
        }
    }

    LaurentSeries sum_at_window(int i, const bigint& s, std::int64_t window) {
        const bigint order_b = bigint(nth_nongap(curve_, i)) * s;
        if (order_b > (1 << 22)) {
            throw BudgetExceededError("pole order " + order_b.str() + " exceeds the basis cap");
        }
        const std::int64_t order = static_cast<std::int64_t>(order_b);
        int max_index = 0;
        while (nth_nongap(curve_, max_index) < order) ++max_index;
        ensure_context(window, max_index);

        const std::uint64_t total = static_cast<std::uint64_t>(monic_count(curve_, i));
        const int threads = std::max(1, policy_.threads);
        const auto run_range = [&](std::uint64_t lo, std::uint64_t hi, LaurentSeries& out) {
            LaurentSeries acc = ls_zero(curve_.field);
            for (std::uint64_t k = lo; k < hi; ++k) {
                const RingElement elem = monic_element(curve_, i, k);
                const RingElement power = ring_pow(curve_, elem, s);
                const LaurentSeries expanded = ctx_->expand(power, window);
                acc = ls_add(acc, ls_inv(expanded, window));
            }
            out = std::move(acc);
        };
        if (threads == 1 || total < 64) {
            LaurentSeries acc = ls_zero(curve_.field);
            run_range(0, total, acc);
            return acc;
        }
        const std::uint64_t chunk = (total + threads - 1) / static_cast<std::uint64_t>(threads);
        std::vector<LaurentSeries> partial(static_cast<std::size_t>(threads),
                                           ls_zero(curve_.field));
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            const std::uint64_t lo = std::min(total, chunk * static_cast<std::uint64_t>(t));
            const std::uint64_t hi = std::min(total, lo + chunk);
            pool.emplace_back(run_range, lo, hi, std::ref(partial[static_cast<std::size_t>(t)]));
        }
        for (auto& th : pool) th.join();
        LaurentSeries acc = ls_zero(curve_.field);
        for (const auto& part : partial) acc = ls_add(acc, part);
        return acc;
    }

    void ensure_context(std::int64_t window, int max_index) {
        if (ctx_ && ctx_->window() >= window && ctx_->max_index() >= max_index) return;
        const std::int64_t w = ctx_ ? std::max(window, ctx_->window()) : window;
        const int mi = ctx_ ? std::max(max_index, ctx_->max_index()) : max_index;
        ctx_.emplace(curve_, w, mi);
    }

    CurveModel curve_;
    PrecisionPolicy policy_;
    std::map<std::pair<int, bigint>, PowerSumResult> memo_;
    std::optional<CurveExpansion> ctx_;
};

inline PowerSumResult power_sum(const CurveModel& curve, int i, const bigint& s,
                                const PrecisionPolicy& policy = {}) {
    ZetaEngine engine(curve, policy);
    return engine.power_sum(i, s);
}

inline bigint predicted_valuation(const CurveModel& curve, int i, const bigint& s) {
    ZetaEngine engine(curve);
    return engine.predicted_valuation(i, s);
}

inline bigint valuation_gap(const CurveModel& curve, int i, const bigint& s) {
    ZetaEngine engine(curve);
    return engine.valuation_gap(i, s);
}

inline MZVResult mzv(const CurveModel& curve, const std::vector<bigint>& tuple, int cutoff,
                     const PrecisionPolicy& policy = {}) {
    ZetaEngine engine(curve, policy);
    return engine.mzv(tuple, cutoff);
}

inline NonvanishingCertificate nonvanishing_certificate(const CurveModel& curve,
                                                        const std::vector<bigint>& tuple,
                                                        int cutoff,
                                                        const PrecisionPolicy& policy = {}) {
    ZetaEngine engine(curve, policy);
    return engine.certify(tuple, cutoff);
}

} // namespace ffzeta
