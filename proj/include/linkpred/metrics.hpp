#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "linkpred/errors.hpp"
#include "linkpred/ranking.hpp"
#include "linkpred/rng.hpp"

namespace linkpred {

// Confusion matrix at threshold k: the top-k ranked candidates are the
// predicted links. Everything follows from tp and the set sizes:
//   fp = k - tp,  fn = n_pos - tp,  tn = n_neg - k + tp
struct ConfusionCounts {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    std::size_t k = 0;
    std::size_t n_pos = 0;   // |E^P|
    std::size_t n_neg = 0;   // |U - E|
    std::size_t n_cand = 0;  // |U - E^T|
};

inline ConfusionCounts confusion_at_k(const RankedCandidates& ranked, std::size_t k) {
    if (k < 1 || k > ranked.size()) throw domain_error("threshold k out of range");
    ConfusionCounts c;
    c.k = k;
    c.n_pos = ranked.positive_count();
    c.n_neg = ranked.negative_count();
    c.n_cand = ranked.size();
    for (std::size_t i = 0; i < k; ++i) c.tp += ranked.entries[i].is_positive;
    c.fp = k - c.tp;
    c.fn = c.n_pos - c.tp;
    c.tn = c.n_neg - c.fp;
    return c;
}

enum class MetricKind {
    Precision,
    Recall,
    Accuracy,
    Specificity,
    F1,
    Youden,
    MCC,
    AUC,
    AUPR,
    AUCPrecision,
    NDCG,
    AUCmROC,
};

inline bool is_threshold_dependent(MetricKind m) {
    switch (m) {
        case MetricKind::Precision:
        case MetricKind::Recall:
        case MetricKind::Accuracy:
        case MetricKind::Specificity:
        case MetricKind::F1:
        case MetricKind::Youden:
        case MetricKind::MCC:
            return true;
        default:
            return false;
    }
}

inline const char* metric_name(MetricKind m) {
    switch (m) {
        case MetricKind::Precision: return "Precision";
        case MetricKind::Recall: return "Recall";
        case MetricKind::Accuracy: return "Accuracy";
        case MetricKind::Specificity: return "Specificity";
        case MetricKind::F1: return "F1";
        case MetricKind::Youden: return "Youden";
        case MetricKind::MCC: return "MCC";
        case MetricKind::AUC: return "AUC";
        case MetricKind::AUPR: return "AUPR";
        case MetricKind::AUCPrecision: return "AUC-Precision";
        case MetricKind::NDCG: return "NDCG";
        case MetricKind::AUCmROC: return "AUC-mROC";
    }
    return "?";
}

inline MetricKind parse_metric(const std::string& name) {
    for (int i = 0; i <= int(MetricKind::AUCmROC); ++i)
        if (name == metric_name(MetricKind(i))) return MetricKind(i);
    throw domain_error("unknown metric: " + name);
}

// Threshold-dependent metric of a confusion matrix. Degenerate denominators:
// F1 is 0 when Precision+Recall is 0, MCC is 0 when any factor of its
// denominator is 0.
inline double threshold_metric(const ConfusionCounts& c, MetricKind metric) {
    const double tp = double(c.tp), fp = double(c.fp), tn = double(c.tn), fn = double(c.fn);
    switch (metric) {
        case MetricKind::Precision:
            return tp / double(c.k);
        case MetricKind::Recall:
            if (c.n_pos == 0) throw undefined_value("Recall with no positives");
            return tp / double(c.n_pos);
        case MetricKind::Accuracy:
            return (tp + tn) / double(c.n_cand);
        case MetricKind::Specificity:
            if (c.n_neg == 0) throw undefined_value("Specificity with no negatives");
            return tn / double(c.n_neg);
        case MetricKind::F1: {
            double p = threshold_metric(c, MetricKind::Precision);
            double r = threshold_metric(c, MetricKind::Recall);
            return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
        }
        case MetricKind::Youden:
            return threshold_metric(c, MetricKind::Recall) +
                   threshold_metric(c, MetricKind::Specificity) - 1.0;
        case MetricKind::MCC: {
            double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
            if (denom == 0.0) return 0.0;
            return (tp * tn - fp * fn) / std::sqrt(denom);
        }
        default:
            throw domain_error("not a threshold-dependent metric");
    }
}

// Exact AUC: probability that a random positive outranks a random negative,
// with half credit for ties. Computed from midranks on the scores, so the
// value does not depend on the tie-break shuffle.
inline double auc_exact(const RankedCandidates& ranked) {
    std::size_t n_pos = ranked.positive_count(), n_neg = ranked.negative_count();
    if (n_pos == 0 || n_neg == 0) throw undefined_value("AUC needs positives and negatives");

    // ascending by score; entries are descending
    const auto& entries = ranked.entries;
    const std::size_t n = entries.size();
    double rank_sum = 0.0;  // sum of positive midranks
    std::size_t i = n;
    std::size_t ascending_pos = 1;
    while (i > 0) {
        std::size_t j = i;  // [j, i) is a tie group in ascending order
        while (j > 0 && entries[j - 1].score == entries[i - 1].score) --j;
        std::size_t group = i - j;
        double midrank = double(ascending_pos) + double(group - 1) / 2.0;
        for (std::size_t t = j; t < i; ++t)
            if (entries[t].is_positive) rank_sum += midrank;
        ascending_pos += group;
        i = j;
    }
    double u = rank_sum - double(n_pos) * double(n_pos + 1) / 2.0;
    return u / (double(n_pos) * double(n_neg));
}

// Sampled AUC: (n1 + 0.5*n2)/n over n random positive-negative comparisons.
inline double auc_sampled(const RankedCandidates& ranked, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw domain_error("sample count must be >= 1");
    std::size_t n_pos = ranked.positive_count(), n_neg = ranked.negative_count();
    if (n_pos == 0 || n_neg == 0) throw undefined_value("AUC needs positives and negatives");

    std::vector<double> pos, neg;
    pos.reserve(n_pos);
    neg.reserve(n_neg);
    for (const auto& e : ranked.entries) (e.is_positive ? pos : neg).push_back(e.score);

    Rng rng(seed);
    std::size_t n1 = 0, n2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double sp = pos[rng.bounded(pos.size())];
        double sn = neg[rng.bounded(neg.size())];
        if (sp > sn)
            ++n1;
        else if (sp == sn)
            ++n2;
    }
    return (double(n1) + 0.5 * double(n2)) / double(n);
}

// AUPR from the positive ranks r_1 < ... < r_np among the n candidates:
//   (1/(2 np)) * (sum_i i/r_i + sum_i i/(r_{i+1}-1)),  r_{np+1} := n+1
inline double aupr(const RankedCandidates& ranked) {
    std::size_t n_pos = ranked.positive_count();
    if (n_pos == 0) throw undefined_value("AUPR needs at least one positive");
    auto r = ranked.positive_ranks();
    r.push_back(ranked.size() + 1);
    double sum = 0.0;
    for (std::size_t i = 1; i <= n_pos; ++i) {
        sum += double(i) / double(r[i - 1]);
        sum += double(i) / double(r[i] - 1);
    }
    return sum / (2.0 * double(n_pos));
}

// Area under the threshold-precision curve: Precision(k) against k/n with the
// x axis normalized to [0,1]; the curve is the step function that holds
// Precision(k) on ((k-1)/n, k/n], so the area is the mean precision over all
// integer thresholds.
inline double auc_precision(const RankedCandidates& ranked) {
    if (ranked.positive_count() == 0)
        throw undefined_value("AUC-Precision needs at least one positive");
    const std::size_t n = ranked.size();
    double area = 0.0;
    std::size_t tp = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        tp += ranked.entries[k - 1].is_positive;
        area += double(tp) / double(k);
    }
    return area / double(n);
}

// NDCG with binary gains: positives contribute 1/log2(1+rank), normalized by
// the ideal ordering where the positives fill the top ranks.
inline double ndcg(const RankedCandidates& ranked) {
    std::size_t n_pos = ranked.positive_count();
    if (n_pos == 0) throw undefined_value("NDCG needs at least one positive");
    double dcg = 0.0;
    for (std::size_t r : ranked.positive_ranks()) dcg += 1.0 / std::log2(1.0 + double(r));
    double ideal = 0.0;
    for (std::size_t l = 1; l <= n_pos; ++l) ideal += 1.0 / std::log2(1.0 + double(l));
    return dcg / ideal;
}

// Magnified ROC: both ROC axes on logarithmic scale with the correction that
// keeps a random classifier on the diagonal.
//   mFPR = log_J(1+FP),  J = 1+|U-E|
//   mTPR = mFPR + (log_Z(1+TP) - H)/(1-H) * (1-mFPR),  Z = 1+|E^P|
//   H    = log_Z(1 + FP*(Z-1)/(J-1))
// The H -> 1 endpoint is a removable singularity; the limiting value is
// mTPR = mFPR.
inline double auc_mroc(const RankedCandidates& ranked) {
    const std::size_t n_pos = ranked.positive_count(), n_neg = ranked.negative_count();
    if (n_pos == 0 || n_neg == 0) throw undefined_value("AUC-mROC needs positives and negatives");

    const double log_j = std::log1p(double(n_neg));   // log(J)
    const double log_z = std::log1p(double(n_pos));   // log(Z)
    const double ratio = double(n_pos) / double(n_neg);  // (Z-1)/(J-1)

    auto transform = [&](std::size_t fp, std::size_t tp) {
        double mfpr = std::log1p(double(fp)) / log_j;
        double mtpr;
        if (fp == 0) {
            mtpr = std::log1p(double(tp)) / log_z;
        } else {
            double h = std::log1p(double(fp) * ratio) / log_z;
            if (std::abs(1.0 - h) < 1e-12)
                mtpr = mfpr;
            else
                mtpr = mfpr + (std::log1p(double(tp)) / log_z - h) / (1.0 - h) * (1.0 - mfpr);
        }
        return std::pair<double, double>(mfpr, mtpr);
    };

    double area = 0.0;
    std::size_t tp = 0, fp = 0;
    auto prev = transform(0, 0);
    for (std::size_t k = 1; k <= ranked.size(); ++k) {
        if (ranked.entries[k - 1].is_positive)
            ++tp;
        else
            ++fp;
        auto cur = transform(fp, tp);
        area += (cur.first - prev.first) * (cur.second + prev.second) / 2.0;
        prev = cur;
    }
    return area;
}

// A cut point for the threshold-dependent metrics, resolved per network.
struct ThresholdRule {
    enum class Type { RhoFraction, GammaMultiple, Absolute };
    Type type = Type::RhoFraction;
    double value = 0.1;

    // round-half-up, clamped to [0, n_cand]; 0 means "no valid threshold"
    std::size_t resolve(std::size_t n_cand, std::size_t n_pos) const {
        double raw = 0.0;
        switch (type) {
            case Type::RhoFraction: raw = value * double(n_cand); break;
            case Type::GammaMultiple: raw = value * double(n_pos); break;
            case Type::Absolute: raw = value; break;
        }
        double k = std::floor(raw + 0.5);
        if (k < 1.0) return 0;
        if (k > double(n_cand)) return n_cand;
        return std::size_t(k);
    }

    std::string spec_string() const {
        char buf[48];
        const char* tag = type == Type::RhoFraction ? "rho"
                          : type == Type::GammaMultiple ? "gamma"
                                                        : "k";
        std::snprintf(buf, sizeof buf, "%s=%.12g", tag, value);
        return buf;
    }
};

// A metric together with its threshold rule (ignored for threshold-free
// metrics).
struct MetricSpec {
    MetricKind kind = MetricKind::AUC;
    ThresholdRule threshold;

    std::string column_name() const {
        std::string name = metric_name(kind);
        if (is_threshold_dependent(kind)) name += "@" + threshold.spec_string();
        return name;
    }
};

// Evaluate one metric on a ranked candidate list. Throws undefined_value when
// the metric has no defined value (including an unresolvable threshold).
inline double evaluate_metric(const RankedCandidates& ranked, const MetricSpec& spec) {
    if (is_threshold_dependent(spec.kind)) {
        std::size_t k = spec.threshold.resolve(ranked.size(), ranked.positive_count());
        if (k == 0) throw undefined_value("threshold resolves below 1");
        return threshold_metric(confusion_at_k(ranked, k), spec.kind);
    }
    switch (spec.kind) {
        case MetricKind::AUC: return auc_exact(ranked);
        case MetricKind::AUPR: return aupr(ranked);
        case MetricKind::AUCPrecision: return auc_precision(ranked);
        case MetricKind::NDCG: return ndcg(ranked);
        case MetricKind::AUCmROC: return auc_mroc(ranked);
        default: throw domain_error("unhandled metric");
    }
}

}  // namespace linkpred
