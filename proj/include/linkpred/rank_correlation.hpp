#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "linkpred/errors.hpp"

namespace linkpred {

// Ranks from scores, rank 1 = best. Tied scores receive the midrank of the
// positions they occupy, so the ranks always sum to P(P+1)/2.
inline std::vector<double> ranks_from_scores(const std::vector<double>& scores,
                                             bool higher_is_better = true) {
    const std::size_t p = scores.size();
    if (p < 2) throw domain_error("need at least two scores to rank");

    std::vector<std::size_t> order(p);
    for (std::size_t i = 0; i < p; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return higher_is_better ? scores[a] > scores[b] : scores[a] < scores[b];
    });

    std::vector<double> ranks(p, 0.0);
    std::size_t i = 0;
    while (i < p) {
        std::size_t j = i;
        while (j < p && scores[order[j]] == scores[order[i]]) ++j;
        double midrank = (double(i + 1) + double(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t) ranks[order[t]] = midrank;
        i = j;
    }
    return ranks;
}

// Spearman coefficient: the Pearson correlation of the two rank vectors.
// Undefined (nullopt) when either vector is constant.
inline std::optional<double> try_spearman(const std::vector<double>& a,
                                          const std::vector<double>& b) {
    if (a.size() != b.size()) throw domain_error("rank vectors differ in length");
    const std::size_t p = a.size();
    if (p < 2) throw domain_error("need at least two ranks");

    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= double(p);
    mean_b /= double(p);

    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        double da = a[i] - mean_a, db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) return std::nullopt;
    return cov / (std::sqrt(var_a) * std::sqrt(var_b));
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    auto r = try_spearman(a, b);
    if (!r) throw undefined_value("Spearman undefined for constant ranking");
    return *r;
}

enum class Coefficient { Spearman, Kendall };

inline const char* coefficient_name(Coefficient c) {
    return c == Coefficient::Spearman ? "spearman" : "kendall";
}

// Kendall's tau in the tau-a form: 2(N_C - N_D)/(P(P-1)), tied pairs counted
// as neither concordant nor discordant. O(P^2) pair counting; P is the number
// of algorithms, so this is never the bottleneck.
inline double kendall_tau(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw domain_error("rank vectors differ in length");
    const std::size_t p = a.size();
    if (p < 2) throw domain_error("need at least two ranks");

    long long concordant = 0, discordant = 0;
    for (std::size_t u = 0; u < p; ++u) {
        for (std::size_t v = u + 1; v < p; ++v) {
            double da = a[u] - a[v], db = b[u] - b[v];
            double prod = da * db;
            if (prod > 0.0)
                ++concordant;
            else if (prod < 0.0)
                ++discordant;
        }
    }
    return 2.0 * double(concordant - discordant) / (double(p) * double(p - 1));
}

// Correlation under either coefficient. A constant ranking on either side
// carries no ordering information, so it is reported as missing rather than
// coerced to a number.
inline std::optional<double> correlate(const std::vector<double>& a,
                                       const std::vector<double>& b, Coefficient c) {
    auto constant = [](const std::vector<double>& v) {
        for (double x : v)
            if (x != v.front()) return false;
        return true;
    };
    if (constant(a) || constant(b)) return std::nullopt;
    if (c == Coefficient::Spearman) return try_spearman(a, b);
    return kendall_tau(a, b);
}

}  // namespace linkpred
