#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "linkpred/rank_correlation.hpp"
#include "linkpred/rng.hpp"

using namespace linkpred;
using Catch::Approx;

TEST_CASE("ranks from scores") {
    CHECK(ranks_from_scores({0.9, 0.5, 0.7}) == std::vector<double>{1.0, 3.0, 2.0});
    CHECK(ranks_from_scores({0.5, 0.5, 0.1}) == std::vector<double>{1.5, 1.5, 3.0});
    CHECK(ranks_from_scores({2.0, 2.0, 2.0, 2.0}) == std::vector<double>{2.5, 2.5, 2.5, 2.5});
    CHECK(ranks_from_scores({1.0, 3.0, 2.0}, /*higher_is_better=*/false) ==
          std::vector<double>{1.0, 3.0, 2.0});
    CHECK_THROWS_AS(ranks_from_scores({1.0}), domain_error);

    SECTION("midranks always sum to P(P+1)/2") {
        Rng rng(5);
        for (int trial = 0; trial < 200; ++trial) {
            std::size_t p = 2 + rng.bounded(20);
            std::vector<double> scores(p);
            for (auto& s : scores) s = double(rng.bounded(6));
            auto ranks = ranks_from_scores(scores);
            double sum = 0.0;
            for (double r : ranks) sum += r;
            CHECK(sum == Approx(double(p) * double(p + 1) / 2.0));
        }
    }
}

TEST_CASE("Spearman coefficient") {
    std::vector<double> identity = {1, 2, 3, 4};
    CHECK(spearman(identity, identity) == Approx(1.0));
    CHECK(spearman(identity, {4, 3, 2, 1}) == Approx(-1.0));
    CHECK(spearman(identity, {2, 1, 4, 3}) == Approx(0.6));

    SECTION("undefined for constant rankings") {
        CHECK_THROWS_AS(spearman({2, 2, 2}, {1, 2, 3}), undefined_value);
        CHECK(!try_spearman({1, 2, 3}, {5, 5, 5}).has_value());
        CHECK(!correlate({1, 1, 1}, {1, 2, 3}, Coefficient::Spearman).has_value());
        CHECK(!correlate({1, 1, 1}, {1, 2, 3}, Coefficient::Kendall).has_value());
    }
    SECTION("symmetry") {
        std::vector<double> a = {1, 3, 2, 5, 4}, b = {2, 1, 4, 3, 5};
        CHECK(spearman(a, b) == Approx(spearman(b, a)));
        CHECK(kendall_tau(a, b) == Approx(kendall_tau(b, a)));
    }
}

TEST_CASE("Kendall tau") {
    std::vector<double> identity = {1, 2, 3};
    CHECK(kendall_tau(identity, identity) == Approx(1.0));
    CHECK(kendall_tau(identity, {3, 2, 1}) == Approx(-1.0));
    CHECK(kendall_tau(identity, {1, 3, 2}) == Approx(1.0 / 3.0));

    SECTION("ties count as neither concordant nor discordant") {
        // pairs: (1,2) tied in a; (1,3) concordant; (2,3) concordant
        CHECK(kendall_tau({1.5, 1.5, 3}, {1, 2, 3}) == Approx(2.0 * 2.0 / 6.0));
    }
    SECTION("matches independent pair counting on random rankings") {
        Rng rng(11);
        for (int trial = 0; trial < 100; ++trial) {
            std::size_t p = 3 + rng.bounded(15);
            std::vector<double> a(p), b(p);
            for (std::size_t i = 0; i < p; ++i) {
                a[i] = double(rng.bounded(8));
                b[i] = double(rng.bounded(8));
            }
            long long nc = 0, nd = 0;
            for (std::size_t u = 0; u < p; ++u)
                for (std::size_t v = 0; v < p; ++v) {
                    if (v <= u) continue;
                    bool tied = a[u] == a[v] || b[u] == b[v];
                    if (tied) continue;
                    bool same = (a[u] > a[v]) == (b[u] > b[v]);
                    (same ? nc : nd) += 1;
                }
            double expected = 2.0 * double(nc - nd) / (double(p) * double(p - 1));
            CHECK(kendall_tau(a, b) == Approx(expected).margin(1e-15));
        }
    }
}

TEST_CASE("both coefficients consume ranks only") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t p = 4 + rng.bounded(12);
        std::vector<double> sa(p), sb(p), ta(p);
        for (std::size_t i = 0; i < p; ++i) {
            sa[i] = rng.uniform();
            sb[i] = rng.uniform();
            ta[i] = std::exp(3.0 * sa[i]) + 7.0;  // strictly increasing transform
        }
        auto ra = ranks_from_scores(sa), rb = ranks_from_scores(sb);
        auto rta = ranks_from_scores(ta);
        CHECK(ra == rta);
        CHECK(spearman(ra, rb) == Approx(spearman(rta, rb)));
        CHECK(kendall_tau(ra, rb) == Approx(kendall_tau(rta, rb)));
    }
}
