#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "icnopt/stats.hpp"

using namespace icnopt;

namespace {

// independent oracle: exact two-sided p by enumerating every sign vector,
// written as a recursion over indices rather than bit masks
void enumerate_w(const std::vector<double>& ranks, std::size_t i, double w,
                 std::vector<double>& acc) {
    if (i == ranks.size()) {
        acc.push_back(w);
        return;
    }
    enumerate_w(ranks, i + 1, w, acc);
    enumerate_w(ranks, i + 1, w + ranks[i], acc);
}

double oracle_exact_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) diffs.push_back(a[i] - b[i]);
    const std::size_t n = diffs.size();

    // average ranks of |diffs|
    std::vector<double> abs_d(n);
    for (std::size_t i = 0; i < n; ++i) abs_d[i] = std::abs(diffs[i]);
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n; ++i) {
        double below = 0.0, equal = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (abs_d[j] < abs_d[i]) below += 1.0;
            if (abs_d[j] == abs_d[i]) equal += 1.0;
        }
        ranks[i] = below + (equal + 1.0) / 2.0;
    }

    double w_plus = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += ranks[i];
        if (diffs[i] > 0.0) w_plus += ranks[i];
    }
    const double lo = std::min(w_plus, total - w_plus);
    const double hi = std::max(w_plus, total - w_plus);

    std::vector<double> all_w;
    enumerate_w(ranks, 0, 0.0, all_w);
    double count = 0.0;
    for (double w : all_w)
        if (w <= lo + 1e-9 || w >= hi - 1e-9) count += 1.0;
    return std::min(1.0, count / static_cast<double>(all_w.size()));
}

} // namespace

TEST_CASE("wilcoxon: differences (1,2,3) give W+ = 6 and exact p = 0.25") {
    const std::vector<double> a = {1.0, 2.0, 3.0, 5.0, 5.0};
    const std::vector<double> b = {0.0, 0.0, 0.0, 5.0, 5.0}; // two zero diffs drop
    const auto res3 = wilcoxon_signed_rank(a, b);
    CHECK(res3.n == 3);
    CHECK(res3.exact);
    CHECK(res3.w_plus == doctest::Approx(6.0));
    CHECK(res3.p_value == 0.25);
    CHECK(res3.p_value == doctest::Approx(oracle_exact_p({1.0, 2.0, 3.0}, {0.0, 0.0, 0.0})));

    const std::vector<double> a5 = {1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> b5 = {0.0, 0.0, 0.0, 0.0, 0.0};
    const auto res = wilcoxon_signed_rank(a5, b5);
    CHECK(res.exact);
    CHECK(res.w_plus == doctest::Approx(15.0));
    CHECK(res.p_value == doctest::Approx(oracle_exact_p(a5, b5)));
    CHECK(res.p_value == doctest::Approx(2.0 / 32.0));
}

TEST_CASE("wilcoxon: identical vectors are degenerate") {
    const std::vector<double> a = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
    const auto res = wilcoxon_signed_rank(a, a);
    CHECK(res.degenerate);
    CHECK(res.p_value == 1.0);
}

TEST_CASE("wilcoxon: exact path matches the enumeration oracle on random pairs") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_int_distribution<int> size(1, 12);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = size(rng);
        std::vector<double> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = unit(rng);
            b[i] = unit(rng);
        }
        // occasionally force ties in |diff|
        if (trial % 3 == 0 && n >= 7) {
            b[1] = a[1] - (a[0] - b[0]);
            b[2] = a[2] + (a[0] - b[0]);
        }
        const auto res = wilcoxon_signed_rank(a, b);
        REQUIRE(res.exact);
        CHECK(res.p_value == doctest::Approx(oracle_exact_p(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("wilcoxon: symmetry in the argument order") {
    const std::vector<double> a = {0.3, 1.4, -0.2, 2.2, 0.9, -1.3, 0.4};
    const std::vector<double> b = {0.1, 1.0, 0.2, 2.9, 0.2, -1.9, 0.0};
    const auto ab = wilcoxon_signed_rank(a, b);
    const auto ba = wilcoxon_signed_rank(b, a);
    CHECK(ab.w_plus == doctest::Approx(ba.w_minus));
    CHECK(ab.w_minus == doctest::Approx(ba.w_plus));
    CHECK(ab.p_value == doctest::Approx(ba.p_value));
}

TEST_CASE("wilcoxon: p invariant under positive scaling of differences") {
    const std::vector<double> a = {0.3, 1.4, -0.2, 2.2, 0.9, -1.3, 0.4, 0.8};
    std::vector<double> zeros(a.size(), 0.0);
    std::vector<double> scaled(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) scaled[i] = 7.5 * a[i];
    CHECK(wilcoxon_signed_rank(a, zeros).p_value ==
          doctest::Approx(wilcoxon_signed_rank(scaled, zeros).p_value));
}

TEST_CASE("wilcoxon: n = 20 normal approximation near the exact answer") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> noise(0.15, 1.0);
    std::vector<double> a(20), b(20, 0.0);
    for (auto& v : a) v = noise(rng);

    const auto res = wilcoxon_signed_rank(a, b);
    CHECK_FALSE(res.exact);
    const double exact = oracle_exact_p(a, b); // 2^20 enumeration
    MESSAGE("approx p: ", res.p_value, ", exact p: ", exact);
    CHECK(std::abs(res.p_value - exact) < 0.02);
}

TEST_CASE("summarize: simple aggregation") {
    std::vector<RunRecord> runs;
    for (std::size_t rep = 0; rep < 3; ++rep)
        runs.push_back({"Ellipsoid", 10, "icn", rep, 1.0});
    const auto table = summarize(runs, "icn");
    REQUIRE(table.cells.size() == 1);
    CHECK(table.cells[0].mean == doctest::Approx(1.0));
    CHECK(table.cells[0].stddev == doctest::Approx(0.0));
    CHECK(table.cells[0].is_reference);
    CHECK(table.cells[0].best_in_row);
}

TEST_CASE("summarize: identical algorithms are judged similar") {
    std::vector<RunRecord> runs;
    for (std::size_t rep = 0; rep < 8; ++rep) {
        const double v = 0.5 + 0.1 * static_cast<double>(rep);
        runs.push_back({"Ackley", 10, "icn", rep, v});
        runs.push_back({"Ackley", 10, "rbfn", rep, v});
    }
    const auto table = summarize(runs, "icn");
    REQUIRE(table.cells.size() == 2);
    for (const auto& cell : table.cells)
        if (!cell.is_reference) CHECK(cell.verdict == Verdict::Similar);
}

TEST_CASE("summarize: reference strictly better on six pairs gives a plus") {
    // p = 2 / 2^6 = 0.03125 < 0.05 at n = 6, verified against the oracle
    std::vector<RunRecord> runs;
    for (std::size_t rep = 0; rep < 6; ++rep) {
        runs.push_back({"Rastrigin", 10, "icn", rep, 0.1 * (1.0 + rep)});
        runs.push_back({"Rastrigin", 10, "rbfn", rep, 10.0 + rep});
    }
    std::vector<double> icn_v, rbfn_v;
    for (const auto& r : runs)
        (r.algorithm == "icn" ? icn_v : rbfn_v).push_back(r.true_fitness);
    CHECK(oracle_exact_p(rbfn_v, icn_v) == doctest::Approx(2.0 / 64.0));

    const auto table = summarize(runs, "icn");
    for (const auto& cell : table.cells) {
        if (cell.algorithm == "rbfn") {
            CHECK(cell.p_value == doctest::Approx(2.0 / 64.0));
            CHECK(cell.verdict == Verdict::Plus);
        }
        if (cell.algorithm == "icn") CHECK(cell.best_in_row);
    }
}

TEST_CASE("summarize: missing cells are reported, not fabricated") {
    std::vector<RunRecord> runs;
    runs.push_back({"Griewank", 10, "icn", 0, 1.0});
    runs.push_back({"Griewank", 10, "icn", 1, 1.1});
    runs.push_back({"Griewank", 10, "rbfn", 0, 2.0}); // only one run
    const auto table = summarize(runs, "icn");
    REQUIRE(table.cells.size() == 1);
    CHECK(table.cells[0].algorithm == "icn");
    REQUIRE(table.issues.size() == 1);
    CHECK(table.issues[0].find("rbfn") != std::string::npos);
}

TEST_CASE("summary renders to CSV and text") {
    std::vector<RunRecord> runs;
    for (std::size_t rep = 0; rep < 5; ++rep) {
        runs.push_back({"Ellipsoid", 10, "icn", rep, 0.01 * (1.0 + rep)});
        runs.push_back({"Ellipsoid", 10, "rbfn", rep, 0.5 + 0.1 * rep});
    }
    const auto table = summarize(runs, "icn");
    const auto csv = summary_to_csv(table);
    CHECK(csv.find("problem,dim,algorithm") != std::string::npos);
    CHECK(csv.find("Ellipsoid,10,icn") != std::string::npos);
    const auto text = summary_to_text(table);
    CHECK(text.find("reference algorithm: icn") != std::string::npos);
}
