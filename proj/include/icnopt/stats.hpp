#ifndef ICNOPT_STATS_HPP
#define ICNOPT_STATS_HPP

#include <string>
#include <vector>

#include "icnopt/matrix.hpp"

namespace icnopt {

struct WilcoxonResult {
    double w_plus = 0.0;
    double w_minus = 0.0;
    double statistic = 0.0; // min(W+, W-)
    double p_value = 1.0;   // two-sided
    std::size_t n = 0;      // pairs left after dropping zero differences
    bool exact = false;     // full sign enumeration (n <= 12)
    bool degenerate = false; // every difference was zero
};

/// Paired two-sided signed-rank test. Zero differences are dropped, tied
/// absolute differences get average ranks; exact p by sign enumeration for
/// n <= 12, normal approximation with tie correction above that.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                    const std::vector<double>& b);

enum class Verdict { Plus, Similar, Minus };
char verdict_symbol(Verdict v);

/// One true-fitness observation, keyed the way runs.csv stores it.
struct RunRecord {
    std::string problem;
    std::size_t dim = 0;
    std::string algorithm;
    std::size_t repeat = 0;
    double true_fitness = 0.0;
};

struct ComparisonCell {
    std::string problem;
    std::size_t dim = 0;
    std::string algorithm;
    std::size_t runs = 0;
    double mean = 0.0;
    double stddev = 0.0; // sample (n-1)
    double p_value = 1.0;
    Verdict verdict = Verdict::Similar; // vs the reference algorithm
    bool is_reference = false;
    bool best_in_row = false;
};

struct SummaryTable {
    std::string reference;
    std::vector<ComparisonCell> cells; // grouped by (problem, dim), reference first
    std::vector<std::string> issues;   // cells skipped or short on data
};

/// Aggregates per-(problem, dim, algorithm) statistics and signed-rank
/// verdicts against the reference algorithm, pairing runs by repeat index.
SummaryTable summarize(const std::vector<RunRecord>& runs,
                       const std::string& reference_algorithm,
                       double alpha = 0.05);

std::string summary_to_csv(const SummaryTable& table);
std::string summary_to_text(const SummaryTable& table);

} // namespace icnopt

#endif
