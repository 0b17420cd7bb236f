#include "icnopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace icnopt {

namespace {

std::vector<double> average_ranks(const std::vector<double>& abs_diffs) {
    const std::size_t n = abs_diffs.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return abs_diffs[a] < abs_diffs[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && abs_diffs[order[j + 1]] == abs_diffs[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

} // namespace

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                    const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("wilcoxon: paired vectors must have equal length");

    std::vector<double> diffs;
    diffs.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) diffs.push_back(d);
    }

    WilcoxonResult res;
    res.n = diffs.size();
    if (diffs.empty()) {
        res.degenerate = true;
        res.p_value = 1.0;
        return res;
    }

    std::vector<double> abs_diffs(diffs.size());
    for (std::size_t i = 0; i < diffs.size(); ++i) abs_diffs[i] = std::abs(diffs[i]);
    const auto ranks = average_ranks(abs_diffs);

    for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (diffs[i] > 0.0)
            res.w_plus += ranks[i];
        else
            res.w_minus += ranks[i];
    }
    res.statistic = std::min(res.w_plus, res.w_minus);

    const std::size_t n = diffs.size();
    if (n <= 12) {
        // exact null distribution over all 2^n sign assignments
        res.exact = true;
        const double total = res.w_plus + res.w_minus;
        const double lo = std::min(res.w_plus, total - res.w_plus);
        const double hi = std::max(res.w_plus, total - res.w_plus);
        std::size_t count = 0;
        const std::size_t assignments = std::size_t{1} << n;
        for (std::size_t bits = 0; bits < assignments; ++bits) {
            double w = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (bits & (std::size_t{1} << i)) w += ranks[i];
            if (w <= lo + 1e-9 || w >= hi - 1e-9) ++count;
        }
        res.p_value = std::min(1.0, static_cast<double>(count) / static_cast<double>(assignments));
    } else {
        // normal approximation with tie correction and continuity correction
        const double dn = static_cast<double>(n);
        const double mu = dn * (dn + 1.0) / 4.0;
        double tie_term = 0.0;
        std::size_t i = 0;
        std::vector<double> sorted = abs_diffs;
        std::sort(sorted.begin(), sorted.end());
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
        const double var = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - tie_term / 48.0;
        const double sigma = std::sqrt(var);
        double z = res.w_plus - mu;
        z += z > 0.0 ? -0.5 : (z < 0.0 ? 0.5 : 0.0);
        z /= sigma;
        res.p_value = std::min(1.0, 2.0 * normal_sf(std::abs(z)));
    }
    return res;
}

char verdict_symbol(Verdict v) {
    switch (v) {
        case Verdict::Plus: return '+';
        case Verdict::Minus: return '-';
        default: return '~';
    }
}

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct CellData {
    std::vector<std::pair<std::size_t, double>> runs; // (repeat, fitness)
};

} // namespace

SummaryTable summarize(const std::vector<RunRecord>& runs,
                       const std::string& reference_algorithm, double alpha) {
    SummaryTable table;
    table.reference = reference_algorithm;

    std::map<std::pair<std::string, std::size_t>, std::map<std::string, CellData>> grid;
    for (const auto& r : runs)
        grid[{r.problem, r.dim}][r.algorithm].runs.push_back({r.repeat, r.true_fitness});

    for (auto& [key, algs] : grid) {
        const auto& [problem, dim] = key;

        auto ref_it = algs.find(reference_algorithm);
        std::vector<ComparisonCell> row;
        for (auto& [alg, cell] : algs) {
            if (cell.runs.size() < 2) {
                table.issues.push_back(problem + "/" + std::to_string(dim) + "/" + alg +
                                       ": fewer than 2 runs, skipped");
                continue;
            }
            std::sort(cell.runs.begin(), cell.runs.end());

            ComparisonCell out;
            out.problem = problem;
            out.dim = dim;
            out.algorithm = alg;
            out.runs = cell.runs.size();
            double mean = 0.0;
            for (const auto& [rep, f] : cell.runs) mean += f;
            mean /= static_cast<double>(cell.runs.size());
            double var = 0.0;
            for (const auto& [rep, f] : cell.runs) var += (f - mean) * (f - mean);
            out.mean = mean;
            out.stddev = cell.runs.size() > 1
                             ? std::sqrt(var / static_cast<double>(cell.runs.size() - 1))
                             : 0.0;
            out.is_reference = alg == reference_algorithm;

            if (!out.is_reference && ref_it != algs.end()) {
                // pair by repeat index; only repeats present on both sides count
                std::vector<double> ref_v, other_v;
                for (const auto& [rep, f] : cell.runs) {
                    for (const auto& [rrep, rf] : ref_it->second.runs) {
                        if (rrep == rep) {
                            other_v.push_back(f);
                            ref_v.push_back(rf);
                            break;
                        }
                    }
                }
                if (ref_v.size() >= 5) {
                    const auto test = wilcoxon_signed_rank(other_v, ref_v);
                    out.p_value = test.p_value;
                    if (!test.degenerate && test.p_value < alpha) {
                        std::vector<double> deltas(ref_v.size());
                        for (std::size_t i = 0; i < ref_v.size(); ++i)
                            deltas[i] = other_v[i] - ref_v[i];
                        const double med = median_of(deltas);
                        out.verdict = med > 0.0   ? Verdict::Plus
                                      : med < 0.0 ? Verdict::Minus
                                                  : Verdict::Similar;
                    }
                } else {
                    table.issues.push_back(problem + "/" + std::to_string(dim) + "/" + alg +
                                           ": fewer than 5 paired runs, no test");
                }
            }
            row.push_back(std::move(out));
        }
        if (row.empty()) continue;

        std::size_t best = 0;
        for (std::size_t i = 1; i < row.size(); ++i)
            if (row[i].mean < row[best].mean) best = i;
        row[best].best_in_row = true;

        // reference first, remaining algorithms alphabetical
        std::stable_sort(row.begin(), row.end(),
                         [](const ComparisonCell& x, const ComparisonCell& y) {
                             if (x.is_reference != y.is_reference) return x.is_reference;
                             return x.algorithm < y.algorithm;
                         });
        for (auto& c : row) table.cells.push_back(std::move(c));
    }
    return table;
}

std::string summary_to_csv(const SummaryTable& table) {
    std::ostringstream out;
    out << "# icnopt summary v1, reference=" << table.reference << "\n";
    out << "problem,dim,algorithm,runs,mean,std,p_vs_reference,verdict,best\n";
    char buf[64];
    for (const auto& c : table.cells) {
        out << c.problem << ',' << c.dim << ',' << c.algorithm << ',' << c.runs << ',';
        std::snprintf(buf, sizeof buf, "%.17g", c.mean);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", c.stddev);
        out << buf << ',';
        if (c.is_reference)
            out << ",ref";
        else {
            std::snprintf(buf, sizeof buf, "%.17g", c.p_value);
            out << buf << ',' << verdict_symbol(c.verdict);
        }
        out << ',' << (c.best_in_row ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string summary_to_text(const SummaryTable& table) {
    std::ostringstream out;
    out << "reference algorithm: " << table.reference << "\n";
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-12s %5s %-16s %5s %14s %14s %8s %s\n", "problem",
                  "dim", "algorithm", "runs", "mean", "std", "p", "verdict");
    out << buf;
    for (const auto& c : table.cells) {
        std::string verdict = c.is_reference ? "ref" : std::string(1, verdict_symbol(c.verdict));
        if (c.best_in_row) verdict += " *";
        std::snprintf(buf, sizeof buf, "%-12s %5zu %-16s %5zu %14.6g %14.6g %8.4g %s\n",
                      c.problem.c_str(), c.dim, c.algorithm.c_str(), c.runs, c.mean,
                      c.stddev, c.is_reference ? 0.0 : c.p_value, verdict.c_str());
        out << buf;
    }
    if (!table.issues.empty()) {
        out << "issues:\n";
        for (const auto& issue : table.issues) out << "  - " << issue << "\n";
    }
    return out.str();
}

} // namespace icnopt
