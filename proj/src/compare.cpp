#include "pamea/compare.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "pamea/metrics.hpp"

namespace pamea {
namespace {

std::vector<double> column(const std::vector<RecordSummary>& side,
                           double RecordSummary::* field) {
    std::vector<double> values;
    values.reserve(side.size());
    for (const auto& s : side) values.push_back(s.*field);
    return values;
}

ComparisonRow make_row(const std::string& indicator,
                       const std::vector<RecordSummary>& a,
                       const std::vector<RecordSummary>& b,
                       double RecordSummary::* field, bool lower_is_better,
                       bool directionless, double alpha) {
    const auto va = column(a, field);
    const auto vb = column(b, field);
    ComparisonRow row;
    row.indicator = indicator;
    row.median_a = median(va);
    row.iqr_a = quantile(va, 0.75) - quantile(va, 0.25);
    row.median_b = median(vb);
    row.iqr_b = quantile(vb, 0.75) - quantile(vb, 0.25);
    const RankSumResult rs = rank_sum_test(va, vb, alpha);
    row.z = rs.z;
    row.p_value = rs.p_value;
    if (!rs.significant || rs.direction == 0) {
        row.verdict = "≈";
    } else if (directionless) {
        row.verdict = "≠"; // significantly different, but no preferred direction
    } else {
        const bool a_better = lower_is_better ? rs.direction < 0 : rs.direction > 0;
        row.verdict = a_better ? "+" : "-";
    }
    return row;
}

} // namespace

RecordSummary summarize_record(const std::filesystem::path& json_path) {
    const RunRecord r = read_record(json_path);
    RecordSummary s;
    s.problem_id = r.problem_id;
    s.variant = to_string(r.variant);
    s.seed = r.config.seed;
    s.final_igd = r.final_igd;
    s.final_hv = r.final_hv;
    s.final_mean_sparsity = r.final_mean_sparsity;
    return s;
}

std::vector<ComparisonRow> compare_summaries(const std::vector<RecordSummary>& a,
                                             const std::vector<RecordSummary>& b,
                                             double alpha) {
    if (a.size() < 5 || b.size() < 5)
        throw StatError("comparison needs at least 5 records per side (got " +
                        std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                        ")");
    const std::string& problem = a.front().problem_id;
    for (const auto& side : {&a, &b})
        for (const auto& s : *side)
            if (s.problem_id != problem)
                throw StatError("records mix problem ids: '" + problem + "' vs '" +
                                s.problem_id + "'");

    return {
        make_row("igd", a, b, &RecordSummary::final_igd, true, false, alpha),
        make_row("hv", a, b, &RecordSummary::final_hv, false, false, alpha),
        make_row("mean_sparsity", a, b, &RecordSummary::final_mean_sparsity, false,
                 true, alpha),
    };
}

namespace {

// Display-only rounding; the CSV keeps full precision.
std::string short_double(double v) {
    std::ostringstream s;
    s << std::setprecision(5) << v;
    return s.str();
}

} // namespace

void print_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows,
                      const std::string& label_a, const std::string& label_b) {
    out << "A = " << label_a << "   B = " << label_b << '\n';
    out << std::left << std::setw(15) << "indicator" << std::right << std::setw(12)
        << "median(A)" << std::setw(12) << "IQR(A)" << std::setw(12) << "median(B)"
        << std::setw(12) << "IQR(B)" << std::setw(10) << "z" << std::setw(12) << "p"
        << "  verdict\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(15) << r.indicator << std::right
            << std::setw(12) << short_double(r.median_a) << std::setw(12)
            << short_double(r.iqr_a) << std::setw(12) << short_double(r.median_b)
            << std::setw(12) << short_double(r.iqr_b) << std::setw(10)
            << short_double(r.z) << std::setw(12) << short_double(r.p_value)
            << "  " << r.verdict << '\n';
    }
}

void write_comparison_csv(const std::filesystem::path& path,
                          const std::vector<ComparisonRow>& rows,
                          const std::string& problem_id, std::size_t n_a,
                          std::size_t n_b, double alpha) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "# pamea-compare schema=1 code=" << code_hash() << " problem=" << problem_id
        << " n_a=" << n_a << " n_b=" << n_b << " alpha=" << format_double(alpha)
        << '\n';
    out << "indicator,median_a,iqr_a,median_b,iqr_b,z,p_value,verdict\n";
    for (const auto& r : rows)
        out << r.indicator << ',' << format_double(r.median_a) << ','
            << format_double(r.iqr_a) << ',' << format_double(r.median_b) << ','
            << format_double(r.iqr_b) << ',' << format_double(r.z) << ','
            << format_double(r.p_value) << ',' << r.verdict << '\n';
    if (!out) throw IoError("write failure on " + path.string());
}

} // namespace pamea
