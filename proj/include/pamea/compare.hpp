#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pamea/record.hpp"

namespace pamea {

/// The slice of a run record the statistical comparison needs.
struct RecordSummary {
    std::string problem_id;
    std::string variant;
    std::uint64_t seed = 0;
    double final_igd = 0.0;
    double final_hv = 0.0;
    double final_mean_sparsity = 0.0;
};

RecordSummary summarize_record(const std::filesystem::path& json_path);

/// One indicator row of a two-sided comparison table. Verdicts follow the
/// usual orientation: "+" means side A is significantly better (lower igd,
/// higher hv), "-" the reverse, "≈" no significant difference. Sparsity has
/// no preferred direction, so a significant difference there reads "≠".
struct ComparisonRow {
    std::string indicator;
    double median_a = 0.0, iqr_a = 0.0;
    double median_b = 0.0, iqr_b = 0.0;
    double z = 0.0, p_value = 1.0;
    std::string verdict;
};

/// Validates the sides (>= 5 records each, one common problem id; throws
/// StatError otherwise) and produces rows for igd, hv and mean_sparsity.
std::vector<ComparisonRow> compare_summaries(const std::vector<RecordSummary>& a,
                                             const std::vector<RecordSummary>& b,
                                             double alpha);

void print_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows,
                      const std::string& label_a, const std::string& label_b);

/// Machine-readable table:
/// indicator,median_a,iqr_a,median_b,iqr_b,z,p_value,verdict
void write_comparison_csv(const std::filesystem::path& path,
                          const std::vector<ComparisonRow>& rows,
                          const std::string& problem_id, std::size_t n_a,
                          std::size_t n_b, double alpha);

} // namespace pamea
