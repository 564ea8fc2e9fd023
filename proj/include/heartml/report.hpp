#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heartml/metrics.hpp"

namespace heartml {

/// Everything reported for one (classifier, feature set) evaluation.
struct CellReport {
    std::string classifier;       // "nb", "j48", "rf"
    std::string classifier_name;  // "Naive Bayes", "J48", "Random Forest"
    nlohmann::ordered_json hyperparameters = nlohmann::ordered_json::object();
    std::string feature_mode;     // "all", "cfs", "explicit"
    std::vector<std::string> features;
    std::optional<double> selection_merit;
    std::string dataset;
    std::size_t instances = 0;
    std::string positive_label;
    std::size_t folds = 0;
    bool stratified = true;
    std::uint64_t seed = 0;
    std::vector<ConfusionMatrix> fold_matrices;
    ConfusionMatrix pooled;
    MetricsReport metrics;
    std::optional<std::string> error;

    /// "J48 with all attributes", "Naive Bayes with selected attributes", ...
    std::string title() const;
};

inline constexpr int kReportVersion = 1;

std::string render_text(const CellReport& cell);
std::string render_csv(const CellReport& cell);
nlohmann::ordered_json to_json(const CellReport& cell);
std::string render_json(const CellReport& cell);

/// Accuracy / specificity / sensitivity across cells, one row per cell.
std::string render_summary_text(const std::vector<CellReport>& cells);
std::string render_summary_csv(const std::vector<CellReport>& cells);
std::string render_summary_json(const std::vector<CellReport>& cells);

}  // namespace heartml
