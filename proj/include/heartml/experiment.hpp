#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "heartml/cfs.hpp"
#include "heartml/cv.hpp"
#include "heartml/data.hpp"
#include "heartml/discretize.hpp"
#include "heartml/model.hpp"
#include "heartml/report.hpp"

namespace heartml {

enum class FeatureMode { All, Cfs, Explicit };

struct FeatureSetting {
    FeatureMode mode = FeatureMode::All;
    std::vector<std::string> names;  // explicit mode only
};

/// Parses "all", "cfs" or "explicit:A,B,C". Throws ConfigError.
FeatureSetting parse_feature_setting(std::string_view text);

enum class ReportFormat { Text, Csv, Json };
/// Parses "text", "csv", "json". Throws ConfigError.
ReportFormat parse_report_format(std::string_view text);

struct ExperimentConfig {
    std::vector<ClassifierKind> classifiers{ClassifierKind::J48, ClassifierKind::NaiveBayes,
                                            ClassifierKind::RandomForest};
    std::vector<FeatureSetting> feature_settings{{FeatureMode::All, {}}, {FeatureMode::Cfs, {}}};
    std::size_t folds = 10;
    std::uint64_t seed = 1;
    bool stratified = true;
    ClassifierSpec hyper;  // kind ignored; per-classifier hyperparameters
    BinningOptions binning;
    std::size_t max_stale = 5;
    std::size_t positive_class = 1;
    int threads = 0;  // grid workers; 0: OpenMP default
};

/// Checks the configuration against the dataset; throws ConfigError.
void validate(const ExperimentConfig& config, const Dataset& ds);

/// Feature columns used by a setting (CFS runs on the full dataset).
struct ResolvedFeatures {
    std::vector<std::size_t> indices;
    std::optional<double> merit;
};
ResolvedFeatures resolve(const FeatureSetting& setting, const Dataset& ds, const ExperimentConfig& config);

/// Evaluates one (classifier, feature set) cell; training failures are recorded in the report.
CellReport run_cell(const Dataset& ds, const std::string& dataset_name, ClassifierKind kind,
                    const FeatureSetting& setting, const ResolvedFeatures& features, const ExperimentConfig& config,
                    int threads);

/// Evaluates the classifier x feature-setting grid (settings outer, classifiers inner). Cells run
/// concurrently; the result does not depend on the worker count.
std::vector<CellReport> run_experiment(const Dataset& ds, const std::string& dataset_name,
                                       const ExperimentConfig& config);

/// Writes "<classifier>_<mode>.<ext>" per cell (a repeated stem gains "_2", "_3", ...) plus
/// "summary.<ext>" for every format, returning the written paths in order.
std::vector<std::filesystem::path> write_reports(const std::vector<CellReport>& cells,
                                                 const std::filesystem::path& dir,
                                                 const std::vector<ReportFormat>& formats);

/// Human-readable classifier name.
std::string display_name(ClassifierKind kind);

}  // namespace heartml
