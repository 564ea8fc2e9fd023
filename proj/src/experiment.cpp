#include "heartml/experiment.hpp"

#include <fstream>
#include <map>

#include <omp.h>

#include "heartml/errors.hpp"
#include "heartml/transform.hpp"

namespace heartml {

namespace {

std::string mode_key(FeatureMode m) {
    switch (m) {
        case FeatureMode::All: return "all";
        case FeatureMode::Cfs: return "cfs";
        case FeatureMode::Explicit: return "explicit";
    }
    return "?";
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        auto item = text.substr(start, end - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) out.emplace_back(item);
        start = end + 1;
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    os << content;
}

}  // namespace

std::string display_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::NaiveBayes: return "Naive Bayes";
        case ClassifierKind::J48: return "J48";
        case ClassifierKind::RandomForest: return "Random Forest";
    }
    return "?";
}

FeatureSetting parse_feature_setting(std::string_view text) {
    if (text == "all") return {FeatureMode::All, {}};
    if (text == "cfs") return {FeatureMode::Cfs, {}};
    constexpr std::string_view prefix = "explicit:";
    if (text.starts_with(prefix)) {
        auto names = split_list(text.substr(prefix.size()));
        if (names.empty()) throw ConfigError("explicit feature list is empty");
        return {FeatureMode::Explicit, std::move(names)};
    }
    throw ConfigError("unknown feature mode '" + std::string(text) + "' (expected all, cfs or explicit:A,B,...)");
}

ReportFormat parse_report_format(std::string_view text) {
    if (text == "text") return ReportFormat::Text;
    if (text == "csv") return ReportFormat::Csv;
    if (text == "json") return ReportFormat::Json;
    throw ConfigError("unknown report format '" + std::string(text) + "' (expected text, csv or json)");
}

void validate(const ExperimentConfig& config, const Dataset& ds) {
    if (config.classifiers.empty()) throw ConfigError("no classifiers requested");
    if (config.feature_settings.empty()) throw ConfigError("no feature settings requested");
    if (config.folds < 2) throw ConfigError("TooFewInstances: at least 2 folds are required");
    if (ds.size() < config.folds)
        throw ConfigError("TooFewInstances: " + std::to_string(ds.size()) + " instances cannot fill " +
                          std::to_string(config.folds) + " folds");
    if (config.positive_class >= ds.schema().class_count()) throw ConfigError("positive class index out of range");
    for (const auto& s : config.feature_settings)
        if (s.mode == FeatureMode::Explicit) resolve_features(ds.schema(), s.names);
}

ResolvedFeatures resolve(const FeatureSetting& setting, const Dataset& ds, const ExperimentConfig& config) {
    switch (setting.mode) {
        case FeatureMode::All: return {ds.schema().feature_indices(), std::nullopt};
        case FeatureMode::Explicit: return {resolve_features(ds.schema(), setting.names), std::nullopt};
        case FeatureMode::Cfs: {
            BestFirstOptions opt;
            opt.max_stale = config.max_stale;
            opt.threads = config.threads;
            auto sel = select_cfs(ds, config.binning, opt);
            return {sel.features, sel.merit};
        }
    }
    return {};
}

CellReport run_cell(const Dataset& ds, const std::string& dataset_name, ClassifierKind kind,
                    const FeatureSetting& setting, const ResolvedFeatures& features, const ExperimentConfig& config,
                    int threads) {
    ClassifierSpec spec = config.hyper;
    spec.kind = kind;
    spec.forest.seed = config.seed;
    spec.threads = threads;

    CellReport cell;
    cell.classifier = std::string(to_string(kind));
    cell.classifier_name = display_name(kind);
    cell.hyperparameters = spec.hyperparameters();
    cell.feature_mode = mode_key(setting.mode);
    for (auto i : features.indices) cell.features.push_back(ds.schema()[i].name);
    cell.selection_merit = features.merit;
    cell.dataset = dataset_name;
    cell.instances = ds.size();
    cell.positive_label = ds.schema().target().categories.at(config.positive_class);
    cell.folds = config.folds;
    cell.stratified = config.stratified;
    cell.seed = config.seed;

    try {
        if (features.indices.empty()) throw TrainingError(TrainingError::Kind::EmptySubset, "no features selected");
        const Dataset view = project(ds, features.indices);
        const auto plan = make_cv_plan(view, config.folds, config.seed, config.stratified);
        CVOptions opt;
        opt.positive_class = config.positive_class;
        opt.threads = threads;
        auto res = cross_validate(view, spec, plan, opt);
        cell.fold_matrices = std::move(res.fold_matrices);
        cell.pooled = res.pooled;
        cell.metrics = res.report;
    } catch (const TrainingError& e) {
        cell.error = e.what();
    }
    return cell;
}

std::vector<CellReport> run_experiment(const Dataset& ds, const std::string& dataset_name,
                                       const ExperimentConfig& config) {
    validate(config, ds);
    std::vector<ResolvedFeatures> resolved;
    for (const auto& s : config.feature_settings) resolved.push_back(resolve(s, ds, config));

    struct Job {
        std::size_t setting;
        ClassifierKind kind;
    };
    std::vector<Job> jobs;
    for (std::size_t s = 0; s < config.feature_settings.size(); ++s)
        for (auto k : config.classifiers) jobs.push_back({s, k});

    std::vector<CellReport> cells(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
    const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            const auto& job = jobs[i];
            // Nested regions run on one thread, so each cell is sequential within its worker.
            cells[i] = run_cell(ds, dataset_name, job.kind, config.feature_settings[job.setting],
                                resolved[job.setting], config, 1);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return cells;
}

std::vector<std::filesystem::path> write_reports(const std::vector<CellReport>& cells,
                                                 const std::filesystem::path& dir,
                                                 const std::vector<ReportFormat>& formats) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& stem, ReportFormat f, const std::string& content) {
        const char* ext = f == ReportFormat::Text ? ".txt" : f == ReportFormat::Csv ? ".csv" : ".json";
        auto path = dir / (stem + ext);
        write_file(path, content);
        written.push_back(path);
    };
    std::map<std::string, int> uses;
    for (const auto& c : cells) {
        auto stem = c.classifier + "_" + c.feature_mode;
        if (const int n = ++uses[stem]; n > 1) stem += "_" + std::to_string(n);
        for (auto f : formats)
            emit(stem, f, f == ReportFormat::Text ? render_text(c) : f == ReportFormat::Csv ? render_csv(c)
                                                                                            : render_json(c));
    }
    for (auto f : formats)
        emit("summary", f,
             f == ReportFormat::Text  ? render_summary_text(cells)
             : f == ReportFormat::Csv ? render_summary_csv(cells)
                                      : render_summary_json(cells));
    return written;
}

}  // namespace heartml
