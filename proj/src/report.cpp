#include "heartml/report.hpp"

#include <iomanip>
#include <sstream>

namespace heartml {

using nlohmann::ordered_json;

namespace {

std::string mode_phrase(const std::string& mode) {
    if (mode == "all") return "all attributes";
    if (mode == "cfs") return "selected attributes";
    return "explicit attributes";
}

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

ordered_json matrix_json(const ConfusionMatrix& cm) {
    ordered_json j;
    j["tp"] = cm.tp;
    j["fn"] = cm.fn;
    j["fp"] = cm.fp;
    j["tn"] = cm.tn;
    return j;
}

ordered_json metric_json(const Metric& m) {
    ordered_json j;
    j["successes"] = m.successes;
    j["total"] = m.total;
    if (m.value) {
        j["value"] = *m.value;
        j["text"] = m.value_text();
        j["ci"] = {m.ci->first, m.ci->second};
        j["ci_text"] = m.ci_text();
    } else {
        j["value"] = nullptr;
        j["text"] = "undefined";
        j["ci"] = nullptr;
        j["ci_text"] = "undefined";
    }
    return j;
}

std::string pct(const Metric& m) { return m.value ? m.value_text() + "%" : "undefined"; }

std::string misclassification_text(const ConfusionMatrix& cm) {
    return cm.total() ? format_ratio_percent(cm.fp + cm.fn, cm.total()) + "%" : "undefined";
}

}  // namespace

std::string CellReport::title() const { return classifier_name + " with " + mode_phrase(feature_mode); }

std::string render_text(const CellReport& c) {
    std::ostringstream os;
    os << c.title() << "\n";
    os << std::string(c.title().size(), '=') << "\n";
    os << "Dataset: " << c.dataset << " (" << c.instances << " instances), positive class " << c.positive_label
       << "\n";
    os << "Features (" << c.features.size() << "): " << join(c.features, ", ") << "\n";
    if (c.selection_merit) os << "Selection merit: " << std::setprecision(6) << std::fixed << *c.selection_merit << "\n";
    os << "Cross-validation: " << c.folds << " folds, " << (c.stratified ? "stratified" : "unstratified")
       << ", seed " << c.seed << "\n";
    os << "Hyperparameters: " << c.hyperparameters.dump() << "\n\n";
    if (c.error) {
        os << "FAILED: " << *c.error << "\n";
        return os.str();
    }
    const auto& cm = c.pooled;
    os << "Confusion matrix\n";
    os << std::left << std::setw(12) << "" << std::right << std::setw(13) << "Predicted 1" << std::setw(13)
       << "Predicted 0" << "\n";
    os << std::left << std::setw(12) << "Actual 1" << std::right << std::setw(13) << cm.tp << std::setw(13) << cm.fn
       << "\n";
    os << std::left << std::setw(12) << "Actual 0" << std::right << std::setw(13) << cm.fp << std::setw(13) << cm.tn
       << "\n\n";
    const auto ci_header = std::to_string(static_cast<int>(c.metrics.level * 100 + 0.5)) + "% CI";
    os << std::left << std::setw(14) << "Statistic" << std::setw(10) << "Value" << ci_header << "\n";
    auto line = [&](const char* name, const Metric& m) {
        os << std::left << std::setw(14) << name << std::setw(10) << pct(m) << m.ci_text() << "\n";
    };
    line("Accuracy", c.metrics.accuracy);
    line("Sensitivity", c.metrics.sensitivity);
    line("Specificity", c.metrics.specificity);
    os << std::left << std::setw(14) << "Misclassified" << misclassification_text(cm) << "\n\n";
    os << "Per-fold matrices\n";
    os << std::right << std::setw(6) << "fold" << std::setw(6) << "TP" << std::setw(6) << "FN" << std::setw(6) << "FP"
       << std::setw(6) << "TN" << "\n";
    for (std::size_t f = 0; f < c.fold_matrices.size(); ++f) {
        const auto& m = c.fold_matrices[f];
        os << std::setw(6) << f + 1 << std::setw(6) << m.tp << std::setw(6) << m.fn << std::setw(6) << m.fp
           << std::setw(6) << m.tn << "\n";
    }
    return os.str();
}

std::string render_csv(const CellReport& c) {
    std::ostringstream os;
    os << "classifier,feature_mode,fold,tp,fn,fp,tn,accuracy,accuracy_ci_low,accuracy_ci_high,sensitivity,"
          "sensitivity_ci_low,sensitivity_ci_high,specificity,specificity_ci_low,specificity_ci_high\n";
    auto row = [&](const std::string& fold, const ConfusionMatrix& cm) {
        const auto r = MetricsReport::from(cm, c.metrics.level);
        os << c.classifier << ',' << c.feature_mode << ',' << fold << ',' << cm.tp << ',' << cm.fn << ',' << cm.fp
           << ',' << cm.tn;
        for (const Metric* m : {&r.accuracy, &r.sensitivity, &r.specificity}) {
            if (m->value)
                os << ',' << m->value_text() << ',' << format_percent(m->ci->first) << ','
                   << format_percent(m->ci->second);
            else
                os << ",,,";
        }
        os << '\n';
    };
    if (!c.error) {
        for (std::size_t f = 0; f < c.fold_matrices.size(); ++f) row(std::to_string(f + 1), c.fold_matrices[f]);
        row("pooled", c.pooled);
    }
    return os.str();
}

ordered_json to_json(const CellReport& c) {
    ordered_json j;
    j["format"] = "heartml-report";
    j["version"] = kReportVersion;
    j["classifier"] = c.classifier;
    j["classifier_name"] = c.classifier_name;
    j["title"] = c.title();
    j["hyperparameters"] = c.hyperparameters;
    ordered_json fs;
    fs["mode"] = c.feature_mode;
    fs["features"] = c.features;
    if (c.selection_merit) fs["merit"] = *c.selection_merit;
    else fs["merit"] = nullptr;
    j["feature_set"] = std::move(fs);
    ordered_json ds;
    ds["name"] = c.dataset;
    ds["instances"] = c.instances;
    ds["positive_class"] = c.positive_label;
    j["dataset"] = std::move(ds);
    ordered_json cv;
    cv["folds"] = c.folds;
    cv["stratified"] = c.stratified;
    cv["seed"] = c.seed;
    j["cross_validation"] = std::move(cv);
    if (c.error) {
        j["status"] = "failed";
        j["error"] = *c.error;
        return j;
    }
    j["status"] = "ok";
    ordered_json folds = ordered_json::array();
    for (const auto& m : c.fold_matrices) folds.push_back(matrix_json(m));
    j["fold_matrices"] = std::move(folds);
    j["pooled_matrix"] = matrix_json(c.pooled);
    ordered_json metrics;
    metrics["level"] = c.metrics.level;
    metrics["accuracy"] = metric_json(c.metrics.accuracy);
    metrics["sensitivity"] = metric_json(c.metrics.sensitivity);
    metrics["specificity"] = metric_json(c.metrics.specificity);
    if (c.pooled.total()) metrics["misclassification_rate"] = misclassification_rate(c.pooled);
    else metrics["misclassification_rate"] = nullptr;
    j["metrics"] = std::move(metrics);
    return j;
}

std::string render_json(const CellReport& c) { return to_json(c).dump(2) + "\n"; }

std::string render_summary_text(const std::vector<CellReport>& cells) {
    std::ostringstream os;
    os << "Summary of classifier performance\n\n";
    os << std::left << std::setw(26) << "Feature set" << std::setw(16) << "Classifier" << std::setw(11) << "Accuracy"
       << std::setw(13) << "Specificity" << "Sensitivity\n";
    for (const auto& c : cells) {
        os << std::left << std::setw(26) << "With " + mode_phrase(c.feature_mode) << std::setw(16) << c.classifier_name;
        if (c.error) {
            os << "FAILED: " << *c.error << "\n";
            continue;
        }
        os << std::setw(11) << pct(c.metrics.accuracy) << std::setw(13) << pct(c.metrics.specificity)
           << pct(c.metrics.sensitivity) << "\n";
    }
    return os.str();
}

std::string render_summary_csv(const std::vector<CellReport>& cells) {
    std::ostringstream os;
    os << "feature_mode,classifier,features,status,accuracy,specificity,sensitivity\n";
    for (const auto& c : cells) {
        os << c.feature_mode << ',' << c.classifier << ',' << csv_quote(join(c.features, ";")) << ','
           << (c.error ? "failed" : "ok");
        for (const Metric* m : {&c.metrics.accuracy, &c.metrics.specificity, &c.metrics.sensitivity})
            os << ',' << (!c.error && m->value ? m->value_text() : "");
        os << '\n';
    }
    return os.str();
}

std::string render_summary_json(const std::vector<CellReport>& cells) {
    ordered_json j;
    j["format"] = "heartml-summary";
    j["version"] = kReportVersion;
    ordered_json rows = ordered_json::array();
    for (const auto& c : cells) {
        ordered_json r;
        r["title"] = c.title();
        r["classifier"] = c.classifier;
        r["feature_mode"] = c.feature_mode;
        r["features"] = c.features;
        r["status"] = c.error ? "failed" : "ok";
        if (!c.error) {
            r["accuracy"] = c.metrics.accuracy.value_text();
            r["specificity"] = c.metrics.specificity.value_text();
            r["sensitivity"] = c.metrics.sensitivity.value_text();
        }
        rows.push_back(std::move(r));
    }
    j["cells"] = std::move(rows);
    return j.dump(2) + "\n";
}

}  // namespace heartml
