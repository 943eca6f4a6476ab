#include "gencode/experiments/report.hpp"

#include <cstdio>
#include <cstdlib>

#include "gencode/common/error.hpp"

namespace gencode::experiments {

namespace {

using nlohmann::json;

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

json epoch_to_json(const EpochMetrics& m) {
  json j;
  j["epoch"] = m.epoch;
  j["train_loss"] = m.train_loss;
  j["test_accuracy"] = m.test_accuracy;
  j["pool_size"] = m.pool_size;
  j["trained"] = m.trained;
  j["skipped"] = m.skipped;
  j["operator_histogram"] = m.operator_histogram;
  put_optional(j, "wall_ms", m.wall_ms);
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

json report_to_json(const ExperimentReport& report) {
  json j;
  j["classes"] = report.classes;
  j["mean_accuracy"] = report.mean_accuracy;
  j["std_accuracy"] = report.std_accuracy;
  put_optional(j, "mean_robustness", report.mean_robustness);
  put_optional(j, "std_robustness", report.std_robustness);
  j["robustness_unchanged"] = report.robustness_unchanged;
  json runs = json::array();
  for (const auto& run : report.runs) {
    json r;
    r["seed"] = run.seed;
    r["best_epoch"] = run.best_epoch;
    r["final_accuracy"] = run.final_accuracy;
    r["stopped_early"] = run.stopped_early;
    put_optional(r, "robustness_accuracy", run.robustness_accuracy);
    put_optional(r, "confidence", run.confidence);
    put_optional(r, "interclass_distance", run.interclass_distance);
    json epochs = json::array();
    for (const auto& m : run.epochs) epochs.push_back(epoch_to_json(m));
    r["epochs"] = std::move(epochs);
    runs.push_back(std::move(r));
  }
  j["runs"] = std::move(runs);
  return j;
}

std::vector<double> report_accuracies(const json& report) {
  std::vector<double> out;
  try {
    for (const auto& run : report.at("runs")) out.push_back(run.at("final_accuracy").get<double>());
  } catch (const json::exception& e) {
    throw Error(ErrorFamily::Data, "MalformedReport", std::string("bad report: ") + e.what());
  }
  return out;
}

std::string curve_csv(const RunResult& run) {
  std::string out = "epoch,accuracy,loss\n";
  for (const auto& m : run.epochs) {
    out += std::to_string(m.epoch) + "," + format_double(m.test_accuracy) + "," +
           format_double(m.train_loss) + "\n";
  }
  return out;
}

std::string pca_csv(std::span<const LabeledPoint> points) {
  std::string out = "x,y,class\n";
  for (const auto& p : points) {
    out += format_double(p.x) + "," + format_double(p.y) + "," + std::to_string(p.cls) + "\n";
  }
  return out;
}

std::string provenance_jsonl(const RunResult& run) {
  std::string out;
  for (const auto& p : run.provenance) {
    json j;
    j["epoch"] = p.epoch;
    j["id"] = p.candidate_id;
    j["origin"] = p.origin_id;
    j["operator"] = p.op;
    put_optional(j, "loss", p.loss);
    out += j.dump() + "\n";
  }
  return out;
}

json study_to_json(const StudyResult& result) {
  json j;
  j["pcc"] = result.pcc;
  j["p_value"] = result.p_value;
  json pts = json::array();
  for (const auto& [loss, acc] : result.points) pts.push_back({{"mean_loss", loss}, {"accuracy", acc}});
  j["points"] = std::move(pts);
  return j;
}

json wilcoxon_to_json(const WilcoxonResult& result) {
  return {{"statistic", result.statistic}, {"w_plus", result.w_plus}, {"w_minus", result.w_minus},
          {"p_value", result.p_value},     {"n", result.n},           {"exact", result.exact}};
}

}  // namespace gencode::experiments
