#include "gencode/app/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "gencode/common/error.hpp"

namespace gencode::app {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& msg) {
  throw Error(ErrorFamily::Usage, "InvalidConfig", msg);
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) invalid(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (ok.count(item.key()) == 0) invalid("unknown key " + where + "." + item.key());
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    invalid(std::string("bad value for ") + key);
  }
}

std::string lang_mix_name(experiments::LangMix m) {
  switch (m) {
    case experiments::LangMix::Java: return "java";
    case experiments::LangMix::Python: return "python";
    case experiments::LangMix::Both: return "both";
  }
  return "both";
}

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig c;
  check_keys(j, "config",
             {"seed", "epochs", "patience", "repetitions", "seeds", "strategy", "include_originals",
              "operators", "dim", "batch_size", "learning_rate", "l2", "optimizer", "init_scale",
              "text", "external_scorer", "robustness", "robustness_seed", "record_timing",
              "record_provenance", "study", "corpus"});
  auto& t = c.train;
  read(j, "seed", c.seed);
  read(j, "epochs", t.epochs);
  read(j, "patience", t.early_stop_patience);
  read(j, "repetitions", t.repetitions);
  read(j, "seeds", t.seeds);
  if (j.contains("strategy")) {
    std::string s;
    read(j, "strategy", s);
    if (s == "no-aug") {
      c.no_aug = true;
    } else if (auto st = selection::parse_strategy(s)) {
      t.selection.strategy = *st;
    } else {
      invalid("unknown strategy " + s);
    }
  }
  read(j, "include_originals", t.selection.include_originals);
  if (j.contains("operators")) {
    std::vector<std::string> names;
    read(j, "operators", names);
    t.operators.clear();
    for (const auto& n : names) {
      auto op = selection::parse_operator(n);
      if (!op || std::holds_alternative<selection::Original>(*op)) invalid("unknown operator " + n);
      t.operators.push_back(*op);
    }
  }
  read(j, "dim", t.dim);
  read(j, "batch_size", t.batch_size);
  read(j, "learning_rate", t.hyper.learning_rate);
  read(j, "l2", t.hyper.l2);
  read(j, "init_scale", t.hyper.init_scale);
  if (j.contains("optimizer")) {
    std::string o;
    read(j, "optimizer", o);
    if (o == "adam") {
      t.hyper.optimizer = scorer::Optimizer::Adam;
    } else if (o == "sgd") {
      t.hyper.optimizer = scorer::Optimizer::Sgd;
    } else {
      invalid("unknown optimizer " + o);
    }
  }
  read(j, "robustness", t.robustness);
  read(j, "robustness_seed", t.robustness_seed);
  read(j, "record_timing", t.record_timing);
  read(j, "record_provenance", t.record_provenance);
  if (j.contains("text")) {
    const auto& x = j.at("text");
    check_keys(x, "text", {"rate", "bt_endpoint", "bt_stub", "bt_pivot", "bt_max_in_flight",
                           "bt_timeout_ms", "synonyms"});
    read(x, "rate", t.text.rate);
    if (x.contains("bt_endpoint")) {
      std::string e;
      read(x, "bt_endpoint", e);
      t.text.bt_endpoint = e;
    }
    read(x, "bt_stub", t.text.bt_stub);
    read(x, "bt_pivot", t.text.bt_pivot);
    read(x, "bt_max_in_flight", t.text.bt_max_in_flight);
    read(x, "bt_timeout_ms", t.text.bt_timeout_ms);
    read(x, "synonyms", t.text.synonym_table);
  }
  if (j.contains("external_scorer")) {
    const auto& x = j.at("external_scorer");
    check_keys(x, "external_scorer", {"command", "host", "port", "window", "timeout_ms"});
    scorer::ExternalScorerConfig e;
    read(x, "command", e.command);
    if (x.contains("host")) {
      std::string h;
      read(x, "host", h);
      e.host = h;
    }
    read(x, "port", e.port);
    read(x, "window", e.window);
    read(x, "timeout_ms", e.timeout_ms);
    if (e.command.empty() && !e.host) invalid("external_scorer needs command or host");
    t.external_scorer = e;
  }
  if (j.contains("study")) {
    const auto& x = j.at("study");
    check_keys(x, "study", {"stage", "groups", "finetune_epochs", "pre_epochs", "init_scale"});
    if (x.contains("stage")) {
      std::string s;
      read(x, "stage", s);
      auto st = experiments::parse_stage(s);
      if (!st) invalid("unknown stage " + s);
      c.stage = *st;
    }
    read(x, "groups", c.study_groups);
    read(x, "finetune_epochs", c.study_finetune_epochs);
    if (x.contains("pre_epochs")) {
      std::size_t p = 0;
      read(x, "pre_epochs", p);
      c.study_pre_epochs = p;
    }
    read(x, "init_scale", c.study_init_scale);
  }
  if (j.contains("corpus")) {
    const auto& x = j.at("corpus");
    check_keys(x, "corpus", {"classes", "per_class", "langs", "io_pairs", "test_fraction"});
    read(x, "classes", c.corpus.classes);
    read(x, "per_class", c.corpus.per_class);
    read(x, "io_pairs", c.corpus.io_pairs);
    read(x, "test_fraction", c.test_fraction);
    if (x.contains("langs")) {
      std::string l;
      read(x, "langs", l);
      if (l == "java") {
        c.corpus.langs = experiments::LangMix::Java;
      } else if (l == "python") {
        c.corpus.langs = experiments::LangMix::Python;
      } else if (l == "both") {
        c.corpus.langs = experiments::LangMix::Both;
      } else {
        invalid("unknown langs " + l);
      }
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorFamily::Usage, "InvalidConfig", "cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    invalid(std::string("config is not valid JSON: ") + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const RunConfig& c) {
  const auto& t = c.train;
  json j;
  j["seed"] = c.seed;
  j["epochs"] = t.epochs;
  j["patience"] = t.early_stop_patience;
  j["repetitions"] = t.repetitions;
  j["seeds"] = experiments::run_seeds(t);
  j["strategy"] = c.no_aug ? std::string("no-aug") : std::string(selection::strategy_name(t.selection.strategy));
  j["include_originals"] = t.selection.include_originals;
  json ops = json::array();
  for (const auto& op : t.operators) ops.push_back(selection::operator_name(op));
  j["operators"] = ops;
  j["dim"] = t.dim;
  j["batch_size"] = t.batch_size;
  j["learning_rate"] = t.hyper.learning_rate;
  j["l2"] = t.hyper.l2;
  j["init_scale"] = t.hyper.init_scale;
  j["optimizer"] = t.hyper.optimizer == scorer::Optimizer::Adam ? "adam" : "sgd";
  j["robustness"] = t.robustness;
  j["robustness_seed"] = t.robustness_seed;
  j["record_timing"] = t.record_timing;
  j["record_provenance"] = t.record_provenance;
  json text;
  text["rate"] = t.text.rate;
  if (t.text.bt_endpoint) text["bt_endpoint"] = *t.text.bt_endpoint;
  text["bt_stub"] = t.text.bt_stub;
  text["bt_pivot"] = t.text.bt_pivot;
  text["bt_max_in_flight"] = t.text.bt_max_in_flight;
  text["bt_timeout_ms"] = t.text.bt_timeout_ms;
  text["synonyms"] = t.text.synonym_table;
  j["text"] = text;
  if (t.external_scorer) {
    const auto& e = *t.external_scorer;
    json x;
    x["command"] = e.command;
    if (e.host) x["host"] = *e.host;
    x["port"] = e.port;
    x["window"] = e.window;
    x["timeout_ms"] = e.timeout_ms;
    j["external_scorer"] = x;
  }
  json study;
  study["stage"] = std::string(experiments::stage_name(c.stage));
  study["groups"] = c.study_groups;
  study["finetune_epochs"] = c.study_finetune_epochs;
  if (c.study_pre_epochs) study["pre_epochs"] = *c.study_pre_epochs;
  study["init_scale"] = c.study_init_scale;
  j["study"] = study;
  j["corpus"] = {{"classes", c.corpus.classes},
                 {"per_class", c.corpus.per_class},
                 {"langs", lang_mix_name(c.corpus.langs)},
                 {"io_pairs", c.corpus.io_pairs},
                 {"test_fraction", c.test_fraction}};
  return j;
}

void apply_environment(RunConfig& cfg) {
  if (cfg.train.text.bt_endpoint) return;
  if (const char* url = std::getenv("GENCODE_BT_URL"); url != nullptr && *url != '\0') {
    cfg.train.text.bt_endpoint = std::string(url);
  }
}

experiments::StudyConfig study_config(const RunConfig& cfg) {
  experiments::StudyConfig s;
  s.train = cfg.train;
  s.groups = cfg.study_groups;
  s.finetune_epochs = cfg.study_finetune_epochs;
  s.pre_epochs = cfg.study_pre_epochs;
  s.init_scale = cfg.study_init_scale;
  s.seed = cfg.seed;
  return s;
}

}  // namespace gencode::app
