#include "gencode/app/dataset.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "gencode/common/error.hpp"

namespace gencode::app {

namespace {

using nlohmann::json;

ir::Value value_from_json(const json& j) {
  if (j.is_boolean()) return ir::Value(j.get<bool>());
  if (j.is_number_integer()) return ir::Value(j.get<std::int64_t>());
  if (j.is_string()) return ir::Value(j.get<std::string>());
  if (j.is_null()) return ir::Value();
  throw std::invalid_argument("io_pairs args must be int, bool, string or null");
}

json value_to_json(const ir::Value& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ir::Unit>) {
          return nullptr;
        } else {
          return x;
        }
      },
      v.data);
}

ir::Program program_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("line is not a JSON object");
  ir::Program p;
  p.id = j.at("id").get<std::string>();
  if (p.id.empty()) throw std::invalid_argument("empty id");
  const auto lang = ir::parse_lang(j.at("lang").get<std::string>());
  if (!lang) throw std::invalid_argument("unknown lang");
  p.lang = *lang;
  p.content = j.at("code").get<std::string>();
  const auto& label = j.at("label");
  if (!label.is_number_integer() || label.get<std::int64_t>() < 0) {
    throw std::invalid_argument("label must be a non-negative integer");
  }
  p.label = label.get<int>();
  if (j.contains("io_pairs")) {
    for (const auto& io : j.at("io_pairs")) {
      ir::IoPair pair;
      for (const auto& a : io.at("args")) pair.args.push_back(value_from_json(a));
      pair.expected = io.at("expected").get<std::string>();
      p.io_pairs.push_back(std::move(pair));
    }
  }
  return p;
}

}  // namespace

std::vector<ir::Program> parse_dataset(std::istream& in) {
  std::vector<ir::Program> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ir::Program p;
    try {
      p = program_from_json(json::parse(line));
    } catch (const std::exception& e) {
      throw Error(ErrorFamily::Data, "MalformedLine",
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!ids.insert(p.id).second) {
      throw Error(ErrorFamily::Data, "DuplicateId",
                  "line " + std::to_string(line_no) + ": duplicate id " + p.id);
    }
    out.push_back(std::move(p));
  }
  std::set<int> labels;
  for (const auto& p : out) labels.insert(p.label);
  if (!labels.empty() && *labels.rbegin() + 1 != static_cast<int>(labels.size())) {
    throw Error(ErrorFamily::Data, "SparseLabels", "labels must cover 0..C-1 without gaps");
  }
  return out;
}

std::vector<ir::Program> ingest_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorFamily::Data, "FileNotFound", "cannot open dataset " + path);
  return parse_dataset(in);
}

std::string dataset_jsonl(std::span<const ir::Program> programs) {
  std::string out;
  for (const auto& p : programs) {
    json j;
    j["id"] = p.id;
    j["lang"] = std::string(ir::lang_name(p.lang));
    j["code"] = p.content;
    j["label"] = p.label;
    if (!p.io_pairs.empty()) {
      json pairs = json::array();
      for (const auto& io : p.io_pairs) {
        json args = json::array();
        for (const auto& a : io.args) args.push_back(value_to_json(a));
        pairs.push_back({{"args", args}, {"expected", io.expected}});
      }
      j["io_pairs"] = std::move(pairs);
    }
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace gencode::app
