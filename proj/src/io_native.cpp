#include <Eigen/Dense>
#include <cstdlib>

#include "facet/io.hpp"

namespace facet {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

Vector to_vector(const json& arr, const char* what) {
  if (!arr.is_array()) throw CorruptDocument(std::string(what) + " must be an array");
  Vector v(arr.size());
  Eigen::Index i = 0;
  for (const auto& e : arr) {
    if (!e.is_number()) throw CorruptDocument(std::string(what) + " must be numeric");
    v(i++) = e.get<double>();
  }
  return v;
}

json from_vector(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json from_index_set(const IndexSet& s) {
  json arr = json::array();
  for (int i : s) arr.push_back(i);
  return arr;
}

}  // namespace

NativeInstanceDocument read_native(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw CorruptDocument(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw CorruptDocument("top level must be an object");
  if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
    throw SchemaVersionUnknown("missing schema_version");
  }
  if (doc["schema_version"].get<int>() != kSchemaVersion) {
    throw SchemaVersionUnknown("unrecognized schema_version " +
                               doc["schema_version"].dump());
  }
  for (const char* key : {"m", "n", "A", "b", "c"}) {
    if (!doc.contains(key)) throw CorruptDocument(std::string("missing field ") + key);
  }
  const auto m = doc["m"].get<Eigen::Index>();
  const auto n = doc["n"].get<Eigen::Index>();
  if (m < 1 || n < 1) throw CorruptDocument("m and n must be positive");

  NativeInstanceDocument out;
  const json& A = doc["A"];
  if (!A.is_array() || static_cast<Eigen::Index>(A.size()) != m) {
    throw CorruptDocument("A must have m rows");
  }
  out.lp.A.resize(m, n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const json& row = A[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw CorruptDocument("row " + std::to_string(i) + " of A must have n entries");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const json& e = row[static_cast<std::size_t>(j)];
      if (!e.is_number()) throw CorruptDocument("A entries must be numeric");
      out.lp.A(i, j) = e.get<double>();
    }
  }
  out.lp.b = to_vector(doc["b"], "b");
  out.lp.c = to_vector(doc["c"], "c");
  if (out.lp.b.size() != m || out.lp.c.size() != n) {
    throw CorruptDocument("b or c length disagrees with m, n");
  }
  if (doc.contains("names")) {
    const json& names = doc["names"];
    if (!names.is_array() || static_cast<Eigen::Index>(names.size()) != n) {
      throw CorruptDocument("names must list one string per column");
    }
    for (const auto& e : names) {
      if (!e.is_string()) throw CorruptDocument("names must be strings");
      out.lp.names.push_back(e.get<std::string>());
    }
  }
  if (doc.contains("plant")) out.plant = doc["plant"];
  return out;
}

std::string write_native(const NativeInstanceDocument& doc) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["m"] = doc.lp.rows();
  j["n"] = doc.lp.cols();
  json rows = json::array();
  for (Eigen::Index i = 0; i < doc.lp.rows(); ++i) {
    rows.push_back(from_vector(doc.lp.A.row(i).transpose()));
  }
  j["A"] = std::move(rows);
  j["b"] = from_vector(doc.lp.b);
  j["c"] = from_vector(doc.lp.c);
  if (!doc.lp.names.empty()) j["names"] = doc.lp.names;
  if (!doc.plant.is_null()) j["plant"] = doc.plant;
  return j.dump(2) + "\n";
}

NativeInstanceDocument to_document(const PlantedInstance& inst) {
  NativeInstanceDocument doc;
  doc.lp = inst.lp;
  json plant;
  switch (inst.spec.kind) {
    case InstanceKind::PrimalNoSlater:
      plant["kind"] = "primal_no_slater";
      break;
    case InstanceKind::PrimalSlater:
      plant["kind"] = "primal_slater";
      break;
    case InstanceKind::DualNoSlater:
      plant["kind"] = "dual_no_slater";
      break;
  }
  plant["m"] = inst.spec.m;
  plant["n"] = inst.spec.n;
  plant["r"] = inst.spec.r;
  plant["seed"] = inst.spec.seed;
  if (inst.planted_primal_certificate) {
    plant["primal_certificate"] = {
        {"y", from_vector(inst.planted_primal_certificate->y)},
        {"support", from_index_set(inst.planted_primal_certificate->support)}};
  }
  if (inst.planted_dual_certificate) {
    plant["dual_certificate"] = {
        {"w", from_vector(*inst.planted_dual_certificate)}};
  }
  if (inst.planted_feasible_point.size() > 0) {
    plant["feasible_point"] = from_vector(inst.planted_feasible_point);
  }
  if (!inst.column_permutation.empty()) {
    json perm = json::array();
    for (int p : inst.column_permutation) perm.push_back(p);
    plant["column_permutation"] = std::move(perm);
  }
  if (inst.objective_plant) {
    plant["objective"] = {{"y_bar", from_vector(inst.objective_plant->y_bar)},
                          {"s_bar", from_vector(inst.objective_plant->s_bar)}};
  }
  doc.plant = std::move(plant);
  return doc;
}

ExperimentConfig load_experiment_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw CorruptDocument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("protocol")) {
    throw CorruptDocument("config must be an object with a protocol field");
  }
  ExperimentConfig cfg;
  const std::string protocol = doc["protocol"].get<std::string>();
  if (protocol == "condition") {
    cfg.protocol = Protocol::Condition;
  } else if (protocol == "perturbation") {
    cfg.protocol = Protocol::Perturbation;
    cfg.m = 20;
    cfg.n = 60;
    cfg.r = 45;
  } else if (protocol == "degiter") {
    cfg.protocol = Protocol::Degiter;
    cfg.m = 50;
    cfg.n = 200;
  } else if (protocol == "theorems") {
    cfg.protocol = Protocol::Theorems;
    cfg.m = 5;
    cfg.n = 12;
    cfg.r_range = {1, 11};
    cfg.seeds = 100;
  } else {
    throw CorruptDocument("unknown protocol: " + protocol);
  }
  if (doc.contains("m")) cfg.m = doc["m"].get<int>();
  if (doc.contains("n")) cfg.n = doc["n"].get<int>();
  if (doc.contains("r")) cfg.r = doc["r"].get<int>();
  if (doc.contains("seeds")) cfg.seeds = doc["seeds"].get<int>();
  if (doc.contains("base_seed")) {
    cfg.base_seed = doc["base_seed"].get<std::uint64_t>();
  } else if (const char* env = std::getenv("FACET_SEED")) {
    cfg.base_seed = std::strtoull(env, nullptr, 10);
  }
  if (doc.contains("r_range")) {
    const json& rr = doc["r_range"];
    if (!rr.is_array() || rr.size() != 2) {
      throw CorruptDocument("r_range must be [lo, hi]");
    }
    cfg.r_range = {rr[0].get<int>(), rr[1].get<int>()};
  }
  if (doc.contains("r_grid")) {
    for (const auto& e : doc["r_grid"]) cfg.r_grid.push_back(e.get<int>());
  }
  if (doc.contains("epsilons")) {
    for (const auto& e : doc["epsilons"]) cfg.epsilons.push_back(e.get<double>());
  }
  if (doc.contains("output")) cfg.output_path = doc["output"].get<std::string>();
  if (cfg.seeds < 1) throw CorruptDocument("seeds must be at least 1");
  return cfg;
}

}  // namespace facet
