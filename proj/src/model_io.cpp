#include "tcboost/model_io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace tcboost {

namespace {

constexpr const char* kFormat = "tcboost-model";
constexpr int kVersion = 1;
constexpr const char* kHaarOrderNote =
    "type-major (2rect-h, 2rect-v, 3rect-h, 3rect-v, 4rect-diag), then y, x, height, width";

using json = nlohmann::json;

json stumps_to_json(const std::vector<Stump>& stumps) {
  json arr = json::array();
  for (const Stump& s : stumps) {
    arr.push_back({{"feature", s.feature}, {"threshold", s.threshold}, {"polarity", s.polarity}});
  }
  return arr;
}

std::vector<Stump> stumps_from_json(const json& arr) {
  std::vector<Stump> out;
  for (const auto& item : arr) {
    Stump s;
    s.feature = item.at("feature").get<Index>();
    s.threshold = item.at("threshold").get<double>();
    s.polarity = item.at("polarity").get<int>();
    if (s.polarity != 1 && s.polarity != -1) throw std::runtime_error("model: stump polarity must be +-1");
    out.push_back(s);
  }
  return out;
}

json weights_to_json(const VectorXd& w) {
  json arr = json::array();
  for (Index i = 0; i < w.size(); ++i) arr.push_back(w[i]);
  return arr;
}

VectorXd weights_from_json(const json& arr) {
  VectorXd w(static_cast<Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) w[static_cast<Index>(i)] = arr[i].get<double>();
  return w;
}

json space_to_json(const FeatureSpaceInfo& space) {
  if (space.mode == Dataset::Mode::vectors) {
    return {{"mode", "vector"}, {"dim", space.dim}};
  }
  return {{"mode", "haar"},
          {"window_width", space.window_w},
          {"window_height", space.window_h},
          {"feature_order", kHaarOrderNote}};
}

FeatureSpaceInfo space_from_json(const json& j) {
  FeatureSpaceInfo space;
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "vector") {
    space.mode = Dataset::Mode::vectors;
    space.dim = j.at("dim").get<Index>();
  } else if (mode == "haar") {
    space.mode = Dataset::Mode::images;
    space.window_w = j.at("window_width").get<int>();
    space.window_h = j.at("window_height").get<int>();
  } else {
    throw std::runtime_error("model: unknown feature space mode '" + mode + "'");
  }
  return space;
}

}  // namespace

FeatureSpaceInfo feature_space_of(const Dataset& dataset) {
  FeatureSpaceInfo space;
  space.mode = dataset.mode();
  if (dataset.mode() == Dataset::Mode::vectors) {
    space.dim = dataset.features().cols();
  } else {
    space.window_w = dataset.window_width();
    space.window_h = dataset.window_height();
  }
  return space;
}

void check_feature_space(const FeatureSpaceInfo& space, const Dataset& dataset) {
  const FeatureSpaceInfo actual = feature_space_of(dataset);
  if (actual.mode != space.mode) throw std::runtime_error("dataset mode does not match the model's feature space");
  if (space.mode == Dataset::Mode::vectors) {
    if (actual.dim != space.dim) {
      throw std::runtime_error("dataset has " + std::to_string(actual.dim) + " features, model expects " +
                               std::to_string(space.dim));
    }
  } else if (actual.window_w != space.window_w || actual.window_h != space.window_h) {
    throw std::runtime_error("dataset window size does not match the model's");
  }
}

void save_model(const std::string& path, const ModelFile& model) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["kind"] = model.is_cascade ? "cascade" : "strong";
  j["method"] = model.method;
  j["config"] = model.config;
  j["feature_space"] = space_to_json(model.space);
  if (model.is_cascade) {
    j["stumps"] = stumps_to_json(model.cascade.stumps);
    j["goals"] = {{"d_target", model.cascade.goals.d_target}, {"f_target", model.cascade.goals.f_target}};
    json exits = json::array();
    for (const auto& exit : model.cascade.exits) {
      exits.push_back({{"prefix", exit.prefix},
                       {"weights", weights_to_json(exit.weights)},
                       {"offset", exit.offset},
                       {"postprocess", exit.postprocess}});
    }
    j["exits"] = exits;
  } else {
    j["stumps"] = stumps_to_json(model.strong.stumps);
    j["weights"] = weights_to_json(model.strong.weights);
    j["offset"] = model.strong.offset;
    j["postprocess"] = model.strong.postprocess;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << '\n';
}

ModelFile load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& err) {
    throw std::runtime_error(path + ": " + err.what());
  }
  if (j.value("format", "") != kFormat) throw std::runtime_error(path + ": not a " + std::string(kFormat) + " file");
  const int version = j.value("version", -1);
  if (version != kVersion) {
    throw std::runtime_error(path + ": model version " + std::to_string(version) + ", this build reads version " +
                             std::to_string(kVersion));
  }
  ModelFile model;
  model.method = j.value("method", "");
  model.config = j.value("config", json::object());
  model.space = space_from_json(j.at("feature_space"));
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "cascade") {
    model.is_cascade = true;
    model.cascade.stumps = stumps_from_json(j.at("stumps"));
    model.cascade.goals.d_target = j.at("goals").at("d_target").get<double>();
    model.cascade.goals.f_target = j.at("goals").at("f_target").get<double>();
    for (const auto& item : j.at("exits")) {
      MultiExitCascade::Exit exit;
      exit.prefix = item.at("prefix").get<int>();
      exit.weights = weights_from_json(item.at("weights"));
      exit.offset = item.at("offset").get<double>();
      exit.postprocess = item.value("postprocess", "");
      if (exit.weights.size() != exit.prefix) throw std::runtime_error(path + ": exit weight length != prefix");
      model.cascade.exits.push_back(std::move(exit));
    }
  } else if (kind == "strong") {
    model.is_cascade = false;
    model.strong.stumps = stumps_from_json(j.at("stumps"));
    model.strong.weights = weights_from_json(j.at("weights"));
    model.strong.offset = j.at("offset").get<double>();
    model.strong.postprocess = j.value("postprocess", "");
    if (model.strong.weights.size() != static_cast<Index>(model.strong.stumps.size())) {
      throw std::runtime_error(path + ": weight/stump count mismatch");
    }
  } else {
    throw std::runtime_error(path + ": unknown model kind '" + kind + "'");
  }
  return model;
}

MultiExitCascade as_cascade(const StrongClassifier& classifier) {
  MultiExitCascade cascade;
  cascade.stumps = classifier.stumps;
  MultiExitCascade::Exit exit;
  exit.prefix = static_cast<int>(classifier.stumps.size());
  exit.weights = classifier.weights;
  exit.offset = classifier.offset;
  exit.postprocess = classifier.postprocess;
  cascade.exits.push_back(std::move(exit));
  return cascade;
}

}  // namespace tcboost
