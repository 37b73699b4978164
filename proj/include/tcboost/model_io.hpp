#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "tcboost/booster.hpp"
#include "tcboost/cascade.hpp"
#include "tcboost/dataset.hpp"

namespace tcboost {

/// What feature indices in serialized stumps refer to. For Haar models the
/// index order is the deterministic enumeration of enumerate_features
/// (type-major: 2-rect-h, 2-rect-v, 3-rect-h, 3-rect-v, 4-rect; then y, x,
/// height, width), which the model file states explicitly.
struct FeatureSpaceInfo {
  Dataset::Mode mode = Dataset::Mode::vectors;
  Index dim = 0;      // vector mode
  int window_w = 0;   // image mode
  int window_h = 0;
};

FeatureSpaceInfo feature_space_of(const Dataset& dataset);

/// Versioned on-disk model: either a single strong classifier or a
/// multi-exit cascade, with the training configuration echoed for
/// provenance. Doubles round-trip exactly.
struct ModelFile {
  std::string method;
  nlohmann::json config;
  FeatureSpaceInfo space;
  bool is_cascade = false;
  StrongClassifier strong;
  MultiExitCascade cascade;
};

void save_model(const std::string& path, const ModelFile& model);
ModelFile load_model(const std::string& path);

/// Throws when the dataset's feature space does not match the model's.
void check_feature_space(const FeatureSpaceInfo& space, const Dataset& dataset);

/// A strong classifier viewed as a one-exit cascade, so evaluation has a
/// single code path.
MultiExitCascade as_cascade(const StrongClassifier& classifier);

}  // namespace tcboost
