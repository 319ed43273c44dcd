#pragma once

#include <filesystem>

#include "drowsy/forest.hpp"
#include "drowsy/svm.hpp"

namespace drowsy {

/// JSON model files tagged "drowsy-svm-v1" / "drowsy-forest-v1".
/// load(save(m)) reproduces identical predictions.
void save_svm(const MulticlassSvm& model, const std::filesystem::path& path);
MulticlassSvm load_svm(const std::filesystem::path& path);

void save_forest(const RandomForest& forest, const std::filesystem::path& path);
RandomForest load_forest(const std::filesystem::path& path);

}  // namespace drowsy
