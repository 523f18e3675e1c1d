#pragma once

#include <string>

#include "volfit/model.hpp"

namespace volfit::io {

// Versioned human-readable model file. Fixed field order and 17-significant-
// digit coefficient rendering make save -> load -> save byte-identical.
// Loading rejects unknown format versions and length mismatches.
inline constexpr int kModelFormatVersion = 1;

std::string model_to_string(const VolumeModel& model);
VolumeModel model_from_string(const std::string& text, const std::string& context);

void save_model(const std::string& path, const VolumeModel& model);
VolumeModel load_model(const std::string& path);

}  // namespace volfit::io
