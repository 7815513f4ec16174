#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fedfraud/data/dataset.hpp"
#include "fedfraud/models/mlp.hpp"

namespace fedfraud {

/// Malformed or unsupported checkpoint content.
class CheckpointError : public DataError {
 public:
  using DataError::DataError;
};

/// Text checkpoint, one token group per line:
///
///     fedfraud-mlp-checkpoint 1
///     activation relu
///     layers 30 16 8 1
///     parameters 641
///     <one hexadecimal float per line, flat parameter order>
///
/// Hexadecimal floats make the round trip exact.
std::string serialize_checkpoint(const MlpParams& params);
MlpParams parse_checkpoint(std::string_view text);

void save_checkpoint(const std::filesystem::path& path, const MlpParams& params);
MlpParams load_checkpoint(const std::filesystem::path& path);

}  // namespace fedfraud
