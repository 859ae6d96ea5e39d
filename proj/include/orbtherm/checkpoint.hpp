#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "orbtherm/coupling.hpp"

namespace orbtherm {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t checkpoint_format_version = 1;

// Magic, format version, payload length, payload, SHA-256 of the payload.
std::string serialize_checkpoint(const CheckpointData& data);
CheckpointData deserialize_checkpoint(std::string_view bytes);

void save_checkpoint(const std::filesystem::path& path, const CheckpointData& data);
CheckpointData load_checkpoint(const std::filesystem::path& path);

}  // namespace orbtherm
