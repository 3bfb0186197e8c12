#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "fusesim/domain/types.hpp"

namespace fusesim {

// Parse failure with the 0-based character offset of the offending token.
class NotationError : public ConfigError {
 public:
  NotationError(size_t position, const std::string& message);
  size_t position() const { return position_; }

 private:
  size_t position_;
};

// Parses the fusion-group notation, e.g. "(A,B)-(C)". Each group may carry an
// optional memory suffix, "(A,B)@128-(C)@1024"; groups without one get
// `default_memory_mb`. Group ids are "g0", "g1", ... in text order and each
// task's home is the first group that contains it.
FusionSetup ParseSetupNotation(std::string_view text, const AppSpec& app, int default_memory_mb = 128);

// Canonical notation: members sorted, groups ordered by their sorted member
// lists. Memory and home assignments are not part of the output.
std::string FormatSetup(const FusionSetup& setup);

// Canonical notation with an "@<memory>" suffix on every group.
std::string FormatSetupWithMemory(const FusionSetup& setup);

}  // namespace fusesim
