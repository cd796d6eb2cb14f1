#pragma once

// Text state files:
//
//   {
//     "label": "bell",
//     "dims": [2, 2],
//     "amplitudes": [[0.7071067811865476, 0.0], [0.0, 0.0], ...]
//   }
//
// Amplitudes are [re, im] pairs in row-major order, last partite fastest.
// "label" is optional. Numbers are written in shortest round-trip form, so
// write followed by read reproduces every amplitude bit for bit.

#include <optional>
#include <string>
#include <string_view>

#include "puresep/tensor_state.hpp"

namespace puresep {

struct StateFile {
  PureState state;
  std::optional<std::string> label;
  bool normalized_on_load = false;  ///< input norm was off by > 1e-12
};

/// Throws Error(Parse) naming the offending field, or ZeroState.
StateFile read_state_file(std::string_view text);

std::string write_state_file(const PureState& state,
                             const std::optional<std::string>& label = {});

/// Single-line form used for factor fragments in reports.
std::string write_state_inline(const PureState& state);

}  // namespace puresep
