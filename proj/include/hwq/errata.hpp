#pragma once

#include <array>
#include <string_view>

#include "hwq/appell.hpp"
#include "hwq/symb.hpp"

// Readings fixed once by oracle experiments where the source formulas admit
// more than one.  Reports carry the version of each so a regenerated
// experiment can be matched against the frozen choice.
namespace hwq::errata {

// A_0 of the diffusion factorization: the disentangling closed form,
// (1 - 2 sign tau)^{-2}, not 1/(1 - 4 sign tau).
inline constexpr std::string_view kAZero = "disentangling";

// Orientation of the symmetric generator: -1, i.e. +2|gamma|(K_+ + K_- - 2 K_0).
inline constexpr int kGeneratorSign = -1;

inline constexpr symb::ReorderConvention kReorder = symb::ReorderConvention::calibrated;

inline constexpr appell::HalfPower kHalfPower = appell::HalfPower::reordered;

struct Decision {
  std::string_view key;
  std::string_view choice;
  int version;
};

inline constexpr std::array kDecisions{
    Decision{"a_zero", kAZero, 1},
    Decision{"generator_sign", "minus", 1},
    Decision{"reorder_convention", "calibrated", 1},
    Decision{"half_power", "reordered", 1},
};

}  // namespace hwq::errata
