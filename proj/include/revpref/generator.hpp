#pragma once

#include <cstdint>

#include "revpref/dataset.hpp"

namespace revpref {

enum class UtilityFamily { cobb_douglas, quasilinear, discrete_divisible };

// Synthetic datasets produced by exact utility maximizers; with efficiency
// e < 1 only e of each budget is spent optimally and the remainder is dumped
// on a random good.  Fixed seeds give identical output on every platform.
struct GeneratorConfig {
  int goods = 2;
  int observations = 10;
  uint64_t seed = 0;
  UtilityFamily family = UtilityFamily::cobb_douglas;
  Rational efficiency{1};
  Rational price_min{1};
  Rational price_max{10};
  Rational income_min{5};
  Rational income_max{50};
};

PurchaseDataset generate(const GeneratorConfig& config);

}  // namespace revpref
