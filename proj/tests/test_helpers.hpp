#pragma once

#include <focklimit/config.hpp>

// The default model at photon occupation cap 1: product dimension 256 instead
// of 1296, which keeps dense eigensolves in the unit-test budget.
inline focklimit::ModelConfig mini_config() {
  auto cfg = focklimit::ModelConfig::defaults();
  cfg.n_max = 1;
  return cfg;
}
