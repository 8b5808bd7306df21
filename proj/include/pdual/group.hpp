#pragma once

// Group elements used by the energy identities.

#include <cstdint>
#include <random>
#include <vector>

#include "pdual/linalg.hpp"

namespace pdual {

/// λ(t) = diag(t^{m₀}, t^{m₁}, t^{m₂}).
CMatrix oneParamSubgroup(const std::vector<int>& m, Complex t);

/// Gaussian complex entries; invertible with probability one.
CMatrix randomGL3(std::mt19937_64& rng);

/// W₁ diag(e^{a₀}, e^{a₁}, e^{a₂}) W₂ with random unitaries Wᵢ and Σaᵢ = 0;
/// max aᵢ − min aᵢ is between 0.87·spread and 2·spread.
CMatrix randomSL3(std::mt19937_64& rng, double spread);

/// Exact rational matrix with small entries and nonzero determinant.
QMatrix randomRationalInvertible(std::mt19937_64& rng, int n = 3);

}  // namespace pdual
