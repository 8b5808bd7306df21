#pragma once

// Linear changes of variables and the induced group actions.
//
// linearSubstitute is the literal composition P∘M, a right action:
// (P∘M)∘M' = P∘(M M'). The left actions are built on top of it:
//   points:      σ·F = F∘σ⁻¹       (so σ·X_F = X_{σ·F})
//   dual points: σ·a = σ⁻ᵀ a,  σ·Δ = Δ∘σᵀ

#include "pdual/linalg.hpp"
#include "pdual/poly.hpp"

namespace pdual {

/// Throws SingularMatrix for singular M, DimensionError on shape mismatch.
QPoly linearSubstitute(const QPoly& p, const QMatrix& m);
CPoly linearSubstitute(const CPoly& p, const CMatrix& m);

QPoly pointAction(const QMatrix& sigma, const QPoly& f);
CPoly pointAction(const CMatrix& sigma, const CPoly& f);

QPoly dualAction(const QMatrix& sigma, const QPoly& delta);
CPoly dualAction(const CMatrix& sigma, const CPoly& delta);

}  // namespace pdual
