#pragma once

#include <cstdint>
#include <random>

#include "qgeom/model.hpp"
#include "qgeom/state.hpp"

namespace qgeom {

// Seeded generators for randomized property checks. Draw i of a batch uses
// rng_for_draw(master, i) so batches are reproducible and order-independent.
using Rng = std::mt19937_64;

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t draw);
Rng rng_for_draw(std::uint64_t master, std::uint64_t draw);

// Haar-distributed unitary via QR of a complex Gaussian matrix with the
// standard phase fix on the R diagonal.
ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng);

// Gaussian Hermitian matrix, optionally trace-projected, Frobenius-normalized.
ComplexMatrix random_hermitian(Eigen::Index dim, Rng& rng, bool traceless = false);

// Probability vector with every entry ≥ floor and pairwise gaps ≥ gap,
// drawn by rejection from the flat simplex. Negative floor/gap select
// dimension-scaled defaults (0.1/dim and 0.05/dim) that keep spectral
// denominators benign while leaving the sampler a comfortable acceptance
// region at every dimension.
RealVector random_probabilities(Eigen::Index dim, Rng& rng,
                                double floor = -1.0, double gap = -1.0);

// Full-rank state with the spectrum above.
DensityMatrix random_density(Eigen::Index dim, Rng& rng,
                             double floor = -1.0, double gap = -1.0);

// Rank-1 projective measurement from the columns of a Haar unitary.
Povm random_projective_povm(Eigen::Index dim, Rng& rng);

// Random two-parameter rotation family around a random full-rank state,
// evaluated at a random point. Generators are Frobenius-normalized.
struct FamilyDraw {
    ParametricModel model;
    ParamPoint theta;
};

FamilyDraw random_unitary_family(Eigen::Index dim, Rng& rng);

} // namespace qgeom
