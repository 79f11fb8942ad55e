#pragma once

#include "qgeom/matrix.hpp"
#include "qgeom/state.hpp"

namespace qgeom {

// Closed-form qubit geometry in Bloch coordinates. A state is
// ρ = (I + r·σ)/2 with ‖r‖ ≤ 1; ‖r‖ = 1 is the pure case.
using BlochVector = Eigen::Vector3d;

// ρ = (I + r·σ)/2. Throws RangeError when ‖r‖ > 1 + 1e−12.
DensityMatrix bloch_density(const BlochVector& r);

// Berry curvature of the pure state aligned with unit vector n:
//   Ω_ab = −(1/2) n · (∂_a n × ∂_b n).
// n must be unit within 1e−10 and both tangents orthogonal to n within 1e−8.
double pure_curvature_bloch(const BlochVector& n,
                            const BlochVector& dn_a,
                            const BlochVector& dn_b);

// Same triple product for a general Bloch vector of length ≤ 1:
//   Ω_ab = −(1/2) r · (∂_a r × ∂_b r).
// For r = r·n with fixed r this reproduces the r³ scaling of the pure value.
double mixed_curvature_bloch(const BlochVector& r,
                             const BlochVector& dr_a,
                             const BlochVector& dr_b);

// Symmetric logarithmic derivative in Bloch form: L = c0·I + c·σ with
//   c0 = −(dr·r)/(1−‖r‖²),   c = dr − c0·r.
// On the pure sphere (‖r‖ = 1) only tangential dr is admissible and c0 = 0.
struct BlochSld {
    double c0 = 0.0;
    BlochVector c = BlochVector::Zero();
    ComplexMatrix to_matrix() const;
};

BlochSld qubit_sld_bloch(const BlochVector& r, const BlochVector& dr);

// ⟨[A·σ, B·σ]⟩/(2i) on ρ = (I + r·σ)/2, which reduces to (A×B)·r.
double commutator_expectation_bloch(const BlochVector& r,
                                    const BlochVector& a,
                                    const BlochVector& b);

} // namespace qgeom
