#include "qgeom/qubit.hpp"

#include <cmath>
#include <sstream>

namespace qgeom {

namespace {

ComplexMatrix dot_sigma(const BlochVector& v) {
    return v.x() * pauli_x() + v.y() * pauli_y() + v.z() * pauli_z();
}

} // namespace

DensityMatrix bloch_density(const BlochVector& r) {
    const double len = r.norm();
    if (len > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg << "bloch_density: |r| = " << len << " lies outside the ball";
        throw RangeError(msg.str());
    }
    return validate_density(0.5 * (identity2() + dot_sigma(r)));
}

double pure_curvature_bloch(const BlochVector& n,
                            const BlochVector& dn_a,
                            const BlochVector& dn_b) {
    if (std::abs(n.norm() - 1.0) > 1e-10) {
        std::ostringstream msg;
        msg << "pure_curvature_bloch: |n| = " << n.norm() << ", expected a unit vector";
        throw RangeError(msg.str());
    }
    // A unit-length path keeps its tangents on the sphere.
    if (std::abs(n.dot(dn_a)) > 1e-8 || std::abs(n.dot(dn_b)) > 1e-8) {
        throw RangeError("pure_curvature_bloch: tangent has a radial component");
    }
    return -0.5 * n.dot(dn_a.cross(dn_b));
}

double mixed_curvature_bloch(const BlochVector& r,
                             const BlochVector& dr_a,
                             const BlochVector& dr_b) {
    if (r.norm() > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg << "mixed_curvature_bloch: |r| = " << r.norm() << " lies outside the ball";
        throw RangeError(msg.str());
    }
    return -0.5 * r.dot(dr_a.cross(dr_b));
}

ComplexMatrix BlochSld::to_matrix() const {
    return c0 * identity2() + dot_sigma(c);
}

BlochSld qubit_sld_bloch(const BlochVector& r, const BlochVector& dr) {
    const double r2 = r.squaredNorm();
    if (r2 > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg << "qubit_sld_bloch: |r| = " << std::sqrt(r2) << " lies outside the ball";
        throw RangeError(msg.str());
    }
    const double radial = dr.dot(r);
    BlochSld sld;
    if (1.0 - r2 <= 1e-12) {
        // Pure boundary: the equation constrains c0·(1−r²) = −dr·r, so a
        // radial derivative component has nowhere to go.
        if (std::abs(radial) > 1e-8) {
            std::ostringstream msg;
            msg << "qubit_sld_bloch: radial derivative component " << radial
                << " on a pure state";
            throw InconsistentDerivativeError(msg.str());
        }
        sld.c0 = 0.0;
    } else {
        sld.c0 = -radial / (1.0 - r2);
    }
    sld.c = dr - sld.c0 * r;
    return sld;
}

double commutator_expectation_bloch(const BlochVector& r,
                                    const BlochVector& a,
                                    const BlochVector& b) {
    if (r.norm() > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg << "commutator_expectation_bloch: |r| = " << r.norm()
            << " lies outside the ball";
        throw RangeError(msg.str());
    }
    return a.cross(b).dot(r);
}

} // namespace qgeom
