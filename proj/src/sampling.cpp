#include "qgeom/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <sstream>

#include <Eigen/QR>

#include "qgeom/errors.hpp"

namespace qgeom {

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t draw) {
    // splitmix-style finalizer over the (master, draw) pair; adjacent draws
    // land in statistically unrelated streams.
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (draw + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng rng_for_draw(std::uint64_t master, std::uint64_t draw) {
    return Rng(mix_seed(master, draw));
}

namespace {

ComplexMatrix gaussian_matrix(Eigen::Index dim, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

void check_dim(Eigen::Index dim, const char* where) {
    if (dim < 1) {
        std::ostringstream msg;
        msg << where << ": dimension " << dim << " must be positive";
        throw RangeError(msg.str());
    }
}

} // namespace

ComplexMatrix random_unitary(Eigen::Index dim, Rng& rng) {
    check_dim(dim, "random_unitary");
    const ComplexMatrix g = gaussian_matrix(dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fixing the phases of R's diagonal makes the distribution Haar rather
    // than QR-convention dependent.
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
    }
    return q;
}

ComplexMatrix random_hermitian(Eigen::Index dim, Rng& rng, bool traceless) {
    check_dim(dim, "random_hermitian");
    const ComplexMatrix g = gaussian_matrix(dim, rng);
    ComplexMatrix h = 0.5 * (g + g.adjoint().eval());
    if (traceless) {
        h -= (h.trace() / static_cast<double>(dim)) *
             ComplexMatrix::Identity(dim, dim);
    }
    const double norm = h.norm();
    if (norm > 0.0) h /= norm;
    return h;
}

RealVector random_probabilities(Eigen::Index dim, Rng& rng,
                                double floor, double gap) {
    check_dim(dim, "random_probabilities");
    const double n = static_cast<double>(dim);
    if (floor < 0.0) floor = 0.1 / n;
    if (gap < 0.0) gap = 0.05 / n;
    // A spectrum meeting both constraints has total at least
    // dim·floor + gap·dim(dim−1)/2; demand headroom so rejection converges.
    const double min_sum = n * floor + gap * n * (n - 1.0) / 2.0;
    if (min_sum >= 0.8) {
        std::ostringstream msg;
        msg << "random_probabilities: floor " << floor << " and gap " << gap
            << " leave too little simplex volume for dimension " << dim;
        throw RangeError(msg.str());
    }
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        RealVector p(dim);
        double sum = 0.0;
        for (Eigen::Index i = 0; i < dim; ++i) {
            p[i] = -std::log(1.0 - uniform(rng));  // exponential → flat simplex
            sum += p[i];
        }
        p /= sum;
        bool ok = true;
        for (Eigen::Index i = 0; i < dim && ok; ++i) {
            if (p[i] < floor) ok = false;
            for (Eigen::Index j = i + 1; j < dim && ok; ++j) {
                if (std::abs(p[i] - p[j]) < gap) ok = false;
            }
        }
        if (ok) {
            std::sort(p.data(), p.data() + p.size(), std::greater<double>());
            return p;
        }
    }
    std::ostringstream msg;
    msg << "random_probabilities: rejection sampling failed for dim " << dim
        << ", floor " << floor << ", gap " << gap;
    throw NumericError(msg.str());
}

DensityMatrix random_density(Eigen::Index dim, Rng& rng,
                             double floor, double gap) {
    const RealVector p = random_probabilities(dim, rng, floor, gap);
    const ComplexMatrix u = random_unitary(dim, rng);
    const ComplexMatrix rho = u * p.cast<Complex>().asDiagonal() * u.adjoint();
    return validate_density(0.5 * (rho + rho.adjoint().eval()));
}

Povm random_projective_povm(Eigen::Index dim, Rng& rng) {
    const ComplexMatrix u = random_unitary(dim, rng);
    std::vector<ComplexMatrix> elements;
    elements.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Eigen::VectorXcd col = u.col(j);
        ComplexMatrix proj = col * col.adjoint();
        elements.push_back(0.5 * (proj + proj.adjoint().eval()));
    }
    return Povm(std::move(elements));
}

FamilyDraw random_unitary_family(Eigen::Index dim, Rng& rng) {
    check_dim(dim, "random_unitary_family");
    const DensityMatrix rho0 = random_density(dim, rng);
    const HermitianMatrix g1(random_hermitian(dim, rng, /*traceless=*/true));
    const HermitianMatrix g2(random_hermitian(dim, rng, /*traceless=*/true));
    std::uniform_real_distribution<double> angle(-0.4, 0.4);
    ParamPoint theta(2);
    theta << angle(rng), angle(rng);
    return FamilyDraw{models::unitary_family(rho0, g1, g2), theta};
}

} // namespace qgeom
