#pragma once

#include <Eigen/Dense>
#include <complex>

#include "bmera/rng.hpp"

namespace bmera {

struct UnitaryGate {
    int arity;               // number of wires k
    Eigen::MatrixXcd matrix; // chi^k x chi^k
};

// max-abs entry of (U^dag U - I)
double unitarity_error(const Eigen::MatrixXcd& u);

// max-abs entry of (M - M^dag)
double hermiticity_error(const Eigen::MatrixXcd& m);

// Haar-distributed unitary: QR of a complex Ginibre matrix with the
// R-diagonal phases absorbed. Deterministic given the stream state.
Eigen::MatrixXcd haar_unitary(int dim, Rng& rng);

// Unitary factor of the polar decomposition of m; maximizes Re tr(U^dag m)
// over unitaries. Throws std::domain_error when m is near-singular
// (smallest singular value <= 1e-12 * largest).
Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& m);

// Haar-distributed special orthogonal matrix (det +1). dim must be even.
Eigen::MatrixXd haar_so(int dim, Rng& rng);

// Principal logarithm of a special orthogonal matrix: real antisymmetric K
// with exp(K) = r. Throws std::invalid_argument if r is not special
// orthogonal to working tolerance.
Eigen::MatrixXd log_so(const Eigen::MatrixXd& r);

// exp of a real antisymmetric matrix (always special orthogonal).
Eigen::MatrixXd exp_antisymmetric(const Eigen::MatrixXd& k);

}  // namespace bmera
