#include "bmera/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace bmera {

double unitarity_error(const Eigen::MatrixXcd& u) {
    Eigen::MatrixXcd d = u.adjoint() * u;
    d.diagonal().array() -= 1.0;
    return d.cwiseAbs().maxCoeff();
}

double hermiticity_error(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd haar_unitary(int dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("haar_unitary: dim must be >= 1");
    Eigen::MatrixXcd g(dim, dim);
    // fixed element order so equal seeds give bit-identical matrices
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const double re = rng.gaussian();
            const double im = rng.gaussian();
            g(i, j) = cplx(re, im) / std::sqrt(2.0);
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        cplx d = r(j, j);
        const double a = std::abs(d);
        q.col(j) *= (a > 0.0) ? d / a : cplx(1.0, 0.0);
    }
    return q;
}

Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("polar_unitary: m must be square");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) <= 1e-12 * std::max(1.0, s(0)))
        throw std::domain_error("polar_unitary: matrix is numerically singular");
    return svd.matrixU() * svd.matrixV().adjoint();
}

Eigen::MatrixXd haar_so(int dim, Rng& rng) {
    if (dim < 2 || dim % 2 != 0) throw std::invalid_argument("haar_so: dim must be even");
    Eigen::MatrixXd g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    if (q.determinant() < 0.0) q.col(dim - 1) = -q.col(dim - 1);
    return q;
}

Eigen::MatrixXd log_so(const Eigen::MatrixXd& r) {
    const int n = static_cast<int>(r.rows());
    if ((r * r.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10 ||
        r.determinant() < 0.0)
        throw std::invalid_argument("log_so: input is not special orthogonal");

    Eigen::RealSchur<Eigen::MatrixXd> schur(r);
    const Eigen::MatrixXd& t = schur.matrixT();
    const Eigen::MatrixXd& u = schur.matrixU();

    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    std::vector<int> minus_ones;
    int i = 0;
    while (i < n) {
        if (i + 1 < n && std::abs(t(i + 1, i)) > 1e-12) {
            // 2x2 rotation block [[c, s], [-s, c]]
            const double theta = std::atan2(t(i, i + 1), t(i, i));
            k(i, i + 1) = theta;
            k(i + 1, i) = -theta;
            i += 2;
        } else {
            if (t(i, i) < 0.0) minus_ones.push_back(i);
            i += 1;
        }
    }
    if (minus_ones.size() % 2 != 0)
        throw std::invalid_argument("log_so: determinant is -1");
    // pair up isolated -1 eigenvalues as rotations by pi
    for (size_t p = 0; p + 1 < minus_ones.size(); p += 2) {
        const int a = minus_ones[p], b = minus_ones[p + 1];
        k(a, b) = M_PI;
        k(b, a) = -M_PI;
    }
    return u * k * u.transpose();
}

Eigen::MatrixXd exp_antisymmetric(const Eigen::MatrixXd& k) {
    const int n = static_cast<int>(k.rows());
    // i*K is Hermitian; exp(K) = V e^{-i diag} V^dag is real orthogonal
    Eigen::MatrixXcd ik = cplx(0.0, 1.0) * k.cast<cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ik);
    Eigen::VectorXcd phases(n);
    for (int j = 0; j < n; ++j)
        phases(j) = std::exp(cplx(0.0, -es.eigenvalues()(j)));
    Eigen::MatrixXcd e = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    return e.real();
}

}  // namespace bmera
