#include "vsec/cs_cipher.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vsec/errors.hpp"

namespace vsec {

void CsKey::validate() const {
    if (n == 0 || m == 0) throw DomainError("cs key: dimensions must be > 0");
    if (m >= n) throw DomainError("cs key: need m < n (no compression otherwise)");
}

SparseSignal SparseSignal::make(Eigen::VectorXd values) {
    SparseSignal s{std::move(values)};
    if (s.sparsity() == 0) throw DomainError("sparse signal needs at least one nonzero entry");
    return s;
}

std::size_t SparseSignal::sparsity() const {
    return static_cast<std::size_t>((values.array() != 0.0).count());
}

std::vector<std::size_t> SparseSignal::support() const {
    std::vector<std::size_t> out;
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (values[i] != 0.0) out.push_back(static_cast<std::size_t>(i));
    return out;
}

bool should_encrypt(const SecrecyResult& cs, double gate_threshold) {
    if (!(gate_threshold >= 0.0)) throw DomainError("gate threshold must be >= 0");
    return cs.clamped < gate_threshold;
}

Eigen::MatrixXd keygen(std::uint64_t seed, std::size_t n, std::size_t m) {
    CsKey{seed, n, m}.validate();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    Eigen::MatrixXd phi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    for (Eigen::Index r = 0; r < phi.rows(); ++r)
        for (Eigen::Index c = 0; c < phi.cols(); ++c) phi(r, c) = scale * normal(rng);
    return phi;
}

Eigen::VectorXd encrypt(const Eigen::VectorXd& x, const CsKey& key) {
    key.validate();
    if (static_cast<std::size_t>(x.size()) != key.n)
        throw DomainError("encrypt: signal has dimension " + std::to_string(x.size()) + ", key expects " +
                          std::to_string(key.n));
    return keygen(key.seed, key.n, key.m) * x;
}

Eigen::VectorXd encrypt(const SparseSignal& x, const CsKey& key) { return encrypt(x.values, key); }

SparseSignal omp_recover(const Eigen::MatrixXd& phi, const Eigen::VectorXd& y, std::size_t k) {
    if (y.size() != phi.rows()) throw DomainError("omp: measurement length does not match the matrix");
    if (k == 0) throw DomainError("omp: sparsity must be >= 1");
    if (k > static_cast<std::size_t>(phi.rows())) throw DomainError("omp: sparsity exceeds measurement count");

    const Eigen::VectorXd norms = phi.colwise().norm().transpose();
    std::vector<Eigen::Index> support;
    std::vector<bool> used(static_cast<std::size_t>(phi.cols()), false);
    Eigen::VectorXd residual = y;
    Eigen::VectorXd coeffs;

    for (std::size_t iter = 0; iter < k; ++iter) {
        const Eigen::VectorXd corr = (phi.transpose() * residual).cwiseAbs().cwiseQuotient(norms);
        Eigen::Index pick = -1;
        for (Eigen::Index j = 0; j < corr.size(); ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            if (pick < 0 || corr[j] > corr[pick]) pick = j;
        }
        used[static_cast<std::size_t>(pick)] = true;
        support.push_back(pick);

        Eigen::MatrixXd sub(phi.rows(), static_cast<Eigen::Index>(support.size()));
        for (std::size_t s = 0; s < support.size(); ++s) sub.col(static_cast<Eigen::Index>(s)) = phi.col(support[s]);
        const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
        if (qr.rank() < sub.cols())
            throw RecoveryError("omp: selected support of size " + std::to_string(sub.cols()) + " is rank deficient");
        coeffs = qr.solve(y);
        residual = y - sub * coeffs;
    }

    Eigen::VectorXd x = Eigen::VectorXd::Zero(phi.cols());
    for (std::size_t s = 0; s < support.size(); ++s) x[support[s]] = coeffs[static_cast<Eigen::Index>(s)];
    return SparseSignal{std::move(x)};
}

SparseSignal decrypt(const Eigen::VectorXd& y, const CsKey& key, std::size_t k) {
    key.validate();
    if (static_cast<std::size_t>(y.size()) != key.m)
        throw DomainError("decrypt: measurement vector has length " + std::to_string(y.size()) +
                          ", key expects " + std::to_string(key.m));
    return omp_recover(keygen(key.seed, key.n, key.m), y, k);
}

Eigen::VectorXd random_sparse(std::size_t n, std::size_t k, std::mt19937_64& rng) {
    if (k == 0 || k > n) throw DomainError("random_sparse: need 1 <= k <= n");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    // Partial Fisher-Yates for the support.
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    std::normal_distribution<double> amp(0.0, 1.0);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < k; ++i) {
        double v = 0.0;
        while (v == 0.0) v = amp(rng);
        x[static_cast<Eigen::Index>(idx[i])] = v;
    }
    return x;
}

double relative_error(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth) {
    const double denom = truth.norm();
    if (denom == 0.0) return estimate.norm();
    return (estimate - truth).norm() / denom;
}

}  // namespace vsec
