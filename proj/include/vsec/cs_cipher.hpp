#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "vsec/secrecy.hpp"

namespace vsec {

// Compressive-sensing cipher: the shared key seeds an m x n Gaussian measurement
// matrix, encryption is the projection y = Phi x, decryption is OMP recovery.

struct CsKey {
    std::uint64_t seed = 0;
    std::size_t n = 0;  // signal dimension
    std::size_t m = 0;  // measurements, 0 < m < n

    void validate() const;
};

struct SparseSignal {
    Eigen::VectorXd values;

    /// Throws DomainError if no entry is nonzero.
    static SparseSignal make(Eigen::VectorXd values);
    std::size_t sparsity() const;
    std::vector<std::size_t> support() const;
};

/// Apply the cipher only when channel secrecy is weak: clamped < gate.
bool should_encrypt(const SecrecyResult& cs, double gate_threshold);

/// i.i.d. N(0, 1/m) entries from a stream seeded by `seed`.
Eigen::MatrixXd keygen(std::uint64_t seed, std::size_t n, std::size_t m);

Eigen::VectorXd encrypt(const Eigen::VectorXd& x, const CsKey& key);
Eigen::VectorXd encrypt(const SparseSignal& x, const CsKey& key);

/// Orthogonal matching pursuit against a given measurement matrix: k greedy picks of
/// the column most correlated with the residual, each followed by least squares on
/// the support. Throws RecoveryError on a rank-deficient support.
SparseSignal omp_recover(const Eigen::MatrixXd& phi, const Eigen::VectorXd& y, std::size_t k);

SparseSignal decrypt(const Eigen::VectorXd& y, const CsKey& key, std::size_t k);

/// Random k-sparse vector: uniform support, N(0, 1) amplitudes.
Eigen::VectorXd random_sparse(std::size_t n, std::size_t k, std::mt19937_64& rng);

double relative_error(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth);

}  // namespace vsec
