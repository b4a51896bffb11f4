#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rectfree/poly.hpp"
#include "rectfree/rng.hpp"

namespace rectfree {

/// Dense real rectangular matrix, rows >= cols in this module's usage.
using RectMatrix = Eigen::MatrixXd;

/// Haar-distributed orthogonal matrix: QR of an iid standard normal matrix
/// with the columns flipped so the R factor has positive diagonal (plain QR
/// is not Haar; the sign correction fixes the distribution).
Eigen::MatrixXd haar_orthogonal(int n, Xoshiro256pp& rng);

/// m x d matrix whose top diagonal block carries sqrt(root_i); its Gram
/// characteristic polynomial is p.
RectMatrix matrix_from_poly(const NonnegPoly& p, const RectParams& params);

/// Monic degree-d characteristic polynomial of M^T M, through the symmetric
/// eigendecomposition.
NonnegPoly char_poly_gram(const RectMatrix& m);

/// Monte-Carlo estimate of an expected characteristic polynomial.
struct EmpiricalConv {
    std::vector<double> mean_coeffs;    // monic, decreasing degree, size d+1
    std::vector<double> stderr_coeffs;  // standard error of the mean, entry 0 is 0
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;
    std::size_t chunk_size = 0;
};

struct McOptions {
    std::size_t chunk_size = 1024;
    int workers = 0;                     // 0 = hardware concurrency
    std::ostream* sample_sink = nullptr; // optional CSV of per-sample coefficients
};

/// Average of char(M^T M) over samples M = A + Q B R^T with Q Haar on O(m)
/// and R Haar on O(d).  Samples are partitioned into fixed chunks with
/// independently derived RNG streams and combined in chunk order, so the
/// output is bit-identical for any worker count.
EmpiricalConv empirical_convolution_matrices(const RectMatrix& a, const RectMatrix& b,
                                             std::int64_t n_samples, std::uint64_t seed,
                                             const McOptions& options = {});

EmpiricalConv empirical_convolution(const NonnegPoly& p, const NonnegPoly& q,
                                    const RectParams& params, std::int64_t n_samples,
                                    std::uint64_t seed, const McOptions& options = {});

}  // namespace rectfree
