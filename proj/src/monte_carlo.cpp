#include "rectfree/monte_carlo.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace rectfree {

namespace {

// Monic coefficients (decreasing degree) from eigenvalues, long double
// accumulation; tiny negative eigenvalues from the symmetric solver are
// clamped to zero.
std::vector<double> coeffs_from_eigenvalues(const Eigen::VectorXd& ev) {
    std::vector<long double> acc{1.0L};
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const long double r = std::max(0.0, ev(i));
        acc.push_back(0.0L);
        for (std::size_t k = acc.size() - 1; k >= 1; --k) acc[k] -= r * acc[k - 1];
    }
    std::vector<double> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<double>(acc[i]);
    return out;
}

// Per-chunk Welford statistics; chunks combine in index order by Chan's
// parallel update, so constant samples keep an exact zero variance and the
// result is bit-identical for any worker count.
struct ChunkStats {
    long double count = 0.0L;
    std::vector<long double> mean;
    std::vector<long double> m2;
    std::vector<std::vector<double>> rows;  // per-sample coefficients, only when dumping
};

ChunkStats run_chunk(const RectMatrix& a, const RectMatrix& b, std::int64_t count,
                     std::uint64_t seed, std::uint64_t chunk_index, bool keep_rows) {
    const int m = static_cast<int>(a.rows());
    const int d = static_cast<int>(a.cols());
    Xoshiro256pp rng = Xoshiro256pp::chunk_stream(seed, chunk_index);

    ChunkStats out;
    out.mean.assign(static_cast<std::size_t>(d) + 1, 0.0L);
    out.m2.assign(static_cast<std::size_t>(d) + 1, 0.0L);
    if (keep_rows) out.rows.reserve(static_cast<std::size_t>(count));

    Eigen::MatrixXd mmat(m, d), gram(d, d);
    for (std::int64_t s = 0; s < count; ++s) {
        const Eigen::MatrixXd q = haar_orthogonal(m, rng);
        const Eigen::MatrixXd r = haar_orthogonal(d, rng);
        mmat.noalias() = a + q * b * r.transpose();
        gram.noalias() = mmat.transpose() * mmat;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
        if (eig.info() != Eigen::Success)
            throw std::runtime_error("empirical_convolution: eigenvalue solver failed");
        const std::vector<double> coeffs = coeffs_from_eigenvalues(eig.eigenvalues());
        out.count += 1.0L;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            const long double delta = coeffs[k] - out.mean[k];
            out.mean[k] += delta / out.count;
            out.m2[k] += delta * (coeffs[k] - out.mean[k]);
        }
        if (keep_rows) out.rows.push_back(coeffs);
    }
    return out;
}

void combine_stats(ChunkStats& acc, const ChunkStats& part) {
    if (part.count == 0.0L) return;
    if (acc.count == 0.0L) {
        acc.count = part.count;
        acc.mean = part.mean;
        acc.m2 = part.m2;
        return;
    }
    const long double total = acc.count + part.count;
    for (std::size_t k = 0; k < acc.mean.size(); ++k) {
        const long double delta = part.mean[k] - acc.mean[k];
        acc.m2[k] += part.m2[k] + delta * delta * acc.count * part.count / total;
        acc.mean[k] += delta * part.count / total;
    }
    acc.count = total;
}

}  // namespace

Eigen::MatrixXd haar_orthogonal(int n, Xoshiro256pp& rng) {
    if (n < 1) throw std::invalid_argument("haar_orthogonal: n must be >= 1");
    Eigen::MatrixXd g(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) g(i, j) = rng.next_gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd& qr_packed = qr.matrixQR();
    for (int j = 0; j < n; ++j)
        if (qr_packed(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

RectMatrix matrix_from_poly(const NonnegPoly& p, const RectParams& params) {
    if (p.degree() != params.d)
        throw std::invalid_argument("matrix_from_poly: polynomial degree must equal d");
    RectMatrix a = RectMatrix::Zero(params.m, params.d);
    const std::vector<double>& roots = p.roots().values;
    for (int i = 0; i < params.d; ++i)
        a(i, i) = std::sqrt(std::max(0.0, roots[static_cast<std::size_t>(i)]));
    return a;
}

NonnegPoly char_poly_gram(const RectMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.transpose() * m,
                                                       Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("char_poly_gram: eigenvalue solver failed");
    std::vector<double> roots(static_cast<std::size_t>(eig.eigenvalues().size()));
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
        roots[static_cast<std::size_t>(i)] = std::max(0.0, eig.eigenvalues()(i));
    return NonnegPoly::from_roots(std::move(roots));
}

EmpiricalConv empirical_convolution_matrices(const RectMatrix& a, const RectMatrix& b,
                                             std::int64_t n_samples, std::uint64_t seed,
                                             const McOptions& options) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("empirical_convolution: matrix shapes differ");
    if (a.rows() < a.cols())
        throw std::invalid_argument("empirical_convolution: need rows >= cols");
    if (n_samples < 1) throw std::invalid_argument("empirical_convolution: n_samples must be >= 1");
    const std::size_t chunk_size = options.chunk_size == 0 ? 1024 : options.chunk_size;
    const int d = static_cast<int>(a.cols());

    const std::int64_t n_chunks =
        (n_samples + static_cast<std::int64_t>(chunk_size) - 1) /
        static_cast<std::int64_t>(chunk_size);
    const bool dump = options.sample_sink != nullptr;

    int workers = options.workers;
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<std::int64_t>(workers, n_chunks));

    std::vector<ChunkStats> chunks(static_cast<std::size_t>(n_chunks));
    const auto worker = [&](int w) {
        for (std::int64_t c = w; c < n_chunks; c += workers) {
            const std::int64_t first = c * static_cast<std::int64_t>(chunk_size);
            const std::int64_t count =
                std::min<std::int64_t>(static_cast<std::int64_t>(chunk_size), n_samples - first);
            chunks[static_cast<std::size_t>(c)] =
                run_chunk(a, b, count, seed, static_cast<std::uint64_t>(c), dump);
        }
    };
    if (workers <= 1) {
        worker(0);
    } else {
        std::vector<std::future<void>> futs;
        futs.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            futs.push_back(std::async(std::launch::async, worker, w));
        for (auto& f : futs) f.get();
    }

    // Ordered reduction over chunk index; independent of the worker schedule.
    ChunkStats total;
    total.mean.assign(static_cast<std::size_t>(d) + 1, 0.0L);
    total.m2.assign(static_cast<std::size_t>(d) + 1, 0.0L);
    for (const ChunkStats& c : chunks) combine_stats(total, c);

    if (dump) {
        std::ostream& os = *options.sample_sink;
        os << "sample";
        for (int k = 0; k <= d; ++k) os << ",c" << k;
        os << "\n";
        std::int64_t row = 0;
        os.precision(17);
        for (const ChunkStats& c : chunks)
            for (const std::vector<double>& coeffs : c.rows) {
                os << row++;
                for (double v : coeffs) os << "," << v;
                os << "\n";
            }
    }

    EmpiricalConv out;
    out.n_samples = n_samples;
    out.seed = seed;
    out.chunk_size = chunk_size;
    out.mean_coeffs.resize(static_cast<std::size_t>(d) + 1);
    out.stderr_coeffs.assign(static_cast<std::size_t>(d) + 1, 0.0);
    const long double n = static_cast<long double>(n_samples);
    for (std::size_t k = 0; k <= static_cast<std::size_t>(d); ++k) {
        out.mean_coeffs[k] = static_cast<double>(total.mean[k]);
        if (n_samples > 1)
            out.stderr_coeffs[k] = static_cast<double>(
                std::sqrt(static_cast<double>(total.m2[k] / ((n - 1.0L) * n))));
    }
    out.mean_coeffs[0] = 1.0;
    out.stderr_coeffs[0] = 0.0;
    return out;
}

EmpiricalConv empirical_convolution(const NonnegPoly& p, const NonnegPoly& q,
                                    const RectParams& params, std::int64_t n_samples,
                                    std::uint64_t seed, const McOptions& options) {
    return empirical_convolution_matrices(matrix_from_poly(p, params),
                                          matrix_from_poly(q, params), n_samples, seed, options);
}

}  // namespace rectfree
