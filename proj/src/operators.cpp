#include "spinbath/operators.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace spinbath {

namespace {

Eigen::Matrix2cd single_pauli(PauliAxis axis) {
    Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
    switch (axis) {
        case PauliAxis::x:
            p(0, 1) = 1.0;
            p(1, 0) = 1.0;
            break;
        case PauliAxis::y:
            p(0, 1) = Complex(0.0, -1.0);
            p(1, 0) = Complex(0.0, 1.0);
            break;
        case PauliAxis::z:
            p(0, 0) = 1.0;
            p(1, 1) = -1.0;
            break;
    }
    return p;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

int popcount(std::uint64_t x) { return std::popcount(x); }

}  // namespace

HermitianOperator pauli_on_site(int n_sites, int site, PauliAxis axis) {
    if (n_sites < 1)
        throw domain_error("pauli_on_site: n_sites must be >= 1");
    if (site < 1 || site > n_sites)
        throw domain_error("pauli_on_site: site " + std::to_string(site) +
                           " outside [1, " + std::to_string(n_sites) + "]");
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(1, 1);
    for (int l = 1; l <= n_sites; ++l)
        op = kron(op, l == site ? Eigen::MatrixXcd(single_pauli(axis))
                                : Eigen::MatrixXcd(Eigen::Matrix2cd::Identity()));
    return HermitianOperator(std::move(op));
}

HermitianOperator build_m_z(int n_sites) {
    if (n_sites < 1)
        throw domain_error("build_m_z: n_sites must be >= 1");
    const Eigen::Index dim = Eigen::Index{1} << n_sites;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b)
        m(b, b) = double(n_sites - 2 * popcount(std::uint64_t(b)));
    return HermitianOperator(std::move(m));
}

HermitianOperator build_h_xy(const SpinChainParams& chain) {
    chain.validate();
    const int n = chain.n_sites;
    const double j = chain.coupling;
    const double g = chain.anisotropy;
    const double h = chain.field;
    const Eigen::Index dim = Eigen::Index{1} << n;

    Eigen::MatrixXcd ham = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b)
        ham(b, b) = -h * double(n - 2 * popcount(std::uint64_t(b)));

    // (1+g)/2 XX + (1-g)/2 YY expands to hopping (01 <-> 10, amplitude 1)
    // plus pair flips (00 <-> 11, amplitude g); the overall factor is -J.
    for (int l = 1; l <= n; ++l) {
        const int l2 = (l % n) + 1;  // periodic closure; N = 2 double-counts
        const std::uint64_t bit_a = std::uint64_t{1} << (n - l);
        const std::uint64_t bit_b = std::uint64_t{1} << (n - l2);
        for (std::uint64_t b = 0; b < std::uint64_t(dim); ++b) {
            const bool a_down = b & bit_a;
            const bool b_down = b & bit_b;
            if (a_down != b_down) {
                ham(Eigen::Index(b ^ bit_a ^ bit_b), Eigen::Index(b)) += -j;
            } else {
                ham(Eigen::Index(b ^ bit_a ^ bit_b), Eigen::Index(b)) += -j * g;
            }
        }
    }
    return HermitianOperator(std::move(ham));
}

HermitianOperator build_h_s(const TlsParams& tls) {
    tls.validate();
    Eigen::MatrixXcd h(2, 2);
    h << tls.gap / 2.0, tls.tunneling, tls.tunneling, -tls.gap / 2.0;
    return HermitianOperator(std::move(h));
}

HermitianOperator build_h_total(const TlsParams& tls, const SpinChainParams& chain,
                                const BathCoupling& coupling, int site_cap) {
    tls.validate();
    chain.validate();
    coupling.validate();
    if (chain.n_sites > site_cap)
        throw resource_error("build_h_total: n_sites = " + std::to_string(chain.n_sites) +
                             " exceeds the dense-dimension cap of " +
                             std::to_string(site_cap) + " sites (2*2^" +
                             std::to_string(site_cap) + " states)");

    const Eigen::Index bath_dim = Eigen::Index{1} << chain.n_sites;
    const Eigen::Index dim = 2 * bath_dim;
    const Eigen::MatrixXcd hs = build_h_s(tls).matrix();
    const Eigen::MatrixXcd hxy = build_h_xy(chain).matrix();
    const double gn = coupling.strength / chain.n_sites;

    Eigen::MatrixXcd ham = Eigen::MatrixXcd::Zero(dim, dim);
    for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp)
            ham.block(s * bath_dim, sp * bath_dim, bath_dim, bath_dim) =
                hs(s, sp) * Eigen::MatrixXcd::Identity(bath_dim, bath_dim);
    ham.block(0, 0, bath_dim, bath_dim) += hxy;
    ham.block(bath_dim, bath_dim, bath_dim, bath_dim) += hxy;
    // coupling acts on the |up> block only (s = 0)
    for (Eigen::Index b = 0; b < bath_dim; ++b)
        ham(b, b) += -gn * double(chain.n_sites - 2 * popcount(std::uint64_t(b)));
    return HermitianOperator(std::move(ham));
}

double commutator_norm(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim())
        throw domain_error("commutator_norm: dimension mismatch " +
                           std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    const Eigen::MatrixXcd c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    return c.cwiseAbs().maxCoeff();
}

namespace {
constexpr char kMagic[4] = {'S', 'B', 'M', 'X'};
}

void write_matrix(const std::filesystem::path& path, const HermitianOperator& op) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_matrix: cannot open " + path.string());
    out.write(kMagic, 4);
    const std::uint64_t dim = std::uint64_t(op.dim());
    out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
    for (Eigen::Index i = 0; i < op.dim(); ++i)
        for (Eigen::Index j = 0; j < op.dim(); ++j) {
            const double re = op.matrix()(i, j).real();
            const double im = op.matrix()(i, j).imag();
            out.write(reinterpret_cast<const char*>(&re), sizeof re);
            out.write(reinterpret_cast<const char*>(&im), sizeof im);
        }
    if (!out)
        throw std::runtime_error("write_matrix: write failed for " + path.string());
}

HermitianOperator read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("read_matrix: cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("read_matrix: bad magic in " + path.string());
    std::uint64_t dim = 0;
    in.read(reinterpret_cast<char*>(&dim), sizeof dim);
    if (!in || dim == 0 || dim > (std::uint64_t{1} << 20))
        throw std::runtime_error("read_matrix: implausible dimension in " + path.string());
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            double re = 0.0, im = 0.0;
            in.read(reinterpret_cast<char*>(&re), sizeof re);
            in.read(reinterpret_cast<char*>(&im), sizeof im);
            m(i, j) = Complex(re, im);
        }
    if (!in)
        throw std::runtime_error("read_matrix: truncated file " + path.string());
    return HermitianOperator(std::move(m));
}

void write_matrix_csv(const std::filesystem::path& path, const HermitianOperator& op) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_matrix_csv: cannot open " + path.string());
    out.precision(17);
    for (Eigen::Index i = 0; i < op.dim(); ++i) {
        for (Eigen::Index j = 0; j < op.dim(); ++j) {
            if (j) out << ',';
            out << op.matrix()(i, j).real() << ' ' << op.matrix()(i, j).imag();
        }
        out << '\n';
    }
}

}  // namespace spinbath
