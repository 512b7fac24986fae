#include "core/fock.hpp"

#include "core/errors.hpp"
#include "core/units.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace bhc {

namespace {

void enumerate_rec(int n_modes, int remaining, std::vector<int>& cur,
                   std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n_modes - 1) {
        cur.push_back(remaining);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int n = remaining; n >= 0; --n) {
        cur.push_back(n);
        enumerate_rec(n_modes, remaining - n, cur, out);
        cur.pop_back();
    }
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

} // namespace

int FockBasis::index_of(const std::vector<int>& occ) const {
    for (int i = 0; i < dim(); ++i)
        if (states[static_cast<size_t>(i)] == occ) return i;
    return -1;
}

FockBasis enumerate_basis(int n_modes, int n_excitations) {
    if (n_modes < 1 || n_excitations < 0) throw ValidationError("enumerate_basis: need L >= 1, N >= 0");
    const double d = binom(n_excitations + n_modes - 1, n_excitations);
    if (d > 1e6) {
        std::ostringstream os;
        os << "manifold dimension " << d << " exceeds the 1e6 state capacity guard";
        throw CapacityError(os.str());
    }
    FockBasis b;
    b.n_modes = n_modes;
    b.n_excitations = n_excitations;
    if (n_modes == 3 && n_excitations == 2) {
        // reference order of the printed two-excitation matrices
        b.states = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
        return b;
    }
    std::vector<int> cur;
    enumerate_rec(n_modes, n_excitations, cur, b.states);
    // enumerate_rec emits lexicographic descending already; keep it explicit
    std::sort(b.states.begin(), b.states.end(),
              [](const auto& a, const auto& c) { return a > c; });
    return b;
}

void QuarticCoeffs::check_symmetry(double tol) const {
    const int L = n_modes;
    for (int l = 0; l < L; ++l)
        for (int p = 0; p < L; ++p)
            for (int q = 0; q < L; ++q)
                for (int s = 0; s < L; ++s) {
                    const double v = (*this)(l, p, q, s);
                    if (std::abs(v - (*this)(p, l, q, s)) > tol ||
                        std::abs(v - (*this)(l, p, s, q)) > tol ||
                        std::abs(v - (*this)(q, s, l, p)) > tol)
                        throw ValidationError("quartic coefficients violate bosonic symmetry");
                }
}

ManifoldOperator build_number_conserving_op(const FockBasis& basis,
                                            const Eigen::MatrixXd& h,
                                            const QuarticCoeffs* u) {
    const int L = basis.n_modes;
    if (h.rows() != L || h.cols() != L) throw ValidationError("quadratic coefficient matrix must be LxL");
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))
        throw ValidationError("quadratic coefficients must be Hermitian");
    if (u) {
        if (u->n_modes != L) throw ValidationError("quartic tensor mode count mismatch");
        u->check_symmetry(1e-12 * std::max(1.0, std::abs(u->flat.empty() ? 1.0 : *std::max_element(u->flat.begin(), u->flat.end(),
                              [](double a, double b) { return std::abs(a) < std::abs(b); }))));
    }

    // index lookup for this basis
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < basis.dim(); ++i) index[basis.states[static_cast<size_t>(i)]] = i;

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(basis.dim(), basis.dim());
    std::vector<int> t;
    for (int i = 0; i < basis.dim(); ++i) {
        const auto& s = basis.states[static_cast<size_t>(i)];
        for (int l = 0; l < L; ++l)
            for (int p = 0; p < L; ++p) {
                if (h(l, p) == 0.0) continue;
                if (s[static_cast<size_t>(p)] == 0) continue;
                t = s;
                double amp = std::sqrt(static_cast<double>(t[static_cast<size_t>(p)]));
                t[static_cast<size_t>(p)] -= 1;
                amp *= std::sqrt(static_cast<double>(t[static_cast<size_t>(l)] + 1));
                t[static_cast<size_t>(l)] += 1;
                m(index.at(t), i) += h(l, p) * amp;
            }
        if (!u) continue;
        for (int q = 0; q < L; ++q)
            for (int ss = 0; ss < L; ++ss) {
                if (s[static_cast<size_t>(ss)] == 0) continue;
                std::vector<int> t1 = s;
                double a1 = std::sqrt(static_cast<double>(t1[static_cast<size_t>(ss)]));
                t1[static_cast<size_t>(ss)] -= 1;
                if (t1[static_cast<size_t>(q)] == 0) continue;
                double a2 = std::sqrt(static_cast<double>(t1[static_cast<size_t>(q)]));
                t1[static_cast<size_t>(q)] -= 1;
                for (int l = 0; l < L; ++l)
                    for (int p = 0; p < L; ++p) {
                        const double c = (*u)(l, p, q, ss);
                        if (c == 0.0) continue;
                        t = t1;
                        double amp = a1 * a2 * std::sqrt(static_cast<double>(t[static_cast<size_t>(p)] + 1));
                        t[static_cast<size_t>(p)] += 1;
                        amp *= std::sqrt(static_cast<double>(t[static_cast<size_t>(l)] + 1));
                        t[static_cast<size_t>(l)] += 1;
                        m(index.at(t), i) += 0.5 * c * amp;
                    }
            }
    }

    ManifoldOperator op;
    op.matrix = 0.5 * (m + m.transpose()); // symmetrize away last-bit noise
    return op;
}

ManifoldOperator build_quadratic_op(const FockBasis& basis, const Eigen::MatrixXd& c) {
    return build_number_conserving_op(basis, c, nullptr);
}

Eigen::MatrixXd mode_annihilator(const FockBasis& from, const FockBasis& to, int mode) {
    if (to.n_excitations != from.n_excitations - 1)
        throw DomainError("mode_annihilator: target basis must have one quantum less");
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < to.dim(); ++i) index[to.states[static_cast<size_t>(i)]] = i;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(to.dim(), from.dim());
    for (int i = 0; i < from.dim(); ++i) {
        auto s = from.states[static_cast<size_t>(i)];
        if (s[static_cast<size_t>(mode)] == 0) continue;
        const double amp = std::sqrt(static_cast<double>(s[static_cast<size_t>(mode)]));
        s[static_cast<size_t>(mode)] -= 1;
        m(index.at(s), i) = amp;
    }
    return m;
}

int JointDiagonalization::total_quanta(int k) const {
    // number conservation: take the dominant basis state
    int best = 0;
    double w = 0;
    for (int i = 0; i < vectors.rows(); ++i)
        if (vectors(i, k) * vectors(i, k) > w) { w = vectors(i, k) * vectors(i, k); best = i; }
    int n = 0;
    for (int v : product_states[static_cast<size_t>(best)]) n += v;
    return n;
}

double JointDiagonalization::cavity_weight(int k) const {
    double w = 0;
    for (int i = 0; i < vectors.rows(); ++i)
        w += vectors(i, k) * vectors(i, k) * product_states[static_cast<size_t>(i)][0];
    return w;
}

JointDiagonalization exact_joint_diagonalization(const DeviceParams& p,
                                                 int max_photons,
                                                 int max_level_per_site,
                                                 double current_ma) {
    if (max_photons < 2 || max_level_per_site < 2)
        throw ValidationError("exact_joint_diagonalization: truncations must be >= 2");
    const int L = p.n_sites;
    double dim_est = max_photons + 1.0;
    for (int j = 0; j < L; ++j) dim_est *= max_level_per_site + 1.0;
    if (dim_est > 5000)
        throw CapacityError("joint diagonalization dimension exceeds the dense-solver guard (5000)");

    JointDiagonalization out;
    std::vector<int> st(static_cast<size_t>(L + 1), 0);
    // odometer enumeration of (n_cav, n_1..n_L)
    for (;;) {
        out.product_states.push_back(st);
        int k = L;
        for (; k >= 0; --k) {
            const int cap = (k == 0) ? max_photons : max_level_per_site;
            if (st[static_cast<size_t>(k)] < cap) { ++st[static_cast<size_t>(k)]; break; }
            st[static_cast<size_t>(k)] = 0;
        }
        if (k < 0) break;
    }
    const int D = static_cast<int>(out.product_states.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < D; ++i) index[out.product_states[static_cast<size_t>(i)]] = i;

    const Eigen::VectorXd w = p.freqs_at_current(current_ma);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(D, D);
    for (int i = 0; i < D; ++i) {
        const auto& s = out.product_states[static_cast<size_t>(i)];
        double e = p.cavity_freq_ghz * s[0];
        for (int j = 0; j < L; ++j) {
            const int n = s[static_cast<size_t>(j + 1)];
            e += w(j) * n + 0.5 * p.anharmonicity_ghz(j) * n * (n - 1);
        }
        H(i, i) = e;
        // hopping
        for (int a = 0; a < L; ++a)
            for (int b = 0; b < L; ++b) {
                if (a == b || p.hopping_ghz(a, b) == 0.0) continue;
                if (s[static_cast<size_t>(b + 1)] == 0 || s[static_cast<size_t>(a + 1)] >= max_level_per_site) continue;
                auto t = s;
                double amp = std::sqrt(static_cast<double>(t[static_cast<size_t>(b + 1)]));
                t[static_cast<size_t>(b + 1)] -= 1;
                amp *= std::sqrt(static_cast<double>(t[static_cast<size_t>(a + 1)] + 1));
                t[static_cast<size_t>(a + 1)] += 1;
                H(index.at(t), i) += p.hopping_ghz(a, b) * amp;
            }
        // cavity coupling, rotating-wave form
        for (int j = 0; j < L; ++j) {
            if (s[static_cast<size_t>(j + 1)] > 0 && s[0] < max_photons) { // b_j a+
                auto t = s;
                double amp = std::sqrt(static_cast<double>(t[static_cast<size_t>(j + 1)]));
                t[static_cast<size_t>(j + 1)] -= 1;
                amp *= std::sqrt(static_cast<double>(t[0] + 1));
                t[0] += 1;
                H(index.at(t), i) += p.coupling_ghz(j) * amp;
            }
            if (s[0] > 0 && s[static_cast<size_t>(j + 1)] < max_level_per_site) { // b_j+ a
                auto t = s;
                double amp = std::sqrt(static_cast<double>(t[0]));
                t[0] -= 1;
                amp *= std::sqrt(static_cast<double>(t[static_cast<size_t>(j + 1)] + 1));
                t[static_cast<size_t>(j + 1)] += 1;
                H(index.at(t), i) += p.coupling_ghz(j) * amp;
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw NumericError("joint diagonalization failed");
    out.energies_ghz = es.eigenvalues();
    out.vectors = es.eigenvectors();
    return out;
}

} // namespace bhc
