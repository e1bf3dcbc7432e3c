#pragma once

// Independent omega-index oracle. The index i_omega of a symplectic path
// gamma (gamma' = J B(t) gamma) is computed as the renormalized Morse index
// of the first-order operator x |-> -J x' - B(t) x under the boundary
// condition x(1) = omega x(0): truncating to Fourier modes
// x = sum_k v_k e^{i(theta' + 2 pi k) t} gives a Hermitian block matrix whose
// negative-eigenvalue count, minus (2N+1) n, stabilizes at i_omega; its
// kernel dimension is nu_omega. Iterate indices follow by the Bott sum over
// m-th roots of unity. This engine never touches the iteration formulas it
// is used to check.

#include "mik/iteration.hpp"

#include <Eigen/Dense>

#include <complex>
#include <map>

namespace mik {

namespace oracle {

using ld = long double;
using cld = std::complex<ld>;
using MatC = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;

// B(t) = sum_h coeff[h] e^{2 pi i h t}, with coeff[-h] = conj(coeff[h])
struct TrigPath {
    int dim = 0;
    std::map<int, MatC> coeff;

    ld norm_est() const {
        ld s = 0;
        for (const auto& [h, m] : coeff) {
            (void)h;
            s += m.cwiseAbs().maxCoeff() * m.rows();
        }
        return s;
    }
    bool constant() const { return coeff.size() <= 1 && (coeff.empty() || coeff.begin()->first == 0); }
};

struct IndexNullity {
    long long index = 0;
    int nullity = 0;
    friend bool operator==(const IndexNullity&, const IndexNullity&) = default;
};

namespace detail {

inline MatC Jmat(int dim) {
    int h = dim / 2;
    MatC J = MatC::Zero(dim, dim);
    for (int i = 0; i < h; ++i) {
        J(i, h + i) = cld(-1, 0);
        J(h + i, i) = cld(1, 0);
    }
    return J;
}

constexpr ld zero_tol = 1e-14L;
constexpr ld gray_tol = 1e-13L;

struct Counts {
    long long neg = 0;
    int zero = 0;
};

inline Counts count_inertia(const Eigen::Matrix<ld, Eigen::Dynamic, 1>& ev) {
    Counts c;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        ld v = ev(i);
        ld a = v < 0 ? -v : v;
        if (a <= zero_tol) ++c.zero;
        else if (a < gray_tol)
            throw oracle_inconclusive("oracle: eigenvalue in ambiguity band");
        else if (v < 0) ++c.neg;
    }
    return c;
}

inline IndexNullity galerkin_pass(const TrigPath& path, ld theta_p, int N) {
    const int dim = path.dim;
    const int n_half = dim / 2;
    MatC J = Jmat(dim);
    Counts total;
    if (path.constant()) {
        MatC B0 = path.coeff.empty() ? MatC::Zero(dim, dim) : path.coeff.begin()->second;
        for (int k = -N; k <= N; ++k) {
            ld zk = theta_p + 2 * boost::math::constants::pi<ld>() * k;
            MatC H = cld(0, -zk) * J - B0;
            Eigen::SelfAdjointEigenSolver<MatC> es(H, Eigen::EigenvaluesOnly);
            Counts c = count_inertia(es.eigenvalues());
            total.neg += c.neg;
            total.zero += c.zero;
        }
    } else {
        int size = (2 * N + 1) * dim;
        MatC H = MatC::Zero(size, size);
        for (int k = -N; k <= N; ++k) {
            int ro = (k + N) * dim;
            ld zk = theta_p + 2 * boost::math::constants::pi<ld>() * k;
            H.block(ro, ro, dim, dim) = cld(0, -zk) * J;
            for (int l = -N; l <= N; ++l) {
                auto it = path.coeff.find(k - l);
                if (it == path.coeff.end()) continue;
                H.block(ro, (l + N) * dim, dim, dim) -= it->second;
            }
        }
        Eigen::SelfAdjointEigenSolver<MatC> es(H, Eigen::EigenvaluesOnly);
        total = count_inertia(es.eigenvalues());
    }
    return {total.neg - static_cast<long long>(2 * N + 1) * n_half, total.zero};
}

}  // namespace detail

// i_omega and nu_omega for omega = e^{i theta_p}
inline IndexNullity omega_index(const TrigPath& path, ld theta_p) {
    ld pi_ld = boost::math::constants::pi<ld>();
    // truncation: exact once zeta_N clears the operator norm of B; the
    // second pass at N+8 and one doubling guard against near-threshold cases
    int N = std::max(6, static_cast<int>((path.norm_est() + std::abs(theta_p)) / (2 * pi_ld)) + 3);
    for (int attempt = 0; attempt < 2; ++attempt) {
        IndexNullity a = detail::galerkin_pass(path, theta_p, N);
        IndexNullity b = detail::galerkin_pass(path, theta_p, N + 8);
        if (a == b) return a;
        N *= 2;
    }
    throw oracle_inconclusive("oracle: Galerkin truncation did not stabilize");
}

// Maslov-type index/nullity of the m-th iterate via the Bott sum
inline IndexNullity iterate_index(const TrigPath& path, long long m) {
    if (m < 1) throw domain_error("iterate_index: m must be >= 1");
    ld two_pi_ld = 2 * boost::math::constants::pi<ld>();
    IndexNullity total;
    for (long long j = 0; j < m; ++j) {
        IndexNullity r = omega_index(path, two_pi_ld * j / m);
        total.index += r.index;
        total.nullity += r.nullity;
    }
    return total;
}

// ---- standard block paths (endpoints are the basic normal forms) ---------

namespace detail {

inline MatC m2(ld a, ld b, ld c, ld d) {
    MatC m(2, 2);
    m << cld(a, 0), cld(b, 0), cld(c, 0), cld(d, 0);
    return m;
}
inline MatC sigma3() { return m2(1, 0, 0, -1); }
inline MatC sigma1() { return m2(0, 1, 1, 0); }

}  // namespace detail

// gamma(t) = exp(t theta J): endpoint R(theta)
inline TrigPath rotation_path(ld theta) {
    TrigPath p;
    p.dim = 2;
    p.coeff[0] = theta * MatC::Identity(2, 2);
    return p;
}

// gamma(t) = exp(t [[0,b],[0,0]]): endpoint N1(1,b)
inline TrigPath shear_path(ld b) {
    TrigPath p;
    p.dim = 2;
    p.coeff[0] = detail::m2(0, 0, 0, -b);
    return p;
}

// gamma(t) = exp(t diag(a,-a)), a = log(lambda): endpoint D(lambda), lambda > 0
inline TrigPath hyperbolic_path(ld lambda) {
    TrigPath p;
    p.dim = 2;
    ld a = std::log(lambda);
    p.coeff[0] = -a * detail::sigma1();
    return p;
}

// gamma(t) = exp(t pi J) exp(t K), K = [[0,-b],[0,0]]: endpoint N1(-1,b).
// B(t) = (pi + b/2) I - (b/2) cos(2 pi t) s3 - (b/2) sin(2 pi t) s1.
inline TrigPath n1_minus_path(ld b) {
    ld pi_ld = boost::math::constants::pi<ld>();
    TrigPath p;
    p.dim = 2;
    p.coeff[0] = (pi_ld + b / 2) * MatC::Identity(2, 2);
    if (b != 0) {
        MatC c1 = -(b / 4) * (detail::sigma3() - cld(0, 1) * detail::sigma1());
        p.coeff[1] = c1;
        p.coeff[-1] = c1.conjugate();
    }
    return p;
}

// gamma(t) = exp(t pi J) exp(t a s3): endpoint D(lambda), lambda < 0, a = log|lambda|.
// B(t) = pi I - a cos(2 pi t) s1 + a sin(2 pi t) s3.
inline TrigPath d_negative_path(ld lambda) {
    ld pi_ld = boost::math::constants::pi<ld>();
    ld a = std::log(-lambda);
    TrigPath p;
    p.dim = 2;
    p.coeff[0] = pi_ld * MatC::Identity(2, 2);
    MatC c1 = -(a / 2) * detail::sigma1() + cld(0, -a / 2) * detail::sigma3();
    p.coeff[1] = c1;
    p.coeff[-1] = c1.conjugate();
    return p;
}

// gamma(t) = exp(t L), L = [[theta J, Y],[0, theta J]], Y = y0 I + y3 s3 + y1 s1:
// endpoint N2(e^{i theta}, B) with B = n2_b_from_generator(theta, y0, y3, y1);
// non-trivial iff y0 > 0. Constant B(t) = [[0, theta J],[-theta J, -Y]].
inline TrigPath n2_path(ld theta, ld y0, ld y3, ld y1) {
    TrigPath p;
    p.dim = 4;
    MatC B = MatC::Zero(4, 4);
    MatC J2 = detail::m2(0, -1, 1, 0);
    MatC Y = y0 * MatC::Identity(2, 2) + y3 * detail::sigma3() + y1 * detail::sigma1();
    B.block(0, 2, 2, 2) = theta * J2;
    B.block(2, 0, 2, 2) = -theta * J2;
    B.block(2, 2, 2, 2) = -Y;
    p.coeff[0] = B;
    return p;
}

// gamma(t) = R(2 pi t) [[1,0],[c t,1]], c < 0: endpoint conjugate to N1(1,-c),
// the in-plane monodromy of a planar orbit. B(t) = (2 pi + c/2) I +
// (c/2)(cos(4 pi t) s3 + sin(4 pi t) s1).
inline TrigPath planar_orbit_path(ld c = -boost::math::constants::pi<ld>()) {
    ld pi_ld = boost::math::constants::pi<ld>();
    TrigPath p;
    p.dim = 2;
    p.coeff[0] = (2 * pi_ld + c / 2) * MatC::Identity(2, 2);
    MatC c2 = (c / 4) * (detail::sigma3() - cld(0, 1) * detail::sigma1());
    p.coeff[2] = c2;
    p.coeff[-2] = c2.conjugate();
    return p;
}

// diamond sum of paths: harmonic-wise block embedding in the q/p interleave
inline TrigPath diamond_paths(const std::vector<TrigPath>& parts) {
    int total = 0;
    for (const auto& p : parts) total += p.dim;
    int n = total / 2;
    TrigPath out;
    out.dim = total;
    int qoff = 0;
    for (const auto& p : parts) {
        int nb = p.dim / 2;
        for (const auto& [h, m] : p.coeff) {
            auto it = out.coeff.find(h);
            if (it == out.coeff.end())
                it = out.coeff.emplace(h, MatC::Zero(total, total)).first;
            MatC& dst = it->second;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    dst.block(a * n + qoff, b * n + qoff, nb, nb) =
                        m.block(a * nb, b * nb, nb, nb);
        }
        qoff += nb;
    }
    return out;
}

// standard model path for one normal-form block (endpoint = the block matrix)
inline TrigPath block_path(const NormalFormBlock& blk) {
    if (blk.is_n1()) {
        const auto& b = blk.as_n1();
        ld bv = static_cast<ld>(b.b);
        return b.lambda == 1 ? shear_path(bv) : n1_minus_path(bv);
    }
    if (blk.is_d()) {
        ld lv = static_cast<ld>(blk.as_d().lambda);
        return lv > 0 ? hyperbolic_path(lv) : d_negative_path(lv);
    }
    if (blk.is_r()) return rotation_path(static_cast<ld>(blk.as_r().theta.value()));
    const auto& b = blk.as_n2();
    ld th = static_cast<ld>(b.theta.value());
    ld s = std::sin(th);
    // recover the symmetric generator: y0 = betaJ/s, y3 = beta3*th/s, y1 = beta1*th/s
    ld b1 = static_cast<ld>(b.B[0]), b2 = static_cast<ld>(b.B[1]);
    ld b3 = static_cast<ld>(b.B[2]), b4 = static_cast<ld>(b.B[3]);
    ld y0 = (b3 - b2) / (2 * s);
    ld y3 = (b1 - b4) / 2 * th / s;
    ld y1 = (b2 + b3) / 2 * th / s;
    ld beta0 = (b1 + b4) / 2;
    if (std::abs(beta0 - y0 * std::cos(th)) > 1e-8L * (1 + std::abs(beta0)))
        throw oracle_inconclusive("oracle: no exponential path reaches this N2 block");
    return n2_path(th, y0, y3, y1);
}

inline TrigPath decomposition_path(const NormalFormDecomposition& d) {
    std::vector<TrigPath> parts;
    parts.reserve(d.blocks().size());
    for (const auto& blk : d.blocks()) parts.push_back(block_path(blk));
    return diamond_paths(parts);
}

}  // namespace oracle

// Splitting numbers by construction: explicit linear paths with endpoint in
// the block's conjugacy class, omega-indices at points rotated off omega on
// either side, differenced. delta0 = 1e-4, validated stable against 1e-6.
struct OracleSplitting {
    SplittingPair pair;
    bool stable;  // identical at both side-rotation offsets
};

inline OracleSplitting oracle_splitting(const NormalFormBlock& blk, const CirclePoint& w) {
    oracle::TrigPath path = oracle::block_path(blk);
    oracle::ld theta = static_cast<oracle::ld>(w.phase());
    auto compute = [&](oracle::ld d0) {
        long long i0 = oracle::omega_index(path, theta).index;
        long long ip = oracle::omega_index(path, theta + d0).index;
        long long im = oracle::omega_index(path, theta - d0).index;
        return SplittingPair{static_cast<int>(ip - i0), static_cast<int>(im - i0)};
    };
    SplittingPair coarse = compute(1e-4L);
    SplittingPair fine = compute(1e-6L);
    if (!(coarse == fine))
        throw oracle_inconclusive("oracle_splitting: side-rotation offset not stable");
    return {coarse, true};
}

// Maslov-type index of t -> exp(t J A) and its iterates (A symmetric):
// for such paths B(t) = A identically.
inline long long path_index_oracle(const Matrix& a, long long iterate = 1) {
    if (a.n % 2 != 0) throw domain_error("path_index_oracle: odd dimension");
    for (int i = 0; i < a.n; ++i)
        for (int j = i + 1; j < a.n; ++j)
            if (abs(a(i, j) - a(j, i)) > real_t("1e-30"))
                throw domain_error("path_index_oracle: generator must be symmetric");
    oracle::TrigPath p;
    p.dim = a.n;
    oracle::MatC B(a.n, a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            B(i, j) = oracle::cld(static_cast<oracle::ld>(a(i, j)), 0);
    p.coeff[0] = B;
    return oracle::iterate_index(p, iterate).index;
}

}  // namespace mik
