#pragma once

// Basic symplectic normal forms N1(lambda,b), D(lambda), R(theta),
// N2(e^{i theta},B), their literal matrices, the diamond sum, and exact
// unit-circle eigen-data of a decomposition.

#include "mik/angle.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mik {

struct Matrix {
    int n = 0;  // n x n
    std::vector<real_t> a;

    Matrix() = default;
    explicit Matrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, real_t(0)) {}

    real_t& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const real_t& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static Matrix identity(int dim) {
        Matrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1;
        return m;
    }

    // standard symplectic form [[0,-I],[I,0]]
    static Matrix J(int half) {
        Matrix m(2 * half);
        for (int i = 0; i < half; ++i) {
            m(i, half + i) = -1;
            m(half + i, i) = 1;
        }
        return m;
    }

    Matrix transposed() const {
        Matrix t(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.n != y.n) throw domain_error("Matrix product: size mismatch");
        Matrix r(x.n);
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k) {
                const real_t& xik = x(i, k);
                if (xik == 0) continue;
                for (int j = 0; j < x.n; ++j) r(i, j) += xik * y(k, j);
            }
        return r;
    }

    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        if (x.n != y.n) throw domain_error("Matrix difference: size mismatch");
        Matrix r(x.n);
        for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
        return r;
    }

    real_t max_abs() const {
        real_t m(0);
        for (const auto& v : a)
            if (abs(v) > m) m = abs(v);
        return m;
    }
};

inline const real_t& default_symplectic_tol() {
    static const real_t t("1e-10");
    return t;
}

struct SymplecticCheck {
    bool ok;
    real_t residual;  // max-abs entry of M^T J M - J
};

inline SymplecticCheck validate_symplectic(const Matrix& m,
                                           const real_t& tol = default_symplectic_tol()) {
    if (m.n % 2 != 0) throw domain_error("validate_symplectic: odd dimension");
    Matrix Jm = Matrix::J(m.n / 2);
    real_t res = (m.transposed() * Jm * m - Jm).max_abs();
    return {res <= tol, res};
}

// ---- blocks -------------------------------------------------------------

struct BlockN1 {
    int lambda;  // +1 or -1
    real_t b;
};

struct BlockD {
    real_t lambda;  // |lambda| not in {0, 1}
};

struct BlockR {
    Angle theta;  // theta != pi
};

struct BlockN2 {
    Angle theta;                 // theta != pi
    std::array<real_t, 4> B;     // b1 b2 b3 b4, b2 != b3
    bool trivial;                // (b2-b3) sin(theta) > 0
};

class NormalFormBlock {
public:
    using Storage = std::variant<BlockN1, BlockD, BlockR, BlockN2>;

    static NormalFormBlock n1(int lambda, const real_t& b) {
        if (lambda != 1 && lambda != -1) throw domain_error("N1: lambda must be +1 or -1");
        return NormalFormBlock(BlockN1{lambda, b});
    }
    static NormalFormBlock d(const real_t& lambda) {
        if (lambda == 0 || lambda == 1 || lambda == -1)
            throw domain_error("D: lambda must satisfy |lambda| not in {0,1}");
        return NormalFormBlock(BlockD{lambda});
    }
    static NormalFormBlock r(const Angle& theta) {
        if (theta.is_pi()) throw domain_error("R: theta = pi is outside the normal-form domain");
        return NormalFormBlock(BlockR{theta});
    }
    static NormalFormBlock n2(const Angle& theta, const std::array<real_t, 4>& B) {
        if (theta.is_pi()) throw domain_error("N2: theta = pi is outside the normal-form domain");
        if (B[1] == B[2]) throw domain_error("N2: requires b2 != b3");
        real_t s = sin(theta.value());
        real_t c = cos(theta.value());
        // symplectic compatibility of [[R,B],[0,R]]: cos(theta)(b2-b3) + sin(theta)(b1+b4) = 0
        real_t scale = real_t(1) + abs(B[0]) + abs(B[1]) + abs(B[2]) + abs(B[3]);
        real_t res = abs(c * (B[1] - B[2]) + s * (B[0] + B[3]));
        if (res > default_symplectic_tol() * scale)
            throw domain_error("N2: B is not symplectically compatible with theta");
        bool trivial = (B[1] - B[2]) * s > 0;
        return NormalFormBlock(BlockN2{theta, B, trivial});
    }

    const Storage& storage() const { return v_; }

    bool is_n1() const { return std::holds_alternative<BlockN1>(v_); }
    bool is_d() const { return std::holds_alternative<BlockD>(v_); }
    bool is_r() const { return std::holds_alternative<BlockR>(v_); }
    bool is_n2() const { return std::holds_alternative<BlockN2>(v_); }

    const BlockN1& as_n1() const { return std::get<BlockN1>(v_); }
    const BlockD& as_d() const { return std::get<BlockD>(v_); }
    const BlockR& as_r() const { return std::get<BlockR>(v_); }
    const BlockN2& as_n2() const { return std::get<BlockN2>(v_); }

    int dim() const { return is_n2() ? 4 : 2; }

private:
    explicit NormalFormBlock(Storage v) : v_(std::move(v)) {}
    Storage v_;
};

// N2 matrices are built from a symmetric generator Y = y0*I + y3*s3 + y1*s1;
// B = y0*R(theta) + (sin(theta)/theta)*(y3*s3 + y1*s1) is then symplectically
// compatible by construction, non-trivial iff y0 > 0.
inline std::array<real_t, 4> n2_b_from_generator(const Angle& theta, const real_t& y0,
                                                 const real_t& y3, const real_t& y1) {
    real_t th = theta.value();
    real_t s = sin(th), c = cos(th);
    real_t w = s / th;
    return {y0 * c + w * y3, -y0 * s + w * y1, y0 * s + w * y1, y0 * c - w * y3};
}

inline Matrix block_matrix(const NormalFormBlock& blk) {
    if (blk.is_n1()) {
        const auto& b = blk.as_n1();
        Matrix m(2);
        m(0, 0) = b.lambda;
        m(0, 1) = b.b;
        m(1, 1) = b.lambda;
        return m;
    }
    if (blk.is_d()) {
        const auto& b = blk.as_d();
        Matrix m(2);
        m(0, 0) = b.lambda;
        m(1, 1) = 1 / b.lambda;
        return m;
    }
    if (blk.is_r()) {
        const auto& b = blk.as_r();
        real_t c = cos(b.theta.value()), s = sin(b.theta.value());
        Matrix m(2);
        m(0, 0) = c;
        m(0, 1) = -s;
        m(1, 0) = s;
        m(1, 1) = c;
        return m;
    }
    const auto& b = blk.as_n2();
    real_t c = cos(b.theta.value()), s = sin(b.theta.value());
    Matrix m(4);
    m(0, 0) = c;  m(0, 1) = -s;  m(0, 2) = b.B[0];  m(0, 3) = b.B[1];
    m(1, 0) = s;  m(1, 1) = c;   m(1, 2) = b.B[2];  m(1, 3) = b.B[3];
    m(2, 2) = c;  m(2, 3) = -s;
    m(3, 2) = s;  m(3, 3) = c;
    return m;
}

// diamond sum: quadrant interleave of two symplectic matrices
inline Matrix diamond_sum(const Matrix& x, const Matrix& y) {
    if (x.n % 2 != 0 || y.n % 2 != 0) throw domain_error("diamond_sum: odd dimension");
    int i = x.n / 2, j = y.n / 2, n = i + j;
    Matrix r(2 * n);
    auto put = [&](int roff, int coff, const Matrix& src, int rq, int cq, int sz) {
        int half = src.n / 2;
        for (int a = 0; a < sz; ++a)
            for (int b = 0; b < sz; ++b)
                r(roff + a, coff + b) = src(rq * half + a, cq * half + b);
    };
    // quadrants (A B; C D) of x land at block rows/cols {0, i}, of y at {i, i+j} within q/p halves
    for (int rq = 0; rq < 2; ++rq)
        for (int cq = 0; cq < 2; ++cq) {
            put(rq * n, cq * n, x, rq, cq, i);
            put(rq * n + i, cq * n + i, y, rq, cq, j);
        }
    return r;
}

class NormalFormDecomposition {
public:
    NormalFormDecomposition(std::vector<NormalFormBlock> blocks, int half_dim)
        : blocks_(std::move(blocks)), n_(half_dim) {
        int total = 0;
        for (const auto& b : blocks_) total += b.dim();
        if (total != 2 * n_)
            throw domain_error("NormalFormDecomposition: block dimensions sum to " +
                               std::to_string(total) + ", expected " + std::to_string(2 * n_));
    }

    const std::vector<NormalFormBlock>& blocks() const { return blocks_; }
    int half_dim() const { return n_; }

    Matrix matrix() const {
        Matrix m;
        bool first = true;
        for (const auto& b : blocks_) {
            Matrix bm = block_matrix(b);
            m = first ? bm : diamond_sum(m, bm);
            first = false;
        }
        return m;
    }

private:
    std::vector<NormalFormBlock> blocks_;
    int n_;
};

// geometric multiplicities on the unit circle, exactly per block
inline std::map<CirclePoint, int> spectrum_on_circle(const NormalFormDecomposition& d) {
    std::map<CirclePoint, int> out;
    auto add = [&](const CirclePoint& p, int nu) { out[p] += nu; };
    for (const auto& blk : d.blocks()) {
        if (blk.is_n1()) {
            const auto& b = blk.as_n1();
            CirclePoint p = b.lambda == 1 ? CirclePoint::one() : CirclePoint::minus_one();
            add(p, b.b == 0 ? 2 : 1);
        } else if (blk.is_r()) {
            const auto& b = blk.as_r();
            add(CirclePoint::at(b.theta), 1);
            add(CirclePoint::at(b.theta.conjugate()), 1);
        } else if (blk.is_n2()) {
            const auto& b = blk.as_n2();
            add(CirclePoint::at(b.theta), 1);
            add(CirclePoint::at(b.theta.conjugate()), 1);
        }
        // D blocks carry no unit-circle spectrum
    }
    return out;
}

// total algebraic multiplicity across the whole spectrum, on and off U
inline int algebraic_multiplicity_total(const NormalFormDecomposition& d) {
    int total = 0;
    for (const auto& blk : d.blocks()) total += blk.dim();
    return total;
}

}  // namespace mik
