#include "subdirac/matrix_rep.hpp"

#include <bit>
#include <complex>
#include <string>

namespace subdirac {

using namespace std::complex_literals;

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

CMatrix pauli_y() {
    CMatrix m(2, 2);
    m << 0, -1i, 1i, 0;
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

// gamma_(2k-1), gamma_(2k) = sigma_z^(k-1) (x) (i sigma_x or i sigma_y) (x) 1
CMatrix leaf_gamma(int p, int j) {
    const int block = (j - 1) / 2; // 0-based tensor slot
    CMatrix m = CMatrix::Identity(1, 1);
    for (int k = 0; k < p; ++k) {
        if (k < block)
            m = kron(m, pauli_z());
        else if (k == block)
            m = kron(m, 1i * ((j % 2 == 1) ? pauli_x() : pauli_y()));
        else
            m = kron(m, CMatrix::Identity(2, 2));
    }
    return m;
}

// wedge by h_s on Lambda(C^q), subsets as bitmasks, ascending factor order
CMatrix wedge_op(int q, int s) {
    const long dim = 1L << q;
    CMatrix m = CMatrix::Zero(dim, dim);
    const long bit = 1L << (s - 1);
    for (long set = 0; set < dim; ++set) {
        if (set & bit) continue;
        const int below = std::popcount(static_cast<unsigned long>(set & (bit - 1)));
        m(set | bit, set) = (below % 2 == 0) ? 1.0 : -1.0;
    }
    return m;
}

} // namespace

MatrixRep::MatrixRep(const Dims& d) : dims_(d) {
    if (d.p + d.q > max_log2_dim)
        throw resource_error("matrix model dimension 2^" + std::to_string(d.p + d.q) +
                             " exceeds the 2^" + std::to_string(max_log2_dim) + " cap");

    const long leaf_dim = 1L << d.p;
    const long normal_dim = 1L << d.q;

    CMatrix eps = CMatrix::Identity(1, 1);
    for (int k = 0; k < d.p; ++k) eps = kron(eps, pauli_z());
    grading_ = kron(eps, CMatrix::Identity(normal_dim, normal_dim));

    const CMatrix id_normal = CMatrix::Identity(normal_dim, normal_dim);
    for (int j = 1; j <= d.leaf_rank(); ++j)
        leaf_.push_back(kron(leaf_gamma(d.p, j), id_normal));

    const CMatrix id_leaf = CMatrix::Identity(leaf_dim, leaf_dim);
    for (int s = 1; s <= d.q; ++s) {
        const CMatrix w = wedge_op(d.q, s);
        const CMatrix contraction = w.adjoint();
        normal_c_.push_back(kron(eps, w - contraction));
        normal_hat_.push_back(kron(eps, w + contraction));
    }
    (void)id_leaf;
}

const CMatrix& MatrixRep::generator_matrix(const Generator& g) const {
    g.validate(dims_);
    switch (g.kind) {
        case GenKind::LeafC: return leaf_[g.index - 1];
        case GenKind::NormalC: return normal_c_[g.index - 1];
        default: return normal_hat_[g.index - 1];
    }
}

CMatrix MatrixRep::rep_of_word(const Word& w) const {
    CMatrix m = CMatrix::Identity(dim(), dim());
    for (const auto& g : w) m = m * generator_matrix(g);
    return m;
}

CMatrix MatrixRep::rep_of(const AlgebraElement& e) const {
    if (e.dims() != dims_) throw dimension_error("rep_of: element dims mismatch");
    CMatrix out = CMatrix::Zero(dim(), dim());
    for (const auto& [mask, c] : e.terms())
        out += c.to_complex() * rep_of_word(mask_to_word(dims_, mask));
    return out;
}

std::complex<double> MatrixRep::oracle_trace(const AlgebraElement& e) const {
    return rep_of(e).trace();
}

std::complex<double> MatrixRep::oracle_trace_word(const Word& w) const {
    return rep_of_word(w).trace();
}

double MatrixRep::relation_deviation() const {
    std::vector<Generator> gens;
    for (int i = 1; i <= dims_.leaf_rank(); ++i) gens.push_back(Generator::leaf_c(i));
    for (int s = 1; s <= dims_.q; ++s) gens.push_back(Generator::normal_c(s));
    for (int s = 1; s <= dims_.q; ++s) gens.push_back(Generator::normal_hat(s));

    double worst = 0.0;
    for (std::size_t a = 0; a < gens.size(); ++a) {
        for (std::size_t b = a; b < gens.size(); ++b) {
            const CMatrix& ga = generator_matrix(gens[a]);
            const CMatrix& gb = generator_matrix(gens[b]);
            CMatrix anti = ga * gb + gb * ga;
            if (a == b)
                anti -= 2.0 * gens[a].square_sign() * CMatrix::Identity(dim(), dim());
            worst = std::max(worst, anti.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

} // namespace subdirac
