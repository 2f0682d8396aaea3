#pragma once

#include <vector>

#include <Eigen/Dense>

#include "subdirac/clifford.hpp"

namespace subdirac {

using CMatrix = Eigen::MatrixXcd;

// Kronecker product, row-major block convention: out(i*rb + k, j*cb + l) = a(i,j) b(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Concrete model of the graded Clifford module on C^(2^p) (x) Lambda(C^q).
//
// The leaf factor carries 2p anti-self-adjoint gamma matrices with square -1,
// built from iterated Pauli tensor blocks, together with its grading epsilon.
// The normal factor acts on the exterior algebra over C^q (basis indexed by
// subsets as bitmasks) through wedge and contraction; c and hat-c are the
// wedge-minus and wedge-plus combinations.  Normal generators are
// pre-composed with the leaf grading so that all distinct generator images
// anticommute, realizing the graded tensor product as an ordinary one.
class MatrixRep {
public:
    explicit MatrixRep(const Dims& d);

    static constexpr int max_log2_dim = 14; // hard cap on 2^(p+q)

    const Dims& dims() const { return dims_; }
    long dim() const { return dims_.fibre_dim(); }

    const CMatrix& generator_matrix(const Generator& g) const;
    const CMatrix& grading() const { return grading_; } // S(F)-factor grading

    // image of a raw (not necessarily canonical) word, multiplied left to right
    CMatrix rep_of_word(const Word& w) const;

    CMatrix rep_of(const AlgebraElement& e) const;

    std::complex<double> oracle_trace(const AlgebraElement& e) const;
    std::complex<double> oracle_trace_word(const Word& w) const;

    // worst violation of the generator relations {g, g'} = 2 delta sigma(g);
    // used by tests to pin the representation down
    double relation_deviation() const;

private:
    Dims dims_;
    std::vector<CMatrix> leaf_;       // images of c(f_i)
    std::vector<CMatrix> normal_c_;   // images of c(h_s)
    std::vector<CMatrix> normal_hat_; // images of hat-c(h_s)
    CMatrix grading_;
};

} // namespace subdirac
