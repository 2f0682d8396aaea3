#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "subdirac/dims.hpp"
#include "subdirac/rational.hpp"

namespace subdirac {

// A word is an arbitrary product of generators, possibly unsorted and with
// repetitions.  Canonical words are strictly increasing in the generator
// order and are stored as bitmasks (bit = canonical slot of the generator).
using Word = std::vector<Generator>;
using WordMask = std::uint64_t;

// Reduce a word to its canonical form.  Adjacent transpositions of distinct
// generators cost a sign (all distinct pairs anticommute); equal neighbours
// contract to the square sign (-1 for c-generators, +1 for hats).
std::pair<Word, GaussianRational> canonicalize(const Dims& d, const Word& w,
                                               const GaussianRational& coeff = GaussianRational(1));

WordMask word_to_mask(const Dims& d, const Word& w); // requires w canonical
Word mask_to_word(const Dims& d, WordMask mask);

// Finite linear combination of canonical words with exact Gaussian-rational
// coefficients.  This is the graded Clifford module
// Cl(F) (hat-tensor) Cl(F_perp) acting on S(F) (x) Lambda(F_perp^*).
class AlgebraElement {
public:
    using Terms = std::map<WordMask, GaussianRational>;

    AlgebraElement() = default;
    explicit AlgebraElement(const Dims& d) : dims_(d) {}

    static AlgebraElement zero(const Dims& d) { return AlgebraElement(d); }
    static AlgebraElement identity(const Dims& d);
    static AlgebraElement generator(const Dims& d, const Generator& g);
    static AlgebraElement from_word(const Dims& d, const Word& w,
                                    const GaussianRational& coeff = GaussianRational(1));

    const Dims& dims() const { return dims_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    GaussianRational coefficient(WordMask mask) const;

    void add_term(WordMask mask, const GaussianRational& c);

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement& operator*=(const GaussianRational& s);

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(AlgebraElement a, const GaussianRational& s) { return a *= s; }
    friend AlgebraElement operator*(const GaussianRational& s, AlgebraElement a) { return a *= s; }
    AlgebraElement operator-() const;

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        return a.dims_ == b.dims_ && a.terms_ == b.terms_;
    }

    std::string str() const;

private:
    Dims dims_;
    Terms terms_; // zero coefficients are never stored
};

// Clifford product of canonical basis words: sign from interleaving crossings
// plus square signs on contracted generators; the resulting word is the xor.
AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);

// Normalized fibrewise trace: tr(1) = 2^(p+q) and every non-identity
// canonical word is traceless.
GaussianRational trace(const AlgebraElement& e);

// The normal volume element tau = (-i)^(q(q+1)/2) c(h_1)...c(h_q); tau^2 = 1.
AlgebraElement volume_element(const Dims& d);

// gamma5 = e_1 e_2 e_3 e_4 in ambient generators; only defined for m = 4.
AlgebraElement gamma5(const Dims& d);

// Involutive ambient volume word for any even m: a power of i times
// e_1...e_m, normalized so its square is the identity.  Coincides with gamma5
// when m = 4.
AlgebraElement volume_involution(const Dims& d);

} // namespace subdirac
