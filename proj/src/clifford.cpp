#include "subdirac/clifford.hpp"

#include <bit>
#include <sstream>

namespace subdirac {

std::pair<Word, GaussianRational> canonicalize(const Dims& d, const Word& w,
                                               const GaussianRational& coeff) {
    for (const auto& g : w) g.validate(d);

    Word out;
    out.reserve(w.size());
    int sign = 1;
    for (const auto& g : w) {
        const int slot = g.slot(d);
        // insertion sort with anticommutation signs; an equal neighbour
        // contracts to the square sign
        std::size_t pos = out.size();
        bool contracted = false;
        while (pos > 0) {
            const int other = out[pos - 1].slot(d);
            if (other < slot) break;
            if (other == slot) {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos) - 1);
                sign *= g.square_sign();
                contracted = true;
                break;
            }
            sign = -sign; // swap past a strictly larger generator
            --pos;
        }
        if (!contracted) out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), g);
    }

    GaussianRational c = coeff;
    if (sign < 0) c = -c;
    return {std::move(out), std::move(c)};
}

WordMask word_to_mask(const Dims& d, const Word& w) {
    WordMask mask = 0;
    int prev = -1;
    for (const auto& g : w) {
        const int slot = g.slot(d);
        if (slot <= prev) throw input_error("word_to_mask: word is not canonical");
        mask |= WordMask{1} << slot;
        prev = slot;
    }
    return mask;
}

Word mask_to_word(const Dims& d, WordMask mask) {
    Word w;
    for (int slot = 0; slot < d.generator_count(); ++slot) {
        if (!(mask >> slot & 1)) continue;
        if (slot < d.leaf_rank())
            w.push_back(Generator::leaf_c(slot + 1));
        else if (slot < d.leaf_rank() + d.q)
            w.push_back(Generator::normal_c(slot - d.leaf_rank() + 1));
        else
            w.push_back(Generator::normal_hat(slot - d.leaf_rank() - d.q + 1));
    }
    return w;
}

AlgebraElement AlgebraElement::identity(const Dims& d) {
    AlgebraElement e(d);
    e.terms_[0] = GaussianRational(1);
    return e;
}

AlgebraElement AlgebraElement::generator(const Dims& d, const Generator& g) {
    g.validate(d);
    AlgebraElement e(d);
    e.terms_[WordMask{1} << g.slot(d)] = GaussianRational(1);
    return e;
}

AlgebraElement AlgebraElement::from_word(const Dims& d, const Word& w,
                                         const GaussianRational& coeff) {
    auto [canon, c] = canonicalize(d, w, coeff);
    AlgebraElement e(d);
    if (!c.is_zero()) e.terms_[word_to_mask(d, canon)] = std::move(c);
    return e;
}

GaussianRational AlgebraElement::coefficient(WordMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? GaussianRational() : it->second;
}

void AlgebraElement::add_term(WordMask mask, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(mask, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    if (dims_ != o.dims_) throw dimension_error("algebra element dims mismatch in +");
    for (const auto& [mask, c] : o.terms_) add_term(mask, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    if (dims_ != o.dims_) throw dimension_error("algebra element dims mismatch in -");
    for (const auto& [mask, c] : o.terms_) add_term(mask, -c);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(const GaussianRational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [mask, c] : terms_) c *= s;
    return *this;
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement e(dims_);
    for (const auto& [mask, c] : terms_) e.terms_[mask] = -c;
    return e;
}

std::string AlgebraElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mask, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (const auto& g : mask_to_word(dims_, mask)) os << "*" << g.str();
        if (mask == 0) os << "*1";
    }
    return os.str();
}

namespace {

// number of crossings when interleaving the sorted word b under the sorted
// word a: pairs (i in a, j in b) with j < i
int reorder_parity(WordMask a, WordMask b) {
    int swaps = 0;
    a >>= 1;
    while (a) {
        swaps += std::popcount(a & b);
        a >>= 1;
    }
    return swaps & 1;
}

} // namespace

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.dims() != b.dims()) throw dimension_error("algebra element dims mismatch in mul");
    const Dims& d = a.dims();
    // generators with negative square occupy the low 2p + q slots
    const WordMask minus_mask = (WordMask{1} << (d.leaf_rank() + d.q)) - 1;

    AlgebraElement out(d);
    for (const auto& [wa, ca] : a.terms()) {
        for (const auto& [wb, cb] : b.terms()) {
            int parity = reorder_parity(wa, wb);
            parity ^= std::popcount(wa & wb & minus_mask) & 1;
            GaussianRational c = ca * cb;
            if (parity) c = -c;
            out.add_term(wa ^ wb, c);
        }
    }
    return out;
}

GaussianRational trace(const AlgebraElement& e) {
    GaussianRational c = e.coefficient(0);
    mpz_class dim = mpz_class(1) << (e.dims().p + e.dims().q);
    c.re *= dim;
    c.im *= dim;
    return c;
}

AlgebraElement volume_element(const Dims& d) {
    Word w;
    for (int s = 1; s <= d.q; ++s) w.push_back(Generator::normal_c(s));
    const long k = static_cast<long>(d.q) * (d.q + 1) / 2;
    // (-i)^k = conjugate of i^k
    return AlgebraElement::from_word(d, w, GaussianRational::i_power(k).conj());
}

AlgebraElement gamma5(const Dims& d) {
    if (d.m() != 4)
        throw unsupported_dimension_error("gamma5 requires ambient dimension 4, got " +
                                          std::to_string(d.m()));
    Word w;
    for (int a = 1; a <= 4; ++a) w.push_back(Generator::ambient_c(d, a));
    return AlgebraElement::from_word(d, w);
}

AlgebraElement volume_involution(const Dims& d) {
    const int m = d.m();
    if (m % 2 != 0) throw unsupported_dimension_error("volume involution needs even m");
    Word w;
    for (int a = 1; a <= m; ++a) w.push_back(Generator::ambient_c(d, a));
    // (e_1...e_m)^2 = (-1)^(m(m+1)/2); compensate so the square is +1
    const bool needs_i = (m % 4) == 2;
    return AlgebraElement::from_word(d, w,
                                     needs_i ? GaussianRational::unit_i() : GaussianRational(1));
}

} // namespace subdirac
