#pragma once

#include <cstdint>
#include <string>

#include "subdirac/errors.hpp"

namespace subdirac {

// Dimension data of a foliated configuration: the leaf distribution has even
// rank 2p, the normal bundle has even rank q, the ambient manifold has
// dimension m = 2p + q.
struct Dims {
    int p = 1;
    int q = 2;

    Dims() = default;
    Dims(int p_, int q_) : p(p_), q(q_) { validate(); }

    void validate() const {
        if (p < 1) throw input_error("Dims: p must be >= 1, got " + std::to_string(p));
        if (q < 2 || q % 2 != 0)
            throw input_error("Dims: q must be even and >= 2, got " + std::to_string(q));
    }

    int m() const { return 2 * p + q; }
    int leaf_rank() const { return 2 * p; }
    int generator_count() const { return 2 * p + 2 * q; }

    // dimension 2^(p+q) of the model fibre S(F) (x) Lambda(F_perp^*)
    long fibre_dim() const { return 1L << (p + q); }

    friend bool operator==(const Dims& a, const Dims& b) { return a.p == b.p && a.q == b.q; }
    friend bool operator!=(const Dims& a, const Dims& b) { return !(a == b); }

    std::string str() const { return "(p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")"; }
};

enum class GenKind : std::uint8_t {
    LeafC = 0,    // c(f_i), i = 1..2p, squares to -1
    NormalC = 1,  // c(h_s), s = 1..q, squares to -1
    NormalHat = 2 // \hat c(h_s), s = 1..q, squares to +1
};

// A single Clifford generator.  Canonical order: all c(f_i) first, then all
// c(h_s), then all hat-c(h_s), each family ordered by index.
struct Generator {
    GenKind kind = GenKind::LeafC;
    int index = 1; // 1-based within its family

    Generator() = default;
    Generator(GenKind k, int i) : kind(k), index(i) {}

    static Generator leaf_c(int i) { return {GenKind::LeafC, i}; }
    static Generator normal_c(int s) { return {GenKind::NormalC, s}; }
    static Generator normal_hat(int s) { return {GenKind::NormalHat, s}; }

    // the ambient frame map: e_i = f_i for i <= 2p, e_(2p+s) = h_s
    static Generator ambient_c(const Dims& d, int a) {
        if (a < 1 || a > d.m())
            throw input_error("ambient index out of range: " + std::to_string(a));
        return a <= d.leaf_rank() ? leaf_c(a) : normal_c(a - d.leaf_rank());
    }

    void validate(const Dims& d) const {
        const int limit = (kind == GenKind::LeafC) ? d.leaf_rank() : d.q;
        if (index < 1 || index > limit)
            throw input_error("generator index out of range for " + d.str());
    }

    // position in the canonical total order, 0-based
    int slot(const Dims& d) const {
        switch (kind) {
            case GenKind::LeafC: return index - 1;
            case GenKind::NormalC: return d.leaf_rank() + index - 1;
            default: return d.leaf_rank() + d.q + index - 1;
        }
    }

    // sign of the generator's square: -1 for both c-families, +1 for hats
    int square_sign() const { return kind == GenKind::NormalHat ? +1 : -1; }

    friend bool operator==(const Generator& a, const Generator& b) {
        return a.kind == b.kind && a.index == b.index;
    }

    std::string str() const {
        switch (kind) {
            case GenKind::LeafC: return "c(f" + std::to_string(index) + ")";
            case GenKind::NormalC: return "c(h" + std::to_string(index) + ")";
            default: return "ch(h" + std::to_string(index) + ")";
        }
    }
};

} // namespace subdirac
