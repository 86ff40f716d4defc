#pragma once

#include "nilpot/quotient.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace nilpot {

// A point of the BCH group (L, o) on a quotient algebra; the element is its
// own logarithm. Identity = 0, inverse = negation.
struct MGroupElement {
    const QuotientAlgebra *alg = nullptr;
    LieElement v; // reduced (supported on adapted indices)

    bool is_identity() const { return v.is_zero(); }
    friend bool operator==(const MGroupElement &a, const MGroupElement &b)
    {
        return a.v == b.v;
    }
};

MGroupElement group_elem(const QuotientAlgebra &alg, const LieElement &v);
MGroupElement gmul(const MGroupElement &a, const MGroupElement &b);
MGroupElement ginv(const MGroupElement &a);
MGroupElement gcommutator(const MGroupElement &a, const MGroupElement &b);
MGroupElement gpower(const MGroupElement &a, const Int &k);
// Left-normed group commutator (a_1, ..., a_k).
MGroupElement gcommutator_left_normed(const std::vector<MGroupElement> &as);

// Echelonized generating sequence of a finitely generated subgroup: rows have
// strictly increasing leading adapted index and positive leading coefficient;
// every subgroup element has a unique integral normal form over the rows.
struct PolycyclicSequence {
    const QuotientAlgebra *alg = nullptr;
    std::vector<MGroupElement> rows;
    std::vector<MGroupElement> gens; // the generators the subgroup was built from

    int size() const { return int(rows.size()); }
};

PolycyclicSequence subgroup_closure(const QuotientAlgebra &alg,
                                    std::vector<MGroupElement> gens);

// Unique exponent vector with g = rows[0]^{e_0} o ... o rows[m-1]^{e_{m-1}},
// or nullopt when g is not a member.
std::optional<std::vector<Int>> collect(const PolycyclicSequence &h, const MGroupElement &g);

// Subgroup generated by all left-normed commutators of weight i..class in the
// generators of h. i = 1 returns h itself.
PolycyclicSequence gamma_subgroup(const PolycyclicSequence &h, int i);

// Isolator tau_i(h) = {g in h : g^k in gamma_i(h) for some k >= 1}, computed
// by rational saturation of gamma_i inside h. Every adjoined root is
// certified: it collects integrally over h and lies in the rational span of
// the gamma_i rows.
PolycyclicSequence isolator(const PolycyclicSequence &h, int i);

// tau_i/tau_{i+1} lattices with integer structure constants from group
// commutators. Over Q this presents L_K(G); over Z, L(G).
struct GradedLieRing {
    struct Level {
        int rank = 0;
        std::vector<MGroupElement> reps; // lattice basis representatives
        PolycyclicSequence tau;          // tau_level
        ZMatrix v, v_inv;                // SNF right transform of the relation lattice
        int torsion_cols = 0;
    };

    bool rational_scalars = false;
    std::vector<Level> levels; // degree 1..class
    std::map<std::tuple<int, int, int, int>, std::vector<Int>> sc;

    std::vector<int> ranks() const;
    // lattice coordinates of u in tau_t/tau_{t+1} (t = 1..class); u must lie
    // in tau_t
    std::vector<Int> coords(int t, const MGroupElement &u) const;
    TableAlgebra as_table() const;
};

GradedLieRing graded_ring(const PolycyclicSequence &h, bool rational_scalars);

// tau_1 .. tau_{c+1} (exposed for the verification harness).
struct IsolatorLevels {
    std::vector<PolycyclicSequence> taus;
};
IsolatorLevels isolator_levels(const PolycyclicSequence &h);

// True iff every gamma_i(h)/gamma_{i+1}(h) is torsion-free (SNF of the
// exponent lattice has no invariant factor > 1).
bool magnus_check(const PolycyclicSequence &h);

int hirsch(const PolycyclicSequence &h);

} // namespace nilpot
