#pragma once

#include "nilpot/freelie.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace nilpot {

using SparseVec = std::vector<std::pair<int, Rat>>; // sorted by index, no zeros

// Precomputed brackets of basis pairs. Entries are stored for i < j (basis
// order) with degree(i)+degree(j) <= c; antisymmetry and truncation are
// applied on lookup.
struct StructureTable {
    const HallBasis *basis = nullptr;
    std::unordered_map<uint64_t, SparseVec> entries;

    static uint64_t key(int i, int j) { return (uint64_t(uint32_t(i)) << 32) | uint32_t(j); }

    // [e_i, e_j] for arbitrary i, j, expanded in the basis.
    SparseVec bracket_pair(int i, int j) const;

    bool operator==(const StructureTable &o) const { return entries == o.entries; }
};

enum class TableEngine {
    Auto,          // ParallelLift for large bases when OpenMP is available
    SerialRewrite, // recursive Lyndon rewriting, the reference implementation
    ParallelLift,  // tensor-algebra lifts decomposed per pair, OpenMP
};

StructureTable build_structure_table(const HallBasis &basis,
                                     TableEngine engine = TableEngine::Auto);

// Bilinear expansion through the table. Arguments must share a basis.
LieElement bracket(const StructureTable &t, const LieElement &u, const LieElement &v);

// Left-normed bracket [u_1,...,u_k] = [[u_1,u_2],...,u_k].
LieElement bracket_left_normed(const StructureTable &t, const std::vector<LieElement> &us);

// The unique Lie-homomorphism extension: u's basis elements are expanded
// through their bracketing trees with generator g of u.basis mapped to
// images[g-1] (elements of the target algebra). u may live over a different
// basis than the target; brackets beyond the target class truncate to zero.
LieElement substitute(const StructureTable &target, const std::vector<LieElement> &images,
                      const LieElement &u);

// Jacobi identity on basis triples: all triples of total degree <= 3, plus a
// pseudorandom sample of the rest (deterministic in (n,c)). Used to certify
// cached tables on load.
bool jacobi_certify(const StructureTable &t, double sample_fraction = 0.01);

// Exhaustive antisymmetry + Jacobi sweep (test-grade, small bases).
bool jacobi_full_check(const StructureTable &t);

} // namespace nilpot
