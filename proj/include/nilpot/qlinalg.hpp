#pragma once

#include "nilpot/rat.hpp"

#include <cstddef>
#include <vector>

namespace nilpot {

// Dense row-major exact matrices. Desk-scale dimensions only; no attempt at
// sparsity or modular tricks.
struct QMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> entries; // rows*cols

    QMatrix() = default;
    QMatrix(int r, int c) : rows(r), cols(c), entries(size_t(r) * c) {}

    Rat &at(int r, int c) { return entries[size_t(r) * cols + c]; }
    const Rat &at(int r, int c) const { return entries[size_t(r) * cols + c]; }

    static QMatrix identity(int n);
    bool operator==(const QMatrix &o) const = default;
};

struct ZMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Int> entries;

    ZMatrix() = default;
    ZMatrix(int r, int c) : rows(r), cols(c), entries(size_t(r) * c) {}

    Int &at(int r, int c) { return entries[size_t(r) * cols + c]; }
    const Int &at(int r, int c) const { return entries[size_t(r) * cols + c]; }

    static ZMatrix identity(int n);
    bool operator==(const ZMatrix &o) const = default;
};

ZMatrix zmul(const ZMatrix &a, const ZMatrix &b);

struct RrefResult {
    QMatrix reduced;
    std::vector<int> pivot_columns; // strictly increasing
};

// Unique reduced row echelon form (pivots 1, pivot columns cleared).
RrefResult rref(const QMatrix &m);

// Basis of the right null space, one vector per free column, each normalized
// so its first nonzero entry is 1. Count = cols - rank.
std::vector<std::vector<Rat>> kernel_basis(const QMatrix &m);

struct HnfResult {
    ZMatrix h;         // row-style HNF: pivots positive, entries above a pivot in [0, pivot)
    ZMatrix transform; // unimodular, h = transform * m
};

HnfResult hnf(const ZMatrix &m);

// Invariant factors d_1 | d_2 | ... (nonnegative, zeros trailing).
std::vector<Int> snf(const ZMatrix &m);

struct SnfResult {
    ZMatrix d;         // left * m * right = d, diagonal with divisibility chain
    ZMatrix left;      // unimodular
    ZMatrix right;     // unimodular
    ZMatrix right_inv; // right * right_inv = identity
};

SnfResult snf_with_transforms(const ZMatrix &m);

// True iff v is an integer combination of the rows; decided by HNF
// back-substitution.
bool lattice_membership(const ZMatrix &basis_rows, const std::vector<Int> &v);

} // namespace nilpot
