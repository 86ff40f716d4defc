#pragma once

#include "nilpot/rat.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nilpot {

// Words over the alphabet '1'..'9' (generator i printed as the digit i).
// Rank is capped at 9 so that the word serialization "13" stays unambiguous.
using Word = std::string;

bool is_lyndon(const Word &w);

// All Lyndon words over {1..n} of length 1..maxlen, by Duval's algorithm.
std::vector<Word> lyndon_words(int n, int maxlen);

// Chen-Fox-Lyndon standard factorization w = u.v, v the longest proper
// Lyndon suffix (= the lexicographically least proper suffix).
std::pair<Word, Word> standard_factorization(const Word &w);

struct BasisElement {
    int index;  // ordinal in the global (degree, lex) order
    Word word;  // Lyndon word
    int degree; // word length
    int left = -1, right = -1; // standard-factorization children, -1 for degree 1
};

// Ordered basis of the free nilpotent Lie algebra L_{n,c}: bracketed Lyndon
// words of length <= c, sorted by (degree, lex).
struct HallBasis {
    int n = 0;
    int c = 0;
    std::vector<BasisElement> elements;
    std::vector<int> degree_offsets; // degree_offsets[d] = first index of degree d; [c+1] = dim
    std::map<Word, int> index_by_word;

    int dim() const { return int(elements.size()); }
    int degree_of(int i) const { return elements[i].degree; }
    int degree_begin(int d) const { return degree_offsets[d]; }
    int degree_end(int d) const { return degree_offsets[d + 1]; }
    int index_of(const Word &w) const; // -1 when absent
    int generator(int g) const;        // index of x_g, g in 1..n
};

inline constexpr long kBasisSizeGuard = 1000000;

HallBasis build_basis(int n, int c);

// Sparse coefficient vector over a HallBasis, terms sorted by index, no zeros.
struct LieElement {
    const HallBasis *basis = nullptr;
    std::vector<std::pair<int, Rat>> terms;

    bool is_zero() const { return terms.empty(); }
    Rat coeff(int index) const;
    int leading_index() const; // -1 when zero

    friend bool operator==(const LieElement &a, const LieElement &b)
    {
        return a.terms == b.terms;
    }
};

LieElement lie_zero(const HallBasis &b);
LieElement lie_basis_elem(const HallBasis &b, int index, Rat coeff = Rat(1));
LieElement lie_generator(const HallBasis &b, int g); // g in 1..n

LieElement add(const LieElement &a, const LieElement &b);
LieElement sub(const LieElement &a, const LieElement &b);
LieElement negate(const LieElement &a);
LieElement scale(const Rat &k, const LieElement &a);
void add_term(LieElement &a, int index, const Rat &coeff); // in-place accumulate

// Restriction of u to basis indices of degree m.
LieElement degree_component(const LieElement &u, int m);

// Left-normed display: [x1,x2,x2] for [[x1,x2],x2], nested brackets otherwise.
std::string to_string(const LieElement &u);
std::string basis_elem_string(const HallBasis &b, int index);

} // namespace nilpot
