#pragma once

#include "nilpot/freelie.hpp"
#include "nilpot/rat.hpp"

#include <map>
#include <string>

namespace nilpot {

// Degree-major word order: shorter words first, lexicographic within a degree.
struct WordOrder {
    bool operator()(const Word &a, const Word &b) const
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

// Element of the free associative algebra on n generators, truncated at
// degree c. The empty word carries the scalar part.
struct TensorElement {
    int n = 0;
    int c = 0;
    std::map<Word, Rat, WordOrder> terms;

    bool is_zero() const { return terms.empty(); }
    Rat scalar_part() const;
    bool operator==(const TensorElement &o) const
    {
        return n == o.n && c == o.c && terms == o.terms;
    }
};

TensorElement tensor_zero(int n, int c);
TensorElement tensor_scalar(int n, int c, const Rat &k);
TensorElement tensor_word(int n, int c, const Word &w, const Rat &coeff = Rat(1));

void tensor_add_term(TensorElement &a, const Word &w, const Rat &coeff);
TensorElement tensor_add(const TensorElement &a, const TensorElement &b);
TensorElement tensor_sub(const TensorElement &a, const TensorElement &b);
TensorElement tensor_scale(const Rat &k, const TensorElement &a);

// Concatenation product, words beyond degree c dropped.
TensorElement tensor_mul(const TensorElement &a, const TensorElement &b);

// Truncated exp: sum a^k/k!, k <= c. Requires zero scalar part.
TensorElement texp(const TensorElement &a);

// Truncated log: sum (-1)^{k+1} (b-1)^k / k, k <= c. Requires scalar part 1.
TensorElement tlog(const TensorElement &b);

} // namespace nilpot
