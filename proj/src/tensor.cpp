#include "nilpot/tensor.hpp"

#include <stdexcept>

namespace nilpot {

Rat TensorElement::scalar_part() const
{
    auto it = terms.find(Word());
    return it == terms.end() ? Rat(0) : it->second;
}

TensorElement tensor_zero(int n, int c) { return TensorElement{n, c, {}}; }

TensorElement tensor_scalar(int n, int c, const Rat &k)
{
    TensorElement t{n, c, {}};
    if (k != 0)
        t.terms[Word()] = k;
    return t;
}

TensorElement tensor_word(int n, int c, const Word &w, const Rat &coeff)
{
    TensorElement t{n, c, {}};
    if (int(w.size()) <= c && coeff != 0)
        t.terms[w] = coeff;
    return t;
}

static void require_same_context(const TensorElement &a, const TensorElement &b)
{
    if (a.n != b.n || a.c != b.c)
        throw std::invalid_argument("tensor elements over different contexts");
}

void tensor_add_term(TensorElement &a, const Word &w, const Rat &coeff)
{
    if (coeff == 0 || int(w.size()) > a.c)
        return;
    auto [it, inserted] = a.terms.try_emplace(w, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0)
            a.terms.erase(it);
    }
}

TensorElement tensor_add(const TensorElement &a, const TensorElement &b)
{
    require_same_context(a, b);
    TensorElement r = a;
    for (const auto &[w, q] : b.terms)
        tensor_add_term(r, w, q);
    return r;
}

TensorElement tensor_sub(const TensorElement &a, const TensorElement &b)
{
    require_same_context(a, b);
    TensorElement r = a;
    for (const auto &[w, q] : b.terms)
        tensor_add_term(r, w, -q);
    return r;
}

TensorElement tensor_scale(const Rat &k, const TensorElement &a)
{
    TensorElement r{a.n, a.c, {}};
    if (k == 0)
        return r;
    for (const auto &[w, q] : a.terms)
        r.terms[w] = k * q;
    return r;
}

TensorElement tensor_mul(const TensorElement &a, const TensorElement &b)
{
    require_same_context(a, b);
    TensorElement r{a.n, a.c, {}};
    for (const auto &[wa, qa] : a.terms)
        for (const auto &[wb, qb] : b.terms) {
            if (int(wa.size() + wb.size()) > a.c)
                continue;
            tensor_add_term(r, wa + wb, qa * qb);
        }
    return r;
}

TensorElement texp(const TensorElement &a)
{
    if (a.scalar_part() != 0)
        throw std::invalid_argument("texp: nonzero scalar part");
    TensorElement r = tensor_scalar(a.n, a.c, Rat(1));
    TensorElement pow = tensor_scalar(a.n, a.c, Rat(1));
    Rat fact(1);
    for (int k = 1; k <= a.c && !pow.is_zero(); ++k) {
        pow = tensor_mul(pow, a);
        fact *= k;
        r = tensor_add(r, tensor_scale(rat(1) / fact, pow));
    }
    return r;
}

TensorElement tlog(const TensorElement &b)
{
    if (b.scalar_part() != 1)
        throw std::invalid_argument("tlog: scalar part must be 1");
    TensorElement x = b;
    x.terms.erase(Word()); // x = b - 1
    TensorElement r = tensor_zero(b.n, b.c);
    TensorElement pow = tensor_scalar(b.n, b.c, Rat(1));
    for (int k = 1; k <= b.c && !pow.is_zero(); ++k) {
        pow = tensor_mul(pow, x);
        Rat coeff = rat(k % 2 == 1 ? 1 : -1) / k;
        r = tensor_add(r, tensor_scale(coeff, pow));
    }
    return r;
}

} // namespace nilpot
