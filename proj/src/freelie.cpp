#include "nilpot/freelie.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace nilpot {

bool is_lyndon(const Word &w)
{
    if (w.empty())
        return false;
    // strictly smaller than all proper rotations
    for (size_t i = 1; i < w.size(); ++i) {
        Word rot = w.substr(i) + w.substr(0, i);
        if (rot <= w)
            return false;
    }
    return true;
}

std::vector<Word> lyndon_words(int n, int maxlen)
{
    // Duval: extend the current word periodically to maxlen, then increment
    // the last non-maximal character.
    std::vector<Word> out;
    Word w = "1";
    while (true) {
        out.push_back(w);
        Word t = w;
        while (int(t.size()) < maxlen)
            t += t[t.size() % w.size()];
        while (!t.empty() && t.back() == char('0' + n))
            t.pop_back();
        if (t.empty())
            break;
        ++t.back();
        w = t;
    }
    return out;
}

std::pair<Word, Word> standard_factorization(const Word &w)
{
    if (w.size() < 2)
        throw std::invalid_argument("standard_factorization: degree-1 word");
    // lexicographically least proper suffix
    size_t best = 1;
    for (size_t i = 2; i < w.size(); ++i)
        if (w.compare(i, Word::npos, w, best, Word::npos) < 0)
            best = i;
    Word u = w.substr(0, best);
    Word v = w.substr(best);
    assert(is_lyndon(u) && is_lyndon(v) && u < v);
    return {u, v};
}

int HallBasis::index_of(const Word &w) const
{
    auto it = index_by_word.find(w);
    return it == index_by_word.end() ? -1 : it->second;
}

int HallBasis::generator(int g) const
{
    if (g < 1 || g > n)
        throw std::invalid_argument("generator index out of range");
    return g - 1; // degree-1 block comes first, in alphabet order
}

HallBasis build_basis(int n, int c)
{
    if (n < 1 || c < 1)
        throw std::invalid_argument("build_basis: need n >= 1, c >= 1");
    if (n > 9)
        throw std::invalid_argument("build_basis: rank > 9 not supported (digit word format)");

    // quick size guard before materializing: sum over degrees of n^d/d bounds
    // the Lyndon count from above
    double bound = 0;
    for (int d = 1; d <= c; ++d) {
        double p = 1;
        for (int k = 0; k < d; ++k)
            p *= n;
        bound += p / d;
        if (bound > double(kBasisSizeGuard))
            throw std::runtime_error("build_basis: basis size guard exceeded");
    }

    std::vector<Word> words = lyndon_words(n, c);
    std::sort(words.begin(), words.end(), [](const Word &a, const Word &b) {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    });
    if (long(words.size()) > kBasisSizeGuard)
        throw std::runtime_error("build_basis: basis size guard exceeded");

    HallBasis basis;
    basis.n = n;
    basis.c = c;
    basis.elements.reserve(words.size());
    for (int i = 0; i < int(words.size()); ++i) {
        BasisElement e;
        e.index = i;
        e.word = words[i];
        e.degree = int(words[i].size());
        basis.elements.push_back(std::move(e));
        basis.index_by_word[words[i]] = i;
    }
    for (auto &e : basis.elements) {
        if (e.degree == 1)
            continue;
        auto [u, v] = standard_factorization(e.word);
        e.left = basis.index_by_word.at(u);
        e.right = basis.index_by_word.at(v);
    }
    basis.degree_offsets.assign(c + 2, 0);
    for (const auto &e : basis.elements)
        basis.degree_offsets[e.degree + 1]++;
    for (int d = 1; d <= c; ++d)
        basis.degree_offsets[d + 1] += basis.degree_offsets[d];
    return basis;
}

Rat LieElement::coeff(int index) const
{
    auto it = std::lower_bound(terms.begin(), terms.end(), index,
                               [](const auto &t, int i) { return t.first < i; });
    if (it != terms.end() && it->first == index)
        return it->second;
    return Rat(0);
}

int LieElement::leading_index() const { return terms.empty() ? -1 : terms.front().first; }

LieElement lie_zero(const HallBasis &b) { return LieElement{&b, {}}; }

LieElement lie_basis_elem(const HallBasis &b, int index, Rat coeff)
{
    LieElement e{&b, {}};
    if (coeff != 0)
        e.terms.emplace_back(index, std::move(coeff));
    return e;
}

LieElement lie_generator(const HallBasis &b, int g)
{
    return lie_basis_elem(b, b.generator(g));
}

static void require_same_basis(const LieElement &a, const LieElement &b)
{
    if (a.basis != b.basis)
        throw std::invalid_argument("lie elements over different bases");
}

LieElement add(const LieElement &a, const LieElement &b)
{
    require_same_basis(a, b);
    LieElement r{a.basis, {}};
    r.terms.reserve(a.terms.size() + b.terms.size());
    auto ia = a.terms.begin(), ib = b.terms.begin();
    while (ia != a.terms.end() || ib != b.terms.end()) {
        if (ib == b.terms.end() || (ia != a.terms.end() && ia->first < ib->first))
            r.terms.push_back(*ia++);
        else if (ia == a.terms.end() || ib->first < ia->first)
            r.terms.push_back(*ib++);
        else {
            Rat s = ia->second + ib->second;
            if (s != 0)
                r.terms.emplace_back(ia->first, std::move(s));
            ++ia;
            ++ib;
        }
    }
    return r;
}

LieElement negate(const LieElement &a)
{
    LieElement r = a;
    for (auto &[i, q] : r.terms)
        q = -q;
    return r;
}

LieElement sub(const LieElement &a, const LieElement &b) { return add(a, negate(b)); }

LieElement scale(const Rat &k, const LieElement &a)
{
    if (k == 0)
        return LieElement{a.basis, {}};
    LieElement r = a;
    for (auto &[i, q] : r.terms)
        q *= k;
    return r;
}

void add_term(LieElement &a, int index, const Rat &coeff)
{
    if (coeff == 0)
        return;
    auto it = std::lower_bound(a.terms.begin(), a.terms.end(), index,
                               [](const auto &t, int i) { return t.first < i; });
    if (it != a.terms.end() && it->first == index) {
        it->second += coeff;
        if (it->second == 0)
            a.terms.erase(it);
    } else {
        a.terms.insert(it, {index, coeff});
    }
}

LieElement degree_component(const LieElement &u, int m)
{
    LieElement r{u.basis, {}};
    for (const auto &[i, q] : u.terms)
        if (u.basis->degree_of(i) == m)
            r.terms.emplace_back(i, q);
    return r;
}

std::string basis_elem_string(const HallBasis &b, int index)
{
    const BasisElement &e = b.elements[index];
    if (e.degree == 1)
        return std::string("x") + e.word;
    // flatten left-nested chains: [[u,v],w] prints as [u,v,w]
    std::string inner;
    int cur = index;
    std::vector<int> rights;
    while (b.elements[cur].degree > 1) {
        rights.push_back(b.elements[cur].right);
        cur = b.elements[cur].left;
    }
    inner = basis_elem_string(b, cur);
    for (auto it = rights.rbegin(); it != rights.rend(); ++it)
        inner += "," + basis_elem_string(b, *it);
    return "[" + inner + "]";
}

std::string to_string(const LieElement &u)
{
    if (u.is_zero())
        return "0";
    std::string s;
    bool first = true;
    for (const auto &[i, q] : u.terms) {
        if (!first)
            s += q < 0 ? " - " : " + ";
        else if (q < 0)
            s += "-";
        first = false;
        Rat a = abs(q);
        if (a != 1)
            s += rat_str(a) + "*";
        s += basis_elem_string(*u.basis, i);
    }
    return s;
}

} // namespace nilpot
