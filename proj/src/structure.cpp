#include "nilpot/structure.hpp"

#include "nilpot/tensor.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <map>
#include <random>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nilpot {

namespace {

void sv_add_term(std::map<int, Rat> &acc, int index, const Rat &q)
{
    auto [it, inserted] = acc.try_emplace(index, q);
    if (!inserted) {
        it->second += q;
        if (it->second == 0)
            acc.erase(it);
    }
}

SparseVec sv_flatten(const std::map<int, Rat> &acc)
{
    SparseVec v;
    v.reserve(acc.size());
    for (const auto &[i, q] : acc)
        v.emplace_back(i, q);
    return v;
}

// -------- serial reference engine: recursive Lyndon rewriting --------

struct RewriteBuilder {
    const HallBasis &basis;
    std::unordered_map<uint64_t, SparseVec> memo;
    int depth = 0;

    explicit RewriteBuilder(const HallBasis &b) : basis(b) {}

    // [e_i, e_j] for word_i < word_j in lex order; zero when past the class.
    const SparseVec &rewrite(int i, int j)
    {
        uint64_t k = StructureTable::key(i, j);
        auto it = memo.find(k);
        if (it != memo.end())
            return it->second;
        if (++depth > 100000)
            throw std::logic_error("rewrite: recursion guard tripped");

        const BasisElement &ei = basis.elements[i];
        const BasisElement &ej = basis.elements[j];
        assert(ei.word < ej.word);
        SparseVec result;
        if (ei.degree + ej.degree <= basis.c) {
            Word w = ei.word + ej.word; // Lyndon since word_i < word_j
            auto [u, v] = standard_factorization(w);
            if (u == ei.word) {
                result = {{basis.index_of(w), Rat(1)}};
            } else {
                // sigma(word_i) = (a, b) with b < word_j:
                // [i, j] = [a, [b, j]] + [[a, j], b]
                int a = ei.left, b = ei.right;
                assert(basis.elements[b].word < ej.word);
                std::map<int, Rat> acc;
                SparseVec bj = rewrite(b, j); // copies: recursion may rehash the memo
                for (const auto &[m, q] : bj)
                    for (const auto &[x, p] : bracket_words(a, m))
                        sv_add_term(acc, x, q * p);
                SparseVec aj = rewrite(a, j);
                for (const auto &[m, q] : aj)
                    for (const auto &[x, p] : bracket_words(m, b))
                        sv_add_term(acc, x, q * p);
                result = sv_flatten(acc);
            }
        }
        --depth;
        return memo.emplace(k, std::move(result)).first->second;
    }

    SparseVec bracket_words(int p, int q)
    {
        if (p == q)
            return {};
        if (basis.elements[p].word < basis.elements[q].word)
            return rewrite(p, q);
        SparseVec r = rewrite(q, p);
        for (auto &[i, c] : r)
            c = -c;
        return r;
    }
};

StructureTable build_serial(const HallBasis &basis)
{
    RewriteBuilder rb(basis);
    StructureTable t;
    t.basis = &basis;
    for (int i = 0; i < basis.dim(); ++i)
        for (int j = i + 1; j < basis.dim(); ++j) {
            if (basis.degree_of(i) + basis.degree_of(j) > basis.c)
                continue;
            t.entries[StructureTable::key(i, j)] = rb.bracket_words(i, j);
        }
    return t;
}

// -------- parallel engine: tensor lifts decomposed per pair --------

TensorElement lift_commutator(const TensorElement &a, const TensorElement &b)
{
    return tensor_sub(tensor_mul(a, b), tensor_mul(b, a));
}

// lift(b_w) = w + (lex-larger words of the same degree), so peeling the
// degree-major-least word is a triangular elimination onto the basis.
SparseVec decompose_lie_tensor(const HallBasis &basis, const std::vector<TensorElement> &lifts,
                               TensorElement t)
{
    std::map<int, Rat> acc;
    while (!t.terms.empty()) {
        const auto &[w, q] = *t.terms.begin();
        int idx = basis.index_of(w);
        if (idx < 0)
            throw std::logic_error("decompose_lie_tensor: leading word not Lyndon");
        sv_add_term(acc, idx, q);
        t = tensor_sub(t, tensor_scale(q, lifts[idx]));
    }
    return sv_flatten(acc);
}

StructureTable build_parallel(const HallBasis &basis)
{
    const int dim = basis.dim();
    std::vector<TensorElement> lifts(dim);
    for (int d = 1; d <= basis.c; ++d) {
        const int lo = basis.degree_begin(d), hi = basis.degree_end(d);
#pragma omp parallel for schedule(dynamic)
        for (int i = lo; i < hi; ++i) {
            const BasisElement &e = basis.elements[i];
            if (e.degree == 1)
                lifts[i] = tensor_word(basis.n, basis.c, e.word);
            else
                lifts[i] = lift_commutator(lifts[e.left], lifts[e.right]);
        }
    }

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            if (basis.degree_of(i) + basis.degree_of(j) <= basis.c)
                pairs.emplace_back(i, j);

    std::vector<SparseVec> results(pairs.size());
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < long(pairs.size()); ++k) {
        auto [i, j] = pairs[k];
        results[k] = decompose_lie_tensor(basis, lifts,
                                          lift_commutator(lifts[i], lifts[j]));
    }

    StructureTable t;
    t.basis = &basis;
    t.entries.reserve(pairs.size());
    for (size_t k = 0; k < pairs.size(); ++k)
        t.entries[StructureTable::key(pairs[k].first, pairs[k].second)] = std::move(results[k]);
    return t;
}

} // namespace

StructureTable build_structure_table(const HallBasis &basis, TableEngine engine)
{
    if (engine == TableEngine::Auto) {
#ifdef _OPENMP
        engine = basis.dim() >= 64 ? TableEngine::ParallelLift : TableEngine::SerialRewrite;
#else
        engine = TableEngine::SerialRewrite;
#endif
    }
    return engine == TableEngine::SerialRewrite ? build_serial(basis) : build_parallel(basis);
}

SparseVec StructureTable::bracket_pair(int i, int j) const
{
    if (i == j)
        return {};
    bool flip = false;
    if (i > j) {
        std::swap(i, j);
        flip = true;
    }
    auto it = entries.find(key(i, j));
    if (it == entries.end())
        return {};
    SparseVec r = it->second;
    if (flip)
        for (auto &[x, q] : r)
            q = -q;
    return r;
}

LieElement bracket(const StructureTable &t, const LieElement &u, const LieElement &v)
{
    if (u.basis != v.basis || u.basis != t.basis)
        throw std::invalid_argument("bracket: basis mismatch");
    std::map<int, Rat> acc;
    for (const auto &[i, p] : u.terms)
        for (const auto &[j, q] : v.terms) {
            if (i == j)
                continue;
            if (t.basis->degree_of(i) + t.basis->degree_of(j) > t.basis->c)
                continue;
            Rat pq = p * q;
            for (const auto &[x, c] : t.bracket_pair(i, j))
                sv_add_term(acc, x, pq * c);
        }
    return LieElement{u.basis, sv_flatten(acc)};
}

LieElement bracket_left_normed(const StructureTable &t, const std::vector<LieElement> &us)
{
    if (us.empty())
        throw std::invalid_argument("bracket_left_normed: empty argument list");
    LieElement r = us[0];
    for (size_t k = 1; k < us.size(); ++k)
        r = bracket(t, r, us[k]);
    return r;
}

LieElement substitute(const StructureTable &target, const std::vector<LieElement> &images,
                      const LieElement &u)
{
    const HallBasis &src = *u.basis;
    if (int(images.size()) != src.n)
        throw std::invalid_argument("substitute: one image per generator required");
    for (const auto &img : images)
        if (img.basis != target.basis)
            throw std::invalid_argument("substitute: images must live in the target algebra");

    std::vector<LieElement> vals(src.dim(), LieElement{});
    std::vector<bool> have(src.dim(), false);
    LieElement result = lie_zero(*target.basis);
    for (const auto &[i, q] : u.terms) {
        // evaluate the bracketing tree of src element i in the target algebra
        std::vector<int> stack{i};
        while (!stack.empty()) {
            int k = stack.back();
            if (have[k]) {
                stack.pop_back();
                continue;
            }
            const BasisElement &e = src.elements[k];
            if (e.degree == 1) {
                vals[k] = images[e.word[0] - '1'];
                have[k] = true;
                stack.pop_back();
            } else if (have[e.left] && have[e.right]) {
                vals[k] = bracket(target, vals[e.left], vals[e.right]);
                have[k] = true;
                stack.pop_back();
            } else {
                if (!have[e.left])
                    stack.push_back(e.left);
                if (!have[e.right])
                    stack.push_back(e.right);
            }
        }
        result = add(result, scale(q, vals[i]));
    }
    return result;
}

namespace {

bool jacobi_triple(const StructureTable &t, int i, int j, int k)
{
    const HallBasis &b = *t.basis;
    LieElement ei = lie_basis_elem(b, i), ej = lie_basis_elem(b, j), ek = lie_basis_elem(b, k);
    LieElement s = add(add(bracket(t, bracket(t, ei, ej), ek), bracket(t, bracket(t, ej, ek), ei)),
                       bracket(t, bracket(t, ek, ei), ej));
    return s.is_zero();
}

} // namespace

bool jacobi_certify(const StructureTable &t, double sample_fraction)
{
    const HallBasis &b = *t.basis;
    const int dim = b.dim();
    std::vector<std::array<int, 3>> triples;
    std::mt19937_64 rng(uint64_t(b.n) * 1000003 + b.c);
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (int k = j + 1; k < dim; ++k) {
                int total = b.degree_of(i) + b.degree_of(j) + b.degree_of(k);
                if (total > b.c)
                    continue;
                bool mandatory = total <= 3;
                if (mandatory || double(rng() % 10000) < sample_fraction * 10000)
                    triples.push_back({i, j, k});
            }

    bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
    for (long x = 0; x < long(triples.size()); ++x)
        ok = ok && jacobi_triple(t, triples[x][0], triples[x][1], triples[x][2]);
    return ok;
}

bool jacobi_full_check(const StructureTable &t)
{
    const HallBasis &b = *t.basis;
    for (int i = 0; i < b.dim(); ++i) {
        LieElement ei = lie_basis_elem(b, i);
        if (!bracket(t, ei, ei).is_zero())
            return false;
        for (int j = i + 1; j < b.dim(); ++j) {
            LieElement ej = lie_basis_elem(b, j);
            if (!add(bracket(t, ei, ej), bracket(t, ej, ei)).is_zero())
                return false;
            for (int k = j + 1; k < b.dim(); ++k)
                if (b.degree_of(i) + b.degree_of(j) + b.degree_of(k) <= b.c &&
                    !jacobi_triple(t, i, j, k))
                    return false;
        }
    }
    return true;
}

} // namespace nilpot
